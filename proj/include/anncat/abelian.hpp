#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "anncat/errors.hpp"
#include "anncat/matrix.hpp"

namespace anncat {

// Finitely generated abelian group in invariant-factor form: free rank plus
// Z/d1 x ... x Z/dk with d1 | d2 | ... and every di >= 2.  Everything this
// library returns has rank 0; the field exists so presentations are explicit
// about it.
struct AbelianGroup {
    int rank = 0;
    std::vector<Int> invariant_factors;

    Int order() const {
        Int o = 1;
        for (const Int& d : invariant_factors) o *= d;
        return o;
    }
    bool trivial() const { return rank == 0 && invariant_factors.empty(); }
};

// Additive map between finite products of cyclic groups, x -> A x, where the
// domain is Z/dom[0] x ... and the codomain Z/cod[0] x ....  Moduli are >= 1;
// modulus-1 coordinates carry nothing but keep indexing uniform.
struct LinearMap {
    std::vector<Int> dom;
    std::vector<Int> cod;
    Matrix a; // cod.size() x dom.size()
};

// Throws ValidationError("IllFormedMap") unless dom[j] * column_j vanishes in
// the codomain, i.e. the matrix actually defines a map on the quotients.
LinearMap make_linear_map(std::vector<Int> dom, std::vector<Int> cod, Matrix a);

Int group_order(const std::vector<Int>& moduli);

// Least nonnegative residue; m >= 1.
Int mod_floor(const Int& a, const Int& m);

// Subgroup of an ambient product group, with its abstract invariant factors
// and one ambient generator column per factor (column i has order
// invariant_factors[i]).
struct Presented {
    AbelianGroup group;
    Matrix gens; // ambient_dim x #factors
};

// Quotient with representative lifts: column i of reps generates the i-th
// cyclic factor of the quotient.
struct Quotient {
    AbelianGroup group;
    Matrix reps; // ambient_dim x #factors
};

// --- Row-space accumulator -------------------------------------------------
//
// Constraints of the form  row . x == rhs  (mod modulus)  arrive one at a
// time; only the span of the rows matters for solvability and kernels, so the
// accumulator keeps an integer echelon basis of span(rows) + modulus * Z^n.
// At most `cols` rows survive, which is what makes kernels of relation
// systems with millions of instances tractable.  The right-hand side is
// carried as `rhs_width` extra bookkeeping columns (0 for kernels, the
// original row count when a transform for later right-hand sides is needed).
// All arithmetic is int64; the modulus must be small enough that products of
// two reduced entries cannot overflow.
class RowSpace {
public:
    RowSpace(std::size_t cols, std::int64_t modulus, std::size_t rhs_width = 0);

    // Sparse insertion; repeated column indices are allowed and accumulate.
    void insert(const std::vector<std::pair<std::size_t, std::int64_t>>& terms,
                const std::vector<std::pair<std::size_t, std::int64_t>>& rhs_terms = {});
    void insert_dense(const std::vector<std::int64_t>& row,
                      const std::vector<std::int64_t>& rhs = {});

    std::size_t cols() const { return cols_; }
    std::int64_t modulus() const { return modulus_; }
    std::size_t rhs_width() const { return rhs_width_; }

    // Stored constraint rows: coefficient part, bookkeeping part.
    std::size_t size() const { return rows_.size(); }
    const std::vector<std::int64_t>& row(std::size_t i) const { return rows_[i]; }
    const std::vector<std::int64_t>& row_rhs(std::size_t i) const { return rhs_[i]; }

    // Constraints whose coefficient part vanished but whose bookkeeping part
    // did not: these assert  0 == rhs . b  (mod modulus)  for a later b.
    const std::vector<std::vector<std::int64_t>>& null_constraints() const {
        return null_rows_;
    }

private:
    void insert_work(std::vector<std::int64_t>&& r, std::vector<std::int64_t>&& t);

    std::size_t cols_, rhs_width_;
    std::int64_t modulus_;
    std::vector<std::vector<std::int64_t>> rows_, rhs_;
    std::vector<std::size_t> pivot_col_;
    std::vector<long> col_to_row_; // -1 when the column has no pivot
    std::vector<std::vector<std::int64_t>> null_rows_;
};

// --- Exact solving and kernels --------------------------------------------

// Factors A (as a RowSpace-reduced system) once; answers A x =? b repeatedly.
// Solutions are canonical: free parameters are set to zero, coordinates
// reduced into [0, dom_i).
class PreparedSolver {
public:
    explicit PreparedSolver(const LinearMap& map);

    std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const;

private:
    std::vector<Int> dom_, cod_;
    std::int64_t modulus_;
    std::size_t n_;
    std::vector<std::vector<std::int64_t>> t_;   // bookkeeping rows
    std::vector<std::vector<std::int64_t>> null_; // pure consistency rows
    Matrix u_, v_;                                // SNF of [H | L I]
    std::vector<Int> diag_;
    std::size_t rank_, h_;
};

std::optional<std::vector<Int>> solve_mod(const LinearMap& map,
                                          const std::vector<Int>& b);

// Kernel of the constraint system held by `rs` inside the domain group with
// the given moduli.  rs must have rhs_width 0 and rs.cols() == dom.size().
// Precondition (holds for any well-defined map): dom_j * e_j satisfies every
// inserted constraint.
Presented kernel_of(const std::vector<Int>& dom, const RowSpace& rs);

Presented kernel(const LinearMap& map);
Presented image(const LinearMap& map);

// Subgroup of Z/amb[0] x ... generated by the columns of `gens`.
Presented subgroup_presentation(const std::vector<Int>& amb, const Matrix& gens);

// Ambient modulo the subgroup generated by `sub_gens` columns.
Quotient quotient_presentation(const std::vector<Int>& amb, const Matrix& sub_gens);
AbelianGroup quotient_invariants(const std::vector<Int>& amb, const Matrix& sub_gens);

// Z / B where Z is a presented subgroup of the ambient group and the columns
// of b_gens generate B.  Throws ValidationError("SubgroupNotContained") when
// some column of b_gens is not in Z.  Representatives are ambient vectors.
Quotient subquotient(const std::vector<Int>& amb, const Presented& z,
                     const Matrix& b_gens);

// Inverse of a unimodular matrix (asserts unimodularity).
Matrix inverse_unimodular(const Matrix& u);

} // namespace anncat

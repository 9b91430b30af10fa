#pragma once

#include <string>
#include <vector>

#include "anncat/abelian.hpp"
#include "anncat/errors.hpp"
#include "anncat/matrix.hpp"

namespace anncat {

// Finite unital ring on elements {0..n-1}, given by full operation tables.
// Immutable after construction; make_ring checks every axiom exhaustively.
struct FiniteRing {
    int n = 0;
    std::vector<int> add_t, mul_t; // n*n, row-major
    int zero = 0, one = 0;
    std::vector<int> neg_t; // derived

    int add(int x, int y) const { return add_t[x * n + y]; }
    int mul(int x, int y) const { return mul_t[x * n + y]; }
    int neg(int x) const { return neg_t[x]; }
    int sub(int x, int y) const { return add(x, neg(y)); }
};

// Errors: NotAGroup, NotAssociative, BadUnit, NotDistributive.
FiniteRing make_ring(int n, std::vector<int> add, std::vector<int> mul,
                     int zero, int one);

// Finite bimodule over a FiniteRing, elements {0..size-1} encoded in mixed
// radix over the invariant factors (last coordinate fastest).  Actions are
// full tables; addition is induced by the coordinates.
struct FiniteBimodule {
    int ring_n = 0;
    std::vector<Int> factors; // d1 | d2 | ..., each >= 2; empty = trivial
    int size = 1;
    std::vector<int> left_t, right_t; // ring_n * size tables

    // derived
    std::vector<int> add_t; // size*size
    std::vector<int> neg_t; // size
    std::vector<Matrix> lmat, rmat; // per ring element, k x k coordinate action

    int k() const { return static_cast<int>(factors.size()); }
    int left(int x, int a) const { return left_t[x * size + a]; }
    int right(int x, int a) const { return right_t[x * size + a]; } // a . x
    int add(int a, int b) const { return add_t[a * size + b]; }
    int neg(int a) const { return neg_t[a]; }
    int sub(int a, int b) const { return add(a, neg(b)); }

    std::vector<Int> coords(int a) const;
    int encode(const std::vector<Int>& c) const; // reduces mod factors
    std::vector<Int> moduli_for(std::size_t entries) const; // factors repeated
};

// Errors: NotAdditive, NotAssociativeAction, UnitActsNontrivially
// (plus IllFormedModule for shape/factor problems).
FiniteBimodule make_bimodule(const FiniteRing& r, std::vector<Int> factors,
                             std::vector<int> left, std::vector<int> right);

// Unital ring homomorphism given as an element table.
// Errors: NotAdditive, NotMultiplicative, NotUnital.
struct RingHom {
    int n_src = 0, n_tgt = 0;
    std::vector<int> map;
    int operator()(int x) const { return map[x]; }
};

RingHom make_ring_hom(const FiniteRing& src, const FiniteRing& tgt,
                      std::vector<int> map);
RingHom identity_hom(const FiniteRing& r);
RingHom compose(const RingHom& outer, const RingHom& inner);

// M' viewed as a bimodule over the source ring through p: x.a = p(x).a,
// a.x = a.p(x).  Revalidates the result (p unital makes the axioms hold).
FiniteBimodule transport(const FiniteRing& src, const FiniteBimodule& tgt_mod,
                         const RingHom& p);

// Additive map q: M -> M' with q(x a) = p(x) q(a) and q(a x) = q(a) p(x).
// Errors: NotAdditive, NotEquivariant.
struct EquivariantMap {
    int src_size = 1, tgt_size = 1;
    std::vector<int> map;
    int operator()(int a) const { return map[a]; }
};

EquivariantMap make_equivariant(const FiniteRing& src_ring,
                                const FiniteBimodule& src_mod,
                                const FiniteBimodule& tgt_mod,
                                const RingHom& p, std::vector<int> map);
EquivariantMap zero_equivariant(const FiniteBimodule& src_mod,
                                const FiniteBimodule& tgt_mod);
EquivariantMap identity_equivariant(const FiniteBimodule& m);
EquivariantMap compose(const EquivariantMap& outer, const EquivariantMap& inner);

} // namespace anncat

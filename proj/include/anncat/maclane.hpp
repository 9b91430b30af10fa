#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anncat/abelian.hpp"
#include "anncat/algebra.hpp"
#include "anncat/cochain.hpp"

namespace anncat {

// One failed relation with the first argument tuple that broke it, in scan
// order.  Relation names are the stable identifiers M1..M10 for degree-3
// cocycle checks and component names for functor-structure checks.
struct CheckFailure {
    std::string relation;
    std::vector<int> witness;
};

struct CheckReport {
    std::vector<CheckFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Degree-3 cocycle test: evaluates the ten relations M1..M10 on every
// argument tuple.  The report holds at most one failure per relation.
CheckReport is_z3(const FiniteRing& r, const FiniteBimodule& m, const Cochain3& h);

// Coboundary of a degree-2 cochain and the degree-1 differential.
Cochain3 d2(const FiniteRing& r, const FiniteBimodule& m, const Cochain2& g);
Cochain2 d1(const FiniteRing& r, const FiniteBimodule& m, const Cochain1& u);

// True iff d2(g) vanishes pointwise.
bool is_z2(const FiniteRing& r, const FiniteBimodule& m, const Cochain2& g);

// Preimage of h under d2, when h is a coboundary: deterministic witness g
// with d2(g) = h, else nullopt.
std::optional<Cochain2> coboundary_witness(const FiniteRing& r,
                                           const FiniteBimodule& m,
                                           const Cochain3& h);

// The four defect expressions a functor structure (mu, nu) must match
// against an obstruction cochain, evaluated pointwise.  These differ from
// d2 by fixed signs (mu enters negated; the lambda component is negated).
Cochain3 functor_defect(const FiniteRing& r, const FiniteBimodule& m,
                        const Cochain2& g);

// Deterministic solution of the defect system  functor_defect(g) = rhs
// (functor_signs = true) or  d2(g) = rhs  (functor_signs = false).
std::optional<Cochain2> solve_degree2_system(const FiniteRing& r,
                                             const FiniteBimodule& m,
                                             const Cochain3& rhs,
                                             bool functor_signs);

// Deterministic solution of  d1(u) = rhs.
std::optional<Cochain1> solve_degree1_system(const FiniteRing& r,
                                             const FiniteBimodule& m,
                                             const Cochain2& rhs);

// Cocycle groups with one representative cochain per invariant factor.
std::pair<AbelianGroup, std::vector<Cochain1>> cocycles1(const FiniteRing& r,
                                                         const FiniteBimodule& m);
std::pair<AbelianGroup, std::vector<Cochain2>> cocycles2(const FiniteRing& r,
                                                         const FiniteBimodule& m);
std::pair<AbelianGroup, std::vector<Cochain3>> cocycles3(const FiniteRing& r,
                                                         const FiniteBimodule& m);

struct CohomologyResult {
    AbelianGroup group;
    std::vector<Cochain2> reps2; // degree 2
    std::vector<Cochain3> reps3; // degree 3
};

// Degree 2: kernel of d2 modulo the image of d1.
// Degree 3: kernel of the M1..M10 relation system modulo the image of d2.
CohomologyResult cohomology_group(const FiniteRing& r, const FiniteBimodule& m,
                                  int degree);

// Reindexing along a ring hom (argumentwise) and an additive map (valuewise).
Cochain3 pullback(const RingHom& p, const Cochain3& h);
Cochain3 pushforward(const EquivariantMap& q, const Cochain3& h);

// Componentwise sum and difference in the value group.
Cochain3 add3(const FiniteBimodule& m, const Cochain3& a, const Cochain3& b);
Cochain3 sub3(const FiniteBimodule& m, const Cochain3& a, const Cochain3& b);

} // namespace anncat

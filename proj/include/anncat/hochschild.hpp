#pragma once

#include <optional>
#include <vector>

#include "anncat/abelian.hpp"
#include "anncat/algebra.hpp"
#include "anncat/cochain.hpp"

namespace anncat {

// Differential on multilinear cochains:
//   degree 1:  (d u)(x, y)    = x u(y) - u(xy) + u(x) y
//   degree 2:  (d v)(x, y, z) = x v(y, z) - v(xy, z) + v(x, yz) - v(x, y) z
// The input is revalidated (NotMultilinear on a bad table); degree 3 throws
// BadDegree.  Outputs are multilinear and are revalidated on the way out.
HochCochain hoch_d(const FiniteRing& r, const FiniteBimodule& m,
                   const HochCochain& f);

// Degree-3 cocycle test: the five-term identity
//   x f(y,z,t) - f(xy,z,t) + f(x,yz,t) - f(x,y,zt) + f(x,y,z) t = 0
// on every argument tuple.  Runs the degree-3 relation scanner on the
// embedded cochain; on multilinear tables the M1 family is exactly this
// identity and the other relations hold for free.
bool is_hoch_z3(const FiniteRing& r, const FiniteBimodule& m,
                const HochCochain& f);

// Preimage of a degree-3 multilinear cochain under the degree-2
// differential, when one exists: deterministic v with d v = f, else nullopt.
std::optional<HochCochain> hoch_coboundary_witness(const FiniteRing& r,
                                                   const FiniteBimodule& m,
                                                   const HochCochain& f);

// A multilinear degree-3 cochain as a four-component degree-3 cochain
// (sigma = 0, alpha = f, lambda = 0, rho = 0).  Five-term cocycles land in
// the degree-3 cocycle group; a multilinear non-cocycle fails exactly M1.
Cochain3 embed_to_maclane(const FiniteRing& r, const FiniteBimodule& m,
                          const HochCochain& f);

struct HochCohomologyResult {
    AbelianGroup group;
    std::vector<HochCochain> reps; // one per invariant factor
};

// Degree 1: multilinear u with d u = 0 (nothing to quotient by).
// Degree 2: kernel of d in degree 2 modulo the degree-1 image.
// Degree 3: multilinear five-term cocycles modulo the degree-2 image.
HochCohomologyResult hoch_cohomology_group(const FiniteRing& r,
                                           const FiniteBimodule& m, int degree);

} // namespace anncat

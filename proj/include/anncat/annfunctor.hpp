#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "anncat/abelian.hpp"
#include "anncat/algebra.hpp"
#include "anncat/cochain.hpp"
#include "anncat/hochschild.hpp"
#include "anncat/maclane.hpp"

namespace anncat {

// A reduced categorical ring: carrier ring R, coefficient bimodule M, and a
// degree-3 cocycle h fixing the associativity and distributivity data.
struct ReducedAnnCategory {
    FiniteRing r;
    FiniteBimodule m;
    Cochain3 h;
};

// Throws CarrierMismatch on shape problems and NotACocycle (naming the first
// failed relation) when h is not a degree-3 cocycle.
ReducedAnnCategory make_reduced_category(FiniteRing r, FiniteBimodule m,
                                         Cochain3 h);

// Morphism (x, a): object x with loop part a.  Composition is defined on a
// shared object; the two monoidal products act on objects through the ring
// and on loops additively / by the mixed rule a y + x b.
struct Morphism {
    int x = 0;
    int a = 0;
};

Morphism compose(const ReducedAnnCategory& c, const Morphism& f,
                 const Morphism& g); // ObjectMismatch when objects differ
Morphism oplus(const ReducedAnnCategory& c, const Morphism& f,
               const Morphism& g);
Morphism otimes(const ReducedAnnCategory& c, const Morphism& f,
                const Morphism& g);

// Unvalidated (shape-checked only) pair of raw structure tables.
struct StructurePair {
    int n = 0, msize = 1;
    std::vector<int> xi;  // n^3
    std::vector<int> eta; // n^2
};

StructurePair make_structure_pair(const FiniteRing& r, const FiniteBimodule& m,
                                  std::vector<int> xi, std::vector<int> eta);

// sigma(x,y,z,t) = xi(x+y,z,t) - xi(x,y,z) + eta(y,z) + xi(x,z,y)
//                  - xi(x+z,y,t), evaluated pointwise; an n^4 table.
std::vector<int> build_sigma_from_structure(const FiniteRing& r,
                                            const FiniteBimodule& m,
                                            const StructurePair& s);

// A functor candidate between reduced categorical rings: ring map p,
// equivariant coefficient map q, and the structure pair g = (mu, nu) living
// over the source ring with target coefficients.
struct AnnFunctorStructure {
    RingHom p;
    EquivariantMap q;
    Cochain2 g;
};

// Target coefficients viewed as a source-ring bimodule through p.
FiniteBimodule transported_module(const ReducedAnnCategory& src,
                                  const ReducedAnnCategory& tgt,
                                  const RingHom& p);

// The degree-3 obstruction attached to (p, q): the target cocycle pulled
// back along p minus the source cocycle pushed forward along q, over the
// transported coefficients.  Throws CarrierMismatch / NotEquivariant.
Cochain3 obstruction(const RingHom& p, const EquivariantMap& q,
                     const ReducedAnnCategory& src,
                     const ReducedAnnCategory& tgt);

// Solves the four structure equations for a normalized (mu, nu) against the
// obstruction; Some(witness) iff a functor of this type exists.  The witness
// is deterministic.
std::optional<AnnFunctorStructure> functor_exists(const RingHom& p,
                                                  const EquivariantMap& q,
                                                  const ReducedAnnCategory& src,
                                                  const ReducedAnnCategory& tgt);

// Pointwise check of the four structure equations; failures are labeled by
// component ("sigma", "alpha", "lambda", "rho") with the first bad tuple.
CheckReport is_functor(const AnnFunctorStructure& f,
                       const ReducedAnnCategory& src,
                       const ReducedAnnCategory& tgt);

// Some(u) when a degree-1 cochain carries f to g (their structure pairs
// differ by the twisted coboundary of u); MismatchedType when the two
// structures do not share (p, q).
std::optional<Cochain1> is_congruent(const AnnFunctorStructure& f,
                                     const AnnFunctorStructure& g,
                                     const ReducedAnnCategory& src,
                                     const ReducedAnnCategory& tgt);

// One representative per congruence class: a base witness shifted by every
// element of the degree-2 cohomology of the transported coefficients.
// Empty when no functor exists.
std::vector<AnnFunctorStructure> classify_functors(const RingHom& p,
                                                   const EquivariantMap& q,
                                                   const ReducedAnnCategory& src,
                                                   const ReducedAnnCategory& tgt);

// Every normalized structure pair passing is_functor, by exhaustive
// enumeration; gated to |R| * |M'| <= 16 (TooLarge beyond).
std::vector<Cochain2> all_functor_structures(const RingHom& p,
                                             const EquivariantMap& q,
                                             const ReducedAnnCategory& src,
                                             const ReducedAnnCategory& tgt);

// Automorphism group of any functor with f's type: the degree-1 cocycles of
// the transported coefficients.  Depends on f only through (p, q).
std::pair<AbelianGroup, std::vector<Cochain1>> aut_group(
    const AnnFunctorStructure& f, const ReducedAnnCategory& src,
    const ReducedAnnCategory& tgt);

// Existence report for strong functors (type (p, 0), structure bi-additive).
// sigma_star_zero: the pulled-back sigma, lambda, and rho components vanish
// pointwise.  alpha_multilinear: the pulled-back alpha component is additive
// in each argument.  hochschild_class_zero: that multilinear table is a
// degree-2 image, with the deterministic witness.  exists is the
// conjunction.  maclane_class_zero reports the weaker degree-3 class
// condition (the full pulled-back cochain is a coboundary) so the two
// verdicts can be compared; it is not part of exists.
struct StrongReport {
    bool sigma_star_zero = false;
    bool alpha_multilinear = false;
    bool hochschild_class_zero = false;
    bool exists = false;
    std::optional<HochCochain> witness; // degree 2, present iff exists
    bool maclane_class_zero = false;
};

StrongReport strong_functor_exists(const RingHom& p,
                                   const ReducedAnnCategory& src,
                                   const ReducedAnnCategory& tgt);

// One bi-additive representative per strong congruence class: the existence
// witness shifted by every element of the degree-2 multilinear cohomology.
// Empty when no strong functor exists.
std::vector<HochCochain> strong_classify(const RingHom& p,
                                         const ReducedAnnCategory& src,
                                         const ReducedAnnCategory& tgt);

// Strong automorphism group: the degree-1 multilinear cocycles of the
// transported coefficients.  Depends on f only through (p, q).
std::pair<AbelianGroup, std::vector<HochCochain>> strong_aut(
    const AnnFunctorStructure& f, const ReducedAnnCategory& src,
    const ReducedAnnCategory& tgt);

} // namespace anncat

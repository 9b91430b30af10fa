#pragma once

#include <json.hpp>

#include "anncat/abelian.hpp"
#include "anncat/algebra.hpp"
#include "anncat/cochain.hpp"

namespace anncat {

// Order-preserving documents keep emitted reports byte-stable.
using Json = nlohmann::ordered_json;

// Serialized conventions: module values are coordinate tuples over the
// invariant factors (empty tuples for the one-element module); tables nest
// one array level per argument, row-major; ring elements and homomorphism
// entries are plain indices.

Json ring_to_json(const FiniteRing& r);
Json bimodule_to_json(const FiniteRing& r, const FiniteBimodule& m);
Json cochain1_to_json(const FiniteRing& r, const FiniteBimodule& m,
                      const Cochain1& u);
Json cochain2_to_json(const FiniteRing& r, const FiniteBimodule& m,
                      const Cochain2& g);
Json cochain3_to_json(const FiniteRing& r, const FiniteBimodule& m,
                      const Cochain3& h);
Json hoch_to_json(const FiniteRing& r, const FiniteBimodule& m,
                  const HochCochain& f);
Json hom_to_json(const RingHom& p);
Json equivariant_to_json(const FiniteBimodule& tgt_mod, const EquivariantMap& q);
Json group_to_json(const AbelianGroup& g); // {"invariant_factors": [...]}

// Raw value tables (one array level per ring argument, entries as coordinate
// tuples), for tables that are not wrapped in a cochain struct.
Json value_table_to_json(const FiniteRing& r, const FiniteBimodule& m,
                         const std::vector<int>& flat, int arity);
std::vector<int> value_table_from_json(const FiniteRing& r,
                                       const FiniteBimodule& m, const Json& j,
                                       int arity, const std::string& name);

// Parsers accept either a full object or, where noted, a preset name.  Shape
// problems throw "IllFormedInput"; the algebraic validators' own codes pass
// through unchanged.
FiniteRing ring_from_json(const Json& j);                      // object | name
FiniteBimodule bimodule_from_json(const FiniteRing& r, const Json& j); // | name
Cochain1 cochain1_from_json(const FiniteRing& r, const FiniteBimodule& m,
                            const Json& j);
Cochain2 cochain2_from_json(const FiniteRing& r, const FiniteBimodule& m,
                            const Json& j);
Cochain3 cochain3_from_json(const FiniteRing& r, const FiniteBimodule& m,
                            const Json& j);
HochCochain hoch_from_json(const FiniteRing& r, const FiniteBimodule& m,
                           const Json& j);
RingHom hom_from_json(const FiniteRing& src, const FiniteRing& tgt,
                      const Json& j); // flat array | "id"
EquivariantMap equivariant_from_json(const FiniteRing& src_ring,
                                     const FiniteBimodule& src_mod,
                                     const FiniteBimodule& tgt_mod,
                                     const RingHom& p,
                                     const Json& j); // tuples | "id" | "zero"

} // namespace anncat

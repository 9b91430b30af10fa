#pragma once

#include <string>

#include "anncat/algebra.hpp"

namespace anncat {

// Z/n with elements 0..n-1.
FiniteRing zn_ring(int n);

// The product ring Z/2 x Z/2; element (a,b) has index 2a + b.
FiniteRing z2xz2_ring();

// Named rings: "Z2", "Z3", "Z4", "Z6", "Z2xZ2".
FiniteRing ring_preset(const std::string& name);

// The ring acting on its own additive group by multiplication.  Defined for
// the preset carriers (their additive coordinates are known).
FiniteBimodule regular_bimodule(const FiniteRing& r);

// One-element module.
FiniteBimodule trivial_bimodule(const FiniteRing& r);

// Z/m as a module over Z/n via reduction (requires m | n).
FiniteBimodule reduction_bimodule(const FiniteRing& zn, int m);

// Named modules over a ring: "regular", "trivial", or "Zm" (reduction).
FiniteBimodule bimodule_preset(const FiniteRing& r, const std::string& name);

} // namespace anncat

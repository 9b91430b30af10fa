#pragma once

#include <vector>

#include "anncat/algebra.hpp"

namespace anncat {

// Cochains are dense tables of bimodule element indices, one entry per tuple
// of ring elements, row-major in the argument order.  Degree 1 and 2 tables
// are normalized: they vanish whenever any argument is the ring zero.
// Degree 3 tables carry no such constraint; membership in the cocycle group
// is a separate predicate.

struct Cochain1 {
    int n = 0, msize = 1;
    std::vector<int> u; // n entries
    int at(int x) const { return u[x]; }
    bool operator==(const Cochain1&) const = default;
};

struct Cochain2 {
    int n = 0, msize = 1;
    std::vector<int> mu, nu; // n*n entries each
    int mu_at(int x, int y) const { return mu[x * n + y]; }
    int nu_at(int x, int y) const { return nu[x * n + y]; }
    bool operator==(const Cochain2&) const = default;
};

struct Cochain3 {
    int n = 0, msize = 1;
    std::vector<int> sigma;              // n^4
    std::vector<int> alpha, lambda, rho; // n^3 each
    int s_at(int x, int y, int z, int t) const {
        return sigma[((x * n + y) * n + z) * n + t];
    }
    int a_at(int x, int y, int z) const { return alpha[(x * n + y) * n + z]; }
    int l_at(int x, int y, int z) const { return lambda[(x * n + y) * n + z]; }
    int r_at(int x, int y, int z) const { return rho[(x * n + y) * n + z]; }
    bool zero() const;
    bool operator==(const Cochain3&) const = default;
};

// Multilinear cochain: additive in every argument separately.
struct HochCochain {
    int degree = 1;
    int n = 0, msize = 1;
    std::vector<int> f; // n^degree entries
    int at(int x) const { return f[x]; }
    int at(int x, int y) const { return f[x * n + y]; }
    int at(int x, int y, int z) const { return f[(x * n + y) * n + z]; }
    bool operator==(const HochCochain&) const = default;
};

// Validating constructors.  Shape or range problems throw IllFormedTable;
// a zero-argument entry that is not zero throws NotNormalized; a failed
// additivity check throws NotMultilinear.
Cochain1 make_cochain1(const FiniteRing& r, const FiniteBimodule& m,
                       std::vector<int> u);
Cochain2 make_cochain2(const FiniteRing& r, const FiniteBimodule& m,
                       std::vector<int> mu, std::vector<int> nu);
Cochain3 make_cochain3(const FiniteRing& r, const FiniteBimodule& m,
                       std::vector<int> sigma, std::vector<int> alpha,
                       std::vector<int> lambda, std::vector<int> rho);
HochCochain make_hoch_cochain(const FiniteRing& r, const FiniteBimodule& m,
                              int degree, std::vector<int> f);

Cochain1 zero_cochain1(const FiniteRing& r, const FiniteBimodule& m);
Cochain2 zero_cochain2(const FiniteRing& r, const FiniteBimodule& m);
Cochain3 zero_cochain3(const FiniteRing& r, const FiniteBimodule& m);
HochCochain zero_hoch_cochain(const FiniteRing& r, const FiniteBimodule& m,
                              int degree);

} // namespace anncat

#include "anncat/cochain.hpp"

#include "anncat/errors.hpp"

namespace anncat {

namespace {

void check_entries(const std::vector<int>& t, std::size_t want, int msize,
                   const char* what) {
    if (t.size() != want)
        throw ValidationError("IllFormedTable", std::string(what) + " has wrong size");
    for (int v : t)
        if (v < 0 || v >= msize)
            throw ValidationError("IllFormedTable",
                                  std::string(what) + " entry out of range");
}

} // namespace

bool Cochain3::zero() const {
    auto all0 = [](const std::vector<int>& t) {
        for (int v : t)
            if (v) return false;
        return true;
    };
    return all0(sigma) && all0(alpha) && all0(lambda) && all0(rho);
}

Cochain1 make_cochain1(const FiniteRing& r, const FiniteBimodule& m,
                       std::vector<int> u) {
    check_entries(u, std::size_t(r.n), m.size, "degree-1 table");
    if (u[r.zero] != 0)
        throw ValidationError("NotNormalized", "u(0) != 0");
    return Cochain1{r.n, m.size, std::move(u)};
}

Cochain2 make_cochain2(const FiniteRing& r, const FiniteBimodule& m,
                       std::vector<int> mu, std::vector<int> nu) {
    const int n = r.n;
    check_entries(mu, std::size_t(n) * n, m.size, "mu table");
    check_entries(nu, std::size_t(n) * n, m.size, "nu table");
    for (int x = 0; x < n; ++x) {
        if (mu[x * n + r.zero] || mu[r.zero * n + x] ||
            nu[x * n + r.zero] || nu[r.zero * n + x])
            throw ValidationError("NotNormalized",
                                  "degree-2 entry with a zero argument is nonzero");
    }
    return Cochain2{n, m.size, std::move(mu), std::move(nu)};
}

Cochain3 make_cochain3(const FiniteRing& r, const FiniteBimodule& m,
                       std::vector<int> sigma, std::vector<int> alpha,
                       std::vector<int> lambda, std::vector<int> rho) {
    const std::size_t n = std::size_t(r.n);
    check_entries(sigma, n * n * n * n, m.size, "sigma table");
    check_entries(alpha, n * n * n, m.size, "alpha table");
    check_entries(lambda, n * n * n, m.size, "lambda table");
    check_entries(rho, n * n * n, m.size, "rho table");
    return Cochain3{r.n, m.size, std::move(sigma), std::move(alpha),
                    std::move(lambda), std::move(rho)};
}

HochCochain make_hoch_cochain(const FiniteRing& r, const FiniteBimodule& m,
                              int degree, std::vector<int> f) {
    if (degree < 1 || degree > 3)
        throw ValidationError("IllFormedTable", "degree must be 1, 2, or 3");
    const int n = r.n;
    std::size_t want = 1;
    for (int i = 0; i < degree; ++i) want *= std::size_t(n);
    check_entries(f, want, m.size, "multilinear table");
    HochCochain h{degree, n, m.size, std::move(f)};

    // Additivity in each slot: f(.., x+y, ..) = f(.., x, ..) + f(.., y, ..).
    std::size_t stride = 1;
    for (int slot = degree - 1; slot >= 0; --slot) {
        std::size_t outer = want / (stride * n);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t i = 0; i < stride; ++i) {
                std::size_t base = o * stride * n + i;
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y) {
                        int lhs = h.f[base + std::size_t(r.add(x, y)) * stride];
                        int rhs = m.add(h.f[base + std::size_t(x) * stride],
                                        h.f[base + std::size_t(y) * stride]);
                        if (lhs != rhs)
                            throw ValidationError(
                                "NotMultilinear",
                                "additivity fails in argument " + std::to_string(slot));
                    }
            }
        stride *= std::size_t(n);
    }
    return h;
}

Cochain1 zero_cochain1(const FiniteRing& r, const FiniteBimodule& m) {
    return Cochain1{r.n, m.size, std::vector<int>(std::size_t(r.n), 0)};
}

Cochain2 zero_cochain2(const FiniteRing& r, const FiniteBimodule& m) {
    std::vector<int> z(std::size_t(r.n) * r.n, 0);
    return Cochain2{r.n, m.size, z, z};
}

Cochain3 zero_cochain3(const FiniteRing& r, const FiniteBimodule& m) {
    const std::size_t n = std::size_t(r.n);
    return Cochain3{r.n, m.size, std::vector<int>(n * n * n * n, 0),
                    std::vector<int>(n * n * n, 0), std::vector<int>(n * n * n, 0),
                    std::vector<int>(n * n * n, 0)};
}

HochCochain zero_hoch_cochain(const FiniteRing& r, const FiniteBimodule& m,
                              int degree) {
    std::size_t want = 1;
    for (int i = 0; i < degree; ++i) want *= std::size_t(r.n);
    return HochCochain{degree, r.n, m.size, std::vector<int>(want, 0)};
}

} // namespace anncat

#include "anncat/annfunctor.hpp"

#include <cassert>
#include <string>
#include <utility>

#include "anncat/errors.hpp"

namespace anncat {

namespace {

void check_hom(const RingHom& p, const ReducedAnnCategory& src,
               const ReducedAnnCategory& tgt) {
    if (p.n_src != src.r.n || p.n_tgt != tgt.r.n)
        throw ValidationError("CarrierMismatch", "ring map carriers");
}

// q is revalidated here because structures can be assembled by hand; the
// equivariance laws are over p, which q does not store.
void check_equivariant(const RingHom& p, const ReducedAnnCategory& src,
                       const ReducedAnnCategory& tgt, const EquivariantMap& q) {
    if (q.src_size != src.m.size || q.tgt_size != tgt.m.size)
        throw ValidationError("CarrierMismatch", "coefficient map carriers");
    const FiniteBimodule& sm = src.m;
    const FiniteBimodule& tm = tgt.m;
    for (int a = 0; a < sm.size; ++a)
        for (int b = 0; b < sm.size; ++b)
            if (q(sm.add(a, b)) != tm.add(q(a), q(b)))
                throw ValidationError("NotAdditive",
                                      "coefficient map breaks addition at (" +
                                          std::to_string(a) + ", " +
                                          std::to_string(b) + ")");
    for (int x = 0; x < src.r.n; ++x)
        for (int a = 0; a < sm.size; ++a)
            if (q(sm.left(x, a)) != tm.left(p(x), q(a)) ||
                q(sm.right(x, a)) != tm.right(p(x), q(a)))
                throw ValidationError("NotEquivariant",
                                      "coefficient map breaks the action at (" +
                                          std::to_string(x) + ", " +
                                          std::to_string(a) + ")");
}

Cochain3 obstruction_over(const FiniteBimodule& mt, const RingHom& p,
                          const EquivariantMap& q,
                          const ReducedAnnCategory& src,
                          const ReducedAnnCategory& tgt) {
    return sub3(mt, pullback(p, tgt.h), pushforward(q, src.h));
}

// Structure pairs are compared and shifted with the mu component negated;
// keeping that twist in one place makes every consumer agree on it.
Cochain2 twisted_shift(const FiniteBimodule& mt, const Cochain2& base,
                       const Cochain2& z) {
    Cochain2 g = base;
    for (std::size_t i = 0; i < g.mu.size(); ++i) {
        g.mu[i] = mt.sub(g.mu[i], z.mu[i]);
        g.nu[i] = mt.add(g.nu[i], z.nu[i]);
    }
    return g;
}

void add_times2(const FiniteBimodule& mt, Cochain2& acc, const Cochain2& rep,
                long times) {
    for (long c = 0; c < times; ++c)
        for (std::size_t i = 0; i < acc.mu.size(); ++i) {
            acc.mu[i] = mt.add(acc.mu[i], rep.mu[i]);
            acc.nu[i] = mt.add(acc.nu[i], rep.nu[i]);
        }
}

void add_times_h(const FiniteBimodule& mt, HochCochain& acc,
                 const HochCochain& rep, long times) {
    for (long c = 0; c < times; ++c)
        for (std::size_t i = 0; i < acc.f.size(); ++i)
            acc.f[i] = mt.add(acc.f[i], rep.f[i]);
}

// Runs fn once per element of the group, handing over the mixed-radix digit
// vector (last digit fastest).  The groups enumerated here are finite.
template <typename Fn>
void for_each_element(const AbelianGroup& g, Fn fn) {
    assert(g.rank == 0);
    std::vector<long> radix, digits;
    for (const Int& d : g.invariant_factors) radix.push_back(d.get_si());
    digits.assign(radix.size(), 0);
    for (;;) {
        fn(digits);
        std::size_t j = digits.size();
        while (j > 0 && digits[j - 1] + 1 == radix[j - 1]) digits[--j] = 0;
        if (j == 0) return;
        ++digits[j - 1];
    }
}

void first_difference(const char* name, int n, int arity,
                      const std::vector<int>& got, const std::vector<int>& want,
                      CheckReport& rep) {
    for (std::size_t i = 0; i < got.size(); ++i)
        if (got[i] != want[i]) {
            std::vector<int> w(arity);
            std::size_t rest = i;
            for (int j = arity - 1; j >= 0; --j) {
                w[j] = int(rest % n);
                rest /= n;
            }
            rep.failures.push_back({name, std::move(w)});
            return;
        }
}

} // namespace

ReducedAnnCategory make_reduced_category(FiniteRing r, FiniteBimodule m,
                                         Cochain3 h) {
    if (m.ring_n != r.n)
        throw ValidationError("CarrierMismatch", "bimodule over another ring");
    CheckReport rep = is_z3(r, m, h);
    if (!rep.ok())
        throw ValidationError("NotACocycle", "relation " +
                                                 rep.failures.front().relation +
                                                 " fails");
    return ReducedAnnCategory{std::move(r), std::move(m), std::move(h)};
}

namespace {

void check_morphism(const ReducedAnnCategory& c, const Morphism& f) {
    if (f.x < 0 || f.x >= c.r.n || f.a < 0 || f.a >= c.m.size)
        throw ValidationError("CarrierMismatch", "morphism outside the carrier");
}

} // namespace

Morphism compose(const ReducedAnnCategory& c, const Morphism& f,
                 const Morphism& g) {
    check_morphism(c, f);
    check_morphism(c, g);
    if (f.x != g.x)
        throw ValidationError("ObjectMismatch",
                              "composition needs a shared object");
    return {f.x, c.m.add(f.a, g.a)};
}

Morphism oplus(const ReducedAnnCategory& c, const Morphism& f,
               const Morphism& g) {
    check_morphism(c, f);
    check_morphism(c, g);
    return {c.r.add(f.x, g.x), c.m.add(f.a, g.a)};
}

Morphism otimes(const ReducedAnnCategory& c, const Morphism& f,
                const Morphism& g) {
    check_morphism(c, f);
    check_morphism(c, g);
    return {c.r.mul(f.x, g.x),
            c.m.add(c.m.right(g.x, f.a), c.m.left(f.x, g.a))};
}

StructurePair make_structure_pair(const FiniteRing& r, const FiniteBimodule& m,
                                  std::vector<int> xi, std::vector<int> eta) {
    const std::size_t n = std::size_t(r.n);
    if (xi.size() != n * n * n || eta.size() != n * n)
        throw ValidationError("IllFormedTable", "structure table sizes");
    for (int v : xi)
        if (v < 0 || v >= m.size)
            throw ValidationError("IllFormedTable", "structure entry out of range");
    for (int v : eta)
        if (v < 0 || v >= m.size)
            throw ValidationError("IllFormedTable", "structure entry out of range");
    return {r.n, m.size, std::move(xi), std::move(eta)};
}

std::vector<int> build_sigma_from_structure(const FiniteRing& r,
                                            const FiniteBimodule& m,
                                            const StructurePair& s) {
    if (s.n != r.n || s.msize != m.size)
        throw ValidationError("CarrierMismatch", "structure pair carriers");
    const int n = r.n;
    auto xi = [&](int x, int y, int z) { return s.xi[(x * n + y) * n + z]; };
    std::vector<int> sigma(std::size_t(n) * n * n * n);
    std::size_t i = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int t = 0; t < n; ++t) {
                    int v = xi(r.add(x, y), z, t);
                    v = m.sub(v, xi(x, y, z));
                    v = m.add(v, s.eta[y * n + z]);
                    v = m.add(v, xi(x, z, y));
                    v = m.sub(v, xi(r.add(x, z), y, t));
                    sigma[i++] = v;
                }
    return sigma;
}

FiniteBimodule transported_module(const ReducedAnnCategory& src,
                                  const ReducedAnnCategory& tgt,
                                  const RingHom& p) {
    check_hom(p, src, tgt);
    return transport(src.r, tgt.m, p);
}

Cochain3 obstruction(const RingHom& p, const EquivariantMap& q,
                     const ReducedAnnCategory& src,
                     const ReducedAnnCategory& tgt) {
    check_hom(p, src, tgt);
    check_equivariant(p, src, tgt, q);
    return obstruction_over(transport(src.r, tgt.m, p), p, q, src, tgt);
}

std::optional<AnnFunctorStructure> functor_exists(
    const RingHom& p, const EquivariantMap& q, const ReducedAnnCategory& src,
    const ReducedAnnCategory& tgt) {
    check_hom(p, src, tgt);
    check_equivariant(p, src, tgt, q);
    FiniteBimodule mt = transport(src.r, tgt.m, p);
    Cochain3 k = obstruction_over(mt, p, q, src, tgt);
    auto g = solve_degree2_system(src.r, mt, k, true);
    if (!g) return std::nullopt;
    return AnnFunctorStructure{p, q, std::move(*g)};
}

CheckReport is_functor(const AnnFunctorStructure& f,
                       const ReducedAnnCategory& src,
                       const ReducedAnnCategory& tgt) {
    check_hom(f.p, src, tgt);
    check_equivariant(f.p, src, tgt, f.q);
    FiniteBimodule mt = transport(src.r, tgt.m, f.p);
    Cochain2 g = make_cochain2(src.r, mt, f.g.mu, f.g.nu);
    Cochain3 d = functor_defect(src.r, mt, g);
    Cochain3 k = obstruction_over(mt, f.p, f.q, src, tgt);
    CheckReport rep;
    first_difference("sigma", src.r.n, 4, d.sigma, k.sigma, rep);
    first_difference("alpha", src.r.n, 3, d.alpha, k.alpha, rep);
    first_difference("lambda", src.r.n, 3, d.lambda, k.lambda, rep);
    first_difference("rho", src.r.n, 3, d.rho, k.rho, rep);
    return rep;
}

std::optional<Cochain1> is_congruent(const AnnFunctorStructure& f,
                                     const AnnFunctorStructure& g,
                                     const ReducedAnnCategory& src,
                                     const ReducedAnnCategory& tgt) {
    if (f.p.n_src != g.p.n_src || f.p.n_tgt != g.p.n_tgt ||
        f.p.map != g.p.map || f.q.src_size != g.q.src_size ||
        f.q.tgt_size != g.q.tgt_size || f.q.map != g.q.map)
        throw ValidationError("MismatchedType",
                              "congruence needs structures of one type");
    check_hom(f.p, src, tgt);
    FiniteBimodule mt = transport(src.r, tgt.m, f.p);
    Cochain2 gf = make_cochain2(src.r, mt, f.g.mu, f.g.nu);
    Cochain2 gg = make_cochain2(src.r, mt, g.g.mu, g.g.nu);
    Cochain2 rhs = zero_cochain2(src.r, mt);
    for (std::size_t i = 0; i < rhs.mu.size(); ++i) {
        rhs.mu[i] = mt.sub(gg.mu[i], gf.mu[i]);
        rhs.nu[i] = mt.sub(gf.nu[i], gg.nu[i]);
    }
    return solve_degree1_system(src.r, mt, rhs);
}

std::vector<AnnFunctorStructure> classify_functors(
    const RingHom& p, const EquivariantMap& q, const ReducedAnnCategory& src,
    const ReducedAnnCategory& tgt) {
    auto base = functor_exists(p, q, src, tgt);
    if (!base) return {};
    FiniteBimodule mt = transport(src.r, tgt.m, p);
    CohomologyResult h2 = cohomology_group(src.r, mt, 2);
    std::vector<AnnFunctorStructure> out;
    for_each_element(h2.group, [&](const std::vector<long>& digits) {
        Cochain2 z = zero_cochain2(src.r, mt);
        for (std::size_t j = 0; j < digits.size(); ++j)
            add_times2(mt, z, h2.reps2[j], digits[j]);
        out.push_back(AnnFunctorStructure{p, q, twisted_shift(mt, base->g, z)});
    });
    return out;
}

std::vector<Cochain2> all_functor_structures(const RingHom& p,
                                             const EquivariantMap& q,
                                             const ReducedAnnCategory& src,
                                             const ReducedAnnCategory& tgt) {
    check_hom(p, src, tgt);
    check_equivariant(p, src, tgt, q);
    if (src.r.n * tgt.m.size > 16)
        throw ValidationError("TooLarge",
                              "exhaustive enumeration is gated to carriers "
                              "with |R| * |M'| <= 16");
    FiniteBimodule mt = transport(src.r, tgt.m, p);
    Cochain3 k = obstruction_over(mt, p, q, src, tgt);

    const int n = src.r.n;
    std::vector<int> nz;
    for (int x = 0; x < n; ++x)
        if (x != src.r.zero) nz.push_back(x);
    std::vector<std::size_t> slots; // free table offsets, mu first
    for (int x : nz)
        for (int y : nz) slots.push_back(std::size_t(x) * n + y);

    std::vector<int> digits(2 * slots.size(), 0);
    std::vector<Cochain2> out;
    for (;;) {
        Cochain2 g = zero_cochain2(src.r, mt);
        for (std::size_t j = 0; j < slots.size(); ++j) {
            g.mu[slots[j]] = digits[j];
            g.nu[slots[j]] = digits[slots.size() + j];
        }
        if (functor_defect(src.r, mt, g) == k) out.push_back(std::move(g));
        std::size_t j = digits.size();
        while (j > 0 && digits[j - 1] + 1 == mt.size) digits[--j] = 0;
        if (j == 0) break;
        ++digits[j - 1];
    }
    return out;
}

std::pair<AbelianGroup, std::vector<Cochain1>> aut_group(
    const AnnFunctorStructure& f, const ReducedAnnCategory& src,
    const ReducedAnnCategory& tgt) {
    check_hom(f.p, src, tgt);
    FiniteBimodule mt = transport(src.r, tgt.m, f.p);
    return cocycles1(src.r, mt);
}

StrongReport strong_functor_exists(const RingHom& p,
                                   const ReducedAnnCategory& src,
                                   const ReducedAnnCategory& tgt) {
    check_hom(p, src, tgt);
    FiniteBimodule mt = transport(src.r, tgt.m, p);
    Cochain3 hstar = pullback(p, tgt.h);

    StrongReport rep;
    rep.sigma_star_zero = true;
    for (int v : hstar.sigma) rep.sigma_star_zero = rep.sigma_star_zero && !v;
    for (int v : hstar.lambda) rep.sigma_star_zero = rep.sigma_star_zero && !v;
    for (int v : hstar.rho) rep.sigma_star_zero = rep.sigma_star_zero && !v;

    std::optional<HochCochain> astar;
    try {
        astar = make_hoch_cochain(src.r, mt, 3, hstar.alpha);
        rep.alpha_multilinear = true;
    } catch (const ValidationError& e) {
        if (e.code() != "NotMultilinear") throw;
    }

    std::optional<HochCochain> w;
    if (astar) {
        w = hoch_coboundary_witness(src.r, mt, *astar);
        rep.hochschild_class_zero = w.has_value();
    }

    rep.exists =
        rep.sigma_star_zero && rep.alpha_multilinear && rep.hochschild_class_zero;
    if (rep.exists) rep.witness = std::move(w);
    rep.maclane_class_zero = coboundary_witness(src.r, mt, hstar).has_value();
    return rep;
}

std::vector<HochCochain> strong_classify(const RingHom& p,
                                         const ReducedAnnCategory& src,
                                         const ReducedAnnCategory& tgt) {
    StrongReport sf = strong_functor_exists(p, src, tgt);
    if (!sf.exists) return {};
    FiniteBimodule mt = transport(src.r, tgt.m, p);
    HochCohomologyResult h2 = hoch_cohomology_group(src.r, mt, 2);
    std::vector<HochCochain> out;
    for_each_element(h2.group, [&](const std::vector<long>& digits) {
        HochCochain v = *sf.witness;
        for (std::size_t j = 0; j < digits.size(); ++j)
            add_times_h(mt, v, h2.reps[j], digits[j]);
        out.push_back(make_hoch_cochain(src.r, mt, 2, std::move(v.f)));
    });
    return out;
}

std::pair<AbelianGroup, std::vector<HochCochain>> strong_aut(
    const AnnFunctorStructure& f, const ReducedAnnCategory& src,
    const ReducedAnnCategory& tgt) {
    check_hom(f.p, src, tgt);
    FiniteBimodule mt = transport(src.r, tgt.m, f.p);
    HochCohomologyResult h1 = hoch_cohomology_group(src.r, mt, 1);
    return {h1.group, h1.reps};
}

} // namespace anncat

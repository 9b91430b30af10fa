// Acceptance gate: nine checks, one pass/fail line each, time budgets pinned
// inline.  Exit code 0 iff every check passes inside its budget.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "anncat/abelian.hpp"
#include "anncat/annfunctor.hpp"
#include "anncat/hochschild.hpp"
#include "anncat/maclane.hpp"
#include "anncat/matrix.hpp"
#include "anncat/presets.hpp"
#include "oracles.hpp"

using namespace anncat;

namespace {

struct Harness {
    int failed = 0;
    double total_seconds = 0;

    void criterion(int id, const char* label, double budget_s,
                   const std::function<bool(std::string&)>& fn) {
        auto t0 = std::chrono::steady_clock::now();
        std::string why;
        bool ok = false;
        try {
            ok = fn(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double dt = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        total_seconds += dt;
        bool in_budget = dt < budget_s;
        bool pass = ok && in_budget;
        std::printf("criterion %d [%s]: %s (%.3fs, budget %.0fs)\n", id, label,
                    pass ? "PASS" : "FAIL", dt, budget_s);
        if (!ok && !why.empty()) std::printf("  %s\n", why.c_str());
        if (!in_budget) std::printf("  over time budget\n");
        if (!pass) ++failed;
    }
};

bool fail(std::string& why, const std::string& msg) {
    why = msg;
    return false;
}

// ---- 1: d2 o d1 = 0 on every normalized degree-1 cochain -------------------

bool crit_d2_after_d1(std::string& why) {
    struct Carrier {
        FiniteRing r;
        FiniteBimodule m;
        int expected;
    };
    FiniteRing z2 = ring_preset("Z2"), z3 = ring_preset("Z3"),
               z4 = ring_preset("Z4");
    std::vector<Carrier> carriers = {
        {z2, bimodule_preset(z2, "regular"), 2},
        {z3, bimodule_preset(z3, "regular"), 9},
        {z4, bimodule_preset(z4, "Z2"), 8},
    };
    for (const Carrier& c : carriers) {
        Cochain3 zero = zero_cochain3(c.r, c.m);
        int count = 0;
        bool all_zero = true;
        oracle::for_each_normalized_u(c.r, c.m, [&](const Cochain1& u) {
            ++count;
            if (!(d2(c.r, c.m, d1(c.r, c.m, u)) == zero)) all_zero = false;
        });
        if (count != c.expected)
            return fail(why, "carrier visits " + std::to_string(count) +
                                 " cochains, expected " +
                                 std::to_string(c.expected));
        if (!all_zero) return fail(why, "a composite differential is nonzero");
    }
    return true;
}

// ---- 2: coboundaries are cocycles ------------------------------------------

bool crit_coboundaries_are_cocycles(std::string& why) {
    FiniteRing z2 = ring_preset("Z2");
    FiniteBimodule reg2 = bimodule_preset(z2, "regular");
    int count = 0;
    bool all_ok = true;
    oracle::for_each_normalized_g(z2, reg2, [&](const Cochain2& g) {
        ++count;
        if (!is_z3(z2, reg2, d2(z2, reg2, g)).ok()) all_ok = false;
    });
    if (count != 4 || !all_ok)
        return fail(why, "exhaustive small-carrier sweep failed");

    std::mt19937 rng(20260822);
    for (const char* name : {"Z4", "Z6"}) {
        FiniteRing r = ring_preset(name);
        FiniteBimodule m = bimodule_preset(r, "regular");
        for (int i = 0; i < 100; ++i) {
            Cochain2 g = oracle::random_cochain2(rng, r, m);
            if (!is_z3(r, m, d2(r, m, g)).ok())
                return fail(why, std::string("random sweep failed over ") +
                                     name);
        }
    }
    return true;
}

// ---- 3: anchor group orders, SNF path vs exhaustive enumeration ------------

bool crit_anchor_orders(std::string& why) {
    FiniteRing z2 = ring_preset("Z2");
    FiniteBimodule reg = bimodule_preset(z2, "regular");

    // Degree-2 cocycles and coboundaries by raw table enumeration.
    std::vector<Cochain2> zg;
    oracle::for_each_normalized_g(z2, reg, [&](const Cochain2& g) {
        if (is_z2(z2, reg, g)) zg.push_back(g);
    });
    std::set<std::pair<std::vector<int>, std::vector<int>>> boundaries;
    int z1_count = 0;
    oracle::for_each_normalized_u(z2, reg, [&](const Cochain1& u) {
        Cochain2 du = d1(z2, reg, u);
        boundaries.insert({du.mu, du.nu});
        if (du == zero_cochain2(z2, reg)) ++z1_count;
    });
    int classes = 0;
    std::vector<Cochain2> reps;
    for (const Cochain2& g : zg) {
        bool seen = false;
        for (const Cochain2& r : reps) {
            std::vector<int> dmu(g.mu.size()), dnu(g.nu.size());
            for (std::size_t i = 0; i < g.mu.size(); ++i) {
                dmu[i] = reg.sub(g.mu[i], r.mu[i]);
                dnu[i] = reg.sub(g.nu[i], r.nu[i]);
            }
            if (boundaries.count({dmu, dnu})) {
                seen = true;
                break;
            }
        }
        if (!seen) {
            reps.push_back(g);
            ++classes;
        }
    }
    if (classes != 2)
        return fail(why, "exhaustive degree-2 class count is " +
                             std::to_string(classes) + ", expected 2");
    if (z1_count != 1)
        return fail(why, "exhaustive degree-1 cocycle count is " +
                             std::to_string(z1_count) + ", expected 1");

    // Multilinear degree-2 classes by the same raw method.
    std::vector<HochCochain> z2h;
    oracle::for_each_multilinear(z2, reg, 2, [&](const HochCochain& v) {
        HochCochain dv = hoch_d(z2, reg, v);
        if (std::all_of(dv.f.begin(), dv.f.end(),
                        [](int a) { return a == 0; }))
            z2h.push_back(v);
    });
    std::set<std::vector<int>> hoch_boundaries;
    oracle::for_each_multilinear(z2, reg, 1, [&](const HochCochain& u) {
        hoch_boundaries.insert(hoch_d(z2, reg, u).f);
    });
    int hoch_classes = 0;
    std::vector<HochCochain> hoch_reps;
    for (const HochCochain& v : z2h) {
        bool seen = false;
        for (const HochCochain& r : hoch_reps) {
            std::vector<int> d(v.f.size());
            for (std::size_t i = 0; i < v.f.size(); ++i)
                d[i] = reg.sub(v.f[i], r.f[i]);
            if (hoch_boundaries.count(d)) {
                seen = true;
                break;
            }
        }
        if (!seen) {
            hoch_reps.push_back(v);
            ++hoch_classes;
        }
    }
    if (hoch_classes != 1)
        return fail(why, "exhaustive multilinear class count is " +
                             std::to_string(hoch_classes) + ", expected 1");

    // The normal-form pipeline must reproduce each anchor exactly.
    if (group_order(cohomology_group(z2, reg, 2).group.invariant_factors) != 2)
        return fail(why, "degree-2 group order mismatch");
    if (group_order(
            hoch_cohomology_group(z2, reg, 2).group.invariant_factors) != 1)
        return fail(why, "multilinear degree-2 group order mismatch");
    if (group_order(cocycles1(z2, reg).first.invariant_factors) != 1)
        return fail(why, "degree-1 cocycle group order mismatch");
    return true;
}

// ---- 4: existence == obstruction class == exhaustive search ----------------

bool crit_existence_three_ways(std::string& why) {
    FiniteRing z2 = ring_preset("Z2");
    FiniteBimodule reg = bimodule_preset(z2, "regular");
    ReducedAnnCategory src =
        make_reduced_category(z2, reg, zero_cochain3(z2, reg));
    RingHom p = identity_hom(z2);
    EquivariantMap q = identity_equivariant(reg);

    CohomologyResult h3 = cohomology_group(z2, reg, 3);
    if (group_order(h3.group.invariant_factors) != 2 || h3.reps3.size() != 1)
        return fail(why, "degree-3 group is not of order 2");
    Cochain3 shift_off = h3.reps3[0];

    int checked = 0;
    for (int use_shift = 0; use_shift < 2; ++use_shift) {
        bool expected = use_shift == 0;
        bool any_fail = false;
        oracle::for_each_normalized_g(z2, reg, [&](const Cochain2& g) {
            Cochain3 h = d2(z2, reg, g);
            if (use_shift) h = add3(reg, h, shift_off);
            ReducedAnnCategory tgt = make_reduced_category(z2, reg, h);
            auto witness = functor_exists(p, q, src, tgt);
            bool via_solver = witness.has_value();
            bool via_class =
                coboundary_witness(z2, reg, obstruction(p, q, src, tgt))
                    .has_value();
            bool via_search = !all_functor_structures(p, q, src, tgt).empty();
            if (via_solver != expected || via_class != expected ||
                via_search != expected)
                any_fail = true;
            if (witness && !is_functor(*witness, src, tgt).ok())
                any_fail = true;
            ++checked;
        });
        if (any_fail)
            return fail(why, use_shift ? "disagreement on shifted targets"
                                       : "disagreement on coboundary targets");
    }
    if (checked != 8)
        return fail(why, "expected 8 target categories, saw " +
                             std::to_string(checked));
    return true;
}

// ---- 5: classification count == group order == pairwise class count --------

bool crit_classification_counts(std::string& why) {
    for (const char* name : {"Z2", "Z3"}) {
        FiniteRing r = ring_preset(name);
        FiniteBimodule m = bimodule_preset(r, "regular");
        ReducedAnnCategory cat =
            make_reduced_category(r, m, zero_cochain3(r, m));
        RingHom p = identity_hom(r);
        EquivariantMap q = identity_equivariant(m);

        std::vector<AnnFunctorStructure> reps =
            classify_functors(p, q, cat, cat);
        long order =
            group_order(cohomology_group(r, m, 2).group.invariant_factors)
                .get_si();
        if (static_cast<long>(reps.size()) != order)
            return fail(why, std::string(name) + ": representative count " +
                                 std::to_string(reps.size()) +
                                 " != group order " + std::to_string(order));

        std::vector<Cochain2> all = all_functor_structures(p, q, cat, cat);
        std::vector<AnnFunctorStructure> classes;
        for (const Cochain2& g : all) {
            AnnFunctorStructure f{p, q, g};
            bool seen = false;
            for (const AnnFunctorStructure& c : classes)
                if (is_congruent(f, c, cat, cat)) {
                    seen = true;
                    break;
                }
            if (!seen) classes.push_back(f);
        }
        if (static_cast<long>(classes.size()) != order)
            return fail(why, std::string(name) + ": pairwise class count " +
                                 std::to_string(classes.size()) +
                                 " != group order " + std::to_string(order));
    }
    return true;
}

// ---- 6: automorphism groups in both flavors --------------------------------

bool crit_aut_groups(std::string& why) {
    for (const char* name : {"Z2", "Z3"}) {
        FiniteRing r = ring_preset(name);
        FiniteBimodule m = bimodule_preset(r, "regular");
        ReducedAnnCategory cat =
            make_reduced_category(r, m, zero_cochain3(r, m));
        AnnFunctorStructure f{identity_hom(r), identity_equivariant(m),
                              zero_cochain2(r, m)};

        auto [grp, gens] = aut_group(f, cat, cat);
        int z1_count = 0;
        oracle::for_each_normalized_u(r, m, [&](const Cochain1& u) {
            if (d1(r, m, u) == zero_cochain2(r, m)) ++z1_count;
        });
        if (group_order(grp.invariant_factors) != z1_count)
            return fail(why, std::string(name) +
                                 ": flat group order != exhaustive count");
        for (const Cochain1& u : gens)
            if (!(d1(r, m, u) == zero_cochain2(r, m)))
                return fail(why, std::string(name) +
                                     ": a generator is not a cocycle");

        auto [sgrp, sgens] = strong_aut(f, cat, cat);
        int derivations = 0;
        oracle::for_each_multilinear(r, m, 1, [&](const HochCochain& u) {
            HochCochain du = hoch_d(r, m, u);
            if (std::all_of(du.f.begin(), du.f.end(),
                            [](int a) { return a == 0; }))
                ++derivations;
        });
        if (group_order(sgrp.invariant_factors) != derivations)
            return fail(why, std::string(name) +
                                 ": strong group order != derivation count");
        for (const HochCochain& u : sgens) {
            HochCochain du = hoch_d(r, m, u);
            if (!std::all_of(du.f.begin(), du.f.end(),
                             [](int a) { return a == 0; }))
                return fail(why, std::string(name) +
                                     ": a strong generator is not a cocycle");
        }
    }
    return true;
}

// ---- 7: multilinear cochains embed compatibly ------------------------------

bool crit_multilinear_embedding(std::string& why) {
    FiniteRing z2 = ring_preset("Z2");
    FiniteBimodule reg = bimodule_preset(z2, "regular");

    int multilinear = 0, cocycles = 0;
    bool embed_ok = true;
    oracle::for_each_multilinear(z2, reg, 3, [&](const HochCochain& f) {
        ++multilinear;
        if (is_hoch_z3(z2, reg, f)) {
            ++cocycles;
            if (!is_z3(z2, reg, embed_to_maclane(z2, reg, f)).ok())
                embed_ok = false;
        }
    });
    if (multilinear != 2)
        return fail(why, "expected 2 multilinear degree-3 tables, saw " +
                             std::to_string(multilinear));
    if (cocycles < 1 || !embed_ok)
        return fail(why, "an embedded five-term cocycle left the cocycle group");

    bool witness_ok = true;
    oracle::for_each_multilinear(z2, reg, 2, [&](const HochCochain& v) {
        Cochain3 target = embed_to_maclane(z2, reg, hoch_d(z2, reg, v));
        Cochain2 pair = make_cochain2(z2, reg, std::vector<int>(4, 0), v.f);
        if (!(d2(z2, reg, pair) == target)) witness_ok = false;
        if (!coboundary_witness(z2, reg, target)) witness_ok = false;
    });
    if (!witness_ok)
        return fail(why,
                    "a differential image failed to match its (0, nu) witness");
    return true;
}

// ---- 8: normal form and solver against brute force -------------------------

bool crit_linear_algebra(std::string& why) {
    std::mt19937 rng(987654321);
    std::uniform_int_distribution<int> dim(1, 20), entry(-99, 99);
    for (int t = 0; t < 200; ++t) {
        std::size_t rows = dim(rng), cols = dim(rng);
        Matrix a(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a(i, j) = entry(rng);
        SmithForm s = smith_normal_form(a);
        Int du = determinant(s.u), dv = determinant(s.v);
        if (!(du == 1 || du == -1) || !(dv == 1 || dv == -1))
            return fail(why, "a transform is not unimodular");
        if (!(s.u * a * s.v == s.d)) return fail(why, "U*A*V != D");
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (i != j && s.d(i, j) != 0)
                    return fail(why, "D has an off-diagonal entry");
        std::size_t rk = std::min(rows, cols);
        for (std::size_t i = 0; i + 1 < rk; ++i) {
            const Int& x = s.d(i, i);
            const Int& y = s.d(i + 1, i + 1);
            if (x < 0 || y < 0) return fail(why, "negative diagonal entry");
            if (x == 0 ? y != 0 : y % x != 0)
                return fail(why, "diagonal divisibility fails");
        }
    }

    std::uniform_int_distribution<int> kdim(1, 12), rdim(1, 6), bit(0, 1);
    for (int t = 0; t < 50; ++t) {
        std::size_t k = kdim(rng), r = rdim(rng);
        std::vector<Int> dom(k, 2), cod(r, 2);
        Matrix a(r, k);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < k; ++j) a(i, j) = bit(rng);
        std::vector<Int> b(r);
        for (std::size_t i = 0; i < r; ++i) b[i] = bit(rng);
        LinearMap map = make_linear_map(dom, cod, a);
        auto x = solve_mod(map, b);

        bool brute = false;
        for (long mask = 0; mask < (1L << k) && !brute; ++mask) {
            bool hit = true;
            for (std::size_t i = 0; i < r && hit; ++i) {
                long acc = 0;
                for (std::size_t j = 0; j < k; ++j)
                    acc += a(i, j).get_si() * ((mask >> j) & 1);
                if (mod_floor(acc, 2) != b[i]) hit = false;
            }
            brute = hit;
        }
        if (x.has_value() != brute)
            return fail(why, "solver disagrees with brute force");
        if (x) {
            for (std::size_t i = 0; i < r; ++i) {
                Int acc = 0;
                for (std::size_t j = 0; j < k; ++j) acc += a(i, j) * (*x)[j];
                if (mod_floor(acc, 2) != b[i])
                    return fail(why, "returned solution does not satisfy");
            }
            for (std::size_t j = 0; j < k; ++j)
                if ((*x)[j] < 0 || (*x)[j] >= 2)
                    return fail(why, "solution coordinate out of range");
        }
    }
    return true;
}

// ---- 9: total runtime and command-line determinism -------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool crit_determinism(const Harness& h, std::string& why) {
    const std::string base = "/tmp/anncat_acceptance";
    for (const char* args :
         {"classify --ring Z3 --bimodule regular",
          "strong-exists --ring Z2 --bimodule regular",
          "cohomology --theory maclane --degree 2 --ring Z4 --bimodule Z2"}) {
        std::string first, paths[2];
        for (int run = 0; run < 2; ++run) {
            paths[run] = base + "_" + std::to_string(run) + ".txt";
            std::string cmd = std::string(ANNCAT_CLI_PATH) + " " + args +
                              " > " + paths[run] + " 2>&1";
            int status = std::system(cmd.c_str());
            if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
                return fail(why, std::string("command failed: ") + args);
        }
        if (slurp(paths[0]) != slurp(paths[1]))
            return fail(why, std::string("outputs differ for: ") + args);
        if (slurp(paths[0]).empty())
            return fail(why, std::string("empty output for: ") + args);
    }
    if (h.total_seconds >= 60.0)
        return fail(why, "checks 1-8 exceeded the whole-run budget");
    return true;
}

} // namespace

int main() {
    Harness h;
    h.criterion(1, "composite differential vanishes", 1.0, crit_d2_after_d1);
    h.criterion(2, "coboundaries are cocycles", 5.0,
                crit_coboundaries_are_cocycles);
    h.criterion(3, "anchor group orders", 1.0, crit_anchor_orders);
    h.criterion(4, "existence equals obstruction class equals search", 10.0,
                crit_existence_three_ways);
    h.criterion(5, "classification counts", 30.0, crit_classification_counts);
    h.criterion(6, "automorphism groups", 5.0, crit_aut_groups);
    h.criterion(7, "multilinear embedding", 1.0, crit_multilinear_embedding);
    h.criterion(8, "normal form and solver", 30.0, crit_linear_algebra);
    h.criterion(9, "runtime and binary determinism", 60.0,
                [&](std::string& why) { return crit_determinism(h, why); });
    std::printf("%d/9 criteria passed\n", 9 - h.failed);
    return h.failed == 0 ? 0 : 1;
}

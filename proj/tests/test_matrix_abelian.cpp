#include <doctest.h>

#include <array>
#include <random>
#include <set>

#include "anncat/abelian.hpp"

using namespace anncat;

namespace {

Matrix from_rows(const std::vector<std::vector<long>>& rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    return m;
}

void check_smith(const Matrix& a) {
    SmithForm f = smith_normal_form(a);
    CHECK(f.u * a * f.v == f.d);
    Int du = determinant(f.u), dv = determinant(f.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    Int prev = 0;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
        const Int& d = f.d(i, i);
        CHECK(d >= 0);
        if (prev != 0) CHECK((d == 0 || d % prev == 0));
        if (prev == 0 && i > 0) CHECK(d == 0); // zeros only at the tail
        prev = d;
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (j != i) CHECK(f.d(i, j) == 0);
    }
}

std::vector<Int> to_vec(const std::vector<long>& v) {
    return std::vector<Int>(v.begin(), v.end());
}

} // namespace

TEST_CASE("smith normal form of the zero matrix") {
    Matrix a(3, 4);
    SmithForm f = smith_normal_form(a);
    CHECK(f.d == a);
    CHECK(f.u == Matrix::identity(3));
    CHECK(f.v == Matrix::identity(4));
}

TEST_CASE("smith normal form of diag(2,3) is diag(1,6)") {
    Matrix a = from_rows({{2, 0}, {0, 3}});
    SmithForm f = smith_normal_form(a);
    CHECK(f.d(0, 0) == 1);
    CHECK(f.d(1, 1) == 6);
    CHECK(f.u * a * f.v == f.d);
}

TEST_CASE("smith normal form on random matrices") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> ent(-9, 9);
    std::uniform_int_distribution<int> dim(1, 12);
    for (int it = 0; it < 25; ++it) {
        Matrix a(dim(rng), dim(rng));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = ent(rng);
        check_smith(a);
    }
}

TEST_CASE("smith normal form of empty shapes") {
    check_smith(Matrix(0, 0));
    check_smith(Matrix(0, 3));
    check_smith(Matrix(3, 0));
}

TEST_CASE("solve_mod basics") {
    // x -> 2x on Z/4: 1 is not in the image, 2 is.
    LinearMap dbl = make_linear_map({4}, {4}, from_rows({{2}}));
    CHECK(!solve_mod(dbl, {Int(1)}));
    auto s = solve_mod(dbl, {Int(2)});
    REQUIRE(s);
    CHECK(mod_floor(2 * (*s)[0], 4) == 2);

    // b = 0 gets the canonical all-zero solution.
    auto z = solve_mod(dbl, {Int(0)});
    REQUIRE(z);
    CHECK((*z)[0] == 0);
}

TEST_CASE("solve_mod against exhaustive enumeration over (Z/2)^k") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int it = 0; it < 60; ++it) {
        std::size_t n = 1 + it % 5, m = 1 + (it / 5) % 4;
        Matrix a(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = bit(rng);
        std::vector<Int> dom(n, 2), cod(m, 2), b(m);
        for (std::size_t i = 0; i < m; ++i) b[i] = bit(rng);
        LinearMap map = make_linear_map(dom, cod, a);

        bool any = false;
        for (unsigned mask = 0; mask < (1u << n) && !any; ++mask) {
            bool ok = true;
            for (std::size_t i = 0; i < m && ok; ++i) {
                Int acc = 0;
                for (std::size_t j = 0; j < n; ++j)
                    if (mask >> j & 1) acc += a(i, j);
                ok = mod_floor(acc, 2) == b[i];
            }
            any = ok;
        }
        auto s = solve_mod(map, b);
        CHECK(any == bool(s));
        if (s)
            for (std::size_t i = 0; i < m; ++i) {
                Int acc = 0;
                for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * (*s)[j];
                CHECK(mod_floor(acc, 2) == b[i]);
            }
    }
}

TEST_CASE("solve_mod with mixed moduli round-trips") {
    std::mt19937 rng(4242);
    std::vector<Int> dom = to_vec({4, 2, 3}), cod = to_vec({2, 6});
    for (int it = 0; it < 40; ++it) {
        Matrix a(2, 3);
        // Columns must define a map on the quotients; build them from
        // multiples that annihilate correctly.
        a(0, 0) = (rng() % 2) * 1;       // 4*x kills Z/2 for any entry
        a(1, 0) = (rng() % 2) * 3;       // 4*3 = 12 = 0 in Z/6
        a(0, 1) = rng() % 2;             // 2*x = 0 in Z/2
        a(1, 1) = (rng() % 2) * 3;       // 2*3 = 0 in Z/6
        a(0, 2) = 0;                     // 3*x = 0 in Z/2 forces even; take 0
        a(1, 2) = (rng() % 3) * 2;       // 3*2k = 0 in Z/6
        LinearMap map = make_linear_map(dom, cod, a);
        std::vector<Int> x = {Int(long(rng() % 4)), Int(long(rng() % 2)),
                              Int(long(rng() % 3))};
        std::vector<Int> b(2, 0);
        for (std::size_t i = 0; i < 2; ++i) {
            Int acc = 0;
            for (std::size_t j = 0; j < 3; ++j) acc += a(i, j) * x[j];
            b[i] = mod_floor(acc, cod[i]);
        }
        auto s = solve_mod(map, b);
        REQUIRE(s);
        for (std::size_t i = 0; i < 2; ++i) {
            Int acc = 0;
            for (std::size_t j = 0; j < 3; ++j) acc += a(i, j) * (*s)[j];
            CHECK(mod_floor(acc, cod[i]) == b[i]);
        }
    }
}

TEST_CASE("kernel of the identity is trivial") {
    LinearMap id = make_linear_map({6}, {6}, Matrix::identity(1));
    Presented k = kernel(id);
    CHECK(k.group.trivial());
}

TEST_CASE("kernel and image orders multiply to the domain order") {
    std::mt19937 rng(999);
    std::vector<Int> moduli = to_vec({2, 4, 3});
    for (int it = 0; it < 30; ++it) {
        Matrix a(3, 3);
        // Random well-defined endomorphism of Z/2 x Z/4 x Z/3: no mixing
        // between coprime parts, Z/4 -> Z/2 must factor through reduction.
        a(0, 0) = rng() % 2;
        a(0, 1) = rng() % 2;
        a(1, 0) = (rng() % 2) * 2;
        a(1, 1) = rng() % 4;
        a(2, 2) = rng() % 3;
        LinearMap map = make_linear_map(moduli, moduli, a);
        Presented k = kernel(map), im = image(map);
        CHECK(k.group.order() * im.group.order() == group_order(moduli));

        // Every kernel generator really dies, with the advertised order.
        for (std::size_t j = 0; j < k.gens.cols(); ++j) {
            for (std::size_t i = 0; i < 3; ++i) {
                Int acc = 0;
                for (std::size_t c = 0; c < 3; ++c) acc += a(i, c) * k.gens(c, j);
                CHECK(mod_floor(acc, moduli[i]) == 0);
            }
        }
    }
}

TEST_CASE("quotient of Z/4 by the subgroup {0,2} is Z/2") {
    AbelianGroup q = quotient_invariants({Int(4)}, from_rows({{2}}));
    REQUIRE(q.invariant_factors.size() == 1);
    CHECK(q.invariant_factors[0] == 2);
}

TEST_CASE("quotient by the trivial subgroup canonicalizes the ambient") {
    AbelianGroup q = quotient_invariants(to_vec({4, 2}), Matrix(2, 0));
    REQUIRE(q.invariant_factors.size() == 2);
    CHECK(q.invariant_factors[0] == 2);
    CHECK(q.invariant_factors[1] == 4);
}

TEST_CASE("subgroup presentation of {0,2} in Z/4") {
    Presented p = subgroup_presentation({Int(4)}, from_rows({{2}}));
    REQUIRE(p.group.invariant_factors.size() == 1);
    CHECK(p.group.invariant_factors[0] == 2);
    CHECK(p.gens(0, 0) == 2);
}

TEST_CASE("subquotient flags generators outside the subgroup") {
    // Z = {0,2} < Z/4; the element 1 is not in Z.
    Presented z = subgroup_presentation({Int(4)}, from_rows({{2}}));
    CHECK_THROWS_AS(subquotient({Int(4)}, z, from_rows({{1}})), ValidationError);
    Quotient q = subquotient({Int(4)}, z, from_rows({{2}}));
    CHECK(q.group.trivial());
}

TEST_CASE("rowspace kernels match brute force over small boxes") {
    std::mt19937 rng(4242);
    const std::int64_t L = 12;
    const std::int64_t choices[] = {1, 2, 3, 4, 6, 12};
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Int> dom;
        std::vector<std::int64_t> dom64;
        for (int j = 0; j < 4; ++j) {
            std::int64_t d = choices[rng() % 6];
            dom.emplace_back(long(d));
            dom64.push_back(d);
        }
        // Rows scaled so each coefficient annihilates its coordinate modulus.
        std::vector<std::vector<std::int64_t>> raw;
        RowSpace rs(4, L);
        for (int i = 0; i < 3; ++i) {
            std::vector<std::int64_t> row(4);
            for (int j = 0; j < 4; ++j)
                row[j] = (L / dom64[j]) * std::int64_t(rng() % unsigned(dom64[j]));
            raw.push_back(row);
            rs.insert_dense(row, {});
        }
        std::size_t cnt = 0;
        std::vector<std::int64_t> x(4, 0);
        for (;;) {
            bool ok = true;
            for (const auto& row : raw) {
                std::int64_t acc = 0;
                for (int j = 0; j < 4; ++j) acc += row[j] * x[j];
                if (acc % L != 0) {
                    ok = false;
                    break;
                }
            }
            cnt += ok;
            int j = 0;
            while (j < 4 && ++x[j] == dom64[j]) x[j++] = 0;
            if (j == 4) break;
        }
        Presented k = kernel_of(dom, rs);
        CHECK(k.group.order() == long(cnt));
        for (std::size_t c = 0; c < k.gens.cols(); ++c)
            for (const auto& row : raw) {
                Int acc = 0;
                for (int j = 0; j < 4; ++j) acc += Int(row[j]) * k.gens(j, c);
                CHECK(mod_floor(acc, L) == 0);
            }
    }
}

TEST_CASE("subgroup closure size matches its presentation") {
    std::mt19937 rng(777);
    const std::int64_t choices[] = {1, 2, 3, 4, 6};
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Int> amb;
        std::vector<std::int64_t> amb64;
        for (int j = 0; j < 3; ++j) {
            std::int64_t d = choices[rng() % 5];
            amb.emplace_back(long(d));
            amb64.push_back(d);
        }
        Matrix gens(3, 2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j)
                gens(i, j) = std::int64_t(rng() % unsigned(amb64[i]));

        auto encode = [&](const std::array<std::int64_t, 3>& v) {
            return (v[0] * amb64[1] + v[1]) * amb64[2] + v[2];
        };
        std::set<std::int64_t> closure{0};
        for (bool grew = true; grew;) {
            grew = false;
            std::vector<std::int64_t> snapshot(closure.begin(), closure.end());
            for (std::int64_t e : snapshot) {
                std::array<std::int64_t, 3> v{};
                v[2] = e % amb64[2];
                v[1] = (e / amb64[2]) % amb64[1];
                v[0] = e / (amb64[2] * amb64[1]);
                for (int j = 0; j < 2; ++j) {
                    std::array<std::int64_t, 3> w = v;
                    for (int i = 0; i < 3; ++i)
                        w[i] = (w[i] + gens(i, j).get_si()) % amb64[i];
                    grew |= closure.insert(encode(w)).second;
                }
            }
        }

        Presented p = subgroup_presentation(amb, gens);
        AbelianGroup q = quotient_invariants(amb, gens);
        CHECK(p.group.order() == long(closure.size()));
        CHECK(p.group.order() * q.order() == group_order(amb));
        for (std::size_t c = 0; c < p.gens.cols(); ++c) {
            std::array<std::int64_t, 3> v{};
            Int order = 1;
            for (int i = 0; i < 3; ++i) {
                v[i] = mod_floor(p.gens(i, c), amb[i]).get_si();
                order = lcm(order, amb[i] / gcd(amb[i], p.gens(i, c)));
            }
            CHECK(closure.count(encode(v)) == 1);
            CHECK(order == p.group.invariant_factors[c]);
        }
    }
}

TEST_CASE("rowspace handles empty and modulus-one systems") {
    RowSpace rs(3, 1);
    rs.insert_dense({5, 7, 9}, {});
    CHECK(rs.size() == 0);
    Presented k = kernel_of(to_vec({1, 1, 1}), rs);
    CHECK(k.group.trivial()); // the whole domain is trivial

    LinearMap zero = make_linear_map({3, 3}, {3}, Matrix(1, 2));
    Presented kz = kernel(zero);
    CHECK(kz.group.order() == 9);
}

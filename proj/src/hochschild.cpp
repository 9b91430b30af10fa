#include "anncat/hochschild.hpp"

#include <cassert>
#include <cstdint>
#include <utility>

#include "anncat/errors.hpp"
#include "anncat/maclane.hpp"

namespace anncat {

namespace {

using SparseRow = std::vector<std::pair<std::size_t, std::int64_t>>;

long modulus_of(const FiniteBimodule& m) {
    return m.factors.empty() ? 1 : m.factors.back().get_si();
}

bool all_zero(const std::vector<int>& t) {
    for (int v : t)
        if (v) return false;
    return true;
}

// Coordinate space of degree-d multilinear tables.  Multilinearity pins
// every entry with a zero argument to zero, so columns exist only for
// all-nonzero argument tuples: one block of module coordinates per tuple.
struct HSpace {
    int deg = 1, n = 1, k = 0;
    long L = 1;
    std::vector<int> nz;   // nonzero ring elements in element order
    std::vector<int> pos;  // element -> position in nz, -1 at the ring zero
    std::vector<Int> moduli;

    int cols() const { return int(moduli.size()); }
    std::size_t tuples() const {
        return k ? moduli.size() / std::size_t(k) : 0;
    }

    // Column block of an argument tuple, or -1 when some argument is zero.
    long base(const int* a) const {
        long t = 0;
        for (int i = 0; i < deg; ++i) {
            int p = pos[a[i]];
            if (p < 0) return -1;
            t = t * long(nz.size()) + p;
        }
        return t * k;
    }
};

HSpace build_hspace(const FiniteRing& r, const FiniteBimodule& m, int deg) {
    HSpace s;
    s.deg = deg;
    s.n = r.n;
    s.k = m.k();
    s.L = modulus_of(m);
    s.pos.assign(std::size_t(r.n), -1);
    for (int x = 0; x < r.n; ++x)
        if (x != r.zero) {
            s.pos[x] = int(s.nz.size());
            s.nz.push_back(x);
        }
    std::size_t tu = 1;
    for (int i = 0; i < deg; ++i) tu *= s.nz.size();
    s.moduli = m.moduli_for(tu);
    return s;
}

// Arguments of tuple index t, first argument most significant (matches base).
void tuple_args(const HSpace& sp, std::size_t t, int* a) {
    const std::size_t sz = sp.nz.size();
    for (int i = sp.deg - 1; i >= 0; --i) {
        a[i] = sp.nz[t % sz];
        t /= sz;
    }
}

std::vector<Int> encode_h(const HSpace& sp, const FiniteBimodule& m,
                          const HochCochain& f) {
    std::vector<Int> v(sp.moduli.size());
    int a[3] = {0, 0, 0};
    for (std::size_t t = 0; t < sp.tuples(); ++t) {
        tuple_args(sp, t, a);
        int e = sp.deg == 1   ? f.at(a[0])
                : sp.deg == 2 ? f.at(a[0], a[1])
                              : f.at(a[0], a[1], a[2]);
        std::vector<Int> c = m.coords(e);
        for (int i = 0; i < sp.k; ++i) v[t * std::size_t(sp.k) + i] = c[i];
    }
    return v;
}

HochCochain decode_h(const HSpace& sp, const FiniteRing& r,
                     const FiniteBimodule& m, const std::vector<Int>& v) {
    std::size_t total = 1;
    for (int i = 0; i < sp.deg; ++i) total *= std::size_t(r.n);
    std::vector<int> table(total, 0);
    int a[3] = {0, 0, 0};
    std::vector<Int> c(std::size_t(sp.k));
    for (std::size_t t = 0; t < sp.tuples(); ++t) {
        tuple_args(sp, t, a);
        for (int i = 0; i < sp.k; ++i) c[i] = v[t * std::size_t(sp.k) + i];
        std::size_t idx = 0;
        for (int i = 0; i < sp.deg; ++i)
            idx = idx * std::size_t(r.n) + std::size_t(a[i]);
        table[idx] = m.encode(c);
    }
    return make_hoch_cochain(r, m, sp.deg, std::move(table));
}

// One additivity instance in slot s contributes k rows, one per value
// coordinate, each scaled by L/d_i.  The x + y = 0 term is pinned.
void emit_additivity(const FiniteBimodule& m, const HSpace& sp, int s,
                     const int* args, int x, int y, int xy, RowSpace& rs) {
    SparseRow row;
    int a[3] = {0, 0, 0};
    for (int i = 0; i < sp.deg; ++i) a[i] = args[i];
    for (int i = 0; i < sp.k; ++i) {
        long scale = sp.L / m.factors[std::size_t(i)].get_si();
        row.clear();
        a[s] = xy;
        if (long b = sp.base(a); b >= 0)
            row.push_back({std::size_t(b) + std::size_t(i), scale});
        a[s] = x;
        row.push_back({std::size_t(sp.base(a)) + std::size_t(i), -scale});
        a[s] = y;
        row.push_back({std::size_t(sp.base(a)) + std::size_t(i), -scale});
        rs.insert(row);
    }
}

// The multilinear tables as a subgroup of the table space: additivity on
// all-nonzero instances is the whole condition, because entries with a zero
// argument are pinned and additivity instances touching them degenerate.
Presented multilinear_subgroup(const FiniteRing& r, const FiniteBimodule& m,
                               const HSpace& sp) {
    RowSpace rs(sp.moduli.size(), sp.L);
    const std::size_t sz = sp.nz.size();
    std::size_t others = 1;
    for (int i = 1; i < sp.deg; ++i) others *= sz;
    int args[3] = {0, 0, 0};
    for (int s = 0; s < sp.deg; ++s)
        for (std::size_t o = 0; o < others; ++o) {
            std::size_t e = o;
            for (int i = sp.deg - 1; i >= 0; --i) {
                if (i == s) continue;
                args[i] = sp.nz[e % sz];
                e /= sz;
            }
            for (std::size_t xi = 0; xi < sz; ++xi)
                for (std::size_t yi = 0; yi < sz; ++yi) {
                    int x = sp.nz[xi], y = sp.nz[yi];
                    emit_additivity(m, sp, s, args, x, y, r.add(x, y), rs);
                }
        }
    return kernel_of(sp.moduli, rs);
}

// (d u)(x, y): the nu component of the degree-1 differential.  The mu
// component is u(x + y) - u(x) - u(y), identically zero on additive u.
HochCochain diff1(const FiniteRing& r, const FiniteBimodule& m,
                  const HochCochain& u) {
    Cochain2 g = d1(r, m, make_cochain1(r, m, u.f));
    assert(all_zero(g.mu));
    return make_hoch_cochain(r, m, 2, std::move(g.nu));
}

// (d v)(x, y, z): the alpha component of the degree-2 differential of
// (mu = 0, nu = v).  The sigma, lambda, and rho components collapse on
// bi-additive v.
HochCochain diff2(const FiniteRing& r, const FiniteBimodule& m,
                  const HochCochain& v) {
    std::vector<int> zmu(std::size_t(r.n) * std::size_t(r.n), 0);
    Cochain3 h = d2(r, m, make_cochain2(r, m, std::move(zmu), v.f));
    assert(all_zero(h.sigma) && all_zero(h.lambda) && all_zero(h.rho));
    return make_hoch_cochain(r, m, 3, std::move(h.alpha));
}

// Five-term expansion one degree above the stored differentials; vanishing
// on every tuple is the degree-3 cocycle condition.
int five_term(const FiniteRing& r, const FiniteBimodule& m,
              const HochCochain& f, int x, int y, int z, int t) {
    int v = m.left(x, f.at(y, z, t));
    v = m.sub(v, f.at(r.mul(x, y), z, t));
    v = m.add(v, f.at(x, r.mul(y, z), t));
    v = m.sub(v, f.at(x, y, r.mul(z, t)));
    return m.add(v, m.right(t, f.at(x, y, z)));
}

HochCochain column_cochain(const HSpace& sp, const FiniteRing& r,
                           const FiniteBimodule& m, const Matrix& gens,
                           std::size_t j) {
    std::vector<Int> v(gens.rows());
    for (std::size_t i = 0; i < gens.rows(); ++i) v[i] = gens(i, j);
    return decode_h(sp, r, m, v);
}

// Differential images of presented degree-(nxt.deg - 1) generators, encoded
// in the next table space.
Matrix image_columns(const FiniteRing& r, const FiniteBimodule& m,
                     const HSpace& sp, const HSpace& nxt, const Presented& u) {
    Matrix cols(std::size_t(nxt.cols()), u.gens.cols());
    for (std::size_t j = 0; j < u.gens.cols(); ++j) {
        HochCochain f = column_cochain(sp, r, m, u.gens, j);
        HochCochain df = sp.deg == 1 ? diff1(r, m, f) : diff2(r, m, f);
        std::vector<Int> w = encode_h(nxt, m, df);
        for (std::size_t i = 0; i < w.size(); ++i) cols(i, j) = w[i];
    }
    return cols;
}

// Five-term values of presented degree-3 generators over all-nonzero
// four-tuples.  A zero argument kills every term of a multilinear instance,
// so nothing is lost by skipping those tuples.
Matrix five_term_columns(const FiniteRing& r, const FiniteBimodule& m,
                         const HSpace& sp3, const Presented& u,
                         std::vector<Int>& cod) {
    const std::size_t sz = sp3.nz.size();
    const std::size_t tu = sz * sz * sz * sz;
    cod = m.moduli_for(tu);
    Matrix cols(cod.size(), u.gens.cols());
    for (std::size_t j = 0; j < u.gens.cols(); ++j) {
        HochCochain f = column_cochain(sp3, r, m, u.gens, j);
        std::size_t row = 0;
        for (std::size_t t = 0; t < tu; ++t) {
            std::size_t e = t;
            int a[4];
            for (int i = 3; i >= 0; --i) {
                a[i] = sp3.nz[e % sz];
                e /= sz;
            }
            std::vector<Int> c =
                m.coords(five_term(r, m, f, a[0], a[1], a[2], a[3]));
            for (int i = 0; i < sp3.k; ++i) cols(row + i, j) = c[i];
            row += std::size_t(sp3.k);
        }
    }
    return cols;
}

// The generators of `inner` are coordinates over the columns of
// `outer_gens`; rewrite them as ambient columns.
Presented compose_presented(const std::vector<Int>& amb,
                            const Matrix& outer_gens, Presented inner) {
    Matrix g(amb.size(), inner.gens.cols());
    for (std::size_t c = 0; c < inner.gens.cols(); ++c)
        for (std::size_t i = 0; i < amb.size(); ++i) {
            Int acc = 0;
            for (std::size_t j = 0; j < outer_gens.cols(); ++j)
                acc += outer_gens(i, j) * inner.gens(j, c);
            g(i, c) = mod_floor(acc, amb[i]);
        }
    return Presented{std::move(inner.group), std::move(g)};
}

// Kernel of the differential inside the multilinear subgroup, presented in
// the ambient table space.
Presented cocycle_presented(const FiniteRing& r, const FiniteBimodule& m,
                            const HSpace& sp) {
    Presented u = multilinear_subgroup(r, m, sp);
    if (u.gens.cols() == 0) return u;
    if (sp.deg < 3) {
        HSpace nxt = build_hspace(r, m, sp.deg + 1);
        LinearMap dm = make_linear_map(u.group.invariant_factors, nxt.moduli,
                                       image_columns(r, m, sp, nxt, u));
        return compose_presented(sp.moduli, u.gens, kernel(dm));
    }
    std::vector<Int> cod;
    Matrix cols = five_term_columns(r, m, sp, u, cod);
    LinearMap dm = make_linear_map(u.group.invariant_factors, std::move(cod),
                                   std::move(cols));
    return compose_presented(sp.moduli, u.gens, kernel(dm));
}

std::vector<HochCochain> decode_columns(const HSpace& sp, const FiniteRing& r,
                                        const FiniteBimodule& m,
                                        const Matrix& cols) {
    std::vector<HochCochain> out;
    for (std::size_t j = 0; j < cols.cols(); ++j)
        out.push_back(column_cochain(sp, r, m, cols, j));
    return out;
}

} // namespace

HochCochain hoch_d(const FiniteRing& r, const FiniteBimodule& m,
                   const HochCochain& f) {
    if (f.degree != 1 && f.degree != 2)
        throw ValidationError("BadDegree", "differential takes degree 1 or 2");
    HochCochain v = make_hoch_cochain(r, m, f.degree, f.f);
    return v.degree == 1 ? diff1(r, m, v) : diff2(r, m, v);
}

Cochain3 embed_to_maclane(const FiniteRing& r, const FiniteBimodule& m,
                          const HochCochain& f) {
    if (f.degree != 3)
        throw ValidationError("BadDegree", "embedding takes degree 3");
    HochCochain v = make_hoch_cochain(r, m, 3, f.f);
    Cochain3 out = zero_cochain3(r, m);
    out.alpha = std::move(v.f);
    return out;
}

bool is_hoch_z3(const FiniteRing& r, const FiniteBimodule& m,
                const HochCochain& f) {
    return is_z3(r, m, embed_to_maclane(r, m, f)).ok();
}

std::optional<HochCochain> hoch_coboundary_witness(const FiniteRing& r,
                                                   const FiniteBimodule& m,
                                                   const HochCochain& f) {
    if (f.degree != 3)
        throw ValidationError("BadDegree", "witnesses exist in degree 3 only");
    HochCochain target = make_hoch_cochain(r, m, 3, f.f);
    if (m.k() == 0) return zero_hoch_cochain(r, m, 2);
    HSpace sp2 = build_hspace(r, m, 2);
    HSpace sp3 = build_hspace(r, m, 3);
    Presented u = multilinear_subgroup(r, m, sp2);
    LinearMap dm = make_linear_map(u.group.invariant_factors, sp3.moduli,
                                   image_columns(r, m, sp2, sp3, u));
    auto x = solve_mod(dm, encode_h(sp3, m, target));
    if (!x) return std::nullopt;
    std::vector<Int> v(sp2.moduli.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < u.gens.cols(); ++j)
            acc += u.gens(i, j) * (*x)[j];
        v[i] = mod_floor(acc, sp2.moduli[i]);
    }
    return decode_h(sp2, r, m, v);
}

HochCohomologyResult hoch_cohomology_group(const FiniteRing& r,
                                           const FiniteBimodule& m,
                                           int degree) {
    if (degree < 1 || degree > 3)
        throw ValidationError("BadDegree", "degree must be 1, 2, or 3");
    HochCohomologyResult out;
    if (m.k() == 0) return out;
    HSpace sp = build_hspace(r, m, degree);
    Presented z = cocycle_presented(r, m, sp);
    if (degree == 1) {
        out.group = z.group;
        out.reps = decode_columns(sp, r, m, z.gens);
        return out;
    }
    HSpace prev = build_hspace(r, m, degree - 1);
    Presented uprev = multilinear_subgroup(r, m, prev);
    Quotient q =
        subquotient(sp.moduli, z, image_columns(r, m, prev, sp, uprev));
    out.group = q.group;
    out.reps = decode_columns(sp, r, m, q.reps);
    return out;
}

} // namespace anncat

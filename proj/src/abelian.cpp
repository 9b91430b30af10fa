#include "anncat/abelian.hpp"

#include <algorithm>
#include <numeric>

namespace anncat {

Int group_order(const std::vector<Int>& moduli) {
    Int o = 1;
    for (const Int& m : moduli) o *= m;
    return o;
}

Int mod_floor(const Int& a, const Int& m) {
    assert(m >= 1);
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

LinearMap make_linear_map(std::vector<Int> dom, std::vector<Int> cod, Matrix a) {
    if (a.rows() != cod.size() || a.cols() != dom.size())
        throw ValidationError("IllFormedMap", "matrix shape does not match moduli");
    for (const Int& m : dom)
        if (m < 1) throw ValidationError("IllFormedMap", "domain modulus < 1");
    for (const Int& m : cod)
        if (m < 1) throw ValidationError("IllFormedMap", "codomain modulus < 1");
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (mod_floor(dom[j] * a(i, j), cod[i]) != 0)
                throw ValidationError(
                    "IllFormedMap",
                    "column " + std::to_string(j) + " does not vanish times its modulus");
    return LinearMap{std::move(dom), std::move(cod), std::move(a)};
}

// --- RowSpace ---------------------------------------------------------------

namespace {

std::int64_t mod_floor64(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    if (r < 0) r += m;
    return r;
}

// g = gcd(a, b) = s a + t b, for a, b >= 0.
void ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& g, std::int64_t& s,
             std::int64_t& t) {
    std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t tmp;
        tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = s0 - q * s1; s0 = s1; s1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
    }
    g = r0; s = s0; t = t0;
}

} // namespace

RowSpace::RowSpace(std::size_t cols, std::int64_t modulus, std::size_t rhs_width)
    : cols_(cols), rhs_width_(rhs_width), modulus_(modulus),
      col_to_row_(cols, -1) {
    // Products of two reduced entries and small combination factors must fit
    // in int64; the coefficient moduli in this library are tiny.
    assert(modulus >= 1 && modulus <= (std::int64_t(1) << 20));
}

void RowSpace::insert(const std::vector<std::pair<std::size_t, std::int64_t>>& terms,
                      const std::vector<std::pair<std::size_t, std::int64_t>>& rhs_terms) {
    std::vector<std::int64_t> r(cols_, 0), t(rhs_width_, 0);
    for (const auto& [j, c] : terms) {
        assert(j < cols_);
        r[j] = mod_floor64(r[j] + c, modulus_);
    }
    for (const auto& [j, c] : rhs_terms) {
        assert(j < rhs_width_);
        t[j] = mod_floor64(t[j] + c, modulus_);
    }
    insert_work(std::move(r), std::move(t));
}

void RowSpace::insert_dense(const std::vector<std::int64_t>& row,
                            const std::vector<std::int64_t>& rhs) {
    assert(row.size() == cols_ && rhs.size() == rhs_width_);
    std::vector<std::int64_t> r(cols_), t(rhs_width_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = mod_floor64(row[j], modulus_);
    for (std::size_t j = 0; j < rhs_width_; ++j) t[j] = mod_floor64(rhs[j], modulus_);
    insert_work(std::move(r), std::move(t));
}

void RowSpace::insert_work(std::vector<std::int64_t>&& r, std::vector<std::int64_t>&& t) {
    const std::int64_t L = modulus_;
    std::size_t j = 0;
    while (true) {
        while (j < cols_ && r[j] == 0) ++j;
        if (j == cols_) {
            // Coefficient-free constraint; keep it if it still says something.
            for (std::int64_t x : t)
                if (x != 0) {
                    null_rows_.push_back(std::move(t));
                    break;
                }
            return;
        }
        long pi = col_to_row_[j];
        if (pi < 0) {
            col_to_row_[j] = static_cast<long>(rows_.size());
            pivot_col_.push_back(j);
            rows_.push_back(std::move(r));
            rhs_.push_back(std::move(t));
            return;
        }
        std::vector<std::int64_t>& p = rows_[pi];
        std::vector<std::int64_t>& pt = rhs_[pi];
        if (r[j] % p[j] == 0) {
            const std::int64_t q = r[j] / p[j];
            for (std::size_t c = j; c < cols_; ++c)
                r[c] = mod_floor64(r[c] - q * p[c], L);
            for (std::size_t c = 0; c < rhs_width_; ++c)
                t[c] = mod_floor64(t[c] - q * pt[c], L);
        } else {
            // Unimodular 2x2 combination: pivot becomes gcd, row entry zero.
            std::int64_t g, s, w;
            ext_gcd(p[j], r[j], g, s, w);
            const std::int64_t pq = p[j] / g, rq = r[j] / g;
            for (std::size_t c = j; c < cols_; ++c) {
                const std::int64_t np = mod_floor64(s * p[c] + w * r[c], L);
                const std::int64_t nr = mod_floor64(pq * r[c] - rq * p[c], L);
                p[c] = np;
                r[c] = nr;
            }
            for (std::size_t c = 0; c < rhs_width_; ++c) {
                const std::int64_t np = mod_floor64(s * pt[c] + w * t[c], L);
                const std::int64_t nt = mod_floor64(pq * t[c] - rq * pt[c], L);
                pt[c] = np;
                t[c] = nt;
            }
            // p now has pivot g at column j (g may divide the old pivot, so
            // the gcd can only shrink; no other pivot column is disturbed
            // because both rows vanish left of j).
        }
    }
}

// --- exact stage ------------------------------------------------------------

namespace {

std::int64_t lcm_of(const std::vector<Int>& moduli) {
    Int l = 1;
    for (const Int& m : moduli) l = lcm(l, m);
    assert(l.fits_slong_p());
    return l.get_si();
}

// Scaled rows of `map` fed into a RowSpace with bookkeeping columns tracking
// the original row index (width = cod.size()) or none (width 0).
RowSpace reduce_map(const LinearMap& map, bool track_rhs) {
    const std::int64_t L = lcm_of(map.cod);
    RowSpace rs(map.dom.size(), L, track_rhs ? map.cod.size() : 0);
    std::vector<std::int64_t> row(map.dom.size());
    for (std::size_t i = 0; i < map.cod.size(); ++i) {
        assert(map.cod[i].fits_slong_p());
        const std::int64_t scale = L / map.cod[i].get_si();
        for (std::size_t j = 0; j < map.dom.size(); ++j) {
            Int e = mod_floor(map.a(i, j), map.cod[i]);
            row[j] = e.get_si() * scale;
        }
        if (track_rhs)
            rs.insert_dense(row, [&] {
                std::vector<std::int64_t> t(map.cod.size(), 0);
                t[i] = scale;
                return t;
            }());
        else
            rs.insert_dense(row, {});
    }
    return rs;
}

// Unimodular reduction over Z/L of an r x c int64 matrix to diagonal shape.
// Every entry is renormalized into [0, L) after each operation, so the whole
// computation is bounded; this is what keeps the large cochain-space kernels
// and presentations out of the exact Smith form, whose transform entries grow.
// Optional trackers:
//   uinv (r x r): maintains  original * (col ops) = uinv * current  (mod L),
//     so original-coordinate generators read off as uinv columns;
//   ctr (c x c): accumulated column operations, current = original * ctr,
//     with row k of ctr reduced modulo cmod[k] (valid whenever shifting the
//     k-th input by cmod[k] does not change the original matrix's output
//     mod L, which holds for all scaled relation rows in this library).
class ModSmith {
  public:
    ModSmith(std::size_t r, std::size_t c, std::int64_t L, bool want_uinv,
             std::vector<std::int64_t> cmod)
        : r_(r), c_(c), L_(L), b_(r * c, 0), cmod_(std::move(cmod)) {
        assert(L >= 1 && L <= (std::int64_t(1) << 20));
        if (want_uinv) {
            uinv_.assign(r * r, 0);
            for (std::size_t i = 0; i < r; ++i) uinv_[i * r + i] = 1 % L;
        }
        if (!cmod_.empty()) {
            assert(cmod_.size() == c);
            ctr_.assign(c * c, 0);
            for (std::size_t j = 0; j < c; ++j) ctr_[j * c + j] = 1 % cmod_[j];
        }
    }

    std::int64_t& at(std::size_t i, std::size_t j) { return b_[i * c_ + j]; }
    std::size_t pivots() const { return pivots_; }
    // gcd(diagonal, L) at slot k; L (trivial) past the placed pivots.
    std::int64_t dbar(std::size_t k) const {
        if (k >= pivots_) return L_;
        std::int64_t g = std::gcd(b_[k * c_ + k], L_);
        return g == 0 ? L_ : g;
    }
    std::int64_t uinv(std::size_t i, std::size_t j) const { return uinv_[i * r_ + j]; }
    std::int64_t ctr(std::size_t i, std::size_t j) const { return ctr_[i * c_ + j]; }

    void run() {
        const std::size_t lim = std::min(r_, c_);
        std::size_t s = 0;
        for (; s < lim; ++s) {
            if (!place_pivot(s)) break;
            for (;;) {
                for (std::size_t i = s + 1; i < r_; ++i) clear_below(s, i);
                bool refilled = false;
                for (std::size_t j = s + 1; j < c_; ++j)
                    refilled |= clear_right(s, j);
                if (refilled) continue;
                // The pivot must divide (mod L) everything that remains so the
                // diagonal chains; a violation is folded into row s and the
                // elimination resumes with a strictly smaller pivot.
                std::int64_t ag = std::gcd(b_[s * c_ + s], L_);
                bool fixed = true;
                for (std::size_t i = s + 1; i < r_ && fixed; ++i)
                    for (std::size_t j = s + 1; j < c_; ++j)
                        if (std::gcd(b_[i * c_ + j], L_) % ag != 0) {
                            rows2(s, i, 1, 1, 0, 1, s);
                            fixed = false;
                            break;
                        }
                if (fixed) break;
            }
        }
        pivots_ = s;
    }

  private:
    // Row pair op: row_t' = x row_t + y row_o, row_o' = z row_t + w row_o,
    // with xw - yz = 1; uinv picks up the inverse as a column operation.
    void rows2(std::size_t t, std::size_t o, std::int64_t x, std::int64_t y,
               std::int64_t z, std::int64_t w, std::size_t from) {
        for (std::size_t j = from; j < c_; ++j) {
            const std::int64_t bt = b_[t * c_ + j], bo = b_[o * c_ + j];
            b_[t * c_ + j] = mod_floor64(x * bt + y * bo, L_);
            b_[o * c_ + j] = mod_floor64(z * bt + w * bo, L_);
        }
        if (!uinv_.empty())
            for (std::size_t i = 0; i < r_; ++i) {
                const std::int64_t ut = uinv_[i * r_ + t], uo = uinv_[i * r_ + o];
                uinv_[i * r_ + t] = mod_floor64(w * ut - z * uo, L_);
                uinv_[i * r_ + o] = mod_floor64(-y * ut + x * uo, L_);
            }
    }

    // Column pair op: col_t' = x col_t + y col_o, col_o' = z col_t + w col_o.
    void cols2(std::size_t t, std::size_t o, std::int64_t x, std::int64_t y,
               std::int64_t z, std::int64_t w, std::size_t from) {
        for (std::size_t i = from; i < r_; ++i) {
            const std::int64_t bt = b_[i * c_ + t], bo = b_[i * c_ + o];
            b_[i * c_ + t] = mod_floor64(x * bt + y * bo, L_);
            b_[i * c_ + o] = mod_floor64(z * bt + w * bo, L_);
        }
        if (!ctr_.empty())
            for (std::size_t k = 0; k < c_; ++k) {
                const std::int64_t ct = ctr_[k * c_ + t], co = ctr_[k * c_ + o];
                ctr_[k * c_ + t] = mod_floor64(x * ct + y * co, cmod_[k]);
                ctr_[k * c_ + o] = mod_floor64(z * ct + w * co, cmod_[k]);
            }
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < c_; ++j) std::swap(b_[a * c_ + j], b_[b * c_ + j]);
        if (!uinv_.empty())
            for (std::size_t i = 0; i < r_; ++i)
                std::swap(uinv_[i * r_ + a], uinv_[i * r_ + b]);
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < r_; ++i) std::swap(b_[i * c_ + a], b_[i * c_ + b]);
        if (!ctr_.empty())
            for (std::size_t k = 0; k < c_; ++k)
                std::swap(ctr_[k * c_ + a], ctr_[k * c_ + b]);
    }

    // Pivot rule: entry whose gcd with L is smallest (most invertible).
    bool place_pivot(std::size_t s) {
        std::size_t pr = 0, pc = 0;
        std::int64_t best = 0;
        for (std::size_t i = s; i < r_ && best != 1; ++i)
            for (std::size_t j = s; j < c_; ++j) {
                const std::int64_t e = b_[i * c_ + j];
                if (e == 0) continue;
                const std::int64_t g = std::gcd(e, L_);
                if (best == 0 || g < best) {
                    best = g;
                    pr = i;
                    pc = j;
                    if (g == 1) break;
                }
            }
        if (best == 0) return false;
        swap_rows(s, pr);
        swap_cols(s, pc);
        return true;
    }

    void clear_below(std::size_t s, std::size_t i) {
        const std::int64_t e = b_[i * c_ + s];
        if (e == 0) return;
        const std::int64_t a = b_[s * c_ + s];
        if (e % a == 0) {
            rows2(i, s, 1, -(e / a), 0, 1, s);
        } else {
            std::int64_t g, x, y;
            ext_gcd(a, e, g, x, y);
            rows2(s, i, x, y, -(e / g), a / g, s);
        }
    }

    // Returns true if a gcd step mixed column s (refilling it below row s).
    bool clear_right(std::size_t s, std::size_t j) {
        const std::int64_t e = b_[s * c_ + j];
        if (e == 0) return false;
        const std::int64_t a = b_[s * c_ + s];
        if (e % a == 0) {
            cols2(j, s, 1, -(e / a), 0, 1, s);
            return false;
        }
        std::int64_t g, x, y;
        ext_gcd(a, e, g, x, y);
        cols2(s, j, x, y, -(e / g), a / g, s);
        return true;
    }

    std::size_t r_, c_;
    std::int64_t L_;
    std::vector<std::int64_t> b_, uinv_, ctr_, cmod_;
    std::size_t pivots_ = 0;
};

// True (with the value) when the moduli have a small enough lcm for the
// bounded mod-L elimination; the exact path handles the rest.
bool small_lcm(const std::vector<Int>& moduli, std::int64_t& out) {
    Int l = 1;
    for (const Int& m : moduli) {
        l = lcm(l, m);
        if (l > (std::int64_t(1) << 20)) return false;
    }
    out = l.get_si();
    return true;
}

} // namespace

PreparedSolver::PreparedSolver(const LinearMap& map)
    : dom_(map.dom), cod_(map.cod), n_(map.dom.size()) {
    modulus_ = lcm_of(cod_);
    RowSpace rs = reduce_map(map, true);
    h_ = rs.size();
    for (std::size_t i = 0; i < h_; ++i) t_.push_back(rs.row_rhs(i));
    null_ = rs.null_constraints();

    Matrix b(h_, n_ + h_);
    for (std::size_t i = 0; i < h_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) b(i, j) = rs.row(i)[j];
        b(i, n_ + i) = modulus_;
    }
    SmithForm f = smith_normal_form(b);
    u_ = std::move(f.u);
    v_ = std::move(f.v);
    rank_ = 0;
    for (std::size_t i = 0; i < std::min(h_, n_ + h_); ++i)
        if (f.d(i, i) != 0) {
            diag_.push_back(f.d(i, i));
            ++rank_;
        }
}

std::optional<std::vector<Int>> PreparedSolver::solve(const std::vector<Int>& b) const {
    assert(b.size() == cod_.size());
    const Int L = modulus_;
    // Constraints whose coefficients vanished entirely.
    for (const auto& row : null_) {
        Int acc = 0;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) acc += Int(row[j]) * b[j];
        if (mod_floor(acc, L) != 0) return std::nullopt;
    }
    // Transformed right-hand side, then back-substitution through the SNF.
    std::vector<Int> bb(h_, 0);
    for (std::size_t i = 0; i < h_; ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < cod_.size(); ++j)
            if (t_[i][j] != 0) acc += Int(t_[i][j]) * b[j];
        bb[i] = mod_floor(acc, L);
    }
    std::vector<Int> c(h_, 0);
    for (std::size_t i = 0; i < h_; ++i)
        for (std::size_t j = 0; j < h_; ++j)
            if (u_(i, j) != 0) c[i] += u_(i, j) * bb[j];
    std::vector<Int> z(n_ + h_, 0);
    for (std::size_t i = 0; i < h_; ++i) {
        if (i < rank_) {
            if (c[i] % diag_[i] != 0) return std::nullopt;
            z[i] = c[i] / diag_[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> x(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < rank_; ++j)
            if (v_(i, j) != 0) acc += v_(i, j) * z[j];
        x[i] = mod_floor(acc, dom_[i]);
    }
    return x;
}

std::optional<std::vector<Int>> solve_mod(const LinearMap& map,
                                          const std::vector<Int>& b) {
    return PreparedSolver(map).solve(b);
}

Presented kernel_of(const std::vector<Int>& dom, const RowSpace& rs) {
    assert(rs.rhs_width() == 0 && rs.cols() == dom.size());
    const std::size_t n = dom.size(), h = rs.size();
    const std::int64_t L = rs.modulus();

    bool small = true;
    for (const Int& m : dom)
        if (!m.fits_slong_p() || m.get_si() > (std::int64_t(1) << 20)) small = false;

    if (small) {
        // Diagonalize the relation rows over Z/L with a column tracker; the
        // solution group is spanned by tracker columns scaled by the order of
        // the matching diagonal entry (free columns scale by 1).
        std::vector<std::int64_t> dom64(n);
        for (std::size_t j = 0; j < n; ++j) dom64[j] = dom[j].get_si();
        ModSmith ms(h, n, L, false, dom64);
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < n; ++j) ms.at(i, j) = rs.row(i)[j];
        ms.run();
        Matrix gens(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            const std::int64_t mult = L / ms.dbar(j);
            for (std::size_t i = 0; i < n; ++i)
                gens(i, j) = mod_floor64(ms.ctr(i, j) * mult, dom64[i]);
        }
        return subgroup_presentation(dom, gens);
    }

    Matrix b(h, n + h);
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < n; ++j) b(i, j) = rs.row(i)[j];
        b(i, n + i) = rs.modulus();
    }
    SmithForm f = smith_normal_form(b);
    std::size_t rank = 0;
    for (std::size_t i = 0; i < std::min(h, n + h); ++i)
        if (f.d(i, i) != 0) ++rank;
    // Integer kernel basis of [H | L I]: columns of V past the rank.  Their
    // x-projections generate the solution lattice inside Z^n.
    Matrix gens(n, n + h - rank);
    for (std::size_t k = rank; k < n + h; ++k)
        for (std::size_t i = 0; i < n; ++i)
            gens(i, k - rank) = f.v(i, k);
    return subgroup_presentation(dom, gens);
}

Presented kernel(const LinearMap& map) {
    RowSpace rs = reduce_map(map, false);
    return kernel_of(map.dom, rs);
}

Presented image(const LinearMap& map) {
    Matrix cols(map.cod.size(), map.dom.size());
    for (std::size_t i = 0; i < map.cod.size(); ++i)
        for (std::size_t j = 0; j < map.dom.size(); ++j)
            cols(i, j) = mod_floor(map.a(i, j), map.cod[i]);
    return subgroup_presentation(map.cod, cols);
}

Matrix inverse_unimodular(const Matrix& u) {
    assert(u.rows() == u.cols());
    SmithForm f = smith_normal_form(u);
    for (std::size_t i = 0; i < u.rows(); ++i) assert(f.d(i, i) == 1);
    return f.v * f.u;
}

Presented subgroup_presentation(const std::vector<Int>& amb, const Matrix& gens) {
    const std::size_t n = amb.size();
    assert(gens.rows() == n);
    if (n == 0) return Presented{AbelianGroup{}, Matrix(0, 0)};

    std::int64_t L;
    if (small_lcm(amb, L)) {
        // Embed sum Z/amb_i into (Z/L)^n by scaling row i with L/amb_i; the
        // subgroup is the column span there, and unimodular row operations
        // over Z/L preserve its isomorphism type.  With the span diagonal,
        // generator j is the uinv column scaled by the diagonal gcd, pulled
        // back through the row scaling.
        const std::size_t g = gens.cols();
        std::vector<std::int64_t> amb64(n), scale(n);
        for (std::size_t i = 0; i < n; ++i) {
            amb64[i] = amb[i].get_si();
            scale[i] = L / amb64[i];
        }
        ModSmith ms(n, g, L, true, {});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < g; ++j)
                ms.at(i, j) = mod_floor(gens(i, j), amb[i]).get_si() * scale[i];
        ms.run();
        std::vector<std::size_t> kept;
        for (std::size_t s = ms.pivots(); s-- > 0;)
            if (ms.dbar(s) < L) kept.push_back(s); // order L/dbar, ascending
        std::vector<Int> factors;
        Matrix out(n, kept.size());
        for (std::size_t k = 0; k < kept.size(); ++k) {
            const std::int64_t db = ms.dbar(kept[k]);
            factors.push_back(L / db);
            for (std::size_t i = 0; i < n; ++i) {
                const std::int64_t w = mod_floor64(ms.uinv(i, kept[k]) * db, L);
                assert(w % scale[i] == 0);
                out(i, k) = w / scale[i];
            }
        }
        return Presented{AbelianGroup{0, std::move(factors)}, std::move(out)};
    }

    // Lattice spanned by the generators together with amb * Z^n; it has full
    // rank, so the first n diagonal entries of its SNF are nonzero.
    Matrix g0(n, gens.cols() + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < gens.cols(); ++j) g0(i, j) = gens(i, j);
        g0(i, gens.cols() + i) = amb[i];
    }
    SmithForm f = smith_normal_form(g0);
    for (std::size_t i = 0; i < n; ++i) assert(f.d(i, i) != 0);

    Matrix uinv = inverse_unimodular(f.u);
    Matrix basis(n, n); // columns: basis of the lattice
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            basis(i, j) = uinv(i, j) * f.d(j, j);

    // Coefficient lattice of amb * Z^n in that basis: C = basis^{-1} diag(amb)
    // = Dn^{-1} U diag(amb), entrywise exact.
    Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int t = f.u(i, j) * amb[j];
            assert(t % f.d(i, i) == 0);
            c(i, j) = t / f.d(i, i);
        }
    SmithForm fc = smith_normal_form(c);
    Matrix ucinv = inverse_unimodular(fc.u);

    std::vector<Int> factors;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i) {
        assert(fc.d(i, i) != 0);
        if (fc.d(i, i) != 1) {
            factors.push_back(fc.d(i, i));
            kept.push_back(i);
        }
    }
    Matrix out(n, kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k)
        for (std::size_t i = 0; i < n; ++i) {
            Int acc = 0;
            for (std::size_t j = 0; j < n; ++j)
                acc += basis(i, j) * ucinv(j, kept[k]);
            out(i, k) = mod_floor(acc, amb[i]);
        }
    return Presented{AbelianGroup{0, std::move(factors)}, std::move(out)};
}

Quotient quotient_presentation(const std::vector<Int>& amb, const Matrix& sub_gens) {
    const std::size_t n = amb.size();
    if (sub_gens.cols() > 0 && sub_gens.rows() != n)
        throw ValidationError("SubgroupNotContained",
                              "generator dimension does not match ambient group");
    if (n == 0) return Quotient{AbelianGroup{}, Matrix(0, 0)};

    std::int64_t L;
    if (small_lcm(amb, L)) {
        // The quotient is (Z/L)^n modulo the span of the generators together
        // with amb_i e_i; diagonalizing that span over Z/L gives one cyclic
        // factor Z/dbar per row, with the uinv column as its representative.
        const std::size_t g = sub_gens.cols();
        ModSmith ms(n, g + n, L, true, {});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < g; ++j)
                ms.at(i, j) = mod_floor(sub_gens(i, j), amb[i]).get_si();
            assert(amb[i].fits_slong_p());
            ms.at(i, g + i) = amb[i].get_si() % L;
        }
        ms.run();
        std::vector<Int> factors;
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < n; ++i)
            if (ms.dbar(i) != 1) {
                factors.push_back(ms.dbar(i));
                kept.push_back(i);
            }
        Matrix reps(n, kept.size());
        for (std::size_t k2 = 0; k2 < kept.size(); ++k2)
            for (std::size_t i = 0; i < n; ++i)
                reps(i, k2) = mod_floor(Int(ms.uinv(i, kept[k2])), amb[i]);
        return Quotient{AbelianGroup{0, std::move(factors)}, std::move(reps)};
    }

    Matrix k(n, sub_gens.cols() + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < sub_gens.cols(); ++j) k(i, j) = sub_gens(i, j);
        k(i, sub_gens.cols() + i) = amb[i];
    }
    SmithForm f = smith_normal_form(k);
    Matrix uinv = inverse_unimodular(f.u);

    std::vector<Int> factors;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i) {
        assert(f.d(i, i) != 0);
        if (f.d(i, i) != 1) {
            factors.push_back(f.d(i, i));
            kept.push_back(i);
        }
    }
    Matrix reps(n, kept.size());
    for (std::size_t k2 = 0; k2 < kept.size(); ++k2)
        for (std::size_t i = 0; i < n; ++i)
            reps(i, k2) = mod_floor(uinv(i, kept[k2]), amb[i]);
    return Quotient{AbelianGroup{0, std::move(factors)}, std::move(reps)};
}

AbelianGroup quotient_invariants(const std::vector<Int>& amb, const Matrix& sub_gens) {
    return quotient_presentation(amb, sub_gens).group;
}

Quotient subquotient(const std::vector<Int>& amb, const Presented& z,
                     const Matrix& b_gens) {
    const std::size_t n = amb.size();
    assert(b_gens.cols() == 0 || b_gens.rows() == n);
    const std::size_t zk = z.group.invariant_factors.size();

    if (zk == 0) {
        // Z is trivial; B must be too.
        for (std::size_t j = 0; j < b_gens.cols(); ++j)
            for (std::size_t i = 0; i < n; ++i)
                if (mod_floor(b_gens(i, j), amb[i]) != 0)
                    throw ValidationError("SubgroupNotContained",
                                          "coboundary generator outside the cocycle group");
        return Quotient{AbelianGroup{}, Matrix(n, 0)};
    }

    // Express each B generator in Z's generator coordinates.
    LinearMap lift = make_linear_map(z.group.invariant_factors, amb, z.gens);
    PreparedSolver ps(lift);
    Matrix c(zk, b_gens.cols());
    for (std::size_t j = 0; j < b_gens.cols(); ++j) {
        std::vector<Int> b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = b_gens(i, j);
        auto sol = ps.solve(b);
        if (!sol)
            throw ValidationError("SubgroupNotContained",
                                  "coboundary generator outside the cocycle group");
        for (std::size_t i = 0; i < zk; ++i) c(i, j) = (*sol)[i];
    }
    Quotient q = quotient_presentation(z.group.invariant_factors, c);
    Matrix reps(n, q.reps.cols());
    for (std::size_t j = 0; j < q.reps.cols(); ++j)
        for (std::size_t i = 0; i < n; ++i) {
            Int acc = 0;
            for (std::size_t k = 0; k < zk; ++k)
                acc += z.gens(i, k) * q.reps(k, j);
            reps(i, j) = mod_floor(acc, amb[i]);
        }
    return Quotient{std::move(q.group), std::move(reps)};
}

} // namespace anncat

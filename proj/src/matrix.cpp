#include "anncat/matrix.hpp"

#include <cstdlib>

namespace anncat {

Int determinant(const Matrix& m) {
    assert(m.rows() == m.cols());
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Matrix a = m;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                // Bareiss: division by the previous pivot is exact.
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

// Pivot rule: smallest |entry| != 0 in a[s.., s..], first by row then column.
bool locate_pivot(const Matrix& a, std::size_t s, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    Int best;
    for (std::size_t i = s; i < a.rows(); ++i)
        for (std::size_t j = s; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            Int v = abs(a(i, j));
            if (!found || v < best) {
                found = true;
                best = v;
                pr = i;
                pc = j;
            }
        }
    return found;
}

// Quotient with |a - q*b| <= |b|/2 (ties keep the floor), so every reduction
// step at most halves the off-pivot entry and fill-in stays polynomial.
Int nearest_quotient(const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * abs(r) > abs(b)) q += 1;
    return q;
}

} // namespace

SmithForm smith_normal_form(const Matrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithForm f{Matrix::identity(m), a, Matrix::identity(n)};
    Matrix& d = f.d;
    Matrix& u = f.u;
    Matrix& v = f.v;

    std::size_t s = 0;
    const std::size_t lim = std::min(m, n);
    while (s < lim) {
        std::size_t pr, pc;
        if (!locate_pivot(d, s, pr, pc)) break; // rest is zero
        for (;;) {
            // Always work from the globally smallest entry: balanced
            // remainders then at most halve the cross entries per sweep, so
            // the pivot shrinks geometrically and fill-in stays tame.
            d.swap_rows(s, pr);
            u.swap_rows(s, pr);
            d.swap_cols(s, pc);
            v.swap_cols(s, pc);
            bool again = false;
            for (std::size_t i = s + 1; i < m; ++i) {
                if (d(i, s) == 0) continue;
                Int q = nearest_quotient(d(i, s), d(s, s));
                if (q != 0) {
                    d.add_row(i, s, -q);
                    u.add_row(i, s, -q);
                }
                if (d(i, s) != 0) again = true;
            }
            for (std::size_t j = s + 1; j < n; ++j) {
                if (d(s, j) == 0) continue;
                Int q = nearest_quotient(d(s, j), d(s, s));
                if (q != 0) {
                    d.add_col(j, s, -q);
                    v.add_col(j, s, -q);
                }
                if (d(s, j) != 0) again = true;
            }
            if (again) {
                locate_pivot(d, s, pr, pc);
                continue;
            }
            // Pivot must divide every remaining entry so the diagonal chains;
            // merging an offending row makes the next sweep shrink the pivot.
            bool fixed = false;
            for (std::size_t i = s + 1; i < m && !fixed; ++i)
                for (std::size_t j = s + 1; j < n && !fixed; ++j)
                    if (d(i, j) % d(s, s) != 0) {
                        d.add_row(s, i, 1);
                        u.add_row(s, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
            locate_pivot(d, s, pr, pc);
        }
        if (d(s, s) < 0) {
            d.negate_row(s);
            u.negate_row(s);
        }
        ++s;
    }
    return f;
}

} // namespace anncat

#include "anncat/presets.hpp"

#include <algorithm>
#include <vector>

#include "anncat/errors.hpp"

namespace anncat {

namespace {

int additive_order(const FiniteRing& r, int g) {
    int s = g, k = 1;
    while (s != r.zero) {
        s = r.add(s, g);
        ++k;
    }
    return k;
}

// Coordinates for the additive group of r: generators g_i of orders d_i with
// d_i | d_{i+1}, every element reached exactly once as sum c_i * g_i.
struct AdditiveBasis {
    std::vector<int> orders;     // invariant factors, divisibility increasing
    std::vector<int> elt_of_idx; // mixed-radix index (last coordinate fastest)
    std::vector<int> idx_of_elt;
};

AdditiveBasis additive_basis(const FiniteRing& r) {
    const int n = r.n;
    std::vector<int> gens, orders_desc;
    std::vector<int> span{r.zero};
    std::vector<char> in_span(n, 0);
    in_span[r.zero] = 1;

    while (static_cast<int>(span.size()) < n) {
        // Largest order in the quotient by the current span.
        int best = -1, best_ord = 0;
        for (int g = 0; g < n; ++g) {
            if (in_span[g]) continue;
            int s = g, k = 1;
            while (!in_span[s]) {
                s = r.add(s, g);
                ++k;
            }
            if (k > best_ord) {
                best_ord = k;
                best = g;
            }
        }
        // Shift by a span element so the cyclic piece meets the span trivially.
        int gen = -1;
        for (int s : span) {
            int cand = r.add(best, s);
            if (additive_order(r, cand) == best_ord) {
                gen = cand;
                break;
            }
        }
        if (gen < 0)
            throw ValidationError("IllFormedTable", "additive group has no coordinate system");
        gens.push_back(gen);
        orders_desc.push_back(best_ord);
        std::vector<int> next;
        std::vector<char> next_in(n, 0);
        for (int s : span) {
            int t = s;
            for (int k = 0; k < best_ord; ++k) {
                if (!next_in[t]) {
                    next_in[t] = 1;
                    next.push_back(t);
                }
                t = r.add(t, gen);
            }
        }
        span = std::move(next);
        in_span = std::move(next_in);
    }

    AdditiveBasis b;
    const int k = static_cast<int>(gens.size());
    std::reverse(gens.begin(), gens.end());
    std::reverse(orders_desc.begin(), orders_desc.end());
    b.orders = orders_desc;
    b.elt_of_idx.assign(n, -1);
    b.idx_of_elt.assign(n, -1);
    std::vector<int> c(k, 0);
    for (int idx = 0; idx < n; ++idx) {
        int e = r.zero;
        for (int i = 0; i < k; ++i)
            for (int t = 0; t < c[i]; ++t) e = r.add(e, gens[i]);
        b.elt_of_idx[idx] = e;
        b.idx_of_elt[e] = idx;
        for (int i = k - 1; i >= 0; --i) {
            if (++c[i] < b.orders[i]) break;
            c[i] = 0;
        }
    }
    for (int e = 0; e < n; ++e)
        if (b.idx_of_elt[e] < 0)
            throw ValidationError("IllFormedTable", "additive group has no coordinate system");
    return b;
}

} // namespace

FiniteRing zn_ring(int n) {
    if (n < 2) throw ValidationError("IllFormedTable", "ring order must be at least 2");
    std::vector<int> add(n * n), mul(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            add[x * n + y] = (x + y) % n;
            mul[x * n + y] = (x * y) % n;
        }
    return make_ring(n, add, mul, 0, 1 % n);
}

FiniteRing z2xz2_ring() {
    const int n = 4;
    auto pack = [](int a, int b) { return a * 2 + b; };
    std::vector<int> add(n * n), mul(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int xa = x / 2, xb = x % 2, ya = y / 2, yb = y % 2;
            add[x * n + y] = pack((xa + ya) % 2, (xb + yb) % 2);
            mul[x * n + y] = pack(xa * ya, xb * yb);
        }
    return make_ring(n, add, mul, pack(0, 0), pack(1, 1));
}

FiniteRing ring_preset(const std::string& name) {
    if (name == "Z2") return zn_ring(2);
    if (name == "Z3") return zn_ring(3);
    if (name == "Z4") return zn_ring(4);
    if (name == "Z6") return zn_ring(6);
    if (name == "Z2xZ2") return z2xz2_ring();
    throw ValidationError("UnknownPreset", "ring preset '" + name + "'");
}

FiniteBimodule regular_bimodule(const FiniteRing& r) {
    AdditiveBasis b = additive_basis(r);
    std::vector<Int> factors(b.orders.begin(), b.orders.end());
    const int n = r.n;
    std::vector<int> left(n * n), right(n * n);
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < n; ++a) {
            int e = b.elt_of_idx[a];
            left[x * n + a] = b.idx_of_elt[r.mul(x, e)];
            right[x * n + a] = b.idx_of_elt[r.mul(e, x)];
        }
    return make_bimodule(r, factors, left, right);
}

FiniteBimodule trivial_bimodule(const FiniteRing& r) {
    std::vector<int> act(r.n, 0);
    return make_bimodule(r, {}, act, act);
}

FiniteBimodule reduction_bimodule(const FiniteRing& zn, int m) {
    const int n = zn.n;
    if (m < 1 || n % m != 0)
        throw ValidationError("IllFormedModule",
                              "reduction requires the target order to divide the ring order");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (zn.add(x, y) != (x + y) % n || zn.mul(x, y) != (x * y) % n)
                throw ValidationError("IllFormedModule",
                                      "reduction is defined over the standard cyclic ring only");
    if (m == 1) return trivial_bimodule(zn);
    std::vector<Int> factors{m};
    std::vector<int> act(n * m);
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < m; ++a) act[x * m + a] = (x * a) % m;
    return make_bimodule(zn, factors, act, act);
}

FiniteBimodule bimodule_preset(const FiniteRing& r, const std::string& name) {
    if (name == "regular") return regular_bimodule(r);
    if (name == "trivial") return trivial_bimodule(r);
    if (name.size() > 1 && name[0] == 'Z') {
        int m = 0;
        for (size_t i = 1; i < name.size(); ++i) {
            if (name[i] < '0' || name[i] > '9') { m = -1; break; }
            m = m * 10 + (name[i] - '0');
        }
        if (m > 0) return reduction_bimodule(r, m);
    }
    throw ValidationError("UnknownPreset", "module preset '" + name + "'");
}

} // namespace anncat

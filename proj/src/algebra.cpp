#include "anncat/algebra.hpp"

namespace anncat {

namespace {

std::string tup(std::initializer_list<int> xs) {
    std::string s = "(";
    bool first = true;
    for (int x : xs) {
        if (!first) s += ",";
        s += std::to_string(x);
        first = false;
    }
    return s + ")";
}

void check_table(const std::vector<int>& t, std::size_t want, int bound,
                 const char* what) {
    if (t.size() != want)
        throw ValidationError("IllFormedTable", std::string(what) + " has wrong size");
    for (int v : t)
        if (v < 0 || v >= bound)
            throw ValidationError("IllFormedTable",
                                  std::string(what) + " entry out of range");
}

} // namespace

FiniteRing make_ring(int n, std::vector<int> add, std::vector<int> mul,
                     int zero, int one) {
    if (n <= 0) throw ValidationError("IllFormedTable", "ring order must be positive");
    check_table(add, std::size_t(n) * n, n, "add table");
    check_table(mul, std::size_t(n) * n, n, "mul table");
    if (zero < 0 || zero >= n || one < 0 || one >= n)
        throw ValidationError("IllFormedTable", "distinguished element out of range");

    FiniteRing r;
    r.n = n;
    r.add_t = std::move(add);
    r.mul_t = std::move(mul);
    r.zero = zero;
    r.one = one;

    // Additive structure: abelian group with the stated zero.
    for (int x = 0; x < n; ++x) {
        if (r.add(x, zero) != x || r.add(zero, x) != x)
            throw ValidationError("NotAGroup", "zero is not neutral at " + tup({x}));
        for (int y = 0; y < n; ++y) {
            if (r.add(x, y) != r.add(y, x))
                throw ValidationError("NotAGroup", "addition not commutative at " + tup({x, y}));
            for (int z = 0; z < n; ++z)
                if (r.add(r.add(x, y), z) != r.add(x, r.add(y, z)))
                    throw ValidationError("NotAGroup",
                                          "addition not associative at " + tup({x, y, z}));
        }
    }
    r.neg_t.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y)
            if (r.add(x, y) == zero) {
                r.neg_t[x] = y;
                break;
            }
        if (r.neg_t[x] < 0)
            throw ValidationError("NotAGroup", "no additive inverse for " + tup({x}));
    }

    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (r.mul(r.mul(x, y), z) != r.mul(x, r.mul(y, z)))
                    throw ValidationError("NotAssociative",
                                          "multiplication at " + tup({x, y, z}));

    for (int x = 0; x < n; ++x)
        if (r.mul(one, x) != x || r.mul(x, one) != x)
            throw ValidationError("BadUnit", "unit fails at " + tup({x}));

    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (r.mul(x, r.add(y, z)) != r.add(r.mul(x, y), r.mul(x, z)))
                    throw ValidationError("NotDistributive",
                                          "left distributivity at " + tup({x, y, z}));
                if (r.mul(r.add(x, y), z) != r.add(r.mul(x, z), r.mul(y, z)))
                    throw ValidationError("NotDistributive",
                                          "right distributivity at " + tup({x, y, z}));
            }
    return r;
}

std::vector<Int> FiniteBimodule::coords(int a) const {
    std::vector<Int> c(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
        long d = factors[i].get_si();
        c[i] = a % d;
        a /= d;
    }
    return c;
}

int FiniteBimodule::encode(const std::vector<Int>& c) const {
    assert(c.size() == factors.size());
    long idx = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        long d = factors[i].get_si();
        idx = idx * d + mod_floor(c[i], factors[i]).get_si();
    }
    return static_cast<int>(idx);
}

std::vector<Int> FiniteBimodule::moduli_for(std::size_t entries) const {
    std::vector<Int> m;
    m.reserve(entries * factors.size());
    for (std::size_t e = 0; e < entries; ++e)
        for (const Int& d : factors) m.push_back(d);
    return m;
}

FiniteBimodule make_bimodule(const FiniteRing& r, std::vector<Int> factors,
                             std::vector<int> left, std::vector<int> right) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] < 2)
            throw ValidationError("IllFormedModule", "invariant factor < 2");
        if (i > 0 && factors[i] % factors[i - 1] != 0)
            throw ValidationError("IllFormedModule", "invariant factors do not chain");
    }
    Int order = group_order(factors);
    // Dense operation tables are size^2; keep them small.
    if (order > 4096)
        throw ValidationError("IllFormedModule", "module too large");
    FiniteBimodule m;
    m.ring_n = r.n;
    m.factors = std::move(factors);
    m.size = static_cast<int>(order.get_si());
    check_table(left, std::size_t(r.n) * m.size, m.size, "left action table");
    check_table(right, std::size_t(r.n) * m.size, m.size, "right action table");
    m.left_t = std::move(left);
    m.right_t = std::move(right);

    // Induced addition and negation.
    m.add_t.resize(std::size_t(m.size) * m.size);
    m.neg_t.resize(m.size);
    for (int a = 0; a < m.size; ++a) {
        std::vector<Int> ca = m.coords(a);
        for (Int& x : ca) x = -x;
        m.neg_t[a] = m.encode(ca);
        for (int b = 0; b < m.size; ++b) {
            std::vector<Int> c = m.coords(a), cb = m.coords(b);
            for (std::size_t i = 0; i < c.size(); ++i) c[i] += cb[i];
            m.add_t[std::size_t(a) * m.size + b] = m.encode(c);
        }
    }

    const int n = r.n;
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < m.size; ++a)
            for (int b = 0; b < m.size; ++b) {
                if (m.left(x, m.add(a, b)) != m.add(m.left(x, a), m.left(x, b)))
                    throw ValidationError("NotAdditive",
                                          "left action in the module argument at " + tup({x, a, b}));
                if (m.right(x, m.add(a, b)) != m.add(m.right(x, a), m.right(x, b)))
                    throw ValidationError("NotAdditive",
                                          "right action in the module argument at " + tup({x, a, b}));
            }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int a = 0; a < m.size; ++a) {
                if (m.left(r.add(x, y), a) != m.add(m.left(x, a), m.left(y, a)))
                    throw ValidationError("NotAdditive",
                                          "left action in the ring argument at " + tup({x, y, a}));
                if (m.right(r.add(x, y), a) != m.add(m.right(x, a), m.right(y, a)))
                    throw ValidationError("NotAdditive",
                                          "right action in the ring argument at " + tup({x, y, a}));
            }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int a = 0; a < m.size; ++a) {
                if (m.left(r.mul(x, y), a) != m.left(x, m.left(y, a)))
                    throw ValidationError("NotAssociativeAction",
                                          "(xy)a != x(ya) at " + tup({x, y, a}));
                if (m.right(r.mul(x, y), a) != m.right(y, m.right(x, a)))
                    throw ValidationError("NotAssociativeAction",
                                          "a(xy) != (ax)y at " + tup({x, y, a}));
                if (m.right(y, m.left(x, a)) != m.left(x, m.right(y, a)))
                    throw ValidationError("NotAssociativeAction",
                                          "(xa)y != x(ay) at " + tup({x, y, a}));
            }
    for (int a = 0; a < m.size; ++a)
        if (m.left(r.one, a) != a || m.right(r.one, a) != a)
            throw ValidationError("UnitActsNontrivially", "at " + tup({a}));

    // 0.a = a.0 = 0 follows from additivity in the ring argument.
    for (int a = 0; a < m.size; ++a)
        assert(m.left(r.zero, a) == 0 && m.right(r.zero, a) == 0);

    // Coordinate matrices of each element's action, for linear-system assembly.
    const int k = m.k();
    m.lmat.resize(n);
    m.rmat.resize(n);
    for (int x = 0; x < n; ++x) {
        Matrix l(k, k), rt(k, k);
        for (int j = 0; j < k; ++j) {
            std::vector<Int> e(k, 0);
            e[j] = 1;
            int gen = m.encode(e);
            std::vector<Int> lc = m.coords(m.left(x, gen));
            std::vector<Int> rc = m.coords(m.right(x, gen));
            for (int i = 0; i < k; ++i) {
                l(i, j) = lc[i];
                rt(i, j) = rc[i];
            }
        }
        m.lmat[x] = std::move(l);
        m.rmat[x] = std::move(rt);
    }
    return m;
}

RingHom make_ring_hom(const FiniteRing& src, const FiniteRing& tgt,
                      std::vector<int> map) {
    check_table(map, std::size_t(src.n), tgt.n, "hom table");
    RingHom p{src.n, tgt.n, std::move(map)};
    for (int x = 0; x < src.n; ++x)
        for (int y = 0; y < src.n; ++y) {
            if (p(src.add(x, y)) != tgt.add(p(x), p(y)))
                throw ValidationError("NotAdditive", "hom at " + tup({x, y}));
            if (p(src.mul(x, y)) != tgt.mul(p(x), p(y)))
                throw ValidationError("NotMultiplicative", "hom at " + tup({x, y}));
        }
    if (p(src.one) != tgt.one)
        throw ValidationError("NotUnital", "hom sends 1 to " + tup({p(src.one)}));
    return p;
}

RingHom identity_hom(const FiniteRing& r) {
    std::vector<int> m(r.n);
    for (int i = 0; i < r.n; ++i) m[i] = i;
    return RingHom{r.n, r.n, std::move(m)};
}

RingHom compose(const RingHom& outer, const RingHom& inner) {
    if (inner.n_tgt != outer.n_src)
        throw ValidationError("CarrierMismatch", "ring hom composition");
    std::vector<int> m(inner.n_src);
    for (int i = 0; i < inner.n_src; ++i) m[i] = outer(inner(i));
    return RingHom{inner.n_src, outer.n_tgt, std::move(m)};
}

FiniteBimodule transport(const FiniteRing& src, const FiniteBimodule& tgt_mod,
                         const RingHom& p) {
    if (p.n_src != src.n || p.n_tgt != tgt_mod.ring_n)
        throw ValidationError("CarrierMismatch", "transport along a hom of other carriers");
    std::vector<int> left(std::size_t(src.n) * tgt_mod.size);
    std::vector<int> right(left.size());
    for (int x = 0; x < src.n; ++x)
        for (int a = 0; a < tgt_mod.size; ++a) {
            left[std::size_t(x) * tgt_mod.size + a] = tgt_mod.left(p(x), a);
            right[std::size_t(x) * tgt_mod.size + a] = tgt_mod.right(p(x), a);
        }
    return make_bimodule(src, tgt_mod.factors, std::move(left), std::move(right));
}

EquivariantMap make_equivariant(const FiniteRing& src_ring,
                                const FiniteBimodule& src_mod,
                                const FiniteBimodule& tgt_mod,
                                const RingHom& p, std::vector<int> map) {
    if (src_mod.ring_n != src_ring.n || p.n_src != src_ring.n ||
        p.n_tgt != tgt_mod.ring_n)
        throw ValidationError("CarrierMismatch", "equivariant map carriers");
    check_table(map, std::size_t(src_mod.size), tgt_mod.size, "equivariant table");
    EquivariantMap q{src_mod.size, tgt_mod.size, std::move(map)};
    for (int a = 0; a < src_mod.size; ++a)
        for (int b = 0; b < src_mod.size; ++b)
            if (q(src_mod.add(a, b)) != tgt_mod.add(q(a), q(b)))
                throw ValidationError("NotAdditive", "equivariant map at " + tup({a, b}));
    for (int x = 0; x < src_ring.n; ++x)
        for (int a = 0; a < src_mod.size; ++a) {
            if (q(src_mod.left(x, a)) != tgt_mod.left(p(x), q(a)))
                throw ValidationError("NotEquivariant", "left action at " + tup({x, a}));
            if (q(src_mod.right(x, a)) != tgt_mod.right(p(x), q(a)))
                throw ValidationError("NotEquivariant", "right action at " + tup({x, a}));
        }
    return q;
}

EquivariantMap zero_equivariant(const FiniteBimodule& src_mod,
                                const FiniteBimodule& tgt_mod) {
    (void)tgt_mod;
    return EquivariantMap{src_mod.size, tgt_mod.size,
                          std::vector<int>(src_mod.size, 0)};
}

EquivariantMap identity_equivariant(const FiniteBimodule& m) {
    std::vector<int> t(m.size);
    for (int i = 0; i < m.size; ++i) t[i] = i;
    return EquivariantMap{m.size, m.size, std::move(t)};
}

EquivariantMap compose(const EquivariantMap& outer, const EquivariantMap& inner) {
    if (inner.tgt_size != outer.src_size)
        throw ValidationError("CarrierMismatch", "equivariant composition");
    std::vector<int> t(inner.src_size);
    for (int i = 0; i < inner.src_size; ++i) t[i] = outer(inner(i));
    return EquivariantMap{inner.src_size, outer.tgt_size, std::move(t)};
}

} // namespace anncat

#include "anncat/json_io.hpp"

#include <cstddef>
#include <string>
#include <utility>

#include "anncat/errors.hpp"
#include "anncat/presets.hpp"

namespace anncat {

namespace {

[[noreturn]] void ill(const std::string& detail) {
    throw ValidationError("IllFormedInput", detail);
}

long expect_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) ill(where + " must be an integer");
    return j.get<long>();
}

const Json& expect_array(const Json& j, std::size_t len,
                         const std::string& where) {
    if (!j.is_array() || j.size() != len)
        ill(where + " must be an array of length " + std::to_string(len));
    return j;
}

const Json& expect_field(const Json& j, const char* key,
                         const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        ill(where + " must be an object with a \"" + key + "\" field");
    return j.at(key);
}

Json value_tuple(const FiniteBimodule& m, int a) {
    Json t = Json::array();
    for (const Int& c : m.coords(a)) t.push_back(c.get_si());
    return t;
}

int tuple_value(const FiniteBimodule& m, const Json& j,
                const std::string& where) {
    expect_array(j, static_cast<std::size_t>(m.k()), where);
    std::vector<Int> c(m.k());
    for (int i = 0; i < m.k(); ++i) {
        long v = expect_int(j[i], where + " coordinate");
        if (v < 0 || Int(v) >= m.factors[i])
            ill(where + " coordinate " + std::to_string(v) +
                " is out of range for factor " + m.factors[i].get_str());
        c[i] = v;
    }
    return m.encode(c);
}

// Nested module-value table, one array level per ring argument.
Json table_to_json(const FiniteRing& r, const FiniteBimodule& m,
                   const std::vector<int>& flat, int depth) {
    std::size_t pos = 0;
    auto build = [&](auto&& self, int d) -> Json {
        if (d == 0) return value_tuple(m, flat[pos++]);
        Json a = Json::array();
        for (int i = 0; i < r.n; ++i) a.push_back(self(self, d - 1));
        return a;
    };
    return build(build, depth);
}

std::vector<int> table_from_json(const FiniteRing& r, const FiniteBimodule& m,
                                 const Json& j, int depth,
                                 const std::string& where) {
    std::size_t entries = 1;
    for (int d = 0; d < depth; ++d) entries *= static_cast<std::size_t>(r.n);
    std::vector<int> flat;
    flat.reserve(entries);
    auto walk = [&](auto&& self, const Json& node, int d) -> void {
        if (d == 0) {
            flat.push_back(tuple_value(m, node, where + " entry"));
            return;
        }
        expect_array(node, static_cast<std::size_t>(r.n), where);
        for (int i = 0; i < r.n; ++i) self(self, node[i], d - 1);
    };
    walk(walk, j, depth);
    return flat;
}

Json ring_table_to_json(const FiniteRing& r, const std::vector<int>& flat) {
    Json rows = Json::array();
    for (int x = 0; x < r.n; ++x) {
        Json row = Json::array();
        for (int y = 0; y < r.n; ++y) row.push_back(flat[x * r.n + y]);
        rows.push_back(row);
    }
    return rows;
}

std::vector<int> ring_table_from_json(int n, const Json& j,
                                      const std::string& where) {
    expect_array(j, static_cast<std::size_t>(n), where);
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
        expect_array(j[x], static_cast<std::size_t>(n), where + " row");
        for (int y = 0; y < n; ++y) {
            long v = expect_int(j[x][y], where + " entry");
            if (v < 0 || v >= n)
                ill(where + " entry " + std::to_string(v) +
                    " is not an element index below " + std::to_string(n));
            flat[static_cast<std::size_t>(x) * n + y] = static_cast<int>(v);
        }
    }
    return flat;
}

} // namespace

Json ring_to_json(const FiniteRing& r) {
    Json j;
    j["order"] = r.n;
    j["add"] = ring_table_to_json(r, r.add_t);
    j["mul"] = ring_table_to_json(r, r.mul_t);
    j["zero"] = r.zero;
    j["one"] = r.one;
    return j;
}

Json bimodule_to_json(const FiniteRing& r, const FiniteBimodule& m) {
    Json j;
    Json fs = Json::array();
    for (const Int& d : m.factors) fs.push_back(d.get_si());
    j["invariant_factors"] = fs;
    Json left = Json::array(), right = Json::array();
    for (int x = 0; x < r.n; ++x) {
        Json lr = Json::array(), rr = Json::array();
        for (int a = 0; a < m.size; ++a) {
            lr.push_back(value_tuple(m, m.left(x, a)));
            rr.push_back(value_tuple(m, m.right(x, a)));
        }
        left.push_back(lr);
        right.push_back(rr);
    }
    j["left"] = left;
    j["right"] = right;
    return j;
}

Json cochain1_to_json(const FiniteRing& r, const FiniteBimodule& m,
                      const Cochain1& u) {
    Json j;
    j["u"] = table_to_json(r, m, u.u, 1);
    return j;
}

Json cochain2_to_json(const FiniteRing& r, const FiniteBimodule& m,
                      const Cochain2& g) {
    Json j;
    j["mu"] = table_to_json(r, m, g.mu, 2);
    j["nu"] = table_to_json(r, m, g.nu, 2);
    return j;
}

Json cochain3_to_json(const FiniteRing& r, const FiniteBimodule& m,
                      const Cochain3& h) {
    Json j;
    j["sigma"] = table_to_json(r, m, h.sigma, 4);
    j["alpha"] = table_to_json(r, m, h.alpha, 3);
    j["lambda"] = table_to_json(r, m, h.lambda, 3);
    j["rho"] = table_to_json(r, m, h.rho, 3);
    return j;
}

Json hoch_to_json(const FiniteRing& r, const FiniteBimodule& m,
                  const HochCochain& f) {
    Json j;
    j["degree"] = f.degree;
    j["f"] = table_to_json(r, m, f.f, f.degree);
    return j;
}

Json hom_to_json(const RingHom& p) {
    Json j = Json::array();
    for (int v : p.map) j.push_back(v);
    return j;
}

Json equivariant_to_json(const FiniteBimodule& tgt_mod,
                         const EquivariantMap& q) {
    Json j = Json::array();
    for (int v : q.map) j.push_back(value_tuple(tgt_mod, v));
    return j;
}

Json group_to_json(const AbelianGroup& g) {
    Json j;
    Json fs = Json::array();
    for (const Int& d : g.invariant_factors) fs.push_back(d.get_si());
    j["invariant_factors"] = fs;
    return j;
}

Json value_table_to_json(const FiniteRing& r, const FiniteBimodule& m,
                         const std::vector<int>& flat, int arity) {
    return table_to_json(r, m, flat, arity);
}

std::vector<int> value_table_from_json(const FiniteRing& r,
                                       const FiniteBimodule& m, const Json& j,
                                       int arity, const std::string& name) {
    return table_from_json(r, m, j, arity, name);
}

FiniteRing ring_from_json(const Json& j) {
    if (j.is_string()) return ring_preset(j.get<std::string>());
    if (!j.is_object()) ill("ring must be a preset name or an object");
    long n = expect_int(expect_field(j, "order", "ring"), "ring order");
    if (n < 1 || n > 4096) ill("ring order must be between 1 and 4096");
    std::vector<int> add =
        ring_table_from_json(static_cast<int>(n), expect_field(j, "add", "ring"),
                             "ring add table");
    std::vector<int> mul =
        ring_table_from_json(static_cast<int>(n), expect_field(j, "mul", "ring"),
                             "ring mul table");
    long zero = expect_int(expect_field(j, "zero", "ring"), "ring zero");
    long one = expect_int(expect_field(j, "one", "ring"), "ring one");
    if (zero < 0 || zero >= n || one < 0 || one >= n)
        ill("ring zero/one must be element indices");
    return make_ring(static_cast<int>(n), std::move(add), std::move(mul),
                     static_cast<int>(zero), static_cast<int>(one));
}

FiniteBimodule bimodule_from_json(const FiniteRing& r, const Json& j) {
    if (j.is_string()) return bimodule_preset(r, j.get<std::string>());
    if (!j.is_object()) ill("bimodule must be a preset name or an object");
    const Json& fj =
        expect_field(j, "invariant_factors", "bimodule");
    if (!fj.is_array()) ill("bimodule invariant_factors must be an array");
    std::vector<Int> factors;
    int size = 1;
    for (const Json& d : fj) {
        long v = expect_int(d, "invariant factor");
        if (v < 2) ill("invariant factors must be at least 2");
        factors.push_back(v);
        size *= static_cast<int>(v);
        if (size > 1 << 20) ill("bimodule is too large");
    }
    FiniteBimodule shape; // carrier used only to decode value tuples
    shape.ring_n = r.n;
    shape.factors = factors;
    shape.size = size;
    auto action = [&](const char* key) {
        const Json& tj = expect_field(j, key, "bimodule");
        expect_array(tj, static_cast<std::size_t>(r.n),
                     std::string("bimodule ") + key);
        std::vector<int> flat(static_cast<std::size_t>(r.n) * size);
        for (int x = 0; x < r.n; ++x) {
            expect_array(tj[x], static_cast<std::size_t>(size),
                         std::string("bimodule ") + key + " row");
            for (int a = 0; a < size; ++a)
                flat[static_cast<std::size_t>(x) * size + a] = tuple_value(
                    shape, tj[x][a], std::string("bimodule ") + key);
        }
        return flat;
    };
    std::vector<int> left = action("left");
    std::vector<int> right = action("right");
    return make_bimodule(r, std::move(factors), std::move(left),
                         std::move(right));
}

Cochain1 cochain1_from_json(const FiniteRing& r, const FiniteBimodule& m,
                            const Json& j) {
    return make_cochain1(
        r, m, table_from_json(r, m, expect_field(j, "u", "cochain"), 1, "u"));
}

Cochain2 cochain2_from_json(const FiniteRing& r, const FiniteBimodule& m,
                            const Json& j) {
    return make_cochain2(
        r, m, table_from_json(r, m, expect_field(j, "mu", "cochain"), 2, "mu"),
        table_from_json(r, m, expect_field(j, "nu", "cochain"), 2, "nu"));
}

Cochain3 cochain3_from_json(const FiniteRing& r, const FiniteBimodule& m,
                            const Json& j) {
    return make_cochain3(
        r, m,
        table_from_json(r, m, expect_field(j, "sigma", "cochain"), 4, "sigma"),
        table_from_json(r, m, expect_field(j, "alpha", "cochain"), 3, "alpha"),
        table_from_json(r, m, expect_field(j, "lambda", "cochain"), 3,
                        "lambda"),
        table_from_json(r, m, expect_field(j, "rho", "cochain"), 3, "rho"));
}

HochCochain hoch_from_json(const FiniteRing& r, const FiniteBimodule& m,
                           const Json& j) {
    long degree = expect_int(expect_field(j, "degree", "cochain"), "degree");
    if (degree < 1 || degree > 3) ill("degree must be 1, 2, or 3");
    return make_hoch_cochain(
        r, m, static_cast<int>(degree),
        table_from_json(r, m, expect_field(j, "f", "cochain"),
                        static_cast<int>(degree), "f"));
}

RingHom hom_from_json(const FiniteRing& src, const FiniteRing& tgt,
                      const Json& j) {
    if (j.is_string() && j.get<std::string>() == "id") {
        std::vector<int> id(src.n);
        for (int x = 0; x < src.n; ++x) id[x] = x;
        if (src.n != tgt.n)
            ill("\"id\" needs source and target rings of the same order");
        return make_ring_hom(src, tgt, std::move(id));
    }
    expect_array(j, static_cast<std::size_t>(src.n), "p");
    std::vector<int> map(src.n);
    for (int x = 0; x < src.n; ++x) {
        long v = expect_int(j[x], "p entry");
        if (v < 0 || v >= tgt.n)
            ill("p entry " + std::to_string(v) +
                " is not a target ring element index");
        map[x] = static_cast<int>(v);
    }
    return make_ring_hom(src, tgt, std::move(map));
}

EquivariantMap equivariant_from_json(const FiniteRing& src_ring,
                                     const FiniteBimodule& src_mod,
                                     const FiniteBimodule& tgt_mod,
                                     const RingHom& p, const Json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "zero") return zero_equivariant(src_mod, tgt_mod);
        if (s == "id") {
            if (src_mod.size != tgt_mod.size)
                ill("\"id\" needs source and target modules of the same size");
            std::vector<int> id(src_mod.size);
            for (int a = 0; a < src_mod.size; ++a) id[a] = a;
            return make_equivariant(src_ring, src_mod, tgt_mod, p,
                                    std::move(id));
        }
        ill("q must be \"id\", \"zero\", or an array of value tuples");
    }
    expect_array(j, static_cast<std::size_t>(src_mod.size), "q");
    std::vector<int> map(src_mod.size);
    for (int a = 0; a < src_mod.size; ++a)
        map[a] = tuple_value(tgt_mod, j[a], "q entry");
    return make_equivariant(src_ring, src_mod, tgt_mod, p, std::move(map));
}

} // namespace anncat

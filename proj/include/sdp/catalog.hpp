#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "polytope.hpp"
#include "minkowski.hpp"

namespace sdp {

// Labels of the simply decomposable reflexive polygons carried by the product tables.
inline const std::vector<std::string>& sd_labels() {
    static const std::vector<std::string> labels{"4", "5", "6", "7", "8", "8'", "9"};
    return labels;
}

// A fixed model for each catalog label; label k has k boundary lattice points. "3" is the
// triangle of the projective plane's fan and "6'" the pentagon with six boundary points.
inline LatticePolytope builtin_polygon(const std::string& label) {
    static const std::map<std::string, std::vector<IntVector>> table{
        {"3", {{1, 0}, {0, 1}, {-1, -1}}},
        {"4", {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}},
        {"5", {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {0, -1}}},
        {"6", {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}},
        {"6'", {{-1, -1}, {1, -1}, {1, 0}, {0, 1}, {-1, 0}}},
        {"7", {{-1, -1}, {1, -1}, {1, 0}, {0, 1}, {-1, 1}}},
        {"8", {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}},
        {"8'", {{-1, -1}, {2, -1}, {0, 1}, {-1, 1}}},
        {"9", {{2, -1}, {-1, 2}, {-1, -1}}},
    };
    auto it = table.find(label);
    if (it == table.end()) invalid_input("unknown polygon label '" + label + "'");
    return make_polytope("P" + label, it->second, true);
}

inline std::vector<Vec2> polygon_of(const LatticePolytope& p) {
    if (p.dim() != 2) invalid_input(p.name + " is not a polygon");
    std::vector<Vec2> v;
    for (const auto& x : p.vertices) v.push_back(to_vec2(x));
    return convex_hull_2d(v);
}

inline Int boundary_point_count(const LatticePolytope& p) {
    return static_cast<Int>(polygon_boundary_points(polygon_of(p)).size());
}

struct ReflexivePolygonEntry {
    LatticePolytope polygon;
    Int boundary_points = 0;
    bool simply_decomposable = false;
    std::string label;  // catalog label when equivalent to a builtin, else empty
};

// All reflexive polygons up to GL(2,Z): every one sits inside one of the three maximal reflexive
// polygons, so hulls of point subsets of those three are filtered for reflexivity and deduplicated.
inline std::vector<ReflexivePolygonEntry> enumerate_reflexive_polygons() {
    const std::vector<std::vector<Vec2>> maximal{
        {{2, -1}, {-1, 2}, {-1, -1}},
        {{-1, -1}, {3, -1}, {-1, 1}},
        {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}},
    };
    std::vector<ReflexivePolygonEntry> found;
    std::set<std::vector<Vec2>> seen;
    for (const auto& m : maximal) {
        std::vector<Vec2> pts;
        for (const auto& q : polygon_lattice_points(m))
            if (q != Vec2{0, 0}) pts.push_back(q);
        for (unsigned mask = 0; mask < (1u << pts.size()); ++mask) {
            std::vector<Vec2> sub;
            for (size_t i = 0; i < pts.size(); ++i)
                if (mask & (1u << i)) sub.push_back(pts[i]);
            if (sub.size() < 3) continue;
            std::vector<IntVector> as_vectors;
            for (const auto& q : sub) as_vectors.push_back(to_vector(q));
            if (affine_rank(as_vectors) < 2) continue;
            auto hull = convex_hull_2d(sub);
            if (!seen.insert(hull).second) continue;
            std::vector<IntVector> hv;
            for (const auto& q : hull) hv.push_back(to_vector(q));
            auto poly = make_polytope("", hv);
            if (!is_reflexive(poly)) continue;
            bool known = false;
            for (const auto& e : found)
                if (affine_equivalent(e.polygon.vertices, poly.vertices)) {
                    known = true;
                    break;
                }
            if (known) continue;
            ReflexivePolygonEntry e;
            e.polygon = std::move(poly);
            e.boundary_points = boundary_point_count(e.polygon);
            e.simply_decomposable = is_decomposable_polygon(polygon_of(e.polygon));
            found.push_back(std::move(e));
        }
    }
    std::vector<std::string> labels{"3", "4", "5", "6", "6'", "7", "8", "8'", "9"};
    for (auto& e : found) {
        for (const auto& l : labels)
            if (affine_equivalent(builtin_polygon(l).vertices, e.polygon.vertices)) e.label = l;
        e.polygon.name = e.label.empty() ? "Q" + std::to_string(e.boundary_points) : "P" + e.label;
    }
    std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        return a.boundary_points < b.boundary_points;
    });
    return found;
}

// Every simply decomposable reflexive polygon, as computed from the enumeration.
inline std::vector<ReflexivePolygonEntry> list_sd_reflexive_polygons() {
    std::vector<ReflexivePolygonEntry> out;
    for (auto& e : enumerate_reflexive_polygons())
        if (e.simply_decomposable) out.push_back(std::move(e));
    return out;
}

struct ProductPair {
    std::string first;
    std::string second;
    LatticePolytope polytope;
};

inline ProductPair product_pair(const std::string& a, const std::string& b) {
    return {a, b, product(builtin_polygon(a), builtin_polygon(b), "P" + a + "xP" + b)};
}

// Products of two catalog polygons, unordered with repetition.
inline std::vector<ProductPair> product_family(const std::vector<std::string>& labels = sd_labels()) {
    std::vector<ProductPair> out;
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i; j < labels.size(); ++j) out.push_back(product_pair(labels[i], labels[j]));
    return out;
}

struct LaurentPoly {
    std::map<IntVector, BigInt> terms;

    size_t nvars() const { return terms.empty() ? 0 : terms.begin()->first.size(); }
    BigInt constant_term() const {
        for (const auto& [e, c] : terms)
            if (std::all_of(e.begin(), e.end(), [](Int x) { return x == 0; })) return c;
        return 0;
    }
    void add_term(const IntVector& e, const BigInt& c) {
        if (c == 0) return;
        auto& slot = terms[e];
        slot += c;
        if (slot == 0) terms.erase(e);
    }
};

inline LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) r.add_term(ea + eb, ca * cb);
    return r;
}

// f(x) g(y) in disjoint variables.
inline LaurentPoly tensor(const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly r;
    for (const auto& [ea, ca] : f.terms)
        for (const auto& [eb, cb] : g.terms) {
            IntVector e = ea;
            e.insert(e.end(), eb.begin(), eb.end());
            r.add_term(e, ca * cb);
        }
    return r;
}

inline BigInt binomial(Int n, Int k) {
    BigInt r = 1;
    for (Int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Coefficient C(l, j) at the j-th lattice point of every edge of lattice length l, zero elsewhere.
inline LaurentPoly binomial_edge_polynomial(const std::vector<Vec2>& polygon) {
    auto hull = convex_hull_2d(polygon);
    LaurentPoly f;
    std::map<Vec2, BigInt> coef;
    for (size_t i = 0; i < hull.size(); ++i) {
        Vec2 a = hull[i], b = hull[(i + 1) % hull.size()];
        Int l = gcd(b[0] - a[0], b[1] - a[1]);
        Vec2 step{(b[0] - a[0]) / l, (b[1] - a[1]) / l};
        for (Int j = 0; j < l; ++j) coef[{a[0] + j * step[0], a[1] + j * step[1]}] = binomial(l, j);
    }
    for (const auto& [p, c] : coef) f.add_term(to_vector(p), c);
    return f;
}

// f_k lives on the polar polygon of P_k.
inline LaurentPoly catalog_polynomial(const std::string& label) {
    auto polar = polar_dual(builtin_polygon(label));
    if (!polar.polytope) invariant_violation("catalog polygon " + label + " is not reflexive");
    return binomial_edge_polynomial(polygon_of(*polar.polytope));
}

// Constant terms of f^0, ..., f^N.
inline std::vector<BigInt> period_sequence(const LaurentPoly& f, Int n) {
    if (n < 0) invalid_input("period sequence length must be non-negative");
    std::vector<BigInt> out;
    LaurentPoly power;
    power.add_term(IntVector(f.nvars(), 0), 1);
    out.push_back(1);
    for (Int k = 1; k <= n; ++k) {
        power = power * f;
        out.push_back(power.constant_term());
    }
    return out;
}

enum class IngestProblem { malformed, not_convex, not_reflexive };

class IngestError : public Error {
public:
    IngestError(IngestProblem p, const std::string& what) : Error(ErrorKind::invalid_input, what), problem_(p) {}
    IngestProblem problem() const noexcept { return problem_; }

private:
    IngestProblem problem_;
};

inline const char* to_string(IngestProblem p) {
    switch (p) {
        case IngestProblem::malformed: return "malformed";
        case IngestProblem::not_convex: return "not-convex";
        case IngestProblem::not_reflexive: return "not-reflexive";
    }
    return "?";
}

namespace detail {

inline LatticePolytope checked_polytope(std::string name, std::vector<IntVector> pts, bool require_reflexive) {
    if (pts.empty()) throw IngestError(IngestProblem::malformed, "no vertices");
    size_t d = pts[0].size();
    for (const auto& p : pts)
        if (p.size() != d) throw IngestError(IngestProblem::malformed, "vertices of mixed dimension");
    if (d == 0 || affine_rank(pts) != d) throw IngestError(IngestProblem::malformed, "vertices do not span their space");
    LatticePolytope poly;
    try {
        poly = make_polytope(std::move(name), std::move(pts), true);
    } catch (const Error& e) {
        throw IngestError(IngestProblem::not_convex, e.what());
    }
    if (require_reflexive && !is_reflexive(poly))
        throw IngestError(IngestProblem::not_reflexive, poly.name + " is not reflexive");
    return poly;
}

}  // namespace detail

// {"name": ..., "dim": d, "vertices": [[...], ...]}
inline LatticePolytope parse_polytope_json(const std::string& text, bool require_reflexive = true) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(IngestProblem::malformed, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw IngestError(IngestProblem::malformed, "expected an object with a \"vertices\" array");
    std::vector<IntVector> pts;
    for (const auto& row : j["vertices"]) {
        if (!row.is_array()) throw IngestError(IngestProblem::malformed, "vertex is not an array");
        IntVector v;
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw IngestError(IngestProblem::malformed, "non-integer coordinate");
            v.push_back(x.get<Int>());
        }
        pts.push_back(std::move(v));
    }
    if (j.contains("dim")) {
        if (!j["dim"].is_number_integer()) throw IngestError(IngestProblem::malformed, "\"dim\" is not an integer");
        for (const auto& p : pts)
            if (static_cast<Int>(p.size()) != j["dim"].get<Int>())
                throw IngestError(IngestProblem::malformed, "vertex length differs from \"dim\"");
    }
    std::string name = j.value("name", std::string("P"));
    return detail::checked_polytope(std::move(name), std::move(pts), require_reflexive);
}

inline LatticePolytope parse_polytope_file(const std::string& path, bool require_reflexive = true) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_polytope_json(ss.str(), require_reflexive);
}

// "r c" followed by r rows of c integers. Columns are vertices when r <= c, rows otherwise.
inline LatticePolytope parse_ks_matrix(const std::string& text, bool require_reflexive = true,
                                       std::string name = "P") {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<Int>> rows;
    while (std::getline(in, line)) {
        if (auto c = line.find_first_of("#%"); c != std::string::npos && rows.empty()) line = line.substr(0, c);
        std::istringstream ls(line);
        std::vector<Int> row;
        std::string tok;
        while (ls >> tok) {
            try {
                size_t used = 0;
                long long v = std::stoll(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                row.push_back(v);
            } catch (const std::exception&) {
                if (rows.empty()) break;  // trailing header text
                throw IngestError(IngestProblem::malformed, "non-integer entry '" + tok + "'");
            }
        }
        if (rows.empty() && row.size() > 2) row.resize(2);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty() || rows[0].size() != 2) throw IngestError(IngestProblem::malformed, "missing \"rows cols\" header");
    Int r = rows[0][0], c = rows[0][1];
    if (r <= 0 || c <= 0) throw IngestError(IngestProblem::malformed, "matrix shape must be positive");
    if (static_cast<Int>(rows.size()) - 1 != r)
        throw IngestError(IngestProblem::malformed, "expected " + std::to_string(r) + " matrix rows");
    for (size_t i = 1; i < rows.size(); ++i)
        if (static_cast<Int>(rows[i].size()) != c)
            throw IngestError(IngestProblem::malformed, "row " + std::to_string(i) + " does not have " + std::to_string(c) + " entries");
    std::vector<IntVector> pts;
    if (r <= c) {
        for (Int j = 0; j < c; ++j) {
            IntVector v;
            for (Int i = 0; i < r; ++i) v.push_back(rows[i + 1][j]);
            pts.push_back(std::move(v));
        }
    } else {
        for (Int i = 0; i < r; ++i) pts.push_back(rows[i + 1]);
    }
    return detail::checked_polytope(std::move(name), std::move(pts), require_reflexive);
}

inline nlohmann::json to_json(const LatticePolytope& p) {
    nlohmann::json j;
    j["name"] = p.name;
    j["dim"] = p.dim();
    j["vertices"] = p.vertices;
    return j;
}

}  // namespace sdp

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "minkowski.hpp"

namespace sdp {

enum class HollowClass { not_hollow, cayley_of_segments, twice_standard_simplex };

inline const char* to_string(HollowClass h) {
    switch (h) {
        case HollowClass::not_hollow: return "not-hollow";
        case HollowClass::cayley_of_segments: return "cayley-of-segments";
        case HollowClass::twice_standard_simplex: return "twice-standard-simplex";
    }
    return "?";
}

// Lattice width of a polygon in the primitive direction u (u evaluated on the vertices).
inline Int width_along(const std::vector<Vec2>& poly, const Vec2& u) {
    Int lo = std::numeric_limits<Int>::max(), hi = std::numeric_limits<Int>::min();
    for (const auto& v : poly) {
        Int x = add(mul(u[0], v[0]), mul(u[1], v[1]));
        lo = std::min(lo, x), hi = std::max(hi, x);
    }
    return hi - lo;
}

inline HollowClass classify_hollow(const std::vector<Vec2>& q) {
    auto poly = convex_hull_2d(q);
    if (poly.size() < 3) invalid_input("classify_hollow needs a two-dimensional polygon");
    size_t all = polygon_lattice_points(poly).size();
    size_t boundary = polygon_boundary_points(poly).size();
    if (all != boundary) return HollowClass::not_hollow;
    std::vector<IntVector> a, b{{0, 0}, {2, 0}, {0, 2}};
    for (const auto& v : poly) a.push_back(to_vector(v));
    if (affine_equivalent(a, b)) return HollowClass::twice_standard_simplex;
    // Otherwise the polygon has lattice width one along the normal of some edge.
    for (const auto& e : polygon_edges(poly)) {
        Int g = gcd(e[0], e[1]);
        if (width_along(poly, {-e[1] / g, e[0] / g}) == 1) return HollowClass::cayley_of_segments;
    }
    invariant_violation("hollow polygon of unexpected type");
}

// Orientation of edges and 2-faces of P°.
struct OrientationData {
    std::vector<int> edge_sign;  // per edge of P°: +1 runs from its lower to its higher vertex index
    std::vector<int> face_sign;  // per 2-face of P°: +1 is counter-clockwise in its chart
};

inline OrientationData build_orientation(const ReflexivePolytope& p) {
    const auto& qf = p.polar_faces();
    return {std::vector<int>(qf.count(1), 1), std::vector<int>(qf.count(2), 1)};
}

// A linear form on slope functions: sum of coef * V(summand).
struct LinearForm {
    std::vector<std::pair<int, int>> terms;
    std::string label;

    Rational eval(const RatVector& v) const {
        Rational s = 0;
        for (auto [i, c] : terms) s += c * v[i];
        return s;
    }
};

// Everything about P needed to test slope functions, independent of D.
class RegularityContext {
public:
    RegularityContext() = default;

    explicit RegularityContext(DecompositionSpace space) : space_(std::move(space)) {
        if (!space_.simply_decomposable()) invalid_input("polytope is not simply decomposable: " + space_.diagnostic());
        auto q = space_.polytope().dual();
        for (size_t s = 0; s < q.faces().count(2); ++s) {
            polar_faces_.push_back(q.scaled_face(static_cast<int>(s)));
            hollow_.push_back(classify_hollow(polar_faces_.back().polygon));
        }
        orient_ = build_orientation(space_.polytope());
    }

    const DecompositionSpace& space() const { return space_; }
    const ReflexivePolytope& polytope() const { return space_.polytope(); }
    const ScaledFace& polar_face(size_t s) const { return polar_faces_[s]; }
    size_t polar_face_count() const { return polar_faces_.size(); }
    HollowClass hollow(size_t s) const { return hollow_[s]; }
    const OrientationData& orientation() const { return orient_; }
    void set_orientation(OrientationData o) { orient_ = std::move(o); }

    // +1 if the counter-clockwise walk of sigma's polygon edge i runs along the orientation of its edge.
    int ccw_sign(size_t sigma, size_t i) const {
        const auto& sf = polar_faces_[sigma];
        int a = sf.polygon_vertex[i], b = sf.polygon_vertex[(i + 1) % sf.polygon_vertex.size()];
        return (a < b ? 1 : -1) * orient_.edge_sign[sf.polygon_edge[i]];
    }
    // sgn(sigma, tau) relative to the chosen face orientation.
    int sgn(size_t sigma, size_t i) const { return orient_.face_sign[sigma] * ccw_sign(sigma, i); }

    // Position in sigma's polygon of the edge tau.
    size_t edge_position(size_t sigma, int tau) const {
        const auto& pe = polar_faces_[sigma].polygon_edge;
        auto it = std::find(pe.begin(), pe.end(), tau);
        if (it == pe.end()) invariant_violation("edge is not on the 2-face");
        return static_cast<size_t>(it - pe.begin());
    }

private:
    DecompositionSpace space_;
    std::vector<ScaledFace> polar_faces_;
    std::vector<HollowClass> hollow_;
    OrientationData orient_;
};

struct ConsistencySpace {
    size_t ambient_dim = 0;
    std::vector<RatVector> basis;
    std::vector<LinearForm> equations;  // one per 2-face of P°
};

inline ConsistencySpace consistency_space(const RegularityContext& ctx, const EdgeMatching& em) {
    ConsistencySpace cs;
    cs.ambient_dim = em.summands.size();
    IntMatrix a;
    for (size_t s = 0; s < em.incidences.size(); ++s) {
        LinearForm eq;
        eq.label = "sigma" + std::to_string(s);
        IntVector row(cs.ambient_dim, 0);
        for (const auto& inc : em.incidences[s]) {
            int sg = ctx.sgn(s, ctx.edge_position(s, inc.tau));
            for (int m : inc.summands) {
                row[m] += sg;
                eq.terms.push_back({m, sg});
            }
        }
        a.push_back(std::move(row));
        cs.equations.push_back(std::move(eq));
    }
    for (const auto& v : kernel_basis_integer(std::move(a), cs.ambient_dim)) cs.basis.emplace_back(v.begin(), v.end());
    return cs;
}

struct FaceCertificate {
    int sigma = -1;
    HollowClass hollow = HollowClass::not_hollow;
    bool regular = true;
    std::vector<std::vector<Vec2>> bad_cells;  // empty cells that are not unimodular triangles
};

struct SlopeCertificate {
    bool regular = true;
    std::vector<FaceCertificate> faces;
    std::vector<FaceCertificate> failures() const {
        std::vector<FaceCertificate> f;
        for (const auto& c : faces)
            if (!c.regular) f.push_back(c);
        return f;
    }
};

// Boundary heights on the scaled 2-face sigma: per edge the slopes of its matched summands, sorted increasing along the walk.
inline std::map<Vec2, Rational> boundary_heights(const RegularityContext& ctx, const EdgeMatching& em, size_t sigma,
                                                 const RatVector& v) {
    const auto& sf = ctx.polar_face(sigma);
    std::map<Vec2, Rational> h;
    Rational z = 0;
    size_t n = sf.polygon.size();
    for (size_t i = 0; i < n; ++i) {
        const EdgeMatching::Incidence* inc = nullptr;
        for (const auto& c : em.incidences[sigma])
            if (c.tau == sf.polygon_edge[i]) inc = &c;
        if (!inc) invariant_violation("polygon edge without incidence");
        int sg = ctx.ccw_sign(sigma, i);
        std::vector<Rational> slopes;
        for (int m : inc->summands) slopes.push_back(sg * v[m]);
        if (static_cast<Int>(slopes.size()) != sf.edge_length[i]) invariant_violation("|S(sigma,tau)| differs from the scaled edge length");
        std::sort(slopes.begin(), slopes.end());
        Vec2 p = sf.polygon[i];
        for (const auto& s : slopes) {
            h[p] = z;
            z += s;
            p = {p[0] + sf.edge_direction[i][0], p[1] + sf.edge_direction[i][1]};
        }
    }
    if (z != 0) invalid_input("slope function is not consistent on 2-face " + std::to_string(sigma));
    return h;
}

inline void check_strictly_convex(const EdgeMatching& em, const RatVector& v) {
    for (size_t f = 0; f + 1 < em.offset.size(); ++f)
        for (int i = em.offset[f]; i < em.offset[f + 1]; ++i)
            for (int j = i + 1; j < em.offset[f + 1]; ++j)
                if (v[i] == v[j])
                    invalid_input("slope function is not strictly convex: summands " + std::to_string(i) + " and " +
                                  std::to_string(j) + " on 2-face " + std::to_string(f));
}

inline FaceCertificate verify_face(const RegularityContext& ctx, const EdgeMatching& em, size_t sigma, const RatVector& v) {
    FaceCertificate fc;
    fc.sigma = static_cast<int>(sigma);
    fc.hollow = ctx.hollow(sigma);
    auto h = boundary_heights(ctx, em, sigma, v);
    auto hull = lower_hull_subdivision(ctx.polar_face(sigma).polygon, h);
    for (const auto& cell : hull.cells)
        if (is_empty_cell(cell) && !is_unimodular_triangle(cell)) {
            fc.regular = false;
            fc.bad_cells.push_back(cell);
        }
    return fc;
}

inline SlopeCertificate verify_regular_slope(const RegularityContext& ctx, const EdgeMatching& em, const RatVector& v) {
    if (v.size() != em.summands.size()) invalid_input("slope function has the wrong number of values");
    check_strictly_convex(em, v);
    SlopeCertificate cert;
    for (size_t s = 0; s < ctx.polar_face_count(); ++s) {
        auto fc = verify_face(ctx, em, s, v);
        if (!fc.regular) cert.regular = false;
        cert.faces.push_back(std::move(fc));
    }
    return cert;
}

enum class RegularityStatus { regular, irregular, not_sd };

inline const char* to_string(RegularityStatus s) {
    switch (s) {
        case RegularityStatus::regular: return "regular";
        case RegularityStatus::irregular: return "irregular";
        case RegularityStatus::not_sd: return "not-sd";
    }
    return "?";
}

struct RegularityVerdict {
    RegularityStatus status = RegularityStatus::irregular;
    std::optional<RatVector> witness;
    std::string obstruction;
    std::optional<LinearForm> obstruction_form;
    bool exact = true;       // false only when irregularity rests on an unsuccessful witness search
    size_t kernel_dim = 0;
    size_t witness_attempts = 0;
};

struct RegularityOptions {
    std::uint64_t seed = 20240601;
    size_t sweep = 400;         // random kernel points tried when degeneration forms vanish on the kernel
    Int coefficient_range = 1000000;
};

namespace detail {

inline bool vanishes_on(const LinearForm& f, const std::vector<RatVector>& basis) {
    for (const auto& b : basis)
        if (f.eval(b) != 0) return false;
    return true;
}

inline RatVector combine(const std::vector<RatVector>& basis, const std::vector<Int>& c, size_t n) {
    RatVector v(n, 0);
    for (size_t i = 0; i < basis.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < n; ++j)
            if (basis[i][j] != 0) v[j] += c[i] * basis[i][j];
    }
    return v;
}

}  // namespace detail

// Candidate degeneration forms: strict convexity, Cayley faces, and twice-standard-simplex faces.
struct DegenerationForms {
    std::vector<LinearForm> convexity;
    std::vector<LinearForm> cayley;
    std::vector<LinearForm> simplex2;
};

inline DegenerationForms degeneration_forms(const RegularityContext& ctx, const EdgeMatching& em) {
    DegenerationForms out;
    for (size_t f = 0; f + 1 < em.offset.size(); ++f)
        for (int i = em.offset[f]; i < em.offset[f + 1]; ++i)
            for (int j = i + 1; j < em.offset[f + 1]; ++j)
                out.convexity.push_back({{{i, 1}, {j, -1}},
                                         "V(" + std::to_string(i) + ")=V(" + std::to_string(j) + ") on 2-face " +
                                             std::to_string(f) + " of P"});
    for (size_t s = 0; s < ctx.polar_face_count(); ++s) {
        HollowClass hc = ctx.hollow(s);
        if (hc == HollowClass::not_hollow) continue;
        const auto& sf = ctx.polar_face(s);
        size_t n = sf.polygon.size();
        auto matched = [&](size_t i) -> const std::vector<int>& {
            for (const auto& c : em.incidences[s])
                if (c.tau == sf.polygon_edge[i]) return c.summands;
            invariant_violation("polygon edge without incidence");
        };
        if (hc == HollowClass::cayley_of_segments) {
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i + 1; j < n; ++j) {
                    const Vec2 &a = sf.edge_direction[i], &b = sf.edge_direction[j];
                    if (a[0] != -b[0] || a[1] != -b[1]) continue;
                    Vec2 u{-a[1], a[0]};
                    if (width_along(sf.polygon, u) != 1) continue;
                    int si = ctx.ccw_sign(s, i), sj = ctx.ccw_sign(s, j);
                    for (int m : matched(i))
                        for (int mm : matched(j))
                            out.cayley.push_back({{{m, si}, {mm, sj}},
                                                  "opposite unit segments of slopes V(" + std::to_string(m) + "), V(" +
                                                      std::to_string(mm) + ") coincide on hollow 2-face " +
                                                      std::to_string(s) + " of P°"});
                }
        } else if (hc == HollowClass::twice_standard_simplex) {
            if (n != 3) invariant_violation("twice standard simplex with wrong vertex count");
            int s0 = ctx.ccw_sign(s, 0), s1 = ctx.ccw_sign(s, 1), s2 = ctx.ccw_sign(s, 2);
            for (int a : matched(0))
                for (int b : matched(1))
                    for (int c : matched(2))
                        out.simplex2.push_back({{{a, s0}, {b, s1}, {c, s2}},
                                                "slopes V(" + std::to_string(a) + "), V(" + std::to_string(b) + "), V(" +
                                                    std::to_string(c) + ") close an empty square on 2-face " +
                                                    std::to_string(s) + " of P°"});
        }
    }
    return out;
}

inline RegularityVerdict decide_regularity(const RegularityContext& ctx, const EdgeMatching& em,
                                           const RegularityOptions& opt = {}) {
    RegularityVerdict verdict;
    auto cs = consistency_space(ctx, em);
    verdict.kernel_dim = cs.basis.size();
    auto forms = degeneration_forms(ctx, em);
    for (const auto& f : forms.convexity)
        if (detail::vanishes_on(f, cs.basis)) {
            verdict.status = RegularityStatus::irregular;
            verdict.obstruction = "forced equality " + f.label;
            verdict.obstruction_form = f;
            return verdict;
        }
    for (const auto& f : forms.cayley)
        if (detail::vanishes_on(f, cs.basis)) {
            verdict.status = RegularityStatus::irregular;
            verdict.obstruction = "forced degeneration: " + f.label;
            verdict.obstruction_form = f;
            return verdict;
        }
    std::vector<const LinearForm*> avoid, forced;
    for (const auto* group : {&forms.convexity, &forms.cayley, &forms.simplex2})
        for (const auto& f : *group) (detail::vanishes_on(f, cs.basis) ? forced : avoid).push_back(&f);

    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<Int> coef(-opt.coefficient_range, opt.coefficient_range);
    size_t attempts = forced.empty() ? 16 : opt.sweep;
    for (size_t t = 0; t < attempts; ++t) {
        std::vector<Int> c(cs.basis.size());
        for (auto& x : c) x = coef(rng);
        RatVector v = detail::combine(cs.basis, c, cs.ambient_dim);
        bool generic = true;
        for (const auto* f : avoid)
            if (f->eval(v) == 0) {
                generic = false;
                break;
            }
        if (!generic) continue;
        ++verdict.witness_attempts;
        if (verify_regular_slope(ctx, em, v).regular) {
            verdict.status = RegularityStatus::regular;
            verdict.witness = std::move(v);
            return verdict;
        }
    }
    verdict.status = RegularityStatus::irregular;
    verdict.exact = false;
    if (!forced.empty()) {
        verdict.obstruction = "forced degeneration: " + forced.front()->label + " (no regular witness among " +
                              std::to_string(verdict.witness_attempts) + " generic slope functions)";
        verdict.obstruction_form = *forced.front();
    } else {
        verdict.obstruction = "no regular witness among " + std::to_string(verdict.witness_attempts) +
                              " generic slope functions, although no degeneration form is forced";
    }
    return verdict;
}

inline RegularityVerdict decide_regularity(const RegularityContext& ctx, const StandardDecomposition& d,
                                           const RegularityOptions& opt = {}) {
    return decide_regularity(ctx, edge_matching(ctx.space(), d), opt);
}

// Renumbers summands inside each 2-face block: summand i of face f takes slot perm[f][i].
inline EdgeMatching permute_summands(const EdgeMatching& em, const std::vector<std::vector<int>>& perm) {
    EdgeMatching out = em;
    std::vector<int> where(em.summands.size());
    for (size_t f = 0; f + 1 < em.offset.size(); ++f) {
        int n = em.offset[f + 1] - em.offset[f];
        if (perm.at(f).size() != static_cast<size_t>(n)) invalid_input("summand permutation has the wrong size");
        for (int i = 0; i < n; ++i) {
            where[em.offset[f] + i] = em.offset[f] + perm[f][i];
            out.summands[em.offset[f] + perm[f][i]] = em.summands[em.offset[f] + i];
        }
    }
    for (auto& incs : out.incidences)
        for (auto& inc : incs)
            for (auto& m : inc.summands) m = where[m];
    return out;
}

// m -> m + <n2 - n1, m> (v1 - v2) for facets F1, F2 of P° dual to vertices n1, n2 of P and vertices v1, v2 of P°.
inline IntMatrix monodromy_matrix(const ReflexivePolytope& p, int f1, int f2, int v1, int v2) {
    auto q = p.dual();
    size_t d = p.dim();
    const auto& n1 = p.vertex(p.faces().faces[0][q.dual_face(d - 1, f1)][0]);
    const auto& n2 = p.vertex(p.faces().faces[0][q.dual_face(d - 1, f2)][0]);
    IntVector w = n2 - n1;
    IntVector u = q.vertex(v1) - q.vertex(v2);
    IntMatrix t = identity_matrix(d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) t[i][j] = add(t[i][j], mul(u[i], w[j]));
    return t;
}

}  // namespace sdp

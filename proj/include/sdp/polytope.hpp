#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace sdp {

struct LatticePolytope {
    std::string name;
    std::vector<IntVector> vertices;

    size_t dim() const { return vertices.empty() ? 0 : vertices[0].size(); }
};

// Builds a polytope from points, keeping only the vertices of the hull, in lexicographic order.
inline LatticePolytope make_polytope(std::string name, std::vector<IntVector> points, bool require_vertices = false) {
    if (points.empty()) invalid_input("polytope without points");
    size_t d = points[0].size();
    for (const auto& p : points)
        if (p.size() != d) invalid_input("inconsistent point dimensions");
    std::vector<IntVector> verts;
    if (d == 2) {
        std::vector<Vec2> pts;
        for (const auto& p : points) pts.push_back(to_vec2(p));
        for (const auto& v : convex_hull_2d(pts)) verts.push_back(to_vector(v));
        if (affine_rank(points) < 2) invalid_input("polygon is not two-dimensional");
    } else {
        for (int i : hull_vertex_indices(points)) verts.push_back(points[i]);
    }
    std::sort(verts.begin(), verts.end());
    if (require_vertices) {
        std::vector<IntVector> given = points;
        std::sort(given.begin(), given.end());
        given.erase(std::unique(given.begin(), given.end()), given.end());
        if (given != verts) invalid_input("not in convex position: a listed point is not a vertex");
    }
    return {std::move(name), std::move(verts)};
}

struct FaceLattice {
    size_t dim = 0;
    // faces[k]: the k-dimensional faces as sorted vertex-index sets, in lexicographic order.
    std::vector<std::vector<std::vector<int>>> faces;
    // subfaces[k][i]: indices into faces[k-1] of the facets of faces[k][i].
    std::vector<std::vector<std::vector<int>>> subfaces;
    std::vector<Halfspace> facet_inequalities;  // aligned with faces[dim-1]
    std::vector<std::map<std::vector<int>, int>> index;

    int find(size_t k, const std::vector<int>& verts) const {
        auto it = index[k].find(verts);
        return it == index[k].end() ? -1 : it->second;
    }
    size_t count(size_t k) const { return faces[k].size(); }
};

namespace detail {
inline std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}
inline bool subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}
}  // namespace detail

inline FaceLattice face_lattice(const LatticePolytope& p) {
    size_t d = p.dim();
    if (d < 1 || affine_rank(p.vertices) != d) invalid_input("face_lattice needs a full-dimensional polytope");
    FaceLattice fl;
    fl.dim = d;
    fl.faces.assign(d, {});
    fl.subfaces.assign(d, {});
    fl.index.assign(d, {});
    auto hs = facets(p.vertices);
    std::set<std::vector<int>> all;
    std::vector<std::vector<int>> frontier;
    for (const auto& h : hs) {
        if (all.insert(h.incident).second) frontier.push_back(h.incident);
    }
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& f : frontier)
            for (const auto& h : hs) {
                auto g = detail::intersect(f, h.incident);
                if (g.empty() || g.size() == f.size()) continue;
                if (all.insert(g).second) next.push_back(g);
            }
        frontier = std::move(next);
    }
    for (const auto& f : all) {
        std::vector<IntVector> pts;
        for (int i : f) pts.push_back(p.vertices[i]);
        size_t k = affine_rank(pts);
        if (k < d) fl.faces[k].push_back(f);
    }
    for (size_t k = 0; k < d; ++k) {
        std::sort(fl.faces[k].begin(), fl.faces[k].end());
        for (size_t i = 0; i < fl.faces[k].size(); ++i) fl.index[k][fl.faces[k][i]] = static_cast<int>(i);
    }
    if (fl.faces[0].size() != p.vertices.size()) invariant_violation("vertex list contains non-vertices");
    for (size_t k = 1; k < d; ++k) {
        fl.subfaces[k].resize(fl.faces[k].size());
        for (size_t i = 0; i < fl.faces[k].size(); ++i)
            for (size_t j = 0; j < fl.faces[k - 1].size(); ++j)
                if (detail::subset(fl.faces[k - 1][j], fl.faces[k][i])) fl.subfaces[k][i].push_back(static_cast<int>(j));
    }
    fl.facet_inequalities.resize(fl.faces[d - 1].size());
    for (const auto& h : hs) fl.facet_inequalities[fl.find(d - 1, h.incident)] = h;
    return fl;
}

struct PolarResult {
    std::vector<RatVector> vertices;
    bool reflexive = false;
    std::optional<LatticePolytope> polytope;
};

inline PolarResult polar_dual(const LatticePolytope& p) {
    auto hs = facets(p.vertices);
    PolarResult r;
    r.reflexive = true;
    for (const auto& h : hs) {
        if (h.offset >= 0) invalid_input("origin is not strictly interior");
        RatVector m;
        for (Int a : h.normal) m.push_back(Rational(a) / -h.offset);
        if (h.offset != -1) r.reflexive = false;
        r.vertices.push_back(m);
    }
    if (r.reflexive) {
        std::vector<IntVector> pts;
        for (const auto& h : hs) pts.push_back(h.normal);
        r.polytope = make_polytope(p.name.empty() ? std::string() : p.name + "°", pts);
    }
    return r;
}

inline bool is_reflexive(const LatticePolytope& p) {
    for (const auto& h : facets(p.vertices))
        if (h.offset != -1) return false;
    return true;
}

inline LatticePolytope product(const LatticePolytope& a, const LatticePolytope& b, std::string name = {}) {
    std::vector<IntVector> pts;
    for (const auto& v : a.vertices)
        for (const auto& w : b.vertices) {
            IntVector x = v;
            x.insert(x.end(), w.begin(), w.end());
            pts.push_back(x);
        }
    std::sort(pts.begin(), pts.end());
    if (name.empty()) name = a.name + "x" + b.name;
    return {std::move(name), std::move(pts)};
}

// conv(a x {0} ∪ {0} x b)
inline LatticePolytope free_sum(const LatticePolytope& a, const LatticePolytope& b, std::string name = {}) {
    std::vector<IntVector> pts;
    for (const auto& v : a.vertices) {
        IntVector x = v;
        x.resize(a.dim() + b.dim(), 0);
        pts.push_back(x);
    }
    for (const auto& w : b.vertices) {
        IntVector x(a.dim(), 0);
        x.insert(x.end(), w.begin(), w.end());
        pts.push_back(x);
    }
    if (name.empty()) name = a.name + "+" + b.name;
    return make_polytope(std::move(name), pts);
}

// A 2-face scaled by the lattice length of its dual edge, in coordinates of its tangent lattice.
struct ScaledFace {
    int face = -1;
    Int scale = 1;
    IntVector anchor;                // lexicographically least vertex of the face
    IntMatrix basis;                 // two rows, Hermite reduced
    std::vector<Vec2> polygon;       // counter-clockwise, vertices of scale * (F - anchor)
    std::vector<int> polygon_vertex; // vertex index of the polytope for each polygon vertex
    std::vector<int> polygon_edge;   // 1-face index for the edge polygon[i] -> polygon[i+1]
    std::vector<Vec2> edge_direction;  // primitive counter-clockwise direction of each polygon edge
    std::vector<Int> edge_length;      // lattice length of each polygon edge (scaled)

    // Coordinates of a Z^n vector of the face's tangent space in the face basis.
    Vec2 local(const IntVector& v) const { return to_vec2(lattice_coordinates(basis, v)); }
};

// A reflexive polytope together with its polar, both face lattices and face duality.
class ReflexivePolytope {
public:
    ReflexivePolytope() = default;

    explicit ReflexivePolytope(const LatticePolytope& p) {
        auto data = std::make_shared<Data>();
        data->side[0] = p;
        auto pr = polar_dual(p);
        if (!pr.reflexive) invalid_input("polytope " + p.name + " is not reflexive");
        data->side[1] = *pr.polytope;
        for (int s = 0; s < 2; ++s) data->lattice[s] = face_lattice(data->side[s]);
        size_t d = p.dim();
        for (int s = 0; s < 2; ++s) {
            data->dual[s].resize(d);
            const auto& here = data->side[s];
            const auto& there = data->side[1 - s];
            for (size_t k = 0; k < d; ++k) {
                for (const auto& f : data->lattice[s].faces[k]) {
                    std::vector<int> g;
                    for (int j = 0; j < static_cast<int>(there.vertices.size()); ++j) {
                        bool all = true;
                        for (int i : f)
                            if (dot(there.vertices[j], here.vertices[i]) != -1) {
                                all = false;
                                break;
                            }
                        if (all) g.push_back(j);
                    }
                    int idx = data->lattice[1 - s].find(d - 1 - k, g);
                    if (idx < 0) invariant_violation("face duality failed");
                    data->dual[s][k].push_back(idx);
                }
            }
        }
        data_ = data;
    }

    ReflexivePolytope dual() const {
        ReflexivePolytope r;
        r.data_ = data_;
        r.side_ = 1 - side_;
        return r;
    }

    const LatticePolytope& polytope() const { return data_->side[side_]; }
    const LatticePolytope& polar() const { return data_->side[1 - side_]; }
    const FaceLattice& faces() const { return data_->lattice[side_]; }
    const FaceLattice& polar_faces() const { return data_->lattice[1 - side_]; }
    size_t dim() const { return polytope().dim(); }
    const IntVector& vertex(int i) const { return polytope().vertices[i]; }

    // Index in polar_faces()[dim-1-k] of F*, for F = faces()[k][i].
    int dual_face(size_t k, int i) const { return data_->dual[side_][k][i]; }

    std::vector<IntVector> face_points(size_t k, int i) const {
        std::vector<IntVector> pts;
        for (int v : faces().faces[k][i]) pts.push_back(polytope().vertices[v]);
        return pts;
    }

    // Lattice length of an edge.
    Int edge_length(int e) const {
        const auto& f = faces().faces[1][e];
        return lattice_length(vertex(f[0]), vertex(f[1]));
    }
    // Lattice length of the dual edge of a (dim-2)-face.
    Int dual_edge_length(int f) const {
        int e = dual_face(dim() - 2, f);
        const auto& ev = polar_faces().faces[1][e];
        return lattice_length(polar().vertices[ev[0]], polar().vertices[ev[1]]);
    }

    ScaledFace scaled_face(int f) const {
        if (dim() < 3) invalid_input("scaled_face needs dimension at least 3");
        const auto& fl = faces();
        ScaledFace sf;
        sf.face = f;
        sf.scale = dim() == 4 ? dual_edge_length(f) : 1;
        auto pts = face_points(2, f);
        auto chart = affine_chart(pts);
        if (chart.basis.size() != 2) invariant_violation("2-face of wrong dimension");
        sf.anchor = chart.anchor;
        sf.basis = chart.basis;
        std::map<Vec2, int> back;
        std::vector<Vec2> local;
        const auto& verts = fl.faces[2][f];
        for (size_t i = 0; i < verts.size(); ++i) {
            Vec2 c = to_vec2(chart.coords(pts[i]));
            c = {mul(c[0], sf.scale), mul(c[1], sf.scale)};
            back[c] = verts[i];
            local.push_back(c);
        }
        sf.polygon = convex_hull_2d(local);
        size_t n = sf.polygon.size();
        for (size_t i = 0; i < n; ++i) sf.polygon_vertex.push_back(back.at(sf.polygon[i]));
        for (size_t i = 0; i < n; ++i) {
            std::vector<int> e{sf.polygon_vertex[i], sf.polygon_vertex[(i + 1) % n]};
            std::sort(e.begin(), e.end());
            int idx = fl.find(1, e);
            if (idx < 0) invariant_violation("polygon edge is not an edge of the polytope");
            sf.polygon_edge.push_back(idx);
            const Vec2& a = sf.polygon[i];
            const Vec2& b = sf.polygon[(i + 1) % n];
            Int g = gcd(b[0] - a[0], b[1] - a[1]);
            sf.edge_direction.push_back({(b[0] - a[0]) / g, (b[1] - a[1]) / g});
            sf.edge_length.push_back(g);
        }
        return sf;
    }

    bool valid() const { return static_cast<bool>(data_); }

private:
    struct Data {
        LatticePolytope side[2];
        FaceLattice lattice[2];
        std::vector<std::vector<int>> dual[2];
    };
    std::shared_ptr<const Data> data_;
    int side_ = 0;
};

}  // namespace sdp

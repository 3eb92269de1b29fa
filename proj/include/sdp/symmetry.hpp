#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "minkowski.hpp"

namespace sdp {

struct LatticeAutomorphism {
    IntMatrix matrix;
    std::vector<int> vertex_permutation;  // vertex i maps to vertex_permutation[i]
};

namespace detail {

inline std::vector<std::vector<int>> vertex_neighbours(const FaceLattice& fl) {
    std::vector<std::vector<int>> nb(fl.count(0));
    for (const auto& e : fl.faces[1]) {
        nb[e[0]].push_back(e[1]);
        nb[e[1]].push_back(e[0]);
    }
    return nb;
}

inline IntMatrix columns(const std::vector<IntVector>& cols) {
    IntMatrix m(cols[0].size(), IntVector(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < cols[j].size(); ++i) m[i][j] = cols[j][i];
    return m;
}

// adj(B) with B adj(B) = det(B) I.
inline std::vector<std::vector<BigInt>> adjugate(const IntMatrix& b) {
    size_t n = b.size();
    std::vector<std::vector<BigInt>> adj(n, std::vector<BigInt>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            IntMatrix minor;
            for (size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                IntVector row;
                for (size_t c = 0; c < n; ++c)
                    if (c != i) row.push_back(b[r][c]);
                minor.push_back(std::move(row));
            }
            BigInt m = minor.empty() ? BigInt(1) : determinant_big(minor);
            adj[i][j] = ((i + j) % 2 == 0) ? m : BigInt(-m);
        }
    return adj;
}

}  // namespace detail

// Vertex i of p goes to vertex perm[i] of q under g; empty when g(p) != q.
inline std::vector<int> vertex_permutation_onto(const LatticePolytope& p, const LatticePolytope& q, const IntMatrix& g) {
    if (p.vertices.size() != q.vertices.size() || g.size() != p.dim()) return {};
    std::map<IntVector, int> where;
    for (size_t i = 0; i < q.vertices.size(); ++i) where[q.vertices[i]] = static_cast<int>(i);
    std::vector<int> perm(p.vertices.size());
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        auto it = where.find(mat_vec(g, p.vertices[i]));
        if (it == where.end()) return {};
        perm[i] = it->second;
    }
    return perm;
}

inline std::vector<int> vertex_permutation(const LatticePolytope& p, const IntMatrix& g) {
    return vertex_permutation_onto(p, p, g);
}

inline bool is_automorphism(const LatticePolytope& p, const IntMatrix& g) {
    if (g.size() != p.dim()) return false;
    Int d = determinant(g);
    return (d == 1 || d == -1) && !vertex_permutation(p, g).empty();
}

// Every g in GL(Z^d) with g(P) = P. A vertex and d-1 of its neighbours spanning R^d are sent to every
// vertex and ordered choice of its neighbours; each candidate is kept when it is integral, unimodular and
// permutes the vertices.
inline std::vector<LatticeAutomorphism> automorphism_group(const ReflexivePolytope& rp) {
    const auto& p = rp.polytope();
    const auto& fl = rp.faces();
    size_t d = p.dim();
    auto nb = detail::vertex_neighbours(fl);

    std::vector<int> base;
    for (size_t v = 0; v < p.vertices.size() && base.empty(); ++v) {
        if (nb[v].size() + 1 < d) continue;
        detail::for_each_combination(static_cast<int>(nb[v].size()), static_cast<int>(d - 1), [&](const std::vector<int>& pick) {
            if (!base.empty()) return;
            std::vector<IntVector> cols{p.vertices[v]};
            for (int i : pick) cols.push_back(p.vertices[nb[v][i]]);
            if (rank(detail::columns(cols)) == d) {
                base = {static_cast<int>(v)};
                for (int i : pick) base.push_back(nb[v][i]);
            }
        });
    }
    if (base.empty()) invariant_violation("no spanning vertex star");

    std::vector<IntVector> bcols;
    for (int b : base) bcols.push_back(p.vertices[b]);
    IntMatrix bm = detail::columns(bcols);
    BigInt det_b = determinant_big(bm);
    auto adj = detail::adjugate(bm);

    std::vector<LatticeAutomorphism> group;
    std::vector<int> images(d);
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == d) {
            // g = W adj(B) / det(B)
            IntMatrix g(d, IntVector(d));
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j < d; ++j) {
                    BigInt s = 0;
                    for (size_t t = 0; t < d; ++t) s += BigInt(p.vertices[images[t]][i]) * adj[t][j];
                    if (s % det_b != 0) return;
                    g[i][j] = to_int(BigInt(s / det_b));
                }
            Int dg = determinant(g);
            if (dg != 1 && dg != -1) return;
            auto perm = vertex_permutation(p, g);
            if (perm.empty()) return;
            group.push_back({std::move(g), std::move(perm)});
            return;
        }
        for (int w : nb[images[0]]) {
            if (std::find(images.begin() + 1, images.begin() + k, w) != images.begin() + k) continue;
            images[k] = w;
            rec(k + 1);
        }
    };
    for (size_t w = 0; w < p.vertices.size(); ++w) {
        if (nb[w].size() != nb[base[0]].size()) continue;
        images[0] = static_cast<int>(w);
        rec(1);
    }
    std::sort(group.begin(), group.end(),
              [](const LatticeAutomorphism& a, const LatticeAutomorphism& b) { return a.matrix < b.matrix; });
    return group;
}

// Face and per-face option correspondences induced by a unimodular map g sending P onto P'.
struct InducedMap {
    std::vector<int> face;                 // 2-face f of P goes to face[f] of P'
    std::vector<std::vector<int>> option;  // option c on f goes to option[f][c] on face[f]
};

inline InducedMap induced_map(const DecompositionSpace& src, const DecompositionSpace& dst, const IntMatrix& g) {
    const auto& fs = src.polytope().faces();
    const auto& fd = dst.polytope().faces();
    auto perm = vertex_permutation_onto(src.polytope().polytope(), dst.polytope().polytope(), g);
    if (perm.empty()) invalid_input("matrix does not map the polytope onto the target");
    InducedMap im;
    size_t nf = src.face_count();
    im.face.resize(nf);
    im.option.resize(nf);
    for (size_t f = 0; f < nf; ++f) {
        std::vector<int> img;
        for (int v : fs.faces[2][f]) img.push_back(perm[v]);
        std::sort(img.begin(), img.end());
        int h = fd.find(2, img);
        if (h < 0) invariant_violation("unimodular map does not send 2-faces to 2-faces");
        im.face[f] = h;
        const auto& from = src.face(f);
        const auto& to = dst.face(h);
        // Induced map between tangent lattices: columns are images of the source basis.
        Vec2 c0 = to.local(mat_vec(g, from.basis[0]));
        Vec2 c1 = to.local(mat_vec(g, from.basis[1]));
        Int det = c0[0] * c1[1] - c1[0] * c0[1];
        if (det != 1 && det != -1) invariant_violation("induced face map is not unimodular");
        // Counter-clockwise edge vectors stay counter-clockwise after composing with the determinant.
        auto push = [&](const Vec2& v) -> Vec2 {
            return {det * (c0[0] * v[0] + c1[0] * v[1]), det * (c0[1] * v[0] + c1[1] * v[1])};
        };
        const auto& targets = dst.options(h);
        for (const auto& dec : src.options(f)) {
            Decomposition moved;
            for (const auto& m : dec) {
                SummandProfile q{m.kind, {}};
                for (const auto& e : m.edges) q.edges.push_back(push(e));
                std::sort(q.edges.begin(), q.edges.end());
                moved.push_back(std::move(q));
            }
            std::sort(moved.begin(), moved.end());
            auto it = std::find(targets.begin(), targets.end(), moved);
            if (it == targets.end()) invariant_violation("image of a face decomposition is not a decomposition");
            im.option[f].push_back(static_cast<int>(it - targets.begin()));
        }
    }
    return im;
}

inline StandardDecomposition apply_induced(const InducedMap& im, const StandardDecomposition& d) {
    StandardDecomposition out;
    out.choice.assign(d.choice.size(), 0);
    for (size_t f = 0; f < d.choice.size(); ++f) out.choice[im.face[f]] = im.option[f][d.choice[f]];
    return out;
}

// The action of Aut(P) on decomposition data, tabulated per group element.
class DecompositionAction {
public:
    DecompositionAction(const DecompositionSpace& space, std::vector<LatticeAutomorphism> group)
        : space_(&space), group_(std::move(group)) {
        for (const auto& g : group_) maps_.push_back(induced_map(space, space, g.matrix));
    }

    const std::vector<LatticeAutomorphism>& group() const { return group_; }
    size_t order() const { return group_.size(); }
    const DecompositionSpace& space() const { return *space_; }
    int face_image(size_t g, size_t f) const { return maps_[g].face[f]; }

    StandardDecomposition apply(size_t g, const StandardDecomposition& d) const { return apply_induced(maps_[g], d); }

    // Index of g in the group, or -1.
    int index_of(const IntMatrix& g) const {
        for (size_t i = 0; i < group_.size(); ++i)
            if (group_[i].matrix == g) return static_cast<int>(i);
        return -1;
    }

private:
    const DecompositionSpace* space_;
    std::vector<LatticeAutomorphism> group_;
    std::vector<InducedMap> maps_;
};

inline StandardDecomposition act(const DecompositionAction& action, const IntMatrix& g,
                                 const StandardDecomposition& d) {
    action.space().validate(d);
    int i = action.index_of(g);
    if (i < 0) invalid_input("matrix is not an automorphism of " + action.space().polytope().polytope().name);
    return action.apply(static_cast<size_t>(i), d);
}

struct OrbitPartition {
    std::vector<StandardDecomposition> representatives;  // lexicographically least member of each orbit
    std::vector<size_t> orbit_sizes;
    std::vector<std::string> class_labels;
};

using ConfigurationLabel = std::function<std::string(const StandardDecomposition&)>;

// Mixed-radix position of d in the odometer order of the space.
inline size_t decomposition_rank(const DecompositionSpace& space, const StandardDecomposition& d) {
    size_t r = 0;
    for (size_t f = 0; f < space.face_count(); ++f) r = r * space.options(f).size() + static_cast<size_t>(d.choice[f]);
    return r;
}

inline StandardDecomposition decomposition_unrank(const DecompositionSpace& space, size_t r) {
    StandardDecomposition d;
    d.choice.assign(space.face_count(), 0);
    for (size_t f = space.face_count(); f-- > 0;) {
        size_t n = space.options(f).size();
        d.choice[f] = static_cast<int>(r % n);
        r /= n;
    }
    return d;
}

inline OrbitPartition orbits(const DecompositionAction& action, const ConfigurationLabel& label = {}) {
    const auto& space = action.space();
    OrbitPartition part;
    if (!space.simply_decomposable()) return part;
    if (space.count() > BigInt(50'000'000)) invalid_input("decomposition space too large for orbit enumeration");
    size_t total = static_cast<size_t>(space.count());
    std::vector<size_t> parent(total);
    std::iota(parent.begin(), parent.end(), size_t{0});
    std::function<size_t(size_t)> root = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t r = 0; r < total; ++r) {
        auto d = decomposition_unrank(space, r);
        for (size_t g = 0; g < action.order(); ++g) {
            size_t a = root(r), b = root(decomposition_rank(space, action.apply(g, d)));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    // Odometer order is lexicographic in the choice vector, so the first member seen is the least.
    std::map<size_t, size_t> slot;
    for (size_t r = 0; r < total; ++r) {
        size_t x = root(r);
        auto [it, fresh] = slot.emplace(x, part.representatives.size());
        if (fresh) {
            part.representatives.push_back(decomposition_unrank(space, r));
            part.orbit_sizes.push_back(0);
            part.class_labels.push_back(label ? label(part.representatives.back()) : std::string{});
        }
        ++part.orbit_sizes[it->second];
    }
    return part;
}

}  // namespace sdp

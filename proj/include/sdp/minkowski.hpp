#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "polytope.hpp"

namespace sdp {

enum class SummandKind { segment, triangle };

// A standard simplex summand up to translation, recorded by its counter-clockwise edge vectors.
struct SummandProfile {
    SummandKind kind = SummandKind::segment;
    std::vector<Vec2> edges;  // sorted; {d, -d} or {a, b, c} with a + b + c = 0

    int dim() const { return kind == SummandKind::segment ? 1 : 2; }
    bool has_edge(const Vec2& d) const { return std::find(edges.begin(), edges.end(), d) != edges.end(); }
    auto operator<=>(const SummandProfile&) const = default;
};

using Decomposition = std::vector<SummandProfile>;  // sorted multiset

inline std::string to_string(const SummandProfile& m) {
    std::string s = m.kind == SummandKind::segment ? "S[" : "T[";
    for (size_t i = 0; i < m.edges.size(); ++i) {
        if (i) s += ",";
        s += "(" + std::to_string(m.edges[i][0]) + "," + std::to_string(m.edges[i][1]) + ")";
    }
    return s + "]";
}

inline Int triangle_count(const Decomposition& d) {
    Int n = 0;
    for (const auto& m : d)
        if (m.kind == SummandKind::triangle) ++n;
    return n;
}

// Primitive counter-clockwise edge directions of a polygon with multiplicity equal to lattice length.
inline std::map<Vec2, Int> edge_budget(const std::vector<Vec2>& polygon) {
    std::map<Vec2, Int> budget;
    for (const auto& e : polygon_edges(convex_hull_2d(polygon))) {
        Int g = gcd(e[0], e[1]);
        budget[{e[0] / g, e[1] / g}] += g;
    }
    return budget;
}

// Candidate summand profiles whose edge directions occur in the budget.
inline std::vector<SummandProfile> summand_profiles(const std::map<Vec2, Int>& budget) {
    std::vector<Vec2> dirs;
    for (const auto& [d, n] : budget) dirs.push_back(d);
    std::vector<SummandProfile> out;
    for (const auto& d : dirs) {
        Vec2 nd{-d[0], -d[1]};
        if (d < nd && budget.count(nd)) out.push_back({SummandKind::segment, {d, nd}});
    }
    for (size_t i = 0; i < dirs.size(); ++i)
        for (size_t j = i + 1; j < dirs.size(); ++j) {
            Vec2 c{-dirs[i][0] - dirs[j][0], -dirs[i][1] - dirs[j][1]};
            if (!(dirs[j] < c) || !budget.count(c)) continue;
            Int d = det2(dirs[i], dirs[j]);
            if (d != 1 && d != -1) continue;
            out.push_back({SummandKind::triangle, {dirs[i], dirs[j], c}});
        }
    std::sort(out.begin(), out.end());
    return out;
}

// All multisets of standard simplex profiles whose edge vectors exactly use up the polygon's edges.
inline std::vector<Decomposition> enumerate_summand_decompositions(const std::vector<Vec2>& polygon) {
    auto budget = edge_budget(polygon);
    auto profiles = summand_profiles(budget);
    std::vector<Decomposition> out;
    Decomposition current;
    std::function<void(size_t)> rec = [&](size_t i) {
        bool empty = true;
        for (const auto& [d, n] : budget)
            if (n != 0) {
                empty = false;
                break;
            }
        if (empty) {
            out.push_back(current);
            return;
        }
        if (i == profiles.size()) return;
        const auto& p = profiles[i];
        Int most = std::numeric_limits<Int>::max();
        for (const auto& d : p.edges) most = std::min(most, budget[d]);
        for (Int k = 0; k <= most; ++k) {
            rec(i + 1);
            for (const auto& d : p.edges) --budget[d];
            current.push_back(p);
        }
        for (Int k = 0; k <= most; ++k) {
            current.pop_back();
            for (const auto& d : p.edges) ++budget[d];
        }
    };
    rec(0);
    for (auto& d : out) std::sort(d.begin(), d.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_decomposable_polygon(const std::vector<Vec2>& polygon) {
    return !enumerate_summand_decompositions(polygon).empty();
}

// A choice of decomposition index for every 2-face.
struct StandardDecomposition {
    std::vector<int> choice;
    auto operator<=>(const StandardDecomposition&) const = default;
};

// The scaled 2-faces of P together with their decompositions; the space of all D.
class DecompositionSpace {
public:
    DecompositionSpace() = default;

    explicit DecompositionSpace(ReflexivePolytope p) : p_(std::move(p)) {
        if (p_.dim() != 4) invalid_input("decomposition data needs a 4-dimensional reflexive polytope");
        size_t nf = p_.faces().count(2);
        for (size_t f = 0; f < nf; ++f) {
            faces_.push_back(p_.scaled_face(static_cast<int>(f)));
            options_.push_back(enumerate_summand_decompositions(faces_.back().polygon));
        }
        auto q = p_.dual();
        for (size_t s = 0; s < q.faces().count(2); ++s) {
            Int l = q.dual_edge_length(static_cast<int>(s));
            negatives_ += l * l * normalized_volume(q.face_points(2, static_cast<int>(s)), 2);
        }
        polar_volume_ = normalized_volume(p_.polar().vertices, p_.dim());
    }

    // Sum over 2-faces G of P° of l(G*)^2 Vol(G); independent of the decomposition.
    Int negative_count() const { return negatives_; }
    Int polar_volume() const { return polar_volume_; }

    const ReflexivePolytope& polytope() const { return p_; }
    size_t face_count() const { return faces_.size(); }
    const ScaledFace& face(size_t f) const { return faces_[f]; }
    const std::vector<Decomposition>& options(size_t f) const { return options_[f]; }

    bool simply_decomposable() const { return first_bad_face() < 0; }
    int first_bad_face() const {
        for (size_t f = 0; f < options_.size(); ++f)
            if (options_[f].empty()) return static_cast<int>(f);
        return -1;
    }

    BigInt count() const {
        BigInt n = 1;
        for (const auto& o : options_) n *= o.size();
        return n;
    }

    const Decomposition& summands(const StandardDecomposition& d, size_t f) const {
        return options_[f].at(d.choice.at(f));
    }

    void validate(const StandardDecomposition& d) const {
        if (d.choice.size() != faces_.size()) invalid_input("decomposition does not cover every 2-face");
        for (size_t f = 0; f < faces_.size(); ++f)
            if (d.choice[f] < 0 || d.choice[f] >= static_cast<int>(options_[f].size()))
                invalid_input("decomposition choice out of range on face " + std::to_string(f));
    }

    // Odometer over the Cartesian product of per-face choices, first face varying slowest.
    class iterator {
    public:
        iterator(const DecompositionSpace* s, bool end) : s_(s), end_(end) {
            if (!end_) {
                if (!s_->simply_decomposable()) end_ = true;
                cur_.choice.assign(s_->face_count(), 0);
            }
        }
        const StandardDecomposition& operator*() const { return cur_; }
        iterator& operator++() {
            for (size_t i = cur_.choice.size(); i-- > 0;) {
                if (++cur_.choice[i] < static_cast<int>(s_->options(i).size())) return *this;
                cur_.choice[i] = 0;
            }
            end_ = true;
            return *this;
        }
        bool operator!=(const iterator& o) const { return end_ != o.end_; }

    private:
        const DecompositionSpace* s_;
        bool end_;
        StandardDecomposition cur_;
    };
    iterator begin() const { return iterator(this, false); }
    iterator end() const { return iterator(this, true); }

    std::vector<StandardDecomposition> all() const {
        std::vector<StandardDecomposition> v;
        for (const auto& d : *this) v.push_back(d);
        return v;
    }

    std::string diagnostic() const {
        int f = first_bad_face();
        if (f < 0) return {};
        std::string s = "2-face " + std::to_string(f) + " scaled by " + std::to_string(faces_[f].scale) +
                        " has no decomposition into standard simplices; vertices";
        for (const auto& v : faces_[f].polygon) s += " (" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ")";
        return s;
    }

private:
    ReflexivePolytope p_;
    std::vector<ScaledFace> faces_;
    std::vector<std::vector<Decomposition>> options_;
    Int negatives_ = 0;
    Int polar_volume_ = 0;
};

inline bool is_simply_decomposable(const ReflexivePolytope& p) { return DecompositionSpace(p).simply_decomposable(); }

// Summands of D numbered globally; edge matching Edges(rho, m) and the sets S(sigma, tau).
struct EdgeMatching {
    struct Summand {
        int face = -1;  // 2-face rho of P
        int slot = -1;  // position in the sorted multiset D(rho)
        SummandProfile profile;
        std::vector<int> edges;  // positions of the polygon edges of rho matched with this summand
    };
    struct Incidence {
        int tau = -1;       // edge of P°
        int rho = -1;       // tau*, a 2-face of P
        int edge_pos = -1;  // position in rho's polygon of the edge sigma*
        std::vector<int> summands;  // S(sigma, tau), global ids
    };
    std::vector<Summand> summands;
    std::vector<int> offset;  // first global id per 2-face of P
    std::vector<std::vector<Incidence>> incidences;  // per 2-face sigma of P°
};

inline EdgeMatching edge_matching(const DecompositionSpace& space, const StandardDecomposition& d) {
    space.validate(d);
    const auto& p = space.polytope();
    auto q = p.dual();
    EdgeMatching em;
    for (size_t f = 0; f < space.face_count(); ++f) {
        em.offset.push_back(static_cast<int>(em.summands.size()));
        const auto& sf = space.face(f);
        const auto& dec = space.summands(d, f);
        for (size_t s = 0; s < dec.size(); ++s) {
            EdgeMatching::Summand m{static_cast<int>(f), static_cast<int>(s), dec[s], {}};
            for (size_t e = 0; e < sf.edge_direction.size(); ++e)
                if (dec[s].has_edge(sf.edge_direction[e])) m.edges.push_back(static_cast<int>(e));
            em.summands.push_back(std::move(m));
        }
    }
    em.offset.push_back(static_cast<int>(em.summands.size()));
    const auto& qf = q.faces();
    em.incidences.resize(qf.count(2));
    for (size_t sigma = 0; sigma < qf.count(2); ++sigma) {
        int edge_of_p = q.dual_face(2, static_cast<int>(sigma));
        for (int tau : qf.subfaces[2][sigma]) {
            EdgeMatching::Incidence inc;
            inc.tau = tau;
            inc.rho = q.dual_face(1, tau);
            const auto& sf = space.face(inc.rho);
            for (size_t e = 0; e < sf.polygon_edge.size(); ++e)
                if (sf.polygon_edge[e] == edge_of_p) inc.edge_pos = static_cast<int>(e);
            if (inc.edge_pos < 0) invariant_violation("dual edge not found in dual 2-face");
            for (int g = em.offset[inc.rho]; g < em.offset[inc.rho + 1]; ++g)
                if (std::find(em.summands[g].edges.begin(), em.summands[g].edges.end(), inc.edge_pos) !=
                    em.summands[g].edges.end())
                    inc.summands.push_back(g);
            em.incidences[sigma].push_back(std::move(inc));
        }
    }
    return em;
}

}  // namespace sdp

#pragma once

#include <string>
#include <vector>

#include "regularity.hpp"

namespace sdp {

struct PositiveNegative {
    Int positives = 0;
    Int negatives = 0;
};

inline PositiveNegative positive_negative_counts(const DecompositionSpace& space, const StandardDecomposition& d) {
    space.validate(d);
    PositiveNegative pn;
    for (size_t f = 0; f < space.face_count(); ++f) pn.positives += triangle_count(space.summands(d, f));
    pn.negatives = space.negative_count();
    return pn;
}

inline Int euler_characteristic(const DecompositionSpace& space, const StandardDecomposition& d) {
    auto pn = positive_negative_counts(space, d);
    return pn.positives - pn.negatives;
}

// The linear system whose solution space is Gamma(P, D): one unknown per edge of P, dim(m) unknowns per summand,
// one equation x_E = phi_m(d_E) per matched pair (E, m).
struct GammaSystem {
    size_t edge_vars = 0;
    size_t summand_vars = 0;
    IntMatrix equations;  // rows over edge_vars + summand_vars columns
};

inline IntVector edge_direction(const ReflexivePolytope& p, int e) {
    const auto& ev = p.faces().faces[1][e];
    return primitive(p.vertex(ev[1]) - p.vertex(ev[0]));
}

inline GammaSystem gamma_system(const DecompositionSpace& space, const StandardDecomposition& d) {
    const auto& p = space.polytope();
    auto em = edge_matching(space, d);
    GammaSystem g;
    g.edge_vars = p.faces().count(1);
    std::vector<size_t> first(em.summands.size());
    size_t next = g.edge_vars;
    for (size_t i = 0; i < em.summands.size(); ++i) {
        first[i] = next;
        next += em.summands[i].profile.dim();
    }
    g.summand_vars = next - g.edge_vars;
    for (size_t i = 0; i < em.summands.size(); ++i) {
        const auto& m = em.summands[i];
        const auto& sf = space.face(m.face);
        for (int pos : m.edges) {
            int e = sf.polygon_edge[pos];
            Vec2 local = sf.local(edge_direction(p, e));
            IntVector row(next, 0);
            row[e] = 1;
            if (m.profile.kind == SummandKind::segment) {
                const Vec2& dir = m.profile.edges[0];
                if (local == dir) row[first[i]] = -1;
                else if (local[0] == -dir[0] && local[1] == -dir[1]) row[first[i]] = 1;
                else invariant_violation("segment summand matched with a non-parallel edge");
            } else {
                row[first[i]] = -local[0];
                row[first[i] + 1] = -local[1];
            }
            g.equations.push_back(std::move(row));
        }
    }
    return g;
}

inline Int gamma(const DecompositionSpace& space, const StandardDecomposition& d) {
    auto g = gamma_system(space, d);
    size_t n = g.edge_vars + g.summand_vars;
    size_t r = rank_integer(g.equations);
    // Summand functionals are determined by their matched edges, so the kernel projects injectively to the edges.
    return static_cast<Int>(n - r);
}

struct InvariantReport {
    std::string polytope;
    std::vector<int> decomposition;
    bool sd = false;
    RegularityStatus regular = RegularityStatus::not_sd;
    bool regular_exact = true;
    std::string obstruction;
    Int chi = 0;
    Int positives = 0;
    Int negatives = 0;
    Int gamma = 0;
    Int b2 = 0;
    Int vol_polar = 0;
};

// Cross-checks that must hold for every report; violations raise an invariant error.
inline void check_report(const InvariantReport& r) {
    if (r.chi != r.positives - r.negatives) invariant_violation("chi differs from positives minus negatives");
    if (r.chi % 2 != 0) invariant_violation("odd Euler characteristic");
    if (r.b2 != r.gamma - 3) invariant_violation("b2 differs from gamma - 3");
    if (r.b2 < 1) invariant_violation("b2 below 1");
}

inline InvariantReport invariant_report(const RegularityContext& ctx, const StandardDecomposition& d,
                                        const RegularityOptions& opt = {}, bool decide = true) {
    const auto& space = ctx.space();
    InvariantReport r;
    r.polytope = space.polytope().polytope().name;
    r.decomposition = d.choice;
    r.sd = space.simply_decomposable();
    auto pn = positive_negative_counts(space, d);
    r.positives = pn.positives;
    r.negatives = pn.negatives;
    r.chi = pn.positives - pn.negatives;
    r.gamma = gamma(space, d);
    r.b2 = r.gamma - 3;
    r.vol_polar = space.polar_volume();
    if (decide) {
        auto v = decide_regularity(ctx, d, opt);
        r.regular = v.status;
        r.regular_exact = v.exact;
        r.obstruction = v.obstruction;
    }
    check_report(r);
    return r;
}

}  // namespace sdp

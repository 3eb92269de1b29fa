#include "catch_amalgamated.hpp"

#include <random>

#include "oracles.hpp"
#include "sdp/catalog.hpp"
#include "sdp/regularity.hpp"
#include "sdp/symmetry.hpp"

using namespace sdp;

namespace {

RegularityContext context(const std::string& a, const std::string& b) {
    return RegularityContext(DecompositionSpace(ReflexivePolytope(product_pair(a, b).polytope)));
}

IntMatrix random_unimodular(std::mt19937_64& rng) {
    IntMatrix u = identity_matrix(4);
    for (int s = 0; s < 10; ++s) {
        int i = static_cast<int>(rng() % 4), j = static_cast<int>(rng() % 4);
        if (i == j) continue;
        Int c = static_cast<Int>(rng() % 3) - 1;
        for (int k = 0; k < 4; ++k) u[i][k] += c * u[j][k];
    }
    return u;
}

// A handful of decompositions spread over the space.
std::vector<StandardDecomposition> sample(const DecompositionSpace& space, size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<StandardDecomposition> out;
    for (size_t i = 0; i < n; ++i) {
        StandardDecomposition d;
        for (size_t f = 0; f < space.face_count(); ++f)
            d.choice.push_back(static_cast<int>(rng() % space.options(f).size()));
        out.push_back(d);
    }
    return out;
}

}  // namespace

TEST_CASE("hollow polygon classification", "[regularity]") {
    CHECK(classify_hollow({{0, 0}, {2, 0}, {0, 2}}) == HollowClass::twice_standard_simplex);
    CHECK(classify_hollow({{1, 1}, {1, 3}, {-1, 3}}) == HollowClass::twice_standard_simplex);
    CHECK(classify_hollow({{0, 0}, {2, 0}, {2, 1}, {0, 1}}) == HollowClass::cayley_of_segments);
    CHECK(classify_hollow({{0, 0}, {1, 0}, {1, 1}, {0, 1}}) == HollowClass::cayley_of_segments);
    CHECK(classify_hollow({{0, 0}, {3, 0}, {1, 1}, {0, 1}}) == HollowClass::cayley_of_segments);
    CHECK(classify_hollow({{0, 0}, {1, 0}, {0, 1}}) == HollowClass::cayley_of_segments);
    CHECK(classify_hollow({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}) == HollowClass::not_hollow);
    CHECK(classify_hollow({{0, 0}, {3, 0}, {0, 3}}) == HollowClass::not_hollow);
    CHECK_THROWS_AS(classify_hollow({{0, 0}, {1, 1}}), Error);
}

TEST_CASE("orientation conventions", "[regularity]") {
    auto ctx = context("6", "7");
    auto flipped = ctx;
    auto o = ctx.orientation();
    for (auto& s : o.face_sign) s = -s;
    flipped.set_orientation(o);
    for (size_t s = 0; s < ctx.polar_face_count(); ++s)
        for (size_t i = 0; i < ctx.polar_face(s).polygon.size(); ++i) {
            CHECK(flipped.sgn(s, i) == -ctx.sgn(s, i));
            CHECK(flipped.ccw_sign(s, i) == ctx.ccw_sign(s, i));
        }
}

TEST_CASE("verdicts do not depend on orientation, summand order or coordinates", "[regularity]") {
    std::mt19937_64 rng(29);
    for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{{"6", "7"}, {"6", "5"}, {"6", "6"}}) {
        auto ctx = context(a, b);
        const auto& space = ctx.space();
        auto base = product_pair(a, b).polytope;
        IntMatrix u = random_unimodular(rng);
        std::vector<IntVector> moved;
        for (const auto& v : base.vertices) moved.push_back(mat_vec(u, v));
        RegularityContext moved_ctx{DecompositionSpace(ReflexivePolytope(make_polytope("moved", moved)))};
        auto im = induced_map(space, moved_ctx.space(), u);

        auto reoriented = ctx;
        auto o = ctx.orientation();
        for (auto& s : o.edge_sign) s = (rng() & 1) ? -s : s;
        for (auto& s : o.face_sign) s = (rng() & 1) ? -s : s;
        reoriented.set_orientation(o);

        for (const auto& d : sample(space, 12, rng())) {
            auto em = edge_matching(space, d);
            auto v = decide_regularity(ctx, em);
            CHECK(decide_regularity(reoriented, em).status == v.status);

            std::vector<std::vector<int>> perm;
            for (size_t f = 0; f + 1 < em.offset.size(); ++f) {
                std::vector<int> p(static_cast<size_t>(em.offset[f + 1] - em.offset[f]));
                std::iota(p.begin(), p.end(), 0);
                std::shuffle(p.begin(), p.end(), rng);
                perm.push_back(p);
            }
            CHECK(decide_regularity(ctx, permute_summands(em, perm)).status == v.status);

            CHECK(decide_regularity(moved_ctx, apply_induced(im, d)).status == v.status);
        }
    }
}

TEST_CASE("regular witnesses are sound", "[regularity]") {
    for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{{"6", "7"}, {"6", "9"}, {"4", "9"}, {"6", "6"}}) {
        auto ctx = context(a, b);
        const auto& space = ctx.space();
        size_t regular = 0;
        for (const auto& d : sample(space, 10, 41)) {
            auto em = edge_matching(space, d);
            auto v = decide_regularity(ctx, em);
            if (v.status != RegularityStatus::regular) continue;
            ++regular;
            REQUIRE(v.witness);
            // Consistent on every 2-face of the polar.
            for (const auto& eq : consistency_space(ctx, em).equations) CHECK(eq.eval(*v.witness) == 0);
            for (size_t s = 0; s < ctx.polar_face_count(); ++s) {
                auto h = boundary_heights(ctx, em, s, *v.witness);
                CHECK(oracle::lower_empty_parallelograms(h).empty());
            }
            // Positive multiples are witnesses too.
            RatVector scaled = *v.witness;
            for (auto& x : scaled) x *= 7;
            CHECK(verify_regular_slope(ctx, em, scaled).regular);
        }
        CHECK(regular > 0);
    }
}

TEST_CASE("exact obstructions vanish on every consistent slope function", "[regularity]") {
    for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{{"6", "7"}, {"6", "5"}, {"6", "6"}}) {
        auto ctx = context(a, b);
        const auto& space = ctx.space();
        size_t exact = 0;
        for (const auto& d : sample(space, 24, 43)) {
            auto em = edge_matching(space, d);
            auto v = decide_regularity(ctx, em);
            if (v.status != RegularityStatus::irregular || !v.exact) continue;
            ++exact;
            REQUIRE(v.obstruction_form);
            auto cs = consistency_space(ctx, em);
            for (const auto& k : cs.basis) CHECK(v.obstruction_form->eval(k) == 0);
            std::mt19937_64 rng(5);
            for (int t = 0; t < 5; ++t) {
                RatVector x(cs.ambient_dim, Rational(0));
                for (const auto& k : cs.basis) {
                    Rational c = static_cast<Int>(rng() % 1000) - 500;
                    for (size_t i = 0; i < x.size(); ++i) x[i] += c * k[i];
                }
                for (const auto& eq : cs.equations) CHECK(eq.eval(x) == 0);
                CHECK(v.obstruction_form->eval(x) == 0);
            }
        }
        CHECK(exact > 0);
    }
}

TEST_CASE("slope functions are validated", "[regularity]") {
    auto ctx = context("6", "7");
    auto d = ctx.space().all().front();
    auto em = edge_matching(ctx.space(), d);
    CHECK_THROWS_AS(verify_regular_slope(ctx, em, RatVector(3, Rational(1))), Error);
    // Constant slopes are not strictly convex.
    CHECK_THROWS_AS(verify_regular_slope(ctx, em, RatVector(em.summands.size(), Rational(1))), Error);
}

TEST_CASE("faces with interior points never obstruct", "[regularity]") {
    auto ctx = context("6", "6");
    const auto& space = ctx.space();
    std::mt19937_64 rng(59);
    for (const auto& d : sample(space, 8, 61)) {
        auto em = edge_matching(space, d);
        auto cs = consistency_space(ctx, em);
        for (int t = 0; t < 10; ++t) {
            RatVector x(cs.ambient_dim, Rational(0));
            for (const auto& k : cs.basis) {
                Rational c = static_cast<Int>(rng() % 2001) - 1000;
                for (size_t i = 0; i < x.size(); ++i) x[i] += c * k[i];
            }
            for (size_t s = 0; s < ctx.polar_face_count(); ++s)
                if (ctx.hollow(s) == HollowClass::not_hollow) CHECK(verify_face(ctx, em, s, x).regular);
        }
    }
}

TEST_CASE("monodromy around a 2-face of the polar", "[regularity]") {
    for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{{"9", "9"}, {"6", "7"}, {"4", "8"}}) {
        ReflexivePolytope p(product_pair(a, b).polytope);
        auto q = p.dual();
        const auto& qf = q.faces();
        size_t checked = 0;
        for (size_t s = 0; s < qf.count(2); ++s) {
            const auto& sigma = qf.faces[2][s];
            std::vector<int> facets;
            for (size_t f = 0; f < qf.count(3); ++f)
                if (std::includes(qf.faces[3][f].begin(), qf.faces[3][f].end(), sigma.begin(), sigma.end()))
                    facets.push_back(static_cast<int>(f));
            REQUIRE(facets.size() == 2);
            // The edge sigma* of P joins the vertices dual to the two facets.
            int e = q.dual_face(2, static_cast<int>(s));
            Int l_sigma_star = p.edge_length(e);
            for (int tau : qf.subfaces[2][s]) {
                int v1 = qf.faces[1][tau][0], v2 = qf.faces[1][tau][1];
                Int l_tau = lattice_length(q.vertex(v1), q.vertex(v2));
                auto t = monodromy_matrix(p, facets[0], facets[1], v1, v2);
                CHECK(determinant(t) == 1);
                IntMatrix n = t;
                for (size_t i = 0; i < 4; ++i) n[i][i] -= 1;
                IntMatrix n2(4, IntVector(4, 0));
                for (size_t i = 0; i < 4; ++i)
                    for (size_t j = 0; j < 4; ++j)
                        for (size_t k = 0; k < 4; ++k) n2[i][j] += n[i][k] * n[k][j];
                CHECK(n2 == IntMatrix(4, IntVector(4, 0)));
                auto inv = smith_invariants(n);
                REQUIRE(inv.size() == 1);
                CHECK(inv[0] == BigInt(l_sigma_star * l_tau));
                CHECK(monodromy_matrix(p, facets[0], facets[1], v1, v1) == identity_matrix(4));
                ++checked;
            }
        }
        CHECK(checked > 0);
    }
}

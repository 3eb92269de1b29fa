#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "sdp/catalog.hpp"
#include "sdp/invariants.hpp"
#include "sdp/tables.hpp"

using namespace sdp;

namespace {

struct PolygonData {
    Int boundary = 0;
    Int sum_sq_lengths = 0;
    Int triangles = -1;  // in the unique decomposition, -1 when it is not unique
};

PolygonData polygon_data(const std::string& label) {
    auto ccw = polygon_of(builtin_polygon(label));
    PolygonData out;
    for (size_t i = 0; i < ccw.size(); ++i) {
        const auto& a = ccw[i];
        const auto& b = ccw[(i + 1) % ccw.size()];
        Int l = std::gcd(std::abs(b[0] - a[0]), std::abs(b[1] - a[1]));
        out.boundary += l;
        out.sum_sq_lengths += l * l;
    }
    auto decs = oracle::decompositions(ccw);
    if (decs.size() == 1) {
        out.triangles = 0;
        for (const auto& g : *decs.begin())
            if (g.size() == 3) ++out.triangles;
    }
    return out;
}

RegularityContext context(const LatticePolytope& p) { return RegularityContext(DecompositionSpace(ReflexivePolytope(p))); }

StandardDecomposition with_label(const DecompositionSpace& space, const std::string& label) {
    for (const auto& d : space)
        if (configuration_label(space, "6", "6", d) == label) return d;
    FAIL("no decomposition with configuration " << label);
    return {};
}

}  // namespace

TEST_CASE("P9 x P9", "[invariants]") {
    auto ctx = context(product_pair("9", "9").polytope);
    auto d = ctx.space().all().front();
    auto pn = positive_negative_counts(ctx.space(), d);
    CHECK(pn.positives == 18);
    CHECK(pn.negatives == 162);
    CHECK(euler_characteristic(ctx.space(), d) == -144);
    CHECK(gamma(ctx.space(), d) == 4);
    auto r = invariant_report(ctx, d);
    CHECK(r.b2 == 1);
    CHECK(r.vol_polar == 9);
    CHECK(r.regular == RegularityStatus::regular);
}

TEST_CASE("free sum of two triangles", "[invariants]") {
    auto p3 = builtin_polygon("3");
    auto ctx = context(free_sum(p3, p3));
    REQUIRE(ctx.space().count() == 1);
    auto d = ctx.space().all().front();
    auto g = gamma_system(ctx.space(), d);
    CHECK(g.edge_vars == 15);
    CHECK(gamma(ctx.space(), d) == 5);
}

TEST_CASE("unique decompositions match a closed form on products", "[invariants]") {
    // For P_a x P_b with unique decompositions: positives t_a (12 - b_b) + t_b (12 - b_a) and
    // negatives (12 - b_a) sum_b l^2 + (12 - b_b) sum_a l^2, with t the triangle count of the factor.
    for (const auto& a : sd_labels())
        for (const auto& b : sd_labels()) {
            if (b < a || a == "6" || b == "6") continue;
            auto da = polygon_data(a), db = polygon_data(b);
            REQUIRE(da.triangles >= 0);
            REQUIRE(db.triangles >= 0);
            auto ctx = context(product_pair(a, b).polytope);
            REQUIRE(ctx.space().count() == 1);
            auto d = ctx.space().all().front();
            auto pn = positive_negative_counts(ctx.space(), d);
            INFO(a << " x " << b);
            CHECK(pn.positives == da.triangles * (12 - db.boundary) + db.triangles * (12 - da.boundary));
            CHECK(pn.negatives == (12 - da.boundary) * db.sum_sq_lengths + (12 - db.boundary) * da.sum_sq_lengths);
        }
}

TEST_CASE("Euler characteristics of selected products", "[invariants]") {
    auto chi = [](const std::string& a, const std::string& b) {
        auto ctx = context(product_pair(a, b).polytope);
        return euler_characteristic(ctx.space(), ctx.space().all().front());
    };
    CHECK(chi("7", "7") == -100);
    CHECK(chi("8", "8") == -128);
    CHECK(chi("5", "5") == -56);
    CHECK(chi("4", "9") == -204);
}

TEST_CASE("hexagon products", "[invariants]") {
    auto ctx = context(product_pair("6", "6").polytope);
    const auto& space = ctx.space();
    auto d0 = with_label(space, "(0,0)");
    CHECK(gamma(space, d0) == 6);
    CHECK(euler_characteristic(space, d0) == -72);
    auto d6 = with_label(space, "(6,6)");
    CHECK(gamma(space, d6) == 8);
    CHECK(euler_characteristic(space, d6) == -48);
    // chi = 2 n1 + 2 n2 - 72 across the space.
    for (const auto& d : ctx.space().all()) {
        auto [n1, n2] = parse_pair_label(configuration_label(space, "6", "6", d));
        CHECK(euler_characteristic(space, d) == 2 * n1 + 2 * n2 - 72);
    }
}

TEST_CASE("report cross-checks hold across the catalog", "[invariants]") {
    for (const auto& pp : product_family()) {
        auto ctx = context(pp.polytope);
        const auto& space = ctx.space();
        size_t n = 0;
        for (const auto& d : space) {
            if (++n > 64) break;
            auto r = invariant_report(ctx, d, {}, false);
            CHECK(r.chi % 2 == 0);
            CHECK(r.b2 >= 1);
            CHECK(r.chi == r.positives - r.negatives);
            CHECK(r.negatives == space.negative_count());
        }
    }
    InvariantReport bad;
    bad.chi = 3;
    bad.positives = 3;
    CHECK_THROWS_AS(check_report(bad), Error);
}

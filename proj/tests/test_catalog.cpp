#include "catch_amalgamated.hpp"

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sdp/catalog.hpp"
#include "sdp/tables.hpp"

using namespace sdp;

namespace {

// Constant terms of powers of a two-variable Laurent polynomial, by repeated convolution of a plain map.
std::vector<BigInt> constant_terms(const std::map<std::pair<Int, Int>, Int>& f, Int n) {
    std::vector<BigInt> out{1};
    std::map<std::pair<Int, Int>, BigInt> cur{{{0, 0}, 1}};
    for (Int k = 1; k <= n; ++k) {
        std::map<std::pair<Int, Int>, BigInt> next;
        for (const auto& [e, c] : cur)
            for (const auto& [g, d] : f) next[{e.first + g.first, e.second + g.second}] += c * d;
        cur = std::move(next);
        out.push_back(cur.count({0, 0}) ? cur[{0, 0}] : BigInt(0));
    }
    return out;
}

std::map<std::pair<Int, Int>, Int> as_plain(const LaurentPoly& f) {
    std::map<std::pair<Int, Int>, Int> out;
    for (const auto& [e, c] : f.terms) out[{e[0], e[1]}] = static_cast<Int>(c);
    return out;
}

}  // namespace

TEST_CASE("catalog models", "[catalog]") {
    for (const auto& l : {"3", "4", "5", "6", "6'", "7", "8", "8'", "9"}) {
        auto p = builtin_polygon(l);
        CHECK(is_reflexive(p));
        std::string digits = std::string(l).substr(0, 1);
        CHECK(boundary_point_count(p) == std::stoi(digits));
        CHECK(static_cast<Int>(oracle::lattice_points(polygon_of(p)).size()) == boundary_point_count(p) + 1);
    }
    CHECK_THROWS_AS(builtin_polygon("10"), Error);
}

TEST_CASE("reflexive polygon enumeration", "[catalog]") {
    auto all = enumerate_reflexive_polygons();
    REQUIRE(all.size() == 16);
    std::map<Int, size_t> by_boundary;
    for (const auto& e : all) ++by_boundary[e.boundary_points];
    CHECK(by_boundary == std::map<Int, size_t>{{3, 1}, {4, 3}, {5, 2}, {6, 4}, {7, 2}, {8, 3}, {9, 1}});
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(affine_equivalent(all[i].polygon.vertices, all[j].polygon.vertices));

    // Polarity permutes the list and exchanges b and 12 - b.
    for (const auto& e : all) {
        auto q = polar_dual(e.polygon);
        REQUIRE(q.reflexive);
        size_t matches = 0;
        for (const auto& f : all)
            if (affine_equivalent(f.polygon.vertices, q.polytope->vertices)) {
                ++matches;
                CHECK(f.boundary_points == 12 - e.boundary_points);
            }
        CHECK(matches == 1);
    }

    // Decomposability agrees with the brute-force partition search.
    for (const auto& e : all) CHECK(e.simply_decomposable == !oracle::decompositions(polygon_of(e.polygon)).empty());

    auto sd = list_sd_reflexive_polygons();
    CHECK(sd.size() == 8);
    std::set<std::string> labels;
    for (const auto& e : sd) labels.insert(e.label);
    CHECK(labels == std::set<std::string>{"4", "5", "6", "6'", "7", "8", "8'", "9"});
}

TEST_CASE("product family", "[catalog]") {
    auto fam = product_family();
    CHECK(fam.size() == 28);
    for (const auto& pp : fam) {
        CHECK(is_reflexive(pp.polytope));
        auto pa = builtin_polygon(pp.first), pb = builtin_polygon(pp.second);
        CHECK(pp.polytope.vertices.size() == pa.vertices.size() * pb.vertices.size());
        // Vol((A x B)°) = Vol(A°) Vol(B°) in normalized units.
        auto qa = *polar_dual(pa).polytope, qb = *polar_dual(pb).polytope;
        DecompositionSpace space{ReflexivePolytope(pp.polytope)};
        CHECK(space.polar_volume() == oracle::twice_area(polygon_of(qa)) * oracle::twice_area(polygon_of(qb)));
    }
    CHECK(product_pair("6", "7").polytope.name == "P6xP7");
}

TEST_CASE("period sequences", "[catalog]") {
    auto f9 = catalog_polynomial("9");
    auto f6 = catalog_polynomial("6");
    CHECK(period_sequence(f6, 4) == std::vector<BigInt>{1, 0, 6, 12, 90});
    for (const auto& l : sd_labels()) {
        auto f = catalog_polynomial(l);
        CHECK(f.constant_term() == 0);
        CHECK(period_sequence(f, 6) == constant_terms(as_plain(f), 6));
    }
    auto ff = tensor(f9, f9);
    CHECK(ff.nvars() == 4);
    auto seq = period_sequence(ff, 9);
    for (Int n = 0; n <= 3; ++n) {
        BigInt m = oracle::factorial(3 * n) / (oracle::factorial(n) * oracle::factorial(n) * oracle::factorial(n));
        CHECK(seq[3 * n] == m * m);
    }
    CHECK(seq[1] == 0);
    CHECK(seq[3] == 36);

    // The period of f (x) g is the termwise product of the periods.
    auto f7 = catalog_polynomial("7"), f5 = catalog_polynomial("5");
    auto a = period_sequence(f7, 5), b = period_sequence(f5, 5), ab = period_sequence(tensor(f7, f5), 5);
    for (size_t k = 0; k < ab.size(); ++k) CHECK(ab[k] == a[k] * b[k]);

    CHECK_THROWS_AS(period_sequence(f6, -1), Error);
}

TEST_CASE("edge polynomials carry binomial coefficients", "[catalog]") {
    auto f = binomial_edge_polynomial({{0, 0}, {3, 0}, {0, 3}});
    CHECK(f.terms.size() == 9);
    CHECK(f.terms.at({1, 0}) == 3);
    CHECK(f.terms.at({2, 0}) == 3);
    CHECK(f.terms.at({0, 0}) == 1);
    CHECK(f.terms.count({1, 1}) == 0);
}

TEST_CASE("ingestion", "[catalog]") {
    auto p9 = builtin_polygon("9");
    auto text = to_json(p9).dump();
    auto back = parse_polytope_json(text);
    CHECK(back.vertices == p9.vertices);
    CHECK(back.name == p9.name);

    auto ks = parse_ks_matrix("2 3\n1 0 -1\n0 1 -1\n");
    CHECK(ks.vertices == std::vector<IntVector>{{-1, -1}, {0, 1}, {1, 0}});
    auto rows = parse_ks_matrix("3 2  some header text\n1 0\n0 1\n-1 -1\n");
    CHECK(rows.vertices == ks.vertices);

    auto problem = [](auto&& fn) {
        try {
            fn();
        } catch (const IngestError& e) {
            CHECK(e.kind() == ErrorKind::invalid_input);
            return std::string(to_string(e.problem()));
        }
        return std::string("none");
    };
    CHECK(problem([] { parse_polytope_json("{not json"); }) == "malformed");
    CHECK(problem([] { parse_polytope_json(R"({"vertices": [[1, 0], [0, 1.5], [-1, -1]]})"); }) == "malformed");
    CHECK(problem([] { parse_polytope_json(R"({"dim": 3, "vertices": [[1, 0], [0, 1], [-1, -1]]})"); }) == "malformed");
    CHECK(problem([] { parse_polytope_json(R"({"vertices": [[1, 0], [0, 1], [-1, -1], [0, 0]]})"); }) == "not-convex");
    CHECK(problem([] { parse_polytope_json(R"({"vertices": [[2, 0], [0, 2], [-2, -2]]})"); }) == "not-reflexive");
    CHECK(problem([] { parse_ks_matrix("2 3\n1 0 -1\n0 1\n"); }) == "malformed");
    CHECK(problem([] { parse_ks_matrix("2 3\n1 0 -1\n0 1 x\n"); }) == "malformed");
    CHECK_NOTHROW(parse_polytope_json(R"({"vertices": [[2, 0], [0, 2], [-2, -2]]})", false));

    try {
        parse_polytope_file("/nonexistent/polytope.json");
        FAIL("expected an io error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::io);
    }
}

TEST_CASE("table rows", "[tables]") {
    SECTION("P7 x P8") {
        auto rows = table_rows(sweep_pair("7", "8"));
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].chi == -120);
        CHECK(rows[0].b2 == 1);
        CHECK(rows[0].vol == 20);
        CHECK(rows[0].configuration == "-");
    }
    SECTION("P6 x P9") {
        // Three unscaled hexagon faces; m of them split into two triangles each gives chi = -162 + 2m.
        auto sw = sweep_pair("6", "9");
        std::set<std::string> all_classes;
        for (const auto& o : sw.orbits) {
            all_classes.insert(o.configuration);
            Int m = std::stoll(o.configuration.substr(1));
            CHECK(o.report.chi == -162 + 2 * m);
        }
        CHECK(all_classes == std::set<std::string>{"(0)", "(1)", "(2)", "(3)"});
        auto rows = table_rows(sw);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].configuration == "(0)");
        CHECK(rows[0].chi == -162);
        CHECK(rows[1].configuration == "(3)");
        CHECK(rows[1].chi == -156);
        CHECK(table_rows(sw, true).size() == 4);
    }
    SECTION("hexagon matrix") {
        auto sw = sweep_pair("6", "6", {{}, false});
        auto m = hexagon_matrix(sw);
        CHECK(m.orbits.size() == 28);
        CHECK(m.b2_chi.at({0, 6}) == std::set<std::pair<Int, Int>>{{4, -60}});
        CHECK(m.orbits.at({0, 0}) == 1);
    }
    SECTION("families and output") {
        CHECK(parse_family("P6k") == TableFamily::p6k);
        CHECK(parse_family("P66-orbits") == TableFamily::p66_orbits);
        CHECK_THROWS_AS(parse_family("P99"), Error);
        CHECK(family_pairs(TableFamily::single).size() == 21);

        std::ostringstream a, b;
        emit_tables(TableFamily::p6k, TableFormat::csv, a);
        emit_tables(TableFamily::p6k, TableFormat::csv, b);
        CHECK(a.str() == b.str());
        CHECK(a.str().rfind("k1,k2,chi,b2,vol,orbits,configuration,note\n", 0) == 0);
        CHECK(a.str().find("extra: calibration polygon 8'") != std::string::npos);

        std::ostringstream j;
        emit_tables(TableFamily::p64, TableFormat::json, j);
        auto parsed = nlohmann::json::parse(j.str());
        REQUIRE(parsed.is_array());
        CHECK(parsed.size() >= 1);
        for (const auto& r : parsed) {
            CHECK(r["k1"] == "6");
            CHECK(r["k2"] == "4");
        }
    }
}

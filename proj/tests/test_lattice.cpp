#include "catch_amalgamated.hpp"

#include <random>

#include "oracles.hpp"
#include "sdp/lattice.hpp"

using namespace sdp;

namespace {

std::vector<IntVector> vecs(const std::vector<Vec2>& pts) {
    std::vector<IntVector> out;
    for (const auto& p : pts) out.push_back(to_vector(p));
    return out;
}

IntMatrix random_unimodular(std::mt19937_64& rng, size_t n, int steps = 6) {
    IntMatrix m = identity_matrix(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-2, 2);
    for (int s = 0; s < steps; ++s) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        Int c = coef(rng);
        for (size_t k = 0; k < n; ++k) m[i][k] += c * m[j][k];
    }
    if (rng() & 1) std::swap(m[0], m[n - 1]);
    return m;
}

std::vector<Vec2> apply_affine(const UnimodularAffineMap& f, const std::vector<Vec2>& pts) {
    std::vector<Vec2> out;
    for (const auto& p : pts) out.push_back(to_vec2(f(to_vector(p))));
    return out;
}

}  // namespace

TEST_CASE("lattice length", "[lattice]") {
    CHECK(lattice_length({0, 0}, {3, 0}) == 3);
    CHECK(lattice_length({0, 0}, {2, 4}) == 2);
    CHECK(lattice_length({1, 0}, {0, 1}) == 1);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Int> c(-20, 20);
    for (int t = 0; t < 200; ++t) {
        IntVector a{c(rng), c(rng), c(rng)}, dir{c(rng), c(rng), c(rng)};
        CHECK(lattice_length(a, a + dir) == lattice_length(a + dir, a));
        Int k = 1 + (t % 4);
        IntVector mid = a + dir, far = a + scale(k + 1, dir);
        CHECK(lattice_length(a, far) == lattice_length(a, mid) + lattice_length(mid, far));
    }
}

TEST_CASE("checked arithmetic refuses to wrap", "[lattice]") {
    Int big = std::numeric_limits<Int>::max();
    CHECK_THROWS_AS(add(big, 1), Error);
    CHECK_THROWS_AS(mul(big, 2), Error);
    try {
        mul(big, 3);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::overflow);
    }
}

TEST_CASE("normalized volume", "[lattice]") {
    CHECK(normalized_volume({{0, 0}, {1, 0}, {0, 1}}, 2) == 1);
    CHECK(normalized_volume({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3) == 1);
    CHECK(normalized_volume({{0, 0}, {3, 0}, {0, 3}}, 2) == 9);
    // A unit square living in a plane of Z^3 is measured in its own lattice.
    CHECK(normalized_volume({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, 2) == 2);
    CHECK_THROWS_AS(normalized_volume({{0, 0}, {1, 1}, {2, 2}}, 2), Error);

    SECTION("matches twice the shoelace area and is unimodular invariant") {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<Int> c(-4, 4);
        for (int t = 0; t < 100; ++t) {
            std::vector<Vec2> pts;
            for (int i = 0; i < 6; ++i) pts.push_back({c(rng), c(rng)});
            auto hull = convex_hull_2d(pts);
            if (hull.size() < 3) continue;
            Int v = normalized_volume(vecs(hull), 2);
            CHECK(v == oracle::twice_area(hull));
            UnimodularAffineMap f{random_unimodular(rng, 2), {c(rng), c(rng)}};
            CHECK(normalized_volume(vecs(apply_affine(f, hull)), 2) == v);
        }
    }
}

TEST_CASE("polygon lattice points agree with a bounding-box scan", "[lattice]") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<Int> c(-5, 5);
    for (int t = 0; t < 100; ++t) {
        std::vector<Vec2> pts;
        for (int i = 0; i < 5; ++i) pts.push_back({c(rng), c(rng)});
        auto hull = convex_hull_2d(pts);
        if (hull.size() < 3) continue;
        auto a = polygon_lattice_points(hull);
        auto b = oracle::lattice_points(hull);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}

TEST_CASE("affine equivalence of polygons", "[lattice]") {
    std::vector<IntVector> simplex{{0, 0}, {1, 0}, {0, 1}};
    auto id = affine_equivalent(simplex, simplex);
    REQUIRE(id);
    for (const auto& v : simplex) CHECK((*id)(v) == v);

    UnimodularAffineMap g{{{1, 1}, {0, 1}}, {5, -2}};
    std::vector<IntVector> image;
    for (const auto& v : simplex) image.push_back(g(v));
    auto found = affine_equivalent(simplex, image);
    REQUIRE(found);
    std::vector<IntVector> mapped;
    for (const auto& v : simplex) mapped.push_back((*found)(v));
    std::sort(mapped.begin(), mapped.end());
    std::sort(image.begin(), image.end());
    CHECK(mapped == image);

    CHECK_FALSE(affine_equivalent({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, simplex));
    CHECK_THROWS_AS(affine_equivalent({{0, 0}, {1, 0}}, simplex), Error);

    SECTION("equivalence relation on random polygons") {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<Int> c(-3, 3);
        for (int t = 0; t < 40; ++t) {
            std::vector<Vec2> pts;
            for (int i = 0; i < 5; ++i) pts.push_back({c(rng), c(rng)});
            auto q1 = convex_hull_2d(pts);
            if (q1.size() < 3) continue;
            UnimodularAffineMap f{random_unimodular(rng, 2), {c(rng), c(rng)}};
            UnimodularAffineMap h{random_unimodular(rng, 2), {c(rng), c(rng)}};
            auto q2 = apply_affine(f, q1);
            auto q3 = apply_affine(h, q2);
            auto m12 = affine_equivalent(vecs(q1), vecs(q2));
            auto m21 = affine_equivalent(vecs(q2), vecs(q1));
            auto m13 = affine_equivalent(vecs(q1), vecs(q3));
            REQUIRE(m12);
            REQUIRE(m21);
            REQUIRE(m13);
            Int d = determinant(m12->linear);
            CHECK((d == 1 || d == -1));
        }
    }
}

TEST_CASE("exact kernels and ranks", "[lattice]") {
    IntMatrix a{{1, 2, 3}, {2, 4, 6}, {1, 0, -1}};
    CHECK(rank(a) == 2);
    CHECK(rank_integer(a) == 2);
    auto k = kernel_basis_integer(a, 3);
    REQUIRE(k.size() == 1);
    for (const auto& row : a) CHECK(dot(row, k[0]) == 0);

    std::mt19937_64 rng(13);
    std::uniform_int_distribution<Int> c(-3, 3);
    for (int t = 0; t < 50; ++t) {
        IntMatrix m(4, IntVector(6));
        for (auto& row : m)
            for (auto& x : row) x = c(rng);
        m[3] = m[0] + m[1];
        auto basis = kernel_basis_integer(m, 6);
        CHECK(rank(m) + basis.size() == 6);
        CHECK(rank_integer(m) == rank(m));
        for (const auto& v : basis)
            for (const auto& row : m) CHECK(dot(row, v) == 0);
    }
}

TEST_CASE("smith invariants", "[lattice]") {
    auto s = smith_invariants({{2, 4}, {6, 8}});
    REQUIRE(s.size() == 2);
    CHECK(s[0] == 2);
    CHECK(s[1] == 4);
    auto r = smith_invariants({{0, 3}, {0, 0}});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == 3);
}

TEST_CASE("lower hull subdivisions", "[lattice]") {
    std::vector<Vec2> simplex{{0, 0}, {1, 0}, {0, 1}};
    std::map<Vec2, Rational> flat{{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}};
    auto one = lower_hull_subdivision(simplex, flat);
    REQUIRE(one.cells.size() == 1);
    CHECK(is_unimodular_triangle(one.cells[0]));

    std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    std::map<Vec2, Rational> sq{{{0, 0}, 0}, {{1, 0}, 0}, {{1, 1}, 0}, {{0, 1}, 0}};
    auto s = lower_hull_subdivision(square, sq);
    REQUIRE(s.cells.size() == 1);
    CHECK(s.cells[0].size() == 4);
    CHECK(is_empty_cell(s.cells[0]));
    CHECK_FALSE(is_unimodular_triangle(s.cells[0]));

    std::map<Vec2, Rational> missing{{{0, 0}, 0}, {{1, 0}, 0}};
    CHECK_THROWS_AS(lower_hull_subdivision(simplex, missing), Error);
}

TEST_CASE("empty square inside twice the standard simplex", "[lattice]") {
    // Boundary points of 2 * simplex, walked counter-clockwise.
    std::vector<Vec2> base{{0, 0}, {2, 0}, {0, 2}};
    std::vector<Vec2> walk{{0, 0}, {1, 0}, {2, 0}, {1, 1}, {0, 2}, {0, 1}};
    std::vector<Vec2> empty_square{{0, 1}, {1, 0}, {1, 1}, {2, 0}};

    // Every closed boundary slope sequence with entries in [-2, 2].
    size_t squares = 0, checked = 0;
    for (Int a = -2; a <= 2; ++a)
        for (Int b = -2; b <= 2; ++b)
            for (Int c = -2; c <= 2; ++c)
                for (Int d = -2; d <= 2; ++d)
                    for (Int e = -2; e <= 2; ++e) {
                        std::array<Int, 6> slope{a, b, c, d, e, -(a + b + c + d + e)};
                        std::map<Vec2, Rational> h;
                        Rational z = 0;
                        for (size_t i = 0; i < 6; ++i) {
                            h[walk[i]] = z;
                            z += slope[i];
                        }
                        auto hull = lower_hull_subdivision(base, h);
                        Int area = 0;
                        std::vector<std::vector<Vec2>> bad;
                        for (const auto& cell : hull.cells) {
                            area += oracle::twice_area(cell);
                            if (is_empty_cell(cell) && !is_unimodular_triangle(cell)) bad.push_back(cell);
                        }
                        REQUIRE(area == oracle::twice_area(base));
                        auto ref = oracle::lower_empty_parallelograms(h);
                        REQUIRE(bad.size() == ref.size());
                        for (auto& cell : bad) {
                            std::sort(cell.begin(), cell.end());
                            CHECK(std::find(ref.begin(), ref.end(), cell) != ref.end());
                        }
                        squares += bad.size();
                        ++checked;
                    }
    CHECK(checked == 3125);
    CHECK(squares > 0);

    // Raising the corners (0,0) and (0,2) leaves the square as a flat lower face.
    std::map<Vec2, Rational> h{{{0, 0}, 1}, {{1, 0}, 0}, {{2, 0}, 0}, {{1, 1}, 0}, {{0, 2}, 1}, {{0, 1}, 0}};
    auto hull = lower_hull_subdivision(base, h);
    bool found = false;
    for (auto cell : hull.cells) {
        std::sort(cell.begin(), cell.end());
        if (cell == empty_square) found = true;
    }
    CHECK(found);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hyperlat/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace hyperlat;

namespace {

// The (p,q) pairs exercised throughout the suite.
const std::vector<std::pair<int, int>> kGrid = {
    {7, 3}, {8, 3}, {4, 5}, {5, 4}, {4, 6}, {3, 7}, {3, 8}};

std::map<VertexClass, long long> class_histogram(const LatticeBall& ball, int layer) {
    std::map<VertexClass, long long> h;
    const auto [first, count] = ball.layer_ranges()[layer];
    for (VertexId v = first; v < first + count; ++v) ++h[ball.class_of(v)];
    return h;
}

} // namespace

TEST_CASE("validate_params accepts hyperbolic pairs and rejects the rest") {
    CHECK(validate_params(7, 3).p == 7);
    CHECK(validate_params(3, 7).is_triangulation());
    CHECK_FALSE(validate_params(7, 3).is_triangulation());
    CHECK_THROWS_AS(validate_params(4, 4), HyperbolicityViolation); // Euclidean
    CHECK_THROWS_AS(validate_params(3, 6), HyperbolicityViolation);
    CHECK_THROWS_AS(validate_params(6, 3), HyperbolicityViolation);
    CHECK_THROWS_AS(validate_params(5, 3), HyperbolicityViolation); // spherical
    CHECK_THROWS_AS(validate_params(2, 9), NonsenseParams);
    CHECK_THROWS_AS(validate_params(9, 1), NonsenseParams);
}

TEST_CASE("layer_counts matches hand-applied transfer matrices") {
    // (7,3): T1 = [[0,1],[-1,3]] from (0,7).
    auto c73 = layer_counts(validate_params(7, 3), 4);
    CHECK(c73.i_count(1) == 7);
    CHECK(c73.e_count(1) == 21);
    CHECK(c73.layer_size(1) == 28);
    CHECK(c73.i_count(2) == 21);
    CHECK(c73.e_count(2) == 56);
    CHECK(c73.layer_size(2) == 77);
    CHECK(c73.layer_size(3) == 203);
    CHECK(c73.ball_size(1) == 35);
    CHECK(c73.ball_size(2) == 112);
    CHECK(c73.ball_size(3) == 315);
    CHECK(c73.boundary_size(0) == 7);
    CHECK(c73.boundary_size(1) == 21);
    CHECK(c73.boundary_size(2) == 56);

    // (4,5): T1 = [[2,3],[1,2]] from (0,4); |I_2| = 48 is the Fig. 17 value.
    auto c45 = layer_counts(validate_params(4, 5), 3);
    CHECK(c45.i_count(0) == 0);
    CHECK(c45.e_count(0) == 4);
    CHECK(c45.i_count(1) == 12);
    CHECK(c45.e_count(1) == 8);
    CHECK(c45.i_count(2) == 48);
    CHECK(c45.e_count(2) == 28);
    CHECK(c45.ball_size(1) == 24);
    CHECK(c45.ball_size(2) == 100);

    // (3,7): state (|I2_n|, |I1_n|), (3, 9) at n=1, T2 = [[1,1],[1,2]].
    auto c37 = layer_counts(validate_params(3, 7), 3);
    CHECK(c37.layer_size(0) == 3);
    CHECK(c37.i2_count(1) == 3);
    CHECK(c37.i1_count(1) == 9);
    CHECK(c37.layer_size(1) == 12);
    CHECK(c37.i2_count(2) == 12);
    CHECK(c37.i1_count(2) == 21);
    CHECK(c37.layer_size(2) == 33);
    CHECK(c37.ball_size(1) == 15);
    CHECK(c37.ball_size(2) == 48);
    // |dB_n| = 2|I2_{n+1}| + |I1_{n+1}|; dB_0 = 3q - 6 = 15 for the root triangle.
    CHECK(c37.boundary_size(0) == 15);
    CHECK(c37.boundary_size(1) == 45);
    CHECK(c37.boundary_size(2) == 120);

    // n = 0 initial vectors.
    for (auto [p, q] : kGrid) {
        auto c = layer_counts(validate_params(p, q), 0);
        if (p >= 4) {
            CHECK(c.i_count(0) == 0);
            CHECK(c.e_count(0) == p);
        } else {
            CHECK(c.layer_size(0) == 3);
        }
    }
}

TEST_CASE("build_ball basic shapes") {
    auto ball0 = build_ball(validate_params(7, 3), 0);
    CHECK(ball0.vertex_count() == 7);
    CHECK(ball0.face_count() == 1);
    std::uint64_t edges = 0;
    for (VertexId v = 0; v < ball0.vertex_count(); ++v) edges += ball0.degree(v);
    CHECK(edges / 2 == 7);

    auto ball1 = build_ball(validate_params(7, 3), 1);
    CHECK(ball1.vertex_count() == 35);

    auto t1 = build_ball(validate_params(3, 7), 1);
    CHECK(t1.layer_size(1) == 12);
    CHECK(t1.vertex_count() == 15);
}

TEST_CASE("per-layer class counts equal the recursion on the whole grid") {
    for (auto [p, q] : kGrid) {
        const auto params = validate_params(p, q);
        const auto counts = layer_counts(params, 6);
        const int depth = counts.ball_size(6) <= 200000 ? 6 : 4;
        CAPTURE(p);
        CAPTURE(q);
        const auto ball = build_ball(params, depth);
        for (int n = 0; n <= depth; ++n) {
            auto h = class_histogram(ball, n);
            if (p >= 4) {
                CHECK(BigInt(h[VertexClass::I]) == (n == 0 ? BigInt(0) : counts.i_count(n)));
                CHECK(BigInt(h[VertexClass::E]) == counts.e_count(n));
            } else if (n == 0) {
                CHECK(h[VertexClass::L0] == 3);
            } else {
                CHECK(BigInt(h[VertexClass::I2]) == counts.i2_count(n));
                CHECK(BigInt(h[VertexClass::I1]) == counts.i1_count(n));
            }
        }
    }
}

TEST_CASE("interior saturation, layer-Lipschitz edges, face sanity") {
    for (auto [p, q] : kGrid) {
        const auto params = validate_params(p, q);
        const auto ball = build_ball(params, 3);
        CAPTURE(p);
        CAPTURE(q);
        for (VertexId v = 0; v < ball.vertex_count(); ++v) {
            if (ball.is_interior(v)) {
                CHECK(ball.degree(v) == q);
                CHECK(ball.faces_of(v).size() == std::size_t(q));
            } else {
                CHECK(ball.degree(v) <= q);
            }
            for (VertexId w : ball.neighbors(v)) {
                CHECK(std::abs(ball.layer_of(v) - ball.layer_of(w)) <= 1);
            }
            // No duplicate neighbours.
            std::set<VertexId> uniq(ball.neighbors(v).begin(), ball.neighbors(v).end());
            CHECK(uniq.size() == ball.neighbors(v).size());
            CHECK_FALSE(uniq.count(v));
        }
        for (FaceId f = 0; f < ball.face_count(); ++f) {
            auto verts = ball.face(f);
            REQUIRE(verts.size() == std::size_t(p));
            std::set<VertexId> uniq(verts.begin(), verts.end());
            CHECK(uniq.size() == std::size_t(p)); // simple cycle
            for (std::size_t k = 0; k < verts.size(); ++k)
                CHECK(ball.adjacent(verts[k], verts[(k + 1) % verts.size()]));
        }
    }
}

TEST_CASE("within-layer adjacency is the boundary cycle") {
    for (auto [p, q] : kGrid) {
        const auto ball = build_ball(validate_params(p, q), 3);
        for (int n = 1; n <= 3; ++n) {
            const auto [first, count] = ball.layer_ranges()[n];
            for (VertexId v = first; v < first + count; ++v) {
                int same = 0;
                for (VertexId w : ball.neighbors(v))
                    if (ball.layer_of(w) == n) ++same;
                CHECK(same == 2);
                // Cyclic-position neighbours are adjacent.
                const std::uint32_t pos = ball.cyclic_position(v);
                CHECK(ball.adjacent(v, first + (pos + 1) % count));
            }
        }
    }
}

TEST_CASE("perimeter: paper figure values and the face formula") {
    const auto params = validate_params(7, 3);
    const auto ball = build_ball(params, 2);

    // A = B_1(o): |d_e A| = 21, ratio 3/5 (Fig. 7).
    std::vector<VertexId> b1(35);
    for (VertexId v = 0; v < 35; ++v) b1[v] = v;
    CHECK(perimeter(ball, b1) == 21);

    // A = one face: p(q-2).
    std::vector<VertexId> face(ball.face(0).begin(), ball.face(0).end());
    CHECK(perimeter(ball, face) == std::uint64_t(7 * (3 - 2)));

    const auto b45 = build_ball(validate_params(4, 5), 1);
    std::vector<VertexId> face45(b45.face(0).begin(), b45.face(0).end());
    CHECK(perimeter(b45, face45) == std::uint64_t(4 * (5 - 2)));

    CHECK_THROWS_AS(perimeter(ball, std::vector<VertexId>{9999999}), UnknownVertex);
    CHECK_THROWS_AS(perimeter(ball, std::vector<VertexId>{}), NonsenseParams);
    CHECK_THROWS_AS(perimeter(ball, std::vector<VertexId>{1, 1}), NonsenseParams);
}

TEST_CASE("ball-perimeter identity across the grid") {
    for (auto [p, q] : kGrid) {
        const auto params = validate_params(p, q);
        for (int n = 0; n <= 3; ++n) {
            CAPTURE(p);
            CAPTURE(q);
            CAPTURE(n);
            auto [lhs, rhs] = ball_perimeter_identity(params, n);
            CHECK(lhs == rhs);
        }
    }
    // Frozen values, graph-confirmed.
    auto [l73, r73] = ball_perimeter_identity(validate_params(7, 3), 1);
    CHECK(l73 == 21); // |I_{2;7,3}| = 21, consistent with the Fig. 7 ratio 21/35
    auto [l45, r45] = ball_perimeter_identity(validate_params(4, 5), 1);
    CHECK(l45 == 48); // Fig. 17's |I_{2;4,5}|
    auto [l37, r37] = ball_perimeter_identity(validate_params(3, 7), 0);
    CHECK(l37 == 15); // 2|I2_1| + |I1_1| = 6 + 9
}

TEST_CASE("build_ball is deterministic") {
    const auto a = build_ball(validate_params(4, 5), 3);
    const auto b = build_ball(validate_params(4, 5), 3);
    REQUIRE(a.vertex_count() == b.vertex_count());
    REQUIRE(a.face_count() == b.face_count());
    for (VertexId v = 0; v < a.vertex_count(); ++v) {
        CHECK(a.layer_of(v) == b.layer_of(v));
        CHECK(a.class_of(v) == b.class_of(v));
        CHECK(a.cyclic_position(v) == b.cyclic_position(v));
        auto na = a.neighbors(v), nb = b.neighbors(v);
        REQUIRE(na.size() == nb.size());
        CHECK(std::equal(na.begin(), na.end(), nb.begin()));
    }
    for (FaceId f = 0; f < a.face_count(); ++f) {
        auto fa = a.face(f), fb = b.face(f);
        CHECK(std::equal(fa.begin(), fa.end(), fb.begin()));
    }
}

TEST_CASE("resource cap") {
    CHECK_THROWS_AS(build_ball(validate_params(7, 3), 3, 100), ResourceLimit);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hyperlat/json_io.hpp"
#include "hyperlat/verify.hpp"

#include <filesystem>

using namespace hyperlat;

TEST_CASE("ball JSON document shape") {
    const auto ball = build_ball(validate_params(3, 7), 1);
    const Json doc = ball_to_json(ball);
    CHECK(doc["p"] == 3);
    CHECK(doc["q"] == 7);
    CHECK(doc["depth"] == 1);
    REQUIRE(doc["layers"].size() == 2);
    CHECK(doc["layers"][0]["class_counts"]["L0"] == 3);
    CHECK(doc["layers"][1]["class_counts"]["I2"] == 3);
    CHECK(doc["layers"][1]["class_counts"]["I1"] == 9);
    // 15 vertices, every face a triangle.
    std::uint64_t edge_sum = 0;
    for (VertexId v = 0; v < ball.vertex_count(); ++v) edge_sum += ball.degree(v);
    CHECK(doc["edges"].size() == edge_sum / 2);
    for (const auto& f : doc["faces"]) CHECK(f.size() == 3);
}

TEST_CASE("shape JSON round trip") {
    const auto params = validate_params(7, 3);
    const auto ball = build_ball(params, 3);
    const Shape shape = build_minimal_shape(ball, 17);
    const Classification cls = classify(shape);
    const Json doc = shape_to_json(shape, cls);
    CHECK(doc["N"] == 17);
    CHECK(doc["perimeter"] == 13);
    CHECK(doc["certificate"]["condition"] == "C2");
    CHECK(doc["certificate"]["s_e"] == 1);
    CHECK(doc["certificate"]["t"] == 3);
    CHECK(doc["certificate"]["o_max"] == 3);

    const std::string path = "test_shape.json";
    save_json(doc, path);
    const Json loaded = load_json(path);
    CHECK(shape_members_from_json(loaded) == shape.members());
    std::filesystem::remove(path);
}

TEST_CASE("grid parsing") {
    const auto grid = parse_grid("7,3;4,5;3,7");
    REQUIRE(grid.size() == 3);
    CHECK(grid[0].p == 7);
    CHECK(grid[2].q == 7);
    CHECK_THROWS_AS(parse_grid(""), NonsenseParams);
    CHECK_THROWS_AS(parse_grid("4,4"), HyperbolicityViolation);
    CHECK_THROWS_AS(parse_grid("4;5"), NonsenseParams);
}

TEST_CASE("load_json failure paths") {
    CHECK_THROWS_AS(load_json("/nonexistent/file.json"), IoFailure);
}

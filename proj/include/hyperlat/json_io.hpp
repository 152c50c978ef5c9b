#pragma once

#include "hyperlat/lattice.hpp"
#include "hyperlat/shapes.hpp"

#include "json.hpp"

#include <string>

namespace hyperlat {

using Json = nlohmann::ordered_json;

// {p, q, depth, layers:[{class_counts}], edges:[[u,v]...], faces:[[v...]...]}
Json ball_to_json(const LatticeBall& ball);

// {p, q, N, members:[ids], perimeter, certificate:{condition, s_e, t, o_max}}
Json shape_to_json(const Shape& shape, const Classification& cls);

// Reads back the members array of a shape document.
std::vector<VertexId> shape_members_from_json(const Json& doc);

Json load_json(const std::string& path);
void save_json(const Json& doc, const std::string& path);

} // namespace hyperlat

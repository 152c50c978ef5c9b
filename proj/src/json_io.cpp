#include "hyperlat/json_io.hpp"

#include <fstream>
#include <map>

namespace hyperlat {

Json ball_to_json(const LatticeBall& ball) {
    Json doc;
    doc["p"] = ball.params().p;
    doc["q"] = ball.params().q;
    doc["depth"] = ball.depth();

    Json layers = Json::array();
    for (int n = 0; n <= ball.depth(); ++n) {
        std::map<std::string, std::uint64_t> counts;
        const auto [first, count] = ball.layer_ranges()[n];
        for (VertexId v = first; v < first + count; ++v)
            counts[class_name(ball.class_of(v))] += 1;
        Json entry;
        entry["class_counts"] = counts;
        layers.push_back(entry);
    }
    doc["layers"] = layers;

    Json edges = Json::array();
    for (VertexId v = 0; v < ball.vertex_count(); ++v)
        for (VertexId w : ball.neighbors(v))
            if (v < w) edges.push_back(Json::array({v, w}));
    doc["edges"] = edges;

    Json faces = Json::array();
    for (FaceId f = 0; f < ball.face_count(); ++f) {
        auto verts = ball.face(f);
        faces.push_back(Json(std::vector<VertexId>(verts.begin(), verts.end())));
    }
    doc["faces"] = faces;
    return doc;
}

Json shape_to_json(const Shape& shape, const Classification& cls) {
    Json doc;
    doc["p"] = shape.ball().params().p;
    doc["q"] = shape.ball().params().q;
    doc["N"] = shape.size();
    doc["members"] = shape.members();
    doc["perimeter"] = shape.perimeter();
    Json cert;
    cert["condition"] = cls.condition;
    cert["s_e"] = cls.s_e;
    cert["t"] = cls.t;
    cert["o_max"] = cls.o_max;
    doc["certificate"] = cert;
    return doc;
}

std::vector<VertexId> shape_members_from_json(const Json& doc) {
    if (!doc.contains("members") || !doc["members"].is_array())
        throw IoFailure("shape document has no members array");
    return doc["members"].get<std::vector<VertexId>>();
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path);
    Json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw IoFailure("cannot parse " + path + ": " + e.what());
    }
    return doc;
}

void save_json(const Json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw IoFailure("write failed for " + path);
}

} // namespace hyperlat

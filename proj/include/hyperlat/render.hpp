#pragma once

#include "hyperlat/embedding.hpp"
#include "hyperlat/lattice.hpp"

#include <string>
#include <vector>

namespace hyperlat {

struct Highlight {
    std::vector<VertexId> vertices;
    std::string color; // empty -> palette by position
};

// SVG of the embedded ball: geodesic edge arcs (circular arcs orthogonal to
// the unit circle, straight when the chord passes through the origin),
// vertices as dots, highlighted sets as coloured discs. Vertices beyond the
// cull radius are dropped.
void render_svg(const LatticeBall& ball, const std::vector<Complex>& coords,
                const std::vector<Highlight>& highlights, const EmbeddingConfig& cfg,
                const std::string& path);

} // namespace hyperlat

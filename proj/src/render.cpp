#include "hyperlat/render.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hyperlat {

namespace {

struct Mapper {
    double size;
    double scale;
    double cx, cy;

    explicit Mapper(double svg_size)
        : size(svg_size), scale(svg_size * 0.48), cx(svg_size / 2), cy(svg_size / 2) {}

    std::pair<double, double> to_svg(Complex z) const {
        return {cx + scale * z.real(), cy - scale * z.imag()};
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Geodesic between two disc points as an SVG path segment. The geodesic is the
// arc of the circle through both points orthogonal to the unit circle; when
// the chord (nearly) passes through the origin it degenerates to a line.
std::string geodesic_path(Complex z1, Complex z2, const Mapper& m) {
    const auto [x1, y1] = m.to_svg(z1);
    const auto [x2, y2] = m.to_svg(z2);
    const double cross = z1.real() * z2.imag() - z1.imag() * z2.real();
    std::ostringstream os;
    os << "M " << fmt(x1) << " " << fmt(y1) << " ";
    if (std::fabs(cross) < 1e-9) {
        os << "L " << fmt(x2) << " " << fmt(y2);
        return os.str();
    }
    // Centre C: |C - z|^2 = R^2 with |C|^2 = R^2 + 1 gives 2 C.z = 1 + |z|^2.
    const double r1 = 1.0 + std::norm(z1), r2 = 1.0 + std::norm(z2);
    const double det = 4.0 * cross;
    const double ccx = (r1 * 2.0 * z2.imag() - 2.0 * z1.imag() * r2) / det;
    const double ccy = (2.0 * z1.real() * r2 - r1 * 2.0 * z2.real()) / det;
    const Complex c{ccx, ccy};
    const double radius = std::sqrt(std::norm(c) - 1.0);

    // Minor-arc midpoint: the circle point nearest the chord midpoint.
    const Complex chord_mid = (z1 + z2) / 2.0;
    Complex dirv = chord_mid - c;
    dirv /= std::abs(dirv);
    const Complex mid = c + radius * dirv;

    const auto [mx, my] = m.to_svg(mid);
    const double sweep_cross = (mx - x1) * (y2 - my) - (my - y1) * (x2 - mx);
    const int sweep = sweep_cross > 0 ? 1 : 0;
    os << "A " << fmt(radius * m.scale) << " " << fmt(radius * m.scale) << " 0 0 "
       << sweep << " " << fmt(x2) << " " << fmt(y2);
    return os.str();
}

} // namespace

void render_svg(const LatticeBall& ball, const std::vector<Complex>& coords,
                const std::vector<Highlight>& highlights, const EmbeddingConfig& cfg,
                const std::string& path) {
    if (coords.size() != ball.vertex_count())
        throw NonsenseParams("render_svg: coords do not cover the ball");
    std::ofstream out(path);
    if (!out) throw IoFailure("render_svg: cannot open " + path);

    const Mapper m(cfg.svg_size);
    auto visible = [&](VertexId v) { return std::abs(coords[v]) <= cfg.cull_radius; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cfg.svg_size
        << "\" height=\"" << cfg.svg_size << "\" viewBox=\"0 0 " << cfg.svg_size << " "
        << cfg.svg_size << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<circle cx=\"" << m.cx << "\" cy=\"" << m.cy << "\" r=\"" << m.scale
        << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";

    out << "<g stroke=\"#333\" stroke-width=\"" << cfg.edge_stroke << "\" fill=\"none\">\n";
    for (VertexId v = 0; v < ball.vertex_count(); ++v) {
        for (VertexId w : ball.neighbors(v)) {
            if (w < v) continue;
            if (!visible(v) || !visible(w)) continue;
            out << "<path d=\"" << geodesic_path(coords[v], coords[w], m) << "\"/>\n";
        }
    }
    out << "</g>\n";

    out << "<g fill=\"#555\" stroke=\"none\">\n";
    for (VertexId v = 0; v < ball.vertex_count(); ++v) {
        if (!visible(v)) continue;
        const auto [x, y] = m.to_svg(coords[v]);
        out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\""
            << cfg.vertex_radius << "\"/>\n";
    }
    out << "</g>\n";

    for (std::size_t h = 0; h < highlights.size(); ++h) {
        const std::string color = highlights[h].color.empty()
                                      ? cfg.palette[h % cfg.palette.size()]
                                      : highlights[h].color;
        out << "<g fill=\"" << color << "\" stroke=\"none\">\n";
        for (VertexId v : highlights[h].vertices) {
            if (v >= ball.vertex_count())
                throw UnknownVertex("render_svg: highlight vertex outside the ball");
            if (!visible(v)) continue;
            const auto [x, y] = m.to_svg(coords[v]);
            out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\""
                << cfg.highlight_radius << "\"/>\n";
        }
        out << "</g>\n";
    }

    out << "</svg>\n";
    if (!out) throw IoFailure("render_svg: write failed for " + path);
}

} // namespace hyperlat

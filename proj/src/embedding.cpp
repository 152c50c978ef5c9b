#include "hyperlat/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <unordered_map>

namespace hyperlat {

MobiusTransform MobiusTransform::then(const MobiusTransform& inner) const {
    // Matrix product [[a,b],[conj b, conj a]] * [[a',b'],[conj b', conj a']].
    return {a * inner.a + b * std::conj(inner.b), a * inner.b + b * std::conj(inner.a)};
}

MobiusTransform MobiusTransform::rotation(double theta) {
    return {std::polar(1.0, theta / 2.0), Complex{0.0, 0.0}};
}

MobiusTransform MobiusTransform::translation(Complex c) {
    const double s = std::sqrt(1.0 - std::norm(c));
    return {Complex{1.0 / s, 0.0}, c / s};
}

MobiusTransform MobiusTransform::rotation_about(Complex c, double theta) {
    return translation(c).then(rotation(theta)).then(translation(-c));
}

double hyperbolic_distance(Complex z, Complex w) {
    const double num = std::abs(z - w);
    const double den = std::abs(1.0 - std::conj(z) * w);
    return 2.0 * std::atanh(num / den);
}

EmbeddingConfig EmbeddingConfig::for_params(LatticeParams params) {
    EmbeddingConfig cfg;
    cfg.alpha = 2.0 * std::numbers::pi / params.q;
    cfg.beta = 2.0 * std::numbers::pi / params.p;
    const double r2 =
        std::cos((cfg.alpha + cfg.beta) / 2.0) / std::cos((cfg.alpha - cfg.beta) / 2.0);
    if (!(r2 > 0.0 && r2 < 1.0))
        throw InvariantViolation("embedding: r^2 outside (0,1); params not hyperbolic?");
    cfg.r = std::sqrt(r2);
    return cfg;
}

MobiusTransform rho_a(const EmbeddingConfig& cfg) {
    return MobiusTransform::rotation(cfg.beta);
}

MobiusTransform rho_b(const EmbeddingConfig& cfg) {
    return MobiusTransform::rotation_about(Complex{cfg.r, 0.0}, cfg.alpha);
}

namespace {

// Sparse spatial index for collision checks. Cells are Euclidean; candidates
// from the 3x3 neighbourhood are compared in the hyperbolic metric.
class PointIndex {
public:
    explicit PointIndex(double cell) : cell_(cell) {}

    void insert(VertexId id, Complex z) {
        grid_.emplace(key(z), std::pair<VertexId, Complex>{id, z});
    }

    // Any vertex other than `self` within hyperbolic `tol` of z?
    bool collides(Complex z, double tol, VertexId self) const {
        const auto [cx, cy] = cell_of(z);
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                auto range = grid_.equal_range(pack(cx + dx, cy + dy));
                for (auto it = range.first; it != range.second; ++it) {
                    if (it->second.first == self) continue;
                    if (hyperbolic_distance(z, it->second.second) <= tol) return true;
                }
            }
        }
        return false;
    }

private:
    std::pair<long long, long long> cell_of(Complex z) const {
        return {static_cast<long long>(std::floor(z.real() / cell_)),
                static_cast<long long>(std::floor(z.imag() / cell_))};
    }
    static long long pack(long long x, long long y) { return x * 2000003LL + y; }
    long long key(Complex z) const {
        const auto [x, y] = cell_of(z);
        return pack(x, y);
    }

    double cell_;
    std::unordered_multimap<long long, std::pair<VertexId, Complex>> grid_;
};

struct EdgeKey {
    VertexId u, v;
    bool operator<(const EdgeKey& o) const {
        return u != o.u ? u < o.u : v < o.v;
    }
};

EdgeKey edge_key(VertexId a, VertexId b) { return {std::min(a, b), std::max(a, b)}; }

} // namespace

std::vector<Complex> embed_ball(const LatticeBall& ball, const EmbeddingConfig& cfg) {
    const int p = ball.params().p;
    const double tol = cfg.dedup_tolerance;

    std::vector<Complex> coords(ball.vertex_count(), Complex{0.0, 0.0});
    std::vector<std::uint8_t> placed(ball.vertex_count(), 0);
    PointIndex index(1e-3);
    // Each placed edge remembers the centres of the faces already laid on it.
    std::map<EdgeKey, std::vector<Complex>> edge_faces;

    auto place_vertex = [&](VertexId id, Complex z) {
        if (placed[id]) {
            if (hyperbolic_distance(coords[id], z) > tol)
                throw InvariantViolation(
                    "embed_ball: vertex " + std::to_string(id) +
                    " re-derived at an inconsistent position");
            return;
        }
        if (index.collides(z, tol, id))
            throw DedupAmbiguity("embed_ball: two distinct vertices coincide near vertex " +
                                 std::to_string(id));
        coords[id] = z;
        placed[id] = 1;
        index.insert(id, z);
    };

    auto register_face = [&](std::span<const VertexId> verts, Complex center) {
        for (std::size_t k = 0; k < verts.size(); ++k)
            edge_faces[edge_key(verts[k], verts[(k + 1) % verts.size()])].push_back(center);
    };

    // Root face: vertices r e^{i k beta} in face-cycle order.
    {
        auto verts = ball.face(0);
        for (int k = 0; k < p; ++k)
            place_vertex(verts[k], std::polar(cfg.r, k * cfg.beta));
        register_face(verts, Complex{0.0, 0.0});
    }

    // Place one face from a directed placed edge (A,B): the centre sits at
    // angle alpha/2 off the edge at A and hyperbolic circumradius d(0, r);
    // of the two candidates, the face lies opposite the one already on the
    // edge. The remaining vertices are successive rotations of A about the
    // centre by the central angle beta.
    auto place_face = [&](FaceId f, std::size_t anchor_pos) {
        auto verts = ball.face(f);
        const VertexId a_id = verts[anchor_pos];
        const VertexId b_id = verts[(anchor_pos + 1) % verts.size()];
        const Complex A = coords[a_id], B = coords[b_id];

        const auto it = edge_faces.find(edge_key(a_id, b_id));
        if (it == edge_faces.end() || it->second.empty())
            throw InvariantViolation("embed_ball: anchor edge has no placed face");
        const Complex avoid = it->second.front();

        const MobiusTransform to_a = MobiusTransform::translation(A);
        const MobiusTransform from_a = MobiusTransform::translation(-A);
        const Complex b_local = from_a.apply(B);
        const double phi = std::arg(b_local);
        Complex best_center{0.0, 0.0};
        double best_dist = -1.0;
        for (const double sign : {1.0, -1.0}) {
            const Complex candidate =
                to_a.apply(std::polar(cfg.r, phi + sign * cfg.alpha / 2.0));
            const double d = std::abs(candidate - avoid);
            if (d > best_dist) {
                best_dist = d;
                best_center = candidate;
            }
        }

        // Rotation direction about the centre that carries A to B.
        double dir = 1.0;
        {
            const Complex fwd =
                MobiusTransform::rotation_about(best_center, cfg.beta).apply(A);
            const Complex bwd =
                MobiusTransform::rotation_about(best_center, -cfg.beta).apply(A);
            dir = std::abs(fwd - B) <= std::abs(bwd - B) ? 1.0 : -1.0;
            const Complex chosen = dir > 0 ? fwd : bwd;
            if (hyperbolic_distance(chosen, B) > 1e-6)
                throw InvariantViolation("embed_ball: polygon step does not reach the "
                                         "anchor endpoint");
        }
        for (int k = 2; k < p; ++k) {
            const Complex z =
                MobiusTransform::rotation_about(best_center, dir * k * cfg.beta).apply(A);
            place_vertex(verts[(anchor_pos + k) % verts.size()], z);
        }
        register_face(verts, best_center);
    };

    // Corona replay as a fixpoint: a face can be placed once one of its edges
    // has both endpoints placed and a registered face to sit opposite to. Each
    // corona's edge faces anchor on the previous layer, and the rest chain off
    // their fan neighbours, so every pass makes progress.
    auto find_anchor = [&](FaceId f) -> std::size_t {
        auto verts = ball.face(f);
        for (std::size_t k = 0; k < verts.size(); ++k) {
            const VertexId a = verts[k], b = verts[(k + 1) % verts.size()];
            if (!placed[a] || !placed[b]) continue;
            const auto it = edge_faces.find(edge_key(a, b));
            if (it != edge_faces.end() && !it->second.empty()) return k;
        }
        return verts.size();
    };

    std::vector<FaceId> todo;
    for (FaceId f = 1; f < ball.face_count(); ++f) todo.push_back(f);
    std::vector<FaceId> deferred;
    while (!todo.empty()) {
        deferred.clear();
        for (FaceId f : todo) {
            const std::size_t anchor = find_anchor(f);
            if (anchor == ball.face(f).size())
                deferred.push_back(f);
            else
                place_face(f, anchor);
        }
        if (deferred.size() == todo.size())
            throw InvariantViolation("embed_ball: no face placeable; replay stuck with " +
                                     std::to_string(deferred.size()) + " faces left");
        todo.swap(deferred);
    }

    for (VertexId v = 0; v < ball.vertex_count(); ++v) {
        if (!placed[v])
            throw InvariantViolation("embed_ball: vertex left unplaced");
        if (std::abs(coords[v]) >= 1.0)
            throw InvariantViolation("embed_ball: vertex outside the unit disc");
    }
    return coords;
}

} // namespace hyperlat

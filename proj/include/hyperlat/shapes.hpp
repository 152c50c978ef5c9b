#pragma once

#include "hyperlat/lattice.hpp"
#include "hyperlat/numeric.hpp"

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hyperlat {

// A finite vertex set on a ball, with cached induced-edge count and perimeter.
// Connectivity is computed on construction; operations that require it check
// the flag.
class Shape {
public:
    Shape(const LatticeBall& ball, std::vector<VertexId> members);

    const LatticeBall& ball() const { return *ball_; }
    const std::vector<VertexId>& members() const { return members_; } // sorted
    std::size_t size() const { return members_.size(); }
    bool contains(VertexId v) const;
    bool is_connected() const { return connected_; }
    std::uint64_t induced_edge_count() const { return induced_edges_; }
    std::uint64_t perimeter() const {
        return std::uint64_t(ball_->params().q) * members_.size() - 2 * induced_edges_;
    }

private:
    const LatticeBall* ball_;
    std::vector<VertexId> members_;
    std::uint64_t induced_edges_ = 0;
    bool connected_ = false;
};

// Layer decomposition around an arbitrary face x of the ball: layer 0 is the
// face's vertex set, layer k+1 adds every vertex sharing a face with a layer-k
// vertex. Expansion stops when the frontier reaches unsaturated rim vertices,
// so only layers produced by complete expansions are reported.
struct FaceLayers {
    FaceId center = 0;
    std::unordered_map<VertexId, int> layer_of;
    std::vector<std::vector<VertexId>> layers; // layers[k], unordered within k

    int max_layer() const { return static_cast<int>(layers.size()) - 1; }
    int layer(VertexId v) const {
        auto it = layer_of.find(v);
        return it == layer_of.end() ? -1 : it->second;
    }
};

FaceLayers face_layers(const LatticeBall& ball, FaceId center, int max_layers);

// Cyclic order of {v : layers.layer(v) == k}. The within-layer adjacency is
// traced and must form a single cycle covering the whole layer; anything else
// throws InvariantViolation rather than being silently assumed away.
std::vector<VertexId> layer_cycle(const LatticeBall& ball, const FaceLayers& layers, int k);

// Largest face-centred ball contained in the shape: (face, radius), choosing
// the largest radius and breaking ties by smallest face id (construction
// order). nullopt when the shape contains no complete face.
struct InscribedBall {
    FaceId center;
    int radius;
};
std::optional<InscribedBall> max_inscribed_ball(const Shape& shape);

// Smallest M with A inside B_M(center).
int min_circumscribing_ball(const Shape& shape, FaceId center);

// Maximal number of I-class (I2 for p = 3) vertices a cyclic strip of
// `strip_length` consecutive vertices can contain, measured in layer K, the
// smallest layer >= 2 with |L_K| >= strip_length + 2. Layer 1 is excluded from
// "K large enough": its class pattern is sparser than the stable deep-layer
// pattern (e.g. {3,7} strips of 3 fit one I2 in layer 1 but two in layer 2).
int o_max(LatticeParams params, int strip_length);
// Same, measured in a specific root-centred layer of an existing ball.
int o_max_in_layer(const LatticeBall& ball, int layer, int strip_length);
// The window maximum that governs a shape whose annulus sits at the given
// layer: the actual layer-1 pattern when annulus_layer == 1 and the strip fits
// there, the stable deep-layer value otherwise.
int o_max_for_annulus(LatticeParams params, int strip_length, int annulus_layer);

// Classification of an arbitrary shape against the minimal-shape conditions.
enum class MembershipStatus { InM, NotInM, NotConnected };

struct Classification {
    MembershipStatus status;
    std::string reason;      // non-empty on NotInM / NotConnected
    std::string condition;   // "C1" or "C2" when InM
    FaceId center = 0;       // reference face (valid unless no inscribed face)
    int inner_radius = -1;   // m-bar
    int outer_radius = -1;   // M-bar
    long long s_e = -1;      // number of empty strips in the annulus
    long long t = -1;        // occupied vertices in the annulus I-classes
    long long o_max = -1;    // for strip length |N_o|
    long long occupied = -1; // |N_o|
};

Classification classify(const Shape& shape);

// A member of M_N on the given ball (which must be deep enough: the shape's
// frame needs layers through n+2 where |B_n| <= N < |B_{n+1}|).
//
// variant 0 is the canonical representative: the largest ball B_n with
// |B_n| <= N plus one strip placed at the smallest cyclic position achieving
// o_max I-class vertices. Higher variants enumerate, in a fixed order, the
// other single-strip positions achieving o_max and then the two-strip
// splittings jointly containing o_max + 1 (taken modulo the number of valid
// configurations).
Shape build_minimal_shape(const LatticeBall& ball, std::uint64_t n_vertices,
                          std::uint64_t variant_seed = 0);

// Smallest ball depth that makes build_minimal_shape/classify safe for size N.
int minimal_shape_required_depth(LatticeParams params, std::uint64_t n_vertices);

// |d M| for |M| = N, exact:
//   ball case: |dB_n|;
//   otherwise |I_{n+1}| + (q-4)(o_max - 1) + (q-2)(|N_o| - o_max + 1) for p >= 4
//   and 2|I2_{n+1}| + |I1_{n+1}| + (q-6)(o_max - 1) + (q-4)(|N_o| - o_max + 1)
//   for p = 3, with o_max taken at strip length |N_o| = N - |B_n|.
BigInt minimal_perimeter_closed_form(LatticeParams params, const BigInt& n_vertices);

} // namespace hyperlat

#pragma once

#include "hyperlat/errors.hpp"
#include "hyperlat/numeric.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hyperlat {

using VertexId = std::uint32_t;
using FaceId = std::uint32_t;

// Validated {p,q} tessellation parameters: regular p-gons, q around each vertex,
// hyperbolic iff 1/p + 1/q < 1/2.
struct LatticeParams {
    int p = 0;
    int q = 0;

    bool is_triangulation() const { return p == 3; }
};

// Throws NonsenseParams (p or q < 3) or HyperbolicityViolation (Euclidean/spherical).
LatticeParams validate_params(int p, int q);

// Vertex classes per layer. For p >= 4 a layer splits into I (has a neighbour in
// the previous layer) and E (has none). For p = 3 every vertex has a down
// neighbour; I1 has exactly one, I2 exactly two, and the three root vertices
// are L0.
enum class VertexClass : std::uint8_t { I, E, I1, I2, L0 };

const char* class_name(VertexClass c);

// Exact per-layer class counts from the transfer-matrix recursions.
//
//   p >= 4:  (I_{n+1}, E_{n+1}) = T1 (I_n, E_n),  (I_0, E_0) = (0, p),
//            T1 = [[q-3, q-2], [8-3p-3q+pq, 5-2p-3q+pq]].
//   p == 3:  state vector is (|I2_n|, |I1_n|) with (|I2_1|, |I1_1|) = (3, 3(q-4))
//            and T2 = [[1, 1], [q-6, q-5]] applied for n >= 1; layer 0 is the
//            3 root-triangle vertices.
//
// Boundary identity: |dB_n| = |I_{n+1}| for p >= 4, and 2|I2_{n+1}| + |I1_{n+1}|
// for p = 3 (the count of edges leaving B_n, all of which go to layer n+1).
class LayerCounts {
public:
    LayerCounts(LatticeParams params, int n_max);

    const LatticeParams& params() const { return params_; }
    int max_layer() const { return n_max_; }

    // p >= 4 accessors.
    const BigInt& i_count(int n) const;
    const BigInt& e_count(int n) const;
    // p == 3 accessors (n >= 1; both are 0 at n = 0 where the class is L0).
    const BigInt& i1_count(int n) const;
    const BigInt& i2_count(int n) const;

    BigInt layer_size(int n) const;
    BigInt ball_size(int n) const;     // |B_n| = sum of layer sizes 0..n
    BigInt boundary_size(int n) const; // |dB_n|, valid for n <= max_layer()

private:
    LatticeParams params_;
    int n_max_;
    // state_[n] for p>=4: (|I_n|, |E_n|); for p==3 and n>=1: (|I2_n|, |I1_n|).
    // Computed through n_max + 1 so boundary_size(n_max) is available.
    std::vector<std::array<BigInt, 2>> state_;
    std::vector<BigInt> ball_;
};

LayerCounts layer_counts(LatticeParams params, int n_max);

// Rooted ball of the {p,q} lattice: explicit vertices, edges and faces built
// corona by corona around the fundamental face. Immutable after construction.
//
// Vertex ids are dense and layer-major: layer n occupies a contiguous id range,
// ordered by cyclic position along the layer's boundary cycle. The graph is
// induced-complete: every lattice edge between two ball vertices is present,
// which is what makes perimeter(A) = q|A| - 2 * induced_edges(A) exact for any
// subset A of the ball.
class LatticeBall {
public:
    const LatticeParams& params() const { return params_; }
    int depth() const { return depth_; }
    VertexId vertex_count() const { return static_cast<VertexId>(layer_of_.size()); }
    FaceId face_count() const { return static_cast<FaceId>(face_offset_.size() - 1); }

    int layer_of(VertexId v) const { return layer_of_[v]; }
    VertexClass class_of(VertexId v) const { return class_of_[v]; }
    std::uint32_t cyclic_position(VertexId v) const { return cyclic_pos_[v]; }

    // (first id, count) for layers 0..depth.
    const std::vector<std::pair<VertexId, std::uint32_t>>& layer_ranges() const {
        return layer_ranges_;
    }
    std::uint32_t layer_size(int n) const { return layer_ranges_[n].second; }

    std::span<const VertexId> neighbors(VertexId v) const {
        return {adj_.data() + std::size_t(v) * q_, degree_[v]};
    }
    int degree(VertexId v) const { return degree_[v]; }

    std::span<const VertexId> face(FaceId f) const {
        return {face_verts_.data() + face_offset_[f], face_offset_[f + 1] - face_offset_[f]};
    }
    std::span<const FaceId> faces_of(VertexId v) const {
        return {vfaces_.data() + std::size_t(v) * q_, vface_count_[v]};
    }

    bool adjacent(VertexId u, VertexId v) const;

    // Layer-n vertices in boundary-cycle order (ids are already in this order,
    // so this is just the id range).
    std::vector<VertexId> layer_cycle(int n) const;

    // All interior vertices (layer < depth) have q neighbours and q faces.
    bool is_interior(VertexId v) const { return layer_of_[v] < depth_; }

private:
    friend LatticeBall build_ball(LatticeParams, int, std::uint64_t);

    LatticeParams params_;
    int depth_ = 0;
    int q_ = 0;

    std::vector<int> layer_of_;
    std::vector<VertexClass> class_of_;
    std::vector<std::uint32_t> cyclic_pos_;
    std::vector<std::pair<VertexId, std::uint32_t>> layer_ranges_;

    // Flat q-wide adjacency, in rotational (attachment) order around each vertex.
    std::vector<VertexId> adj_;
    std::vector<std::uint8_t> degree_;

    // Faces, p ids each, in attachment order; corona k spans
    // [corona_face_begin_[k], corona_face_begin_[k+1]).
    std::vector<VertexId> face_verts_;
    std::vector<std::uint32_t> face_offset_;
    std::vector<FaceId> corona_face_begin_;

    // Flat q-wide vertex -> face incidence.
    std::vector<FaceId> vfaces_;
    std::vector<std::uint8_t> vface_count_;

    void add_edge(VertexId u, VertexId v);
    void add_face(const std::vector<VertexId>& cycle);
};

inline constexpr std::uint64_t kDefaultVertexCap = 10'000'000;

// Corona construction. Deterministic: two calls yield identical structures.
// Throws ResourceLimit if the predicted vertex count exceeds `vertex_cap`.
LatticeBall build_ball(LatticeParams params, int depth,
                       std::uint64_t vertex_cap = kDefaultVertexCap);

// Infinite-lattice edge boundary of A, via q-regularity:
//   |d_e A| = q|A| - 2 * (edges of the lattice inside A).
// Valid for any subset of the ball. Throws UnknownVertex on out-of-range ids
// and NonsenseParams on an empty or duplicated set.
std::uint64_t perimeter(const LatticeBall& ball, std::span<const VertexId> members);

// Graph-measured |dB_n| and the recursion value it must equal.
std::pair<BigInt, BigInt> ball_perimeter_identity(LatticeParams params, int n,
                                                  std::uint64_t vertex_cap = kDefaultVertexCap);

} // namespace hyperlat

#include "hyperlat/lattice.hpp"

#include <algorithm>
#include <string>

namespace hyperlat {

LatticeParams validate_params(int p, int q) {
    if (p < 3 || q < 3) {
        throw NonsenseParams("{p,q} requires p >= 3 and q >= 3, got {" + std::to_string(p) +
                             "," + std::to_string(q) + "}");
    }
    // 1/p + 1/q < 1/2  <=>  2(p + q) < pq, in integers.
    if (2 * (p + q) >= p * q) {
        throw HyperbolicityViolation("{" + std::to_string(p) + "," + std::to_string(q) +
                                     "} is not hyperbolic: 1/p + 1/q >= 1/2");
    }
    return LatticeParams{p, q};
}

const char* class_name(VertexClass c) {
    switch (c) {
        case VertexClass::I: return "I";
        case VertexClass::E: return "E";
        case VertexClass::I1: return "I1";
        case VertexClass::I2: return "I2";
        case VertexClass::L0: return "L0";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// LayerCounts
// ---------------------------------------------------------------------------

LayerCounts::LayerCounts(LatticeParams params, int n_max) : params_(params), n_max_(n_max) {
    if (n_max < 0) throw NonsenseParams("layer_counts: n_max must be >= 0");
    const long long p = params.p, q = params.q;
    const int rows = n_max + 2; // one extra layer so boundary_size(n_max) works
    state_.resize(rows);
    ball_.resize(n_max + 1);

    if (p >= 4) {
        const long long t00 = q - 3, t01 = q - 2;
        const long long t10 = 8 - 3 * p - 3 * q + p * q, t11 = 5 - 2 * p - 3 * q + p * q;
        state_[0] = {BigInt(0), BigInt(p)};
        for (int n = 1; n < rows; ++n) {
            state_[n][0] = t00 * state_[n - 1][0] + t01 * state_[n - 1][1];
            state_[n][1] = t10 * state_[n - 1][0] + t11 * state_[n - 1][1];
        }
    } else {
        // state_[n] = (|I2_n|, |I1_n|) for n >= 1; state_[0] unused (layer 0 is L0).
        state_[0] = {BigInt(0), BigInt(0)};
        if (rows > 1) state_[1] = {BigInt(3), BigInt(3 * (q - 4))};
        const long long t10 = q - 6, t11 = q - 5;
        for (int n = 2; n < rows; ++n) {
            state_[n][0] = state_[n - 1][0] + state_[n - 1][1];
            state_[n][1] = t10 * state_[n - 1][0] + t11 * state_[n - 1][1];
        }
    }

    BigInt acc = 0;
    for (int n = 0; n <= n_max; ++n) {
        acc += layer_size(n);
        ball_[n] = acc;
    }
}

const BigInt& LayerCounts::i_count(int n) const {
    if (params_.p < 4) throw NonsenseParams("i_count is a p>=4 accessor");
    return state_.at(n)[0];
}
const BigInt& LayerCounts::e_count(int n) const {
    if (params_.p < 4) throw NonsenseParams("e_count is a p>=4 accessor");
    return state_.at(n)[1];
}
const BigInt& LayerCounts::i2_count(int n) const {
    if (params_.p != 3) throw NonsenseParams("i2_count is a p=3 accessor");
    return state_.at(n)[0];
}
const BigInt& LayerCounts::i1_count(int n) const {
    if (params_.p != 3) throw NonsenseParams("i1_count is a p=3 accessor");
    return state_.at(n)[1];
}

BigInt LayerCounts::layer_size(int n) const {
    if (params_.p == 3 && n == 0) return 3;
    return state_.at(n)[0] + state_.at(n)[1];
}

BigInt LayerCounts::ball_size(int n) const { return ball_.at(n); }

BigInt LayerCounts::boundary_size(int n) const {
    if (params_.p >= 4) return state_.at(n + 1)[0];
    return 2 * state_.at(n + 1)[0] + state_.at(n + 1)[1];
}

LayerCounts layer_counts(LatticeParams params, int n_max) { return LayerCounts(params, n_max); }

// ---------------------------------------------------------------------------
// LatticeBall
// ---------------------------------------------------------------------------

void LatticeBall::add_edge(VertexId u, VertexId v) {
    if (degree_[u] >= q_ || degree_[v] >= q_)
        throw InvariantViolation("add_edge: vertex degree would exceed q");
    adj_[std::size_t(u) * q_ + degree_[u]++] = v;
    adj_[std::size_t(v) * q_ + degree_[v]++] = u;
}

void LatticeBall::add_face(const std::vector<VertexId>& cycle) {
    const FaceId f = face_count();
    for (VertexId v : cycle) {
        if (vface_count_[v] >= q_)
            throw InvariantViolation("add_face: vertex face count would exceed q");
        face_verts_.push_back(v);
        vfaces_[std::size_t(v) * q_ + vface_count_[v]++] = f;
    }
    face_offset_.push_back(static_cast<std::uint32_t>(face_verts_.size()));
}

bool LatticeBall::adjacent(VertexId u, VertexId v) const {
    for (VertexId w : neighbors(u))
        if (w == v) return true;
    return false;
}

std::vector<VertexId> LatticeBall::layer_cycle(int n) const {
    const auto [first, count] = layer_ranges_.at(n);
    std::vector<VertexId> cycle(count);
    for (std::uint32_t i = 0; i < count; ++i) cycle[i] = first + i;
    return cycle;
}

// The corona step. The boundary of B_{l-1} is a cyclic vertex sequence; each
// boundary vertex v still misses g(v) = q - faces(v) of its q faces. Walking
// the cycle once, the missing faces form a chain F_1..F_K in which consecutive
// faces share an edge (pivot, flank). A face whose pivot has no further
// missing faces must contain the outgoing boundary edge, so its "run" of old
// vertices extends forward (and keeps extending over vertices with g = 1,
// which happens for q = 3). Face F_j with run length r contributes
// t_j = p - r new-vertex slots, of which the first is shared with F_{j-1};
// the slot sequence, taken cyclically with overlap 1, is exactly the next
// layer in boundary order. K = sum(g - 1) and |L_l| = sum(t_j) - K.
namespace {

struct FaceRecord {
    std::uint32_t run_start; // index into the old boundary
    std::uint32_t run_len;
    std::uint32_t slots; // p - run_len
};

} // namespace

LatticeBall build_ball(LatticeParams params, int depth, std::uint64_t vertex_cap) {
    if (depth < 0) throw NonsenseParams("build_ball: depth must be >= 0");
    const int p = params.p, q = params.q;

    const LayerCounts counts(params, depth);
    if (counts.ball_size(depth) > BigInt(vertex_cap)) {
        throw ResourceLimit("build_ball: predicted |B_" + std::to_string(depth) + "| = " +
                            counts.ball_size(depth).str() + " exceeds cap " +
                            std::to_string(vertex_cap));
    }
    const std::size_t total_vertices = counts.ball_size(depth).convert_to<std::size_t>();

    LatticeBall ball;
    ball.params_ = params;
    ball.depth_ = depth;
    ball.q_ = q;
    ball.layer_of_.reserve(total_vertices);
    ball.class_of_.reserve(total_vertices);
    ball.cyclic_pos_.reserve(total_vertices);
    ball.adj_.assign(total_vertices * std::size_t(q), 0);
    ball.degree_.assign(total_vertices, 0);
    ball.vfaces_.assign(total_vertices * std::size_t(q), 0);
    ball.vface_count_.assign(total_vertices, 0);
    ball.face_offset_.push_back(0);

    // Root face: vertices 0..p-1.
    for (int k = 0; k < p; ++k) {
        ball.layer_of_.push_back(0);
        ball.class_of_.push_back(p == 3 ? VertexClass::L0 : VertexClass::E);
        ball.cyclic_pos_.push_back(static_cast<std::uint32_t>(k));
    }
    ball.layer_ranges_.emplace_back(0, static_cast<std::uint32_t>(p));
    {
        std::vector<VertexId> root(p);
        for (int k = 0; k < p; ++k) root[k] = static_cast<VertexId>(k);
        ball.add_face(root);
        for (int k = 0; k < p; ++k)
            ball.add_edge(static_cast<VertexId>(k), static_cast<VertexId>((k + 1) % p));
    }
    ball.corona_face_begin_.push_back(0);
    ball.corona_face_begin_.push_back(1);

    std::vector<VertexId> boundary(p);
    for (int k = 0; k < p; ++k) boundary[k] = static_cast<VertexId>(k);

    std::vector<int> rem;
    std::vector<FaceRecord> records;
    std::vector<VertexId> face_cycle;

    for (int layer = 1; layer <= depth; ++layer) {
        const std::uint32_t m = static_cast<std::uint32_t>(boundary.size());
        rem.assign(m, 0);
        std::uint64_t total_faces = 0;
        std::uint32_t start = m;
        for (std::uint32_t i = 0; i < m; ++i) {
            const int g = q - ball.vface_count_[boundary[i]];
            if (g < 1)
                throw InvariantViolation("corona: boundary vertex already saturated");
            rem[i] = g;
            total_faces += static_cast<std::uint64_t>(g - 1);
            if (start == m && g >= 2) start = i;
        }
        if (start == m) throw InvariantViolation("corona: no boundary vertex with gap >= 2");
        if (total_faces == 0) throw InvariantViolation("corona: nothing to attach");

        // The first face of the fan at `start` is the wrap face attached last.
        rem[start] -= 1;

        // Phase 1: face records.
        records.clear();
        records.reserve(total_faces);
        std::uint64_t total_slots = 0;
        std::uint32_t pivot = start;
        for (std::uint64_t j = 0; j < total_faces; ++j) {
            FaceRecord rec{pivot, 1, 0};
            rem[pivot] -= 1;
            if (rem[pivot] == 0) {
                // Last missing face at the pivot: it contains the outgoing
                // boundary edge; keep extending over g=1 vertices.
                std::uint32_t nxt = pivot;
                do {
                    nxt = (nxt + 1) % m;
                    rec.run_len += 1;
                    rem[nxt] -= 1;
                } while (rem[nxt] == 0);
                pivot = nxt;
            }
            if (rec.run_len >= static_cast<std::uint32_t>(p))
                throw InvariantViolation("corona: face run covers a whole polygon");
            rec.slots = static_cast<std::uint32_t>(p) - rec.run_len;
            total_slots += rec.slots;
            records.push_back(rec);
        }
        for (std::uint32_t i = 0; i < m; ++i) {
            if (rem[i] != (i == start ? -1 : 0))
                throw InvariantViolation("corona: slot accounting failed");
        }

        const std::uint64_t new_count = total_slots - total_faces;
        if (BigInt(new_count) != counts.layer_size(layer))
            throw InvariantViolation("corona: layer " + std::to_string(layer) +
                                     " size disagrees with the T-matrix recursion");

        // Phase 2: materialize vertices, faces, edges.
        const VertexId base = ball.vertex_count();
        for (std::uint64_t k = 0; k < new_count; ++k) {
            ball.layer_of_.push_back(layer);
            ball.class_of_.push_back(VertexClass::E); // fixed up below
            ball.cyclic_pos_.push_back(static_cast<std::uint32_t>(k));
        }
        ball.layer_ranges_.emplace_back(base, static_cast<std::uint32_t>(new_count));

        std::uint64_t offset = 0;
        for (const FaceRecord& rec : records) {
            face_cycle.clear();
            // Shared run, reversed so the face cycle is consistently oriented.
            for (std::uint32_t r = 0; r < rec.run_len; ++r)
                face_cycle.push_back(boundary[(rec.run_start + rec.run_len - 1 - r) % m]);
            for (std::uint32_t s = 0; s < rec.slots; ++s)
                face_cycle.push_back(base + static_cast<VertexId>((offset + s) % new_count));
            ball.add_face(face_cycle);

            // New edges: the slot chain plus the closing edge back to the run
            // end. The opening edge (run start, first slot) is the previous
            // record's closing edge.
            for (std::uint32_t s = 0; s + 1 < rec.slots; ++s)
                ball.add_edge(base + static_cast<VertexId>((offset + s) % new_count),
                              base + static_cast<VertexId>((offset + s + 1) % new_count));
            ball.add_edge(base + static_cast<VertexId>((offset + rec.slots - 1) % new_count),
                          boundary[(rec.run_start + rec.run_len - 1) % m]);
            offset += rec.slots - 1;
        }
        if (offset != new_count)
            throw InvariantViolation("corona: slot chain did not close");
        ball.corona_face_begin_.push_back(ball.face_count());

        // Classify the new layer by down-edge count and cross-check the recursion.
        BigInt count_a = 0, count_b = 0; // (I, E) or (I2, I1)
        for (std::uint64_t k = 0; k < new_count; ++k) {
            const VertexId v = base + static_cast<VertexId>(k);
            int down = 0;
            for (VertexId w : ball.neighbors(v))
                if (ball.layer_of_[w] == layer - 1) ++down;
            if (p >= 4) {
                ball.class_of_[v] = down >= 1 ? VertexClass::I : VertexClass::E;
                (down >= 1 ? count_a : count_b) += 1;
            } else {
                if (down != 1 && down != 2)
                    throw InvariantViolation("corona: p=3 vertex with down-degree " +
                                             std::to_string(down));
                ball.class_of_[v] = down == 2 ? VertexClass::I2 : VertexClass::I1;
                (down == 2 ? count_a : count_b) += 1;
            }
        }
        const BigInt want_a = p >= 4 ? counts.i_count(layer) : counts.i2_count(layer);
        const BigInt want_b = p >= 4 ? counts.e_count(layer) : counts.i1_count(layer);
        if (count_a != want_a || count_b != want_b)
            throw InvariantViolation("corona: layer " + std::to_string(layer) +
                                     " class counts disagree with the recursion");

        boundary.resize(new_count);
        for (std::uint64_t k = 0; k < new_count; ++k)
            boundary[k] = base + static_cast<VertexId>(k);
    }

    return ball;
}

// ---------------------------------------------------------------------------
// Perimeter
// ---------------------------------------------------------------------------

std::uint64_t perimeter(const LatticeBall& ball, std::span<const VertexId> members) {
    if (members.empty()) throw NonsenseParams("perimeter: empty vertex set");
    for (VertexId v : members)
        if (v >= ball.vertex_count())
            throw UnknownVertex("perimeter: vertex " + std::to_string(v) + " not in ball");
    std::vector<std::uint8_t> in(ball.vertex_count(), 0);
    for (VertexId v : members) {
        if (in[v]) throw NonsenseParams("perimeter: duplicate vertex ids");
        in[v] = 1;
    }
    std::uint64_t inside_edges = 0;
    for (VertexId v : members)
        for (VertexId w : ball.neighbors(v))
            if (in[w]) ++inside_edges;
    inside_edges /= 2;
    return std::uint64_t(ball.params().q) * members.size() - 2 * inside_edges;
}

std::pair<BigInt, BigInt> ball_perimeter_identity(LatticeParams params, int n,
                                                  std::uint64_t vertex_cap) {
    if (n < 0) throw NonsenseParams("ball_perimeter_identity: n must be >= 0");
    const LatticeBall ball = build_ball(params, n, vertex_cap);
    std::vector<VertexId> all(ball.vertex_count());
    for (VertexId v = 0; v < ball.vertex_count(); ++v) all[v] = v;
    const BigInt lhs = perimeter(ball, all);
    const BigInt rhs = layer_counts(params, n).boundary_size(n);
    return {lhs, rhs};
}

} // namespace hyperlat

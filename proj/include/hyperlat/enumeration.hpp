#pragma once

#include "hyperlat/lattice.hpp"
#include "hyperlat/numeric.hpp"
#include "hyperlat/shapes.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace hyperlat {

// Exhaustive enumeration of connected N-vertex subsets (lattice animals)
// containing a fixed root. By vertex-transitivity of the infinite lattice the
// minimum perimeter over root-containing animals equals the global minimum
// over all N-subsets.
struct EnumerationTask {
    const LatticeBall* ball = nullptr;
    VertexId root = 0;
    int size = 0;
    // Subtrees whose perimeter provably exceeds the cap are skipped; animals
    // at or below the cap are never lost.
    std::optional<std::uint64_t> perimeter_cap;
    std::uint64_t visit_cap = 100'000'000;
    // Optional universe restriction (vertex_count-sized mask).
    const std::vector<std::uint8_t>* allowed = nullptr;
    int threads = 1;
};

// One emitted animal: sorted-by-insertion prefix of vertices plus its internal
// edge count (perimeter = qN - 2 * edges).
struct Animal {
    std::span<const VertexId> vertices;
    std::uint64_t internal_edges;
};

// Calls `visit` once per animal, in a deterministic order for fixed inputs.
// Returns the number of enumeration nodes touched (= connected subsets of any
// size <= N containing the root, minus pruned ones).
std::uint64_t enumerate_animals(const EnumerationTask& task,
                                const std::function<void(const Animal&)>& visit);

// Sufficiency certificate: every vertex within graph distance size-1 of the
// root must be interior. A shortest lattice path that left the ball would
// have to cross the rim first, so in-ball BFS distances are exact on that
// neighbourhood and the check is sound.
bool ball_supports_enumeration(const LatticeBall& ball, VertexId root, int size);

// Smallest-depth ball certified for size-N enumeration from a layer-0 root.
// Much shallower than depth N when climbing a layer costs several steps
// (q = 3). Minimizers are compact around the root, so their classification
// fits comfortably inside the certified ball as well.
LatticeBall build_ball_for_enumeration(LatticeParams params, int size,
                                       std::uint64_t vertex_cap = kDefaultVertexCap);

struct OracleResult {
    std::uint64_t min_perimeter = 0;
    std::uint64_t minimizer_count = 0;
    std::vector<std::vector<VertexId>> sample_minimizers; // bounded
    bool all_minimizers_classified_in_m = false;
    std::uint64_t animals_visited = 0; // enumeration nodes
    std::uint64_t animals_of_size_n = 0;
};

inline constexpr std::size_t kMinimizerSampleCap = 4096;

// Full minimum-perimeter search; classifies every collected minimizer.
OracleResult brute_force_min_perimeter(const EnumerationTask& task);

// (i_m, i_m^g) = (min perimeter / m, min perimeter / (q m)), exact.
std::pair<BigRational, BigRational> finite_cheeger(const LatticeBall& ball, int m,
                                                   std::uint64_t visit_cap = 100'000'000,
                                                   int threads = 1);

} // namespace hyperlat

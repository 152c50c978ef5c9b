#include "hyperlat/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>
#include <thread>

namespace hyperlat {

namespace {

// Redelmeier-style enumeration: at each level, candidates are taken from an
// ordered extension list; once a candidate has been branched on it is marked
// "tried" and excluded from the entire remaining subtree, so every connected
// subset containing the root is produced exactly once. `dead` counts edges
// between the current set and tried vertices; such edges stay boundary in
// every completion, which together with the trivial q-bound per future vertex
// gives a sound perimeter lower bound for pruning.
struct SearchState {
    std::vector<VertexId> current;
    std::vector<std::uint8_t> in_set;
    std::vector<std::uint8_t> seen;
    std::vector<std::uint8_t> tried;
    std::uint64_t internal_edges = 0;
    std::uint64_t dead_edges = 0;
    std::vector<VertexId> pending; // extension list at capture time

    explicit SearchState(std::size_t n_vertices)
        : in_set(n_vertices, 0), seen(n_vertices, 0), tried(n_vertices, 0) {}
};

class Enumerator {
public:
    Enumerator(const LatticeBall& ball, const EnumerationTask& task,
               const std::function<void(const Animal&)>& visit)
        : ball_(ball), task_(task), visit_(visit), state_(ball.vertex_count()) {}

    // Start a fresh search from the root.
    void run_from_root() {
        state_.seen[task_.root] = 1;
        run({task_.root});
    }

    // Resume a captured state.
    void run_resumed(const SearchState& snapshot) {
        state_ = snapshot;
        run(snapshot.pending);
    }

    // When set, recursion stops at this prefix size and snapshots the state.
    void capture_into(std::vector<SearchState>* captures, int depth) {
        captures_ = captures;
        capture_depth_ = depth;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    bool allowed(VertexId v) const { return !task_.allowed || (*task_.allowed)[v]; }

    bool prune() const {
        if (!task_.perimeter_cap) return false;
        const std::uint64_t cap = *task_.perimeter_cap;
        if (state_.dead_edges > cap) return true;
        const std::uint64_t remaining = std::uint64_t(task_.size) - state_.current.size();
        const std::uint64_t max_edges =
            state_.internal_edges + remaining * std::uint64_t(ball_.params().q);
        const std::uint64_t total = std::uint64_t(ball_.params().q) * task_.size;
        return total > 2 * max_edges && total - 2 * max_edges > cap;
    }

    void run(const std::vector<VertexId>& untried) {
        if (++nodes_ > task_.visit_cap)
            throw VisitCapExceeded("enumeration: visit cap " +
                                   std::to_string(task_.visit_cap) + " exceeded");
        if (state_.current.size() == std::size_t(task_.size)) {
            visit_(Animal{state_.current, state_.internal_edges});
            return;
        }
        if (prune()) return;
        if (captures_ && int(state_.current.size()) == capture_depth_) {
            SearchState snap = state_;
            snap.pending = untried;
            captures_->push_back(std::move(snap));
            return;
        }

        std::vector<VertexId> tried_here;
        for (std::size_t i = 0; i < untried.size(); ++i) {
            const VertexId u = untried[i];
            std::vector<VertexId> child(untried.begin() + i + 1, untried.end());
            std::vector<VertexId> newly_seen;
            for (VertexId w : ball_.neighbors(u)) {
                if (!state_.seen[w] && allowed(w)) {
                    state_.seen[w] = 1;
                    newly_seen.push_back(w);
                    child.push_back(w);
                }
            }
            std::uint64_t to_set = 0, to_tried = 0;
            for (VertexId w : ball_.neighbors(u)) {
                if (state_.in_set[w]) ++to_set;
                if (state_.tried[w]) ++to_tried;
            }
            state_.current.push_back(u);
            state_.in_set[u] = 1;
            state_.internal_edges += to_set;
            state_.dead_edges += to_tried;

            run(child);

            state_.current.pop_back();
            state_.in_set[u] = 0;
            state_.internal_edges -= to_set;
            state_.dead_edges -= to_tried;
            for (VertexId w : newly_seen) state_.seen[w] = 0;

            state_.tried[u] = 1;
            tried_here.push_back(u);
            state_.dead_edges += to_set; // edges into u stay boundary below here
        }
        for (VertexId u : tried_here) {
            state_.tried[u] = 0;
            std::uint64_t to_set = 0;
            for (VertexId w : ball_.neighbors(u))
                if (state_.in_set[w]) ++to_set;
            state_.dead_edges -= to_set;
        }
    }

    const LatticeBall& ball_;
    const EnumerationTask& task_;
    const std::function<void(const Animal&)>& visit_;
    SearchState state_;
    std::uint64_t nodes_ = 0;
    std::vector<SearchState>* captures_ = nullptr;
    int capture_depth_ = -1;
};

void check_task(const EnumerationTask& task) {
    if (!task.ball) throw NonsenseParams("enumeration: no ball");
    const LatticeBall& ball = *task.ball;
    if (task.root >= ball.vertex_count())
        throw UnknownVertex("enumeration: root outside the ball");
    if (task.size < 1) throw NonsenseParams("enumeration: size must be >= 1");
    if (task.allowed && task.allowed->size() != ball.vertex_count())
        throw NonsenseParams("enumeration: allowed mask has wrong size");
    if (task.allowed && !(*task.allowed)[task.root])
        throw NonsenseParams("enumeration: root not in the allowed set");
    if (!ball_supports_enumeration(ball, task.root, task.size))
        throw DepthInsufficient("enumeration: ball depth " + std::to_string(ball.depth()) +
                                " insufficient for size " + std::to_string(task.size) +
                                " animals from vertex " + std::to_string(task.root));
}

// Snapshot the search at prefix size 2; the units partition the animal set.
std::uint64_t build_units(const EnumerationTask& task, std::vector<SearchState>& units) {
    std::function<void(const Animal&)> sink = [](const Animal&) {};
    Enumerator top(*task.ball, task, sink);
    top.capture_into(&units, std::min(2, task.size - 1));
    top.run_from_root();
    return top.nodes();
}

// Run pre-built work units over a thread pool, reducing per-unit results in
// unit order so the outcome is worker-count independent.
template <typename MakeVisitor, typename Reduce>
std::uint64_t run_parallel(const EnumerationTask& task, std::vector<SearchState>& units,
                           std::uint64_t root_nodes, MakeVisitor make_visitor,
                           Reduce reduce) {
    std::uint64_t nodes = root_nodes;

    struct Outcome {
        std::uint64_t nodes = 0;
        bool cap_hit = false;
    };
    std::vector<Outcome> outcomes(units.size());
    const int threads = std::max(1, task.threads);
    std::atomic<std::size_t> next{0};
    auto worker = [&](int worker_id) {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= units.size()) return;
            auto visitor = make_visitor(i);
            std::function<void(const Animal&)> fn = visitor;
            Enumerator runner(*task.ball, task, fn);
            try {
                runner.run_resumed(units[i]);
            } catch (const VisitCapExceeded&) {
                outcomes[i].cap_hit = true;
            }
            outcomes[i].nodes = runner.nodes();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();

    bool cap_hit = false;
    for (const Outcome& o : outcomes) {
        nodes += o.nodes;
        cap_hit = cap_hit || o.cap_hit;
    }
    if (cap_hit || nodes > task.visit_cap)
        throw VisitCapExceeded("enumeration: visit cap " + std::to_string(task.visit_cap) +
                               " exceeded");
    for (std::size_t i = 0; i < units.size(); ++i) reduce(i);
    return nodes;
}

struct MinAccumulator {
    std::uint64_t min_perimeter = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t minimizer_count = 0;
    std::uint64_t animals = 0;
    std::vector<std::vector<VertexId>> sample;

    void offer(std::uint64_t perim, std::span<const VertexId> verts) {
        ++animals;
        if (perim < min_perimeter) {
            min_perimeter = perim;
            minimizer_count = 0;
            sample.clear();
        }
        if (perim == min_perimeter) {
            ++minimizer_count;
            if (sample.size() < kMinimizerSampleCap)
                sample.emplace_back(verts.begin(), verts.end());
        }
    }

    void merge(MinAccumulator&& o) {
        animals += o.animals;
        if (o.min_perimeter < min_perimeter) {
            min_perimeter = o.min_perimeter;
            minimizer_count = 0;
            sample.clear();
        }
        if (o.min_perimeter == min_perimeter) {
            minimizer_count += o.minimizer_count;
            for (auto& s : o.sample) {
                if (sample.size() >= kMinimizerSampleCap) break;
                sample.push_back(std::move(s));
            }
        }
    }
};

} // namespace

bool ball_supports_enumeration(const LatticeBall& ball, VertexId root, int size) {
    if (root >= ball.vertex_count()) return false;
    std::vector<int> dist(ball.vertex_count(), -1);
    std::vector<VertexId> queue{root};
    dist[root] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId v = queue[head];
        if (dist[v] >= size - 1) continue;
        for (VertexId w : ball.neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    for (VertexId v : queue)
        if (!ball.is_interior(v)) return false;
    return true;
}

LatticeBall build_ball_for_enumeration(LatticeParams params, int size,
                                       std::uint64_t vertex_cap) {
    for (int depth = 2; depth <= size; ++depth) {
        LatticeBall ball = build_ball(params, depth, vertex_cap);
        if (ball_supports_enumeration(ball, 0, size)) return ball;
    }
    throw DepthInsufficient("build_ball_for_enumeration: no sufficient depth up to " +
                            std::to_string(size));
}

std::uint64_t enumerate_animals(const EnumerationTask& task,
                                const std::function<void(const Animal&)>& visit) {
    check_task(task);
    if (task.threads <= 1 || task.size <= 3) {
        Enumerator e(*task.ball, task, visit);
        e.run_from_root();
        return e.nodes();
    }
    // Parallel path: per-unit buffering, replayed in unit order so the stream
    // is a worker-count-independent set.
    std::vector<SearchState> units;
    const std::uint64_t root_nodes = build_units(task, units);
    std::vector<std::vector<std::pair<std::vector<VertexId>, std::uint64_t>>> buffers(
        units.size());
    auto make_visitor = [&](std::size_t i) {
        return [&buffers, i](const Animal& a) {
            buffers[i].emplace_back(
                std::vector<VertexId>(a.vertices.begin(), a.vertices.end()),
                a.internal_edges);
        };
    };
    auto reduce = [&](std::size_t i) {
        for (const auto& [verts, edges] : buffers[i]) visit(Animal{verts, edges});
    };
    return run_parallel(task, units, root_nodes, make_visitor, reduce);
}

OracleResult brute_force_min_perimeter(const EnumerationTask& task) {
    check_task(task);
    const LatticeBall& ball = *task.ball;
    const std::uint64_t q = ball.params().q;

    MinAccumulator acc;
    std::uint64_t nodes = 0;
    if (task.threads <= 1 || task.size <= 3) {
        std::function<void(const Animal&)> visit = [&](const Animal& a) {
            acc.offer(q * a.vertices.size() - 2 * a.internal_edges, a.vertices);
        };
        Enumerator e(ball, task, visit);
        e.run_from_root();
        nodes = e.nodes();
    } else {
        std::vector<SearchState> units;
        const std::uint64_t root_nodes = build_units(task, units);
        std::vector<MinAccumulator> unit_accs(units.size());
        auto make_visitor = [&](std::size_t i) {
            MinAccumulator* a = &unit_accs[i];
            const std::uint64_t qq = q;
            return [a, qq](const Animal& an) {
                a->offer(qq * an.vertices.size() - 2 * an.internal_edges, an.vertices);
            };
        };
        auto reduce = [&](std::size_t i) { acc.merge(std::move(unit_accs[i])); };
        nodes = run_parallel(task, units, root_nodes, make_visitor, reduce);
    }

    OracleResult result;
    result.min_perimeter = acc.min_perimeter;
    result.minimizer_count = acc.minimizer_count;
    result.animals_visited = nodes;
    result.animals_of_size_n = acc.animals;
    result.sample_minimizers = std::move(acc.sample);

    result.all_minimizers_classified_in_m =
        result.minimizer_count > 0 &&
        result.minimizer_count == result.sample_minimizers.size();
    for (const auto& verts : result.sample_minimizers) {
        const Shape shape(ball, verts);
        if (classify(shape).status != MembershipStatus::InM) {
            result.all_minimizers_classified_in_m = false;
            break;
        }
    }
    return result;
}

std::pair<BigRational, BigRational> finite_cheeger(const LatticeBall& ball, int m,
                                                   std::uint64_t visit_cap, int threads) {
    EnumerationTask task;
    task.ball = &ball;
    task.root = 0;
    task.size = m;
    task.visit_cap = visit_cap;
    task.threads = threads;
    // Disconnected sets never attain the minimum (each component can be moved
    // next to another, strictly lowering the perimeter), so the connected
    // search suffices for the minimum in Definition 2.1(i).
    OracleResult r = brute_force_min_perimeter(task);
    const BigRational i_m(BigInt(r.min_perimeter), BigInt(m));
    const BigRational i_g(BigInt(r.min_perimeter), BigInt(m) * ball.params().q);
    if (i_m != i_g * ball.params().q)
        throw InvariantViolation("finite_cheeger: i_m != q * i_m^g");
    return {i_m, i_g};
}

} // namespace hyperlat

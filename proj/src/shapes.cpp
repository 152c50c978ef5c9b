#include "hyperlat/shapes.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace hyperlat {

// ---------------------------------------------------------------------------
// Shape
// ---------------------------------------------------------------------------

Shape::Shape(const LatticeBall& ball, std::vector<VertexId> members)
    : ball_(&ball), members_(std::move(members)) {
    if (members_.empty()) throw NonsenseParams("Shape: empty vertex set");
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
        throw NonsenseParams("Shape: duplicate vertex ids");
    if (members_.back() >= ball.vertex_count())
        throw UnknownVertex("Shape: vertex id outside the ball");

    for (VertexId v : members_)
        for (VertexId w : ball.neighbors(v))
            if (contains(w)) ++induced_edges_;
    induced_edges_ /= 2;

    // Connectivity by BFS over members.
    std::unordered_set<VertexId> seen{members_[0]};
    std::deque<VertexId> queue{members_[0]};
    while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop_front();
        for (VertexId w : ball.neighbors(v))
            if (contains(w) && seen.insert(w).second) queue.push_back(w);
    }
    connected_ = seen.size() == members_.size();
}

bool Shape::contains(VertexId v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
}

// ---------------------------------------------------------------------------
// Face-centred layers
// ---------------------------------------------------------------------------

namespace {

// One co-face expansion step. Returns false (without touching `out`) if some
// frontier vertex is unsaturated, i.e. the next layer cannot be trusted.
bool expand_layer(const LatticeBall& ball, const std::vector<VertexId>& frontier,
                  std::unordered_map<VertexId, int>& layer_of, int next_layer,
                  std::vector<VertexId>& out) {
    for (VertexId v : frontier)
        if (!ball.is_interior(v)) return false;
    out.clear();
    for (VertexId v : frontier) {
        for (FaceId f : ball.faces_of(v)) {
            for (VertexId w : ball.face(f)) {
                if (layer_of.emplace(w, next_layer).second) out.push_back(w);
            }
        }
    }
    return true;
}

} // namespace

FaceLayers face_layers(const LatticeBall& ball, FaceId center, int max_layers) {
    if (center >= ball.face_count())
        throw UnknownVertex("face_layers: face id outside the ball");
    FaceLayers fl;
    fl.center = center;
    auto face = ball.face(center);
    fl.layers.emplace_back(face.begin(), face.end());
    for (VertexId v : face) fl.layer_of.emplace(v, 0);
    std::vector<VertexId> next;
    while (fl.max_layer() < max_layers) {
        if (!expand_layer(ball, fl.layers.back(), fl.layer_of, fl.max_layer() + 1, next))
            break;
        if (next.empty()) break;
        fl.layers.push_back(next);
    }
    return fl;
}

std::vector<VertexId> layer_cycle(const LatticeBall& ball, const FaceLayers& layers, int k) {
    if (k < 0 || k > layers.max_layer())
        throw DepthInsufficient("layer_cycle: layer not computed");
    if (k == 0) {
        auto face = ball.face(layers.center);
        return {face.begin(), face.end()};
    }
    const auto& members = layers.layers[k];
    const VertexId start = *std::min_element(members.begin(), members.end());

    auto same_layer_neighbors = [&](VertexId v) {
        std::vector<VertexId> result;
        for (VertexId w : ball.neighbors(v))
            if (layers.layer(w) == k) result.push_back(w);
        return result;
    };

    std::vector<VertexId> cycle;
    cycle.reserve(members.size());
    VertexId prev = start;
    auto first = same_layer_neighbors(start);
    if (first.size() != 2)
        throw InvariantViolation("layer_cycle: within-layer degree != 2");
    cycle.push_back(start);
    VertexId cur = std::min(first[0], first[1]);
    while (cur != start) {
        cycle.push_back(cur);
        auto nbrs = same_layer_neighbors(cur);
        if (nbrs.size() != 2)
            throw InvariantViolation("layer_cycle: within-layer degree != 2");
        const VertexId nxt = nbrs[0] == prev ? nbrs[1] : nbrs[0];
        prev = cur;
        cur = nxt;
    }
    if (cycle.size() != members.size())
        throw InvariantViolation("layer_cycle: within-layer adjacency is not a single cycle");
    return cycle;
}

// ---------------------------------------------------------------------------
// Inscribed / circumscribing balls
// ---------------------------------------------------------------------------

namespace {

// Largest l with B_l(face) inside the member set; early-stops at the first
// layer containing a non-member. DepthInsufficient if the expansion loses
// validity before the radius is certified.
int inscribed_radius(const LatticeBall& ball, FaceId face, const Shape& shape) {
    std::unordered_map<VertexId, int> layer_of;
    auto f = ball.face(face);
    std::vector<VertexId> frontier(f.begin(), f.end()), next;
    for (VertexId v : f) layer_of.emplace(v, 0);
    int k = 0;
    while (true) {
        if (!expand_layer(ball, frontier, layer_of, k + 1, next))
            throw DepthInsufficient("inscribed_radius: shape reaches the ball rim");
        ++k;
        if (next.empty())
            throw DepthInsufficient("inscribed_radius: ball exhausted");
        for (VertexId v : next)
            if (!shape.contains(v)) return k - 1;
        frontier.swap(next);
    }
}

} // namespace

std::optional<InscribedBall> max_inscribed_ball(const Shape& shape) {
    if (!shape.is_connected())
        throw NotConnectedError("max_inscribed_ball: shape is not connected");
    const LatticeBall& ball = shape.ball();
    // Candidate centres: faces with every vertex in the shape. Scanning faces
    // incident to members covers them all.
    std::vector<FaceId> candidates;
    std::unordered_set<FaceId> seen;
    for (VertexId v : shape.members()) {
        for (FaceId f : ball.faces_of(v)) {
            if (!seen.insert(f).second) continue;
            auto verts = ball.face(f);
            if (std::all_of(verts.begin(), verts.end(),
                            [&](VertexId w) { return shape.contains(w); }))
                candidates.push_back(f);
        }
    }
    if (candidates.empty()) return std::nullopt;
    std::sort(candidates.begin(), candidates.end());
    InscribedBall best{candidates[0], -1};
    for (FaceId f : candidates) {
        const int r = inscribed_radius(ball, f, shape);
        if (r > best.radius) best = {f, r};
    }
    return best;
}

namespace {

FaceLayers face_layers_covering(const LatticeBall& ball, FaceId center, const Shape& shape) {
    FaceLayers fl;
    fl.center = center;
    auto face = ball.face(center);
    fl.layers.emplace_back(face.begin(), face.end());
    for (VertexId v : face) fl.layer_of.emplace(v, 0);
    auto covered = [&]() {
        for (VertexId v : shape.members())
            if (!fl.layer_of.count(v)) return false;
        return true;
    };
    std::vector<VertexId> next;
    while (!covered()) {
        if (!expand_layer(ball, fl.layers.back(), fl.layer_of, fl.max_layer() + 1, next) ||
            next.empty())
            throw DepthInsufficient("min_circumscribing_ball: shape reaches the ball rim");
        fl.layers.push_back(next);
    }
    return fl;
}

} // namespace

int min_circumscribing_ball(const Shape& shape, FaceId center) {
    const FaceLayers fl = face_layers_covering(shape.ball(), center, shape);
    int m = 0;
    for (VertexId v : shape.members()) m = std::max(m, fl.layer(v));
    return m;
}

// ---------------------------------------------------------------------------
// o_max
// ---------------------------------------------------------------------------

namespace {

bool is_marked_class(LatticeParams params, VertexClass c) {
    return params.p >= 4 ? c == VertexClass::I : c == VertexClass::I2;
}

int max_window_count(const std::vector<std::uint8_t>& marks, int window) {
    const int n = static_cast<int>(marks.size());
    int count = 0;
    for (int i = 0; i < window; ++i) count += marks[i];
    int best = count;
    for (int start = 1; start < n; ++start) {
        count -= marks[start - 1];
        count += marks[(start + window - 1) % n];
        best = std::max(best, count);
    }
    return best;
}

} // namespace

int o_max_in_layer(const LatticeBall& ball, int layer, int strip_length) {
    if (strip_length < 1) throw NonsenseParams("o_max: strip length must be >= 1");
    const auto [first, count] = ball.layer_ranges().at(layer);
    if (static_cast<std::uint64_t>(strip_length) > count)
        throw NonsenseParams("o_max: strip longer than the layer");
    std::vector<std::uint8_t> marks(count);
    for (std::uint32_t i = 0; i < count; ++i)
        marks[i] = is_marked_class(ball.params(), ball.class_of(first + i)) ? 1 : 0;
    return max_window_count(marks, strip_length);
}

int o_max(LatticeParams params, int strip_length) {
    if (strip_length < 1) throw NonsenseParams("o_max: strip length must be >= 1");
    // "K large enough": shallow layers are missing the densest local
    // configurations (their window maxima only grow with K until the layer
    // dwarfs the window). Demand |L_K| >= max(len + 2, 12 len), K >= 2, and
    // cross-check against layer K+1.
    const std::int64_t need = std::max<std::int64_t>(strip_length + 2, 12LL * strip_length);
    int k = 2;
    while (LayerCounts(params, k).layer_size(k) < need) ++k;
    const LayerCounts counts(params, k + 1);
    if (counts.ball_size(k + 1) > BigInt(4'000'000))
        throw ResourceLimit("o_max: stabilising layer too large to materialise");
    const auto ball = build_ball(params, k + 1);
    const int value = o_max_in_layer(ball, k, strip_length);
    if (o_max_in_layer(ball, k + 1, strip_length) != value)
        throw InvariantViolation("o_max: window maximum not stable between layers " +
                                 std::to_string(k) + " and " + std::to_string(k + 1));
    return value;
}

int o_max_for_annulus(LatticeParams params, int strip_length, int annulus_layer) {
    if (annulus_layer < 1) throw NonsenseParams("o_max_for_annulus: layer must be >= 1");
    if (strip_length < 1) throw NonsenseParams("o_max_for_annulus: strip length must be >= 1");
    // The optimum available to a shape is the window maximum of its actual
    // annulus layer; materialise it when that is affordable, otherwise fall
    // back to the stable deep-layer value (huge balls, short strips).
    const LayerCounts counts(params, annulus_layer);
    if (counts.ball_size(annulus_layer) <= BigInt(2'000'000) &&
        counts.layer_size(annulus_layer) > strip_length) {
        const auto ball = build_ball(params, annulus_layer);
        return o_max_in_layer(ball, annulus_layer, strip_length);
    }
    return o_max(params, strip_length);
}

// ---------------------------------------------------------------------------
// Closed-form minimal perimeter
// ---------------------------------------------------------------------------

namespace {

// Largest n with |B_n| <= N, together with the counts through n+1.
std::pair<int, LayerCounts> enclosing_ball(LatticeParams params, const BigInt& n_vertices) {
    int n = 0;
    while (true) {
        const LayerCounts counts(params, n + 2);
        if (counts.ball_size(n + 1) > n_vertices) return {n, counts};
        ++n;
    }
}

} // namespace

BigInt minimal_perimeter_closed_form(LatticeParams params, const BigInt& n_vertices) {
    if (n_vertices < params.p)
        throw TooSmall("minimal_perimeter_closed_form: N < p has no inscribed face");
    const auto [n, counts] = enclosing_ball(params, n_vertices);
    const BigInt occupied = n_vertices - counts.ball_size(n);
    if (occupied == 0) return counts.boundary_size(n);
    if (occupied > BigInt(1'000'000))
        throw ResourceLimit("minimal_perimeter_closed_form: strip too long for the "
                            "explicit o_max pattern scan");
    const int len = occupied.convert_to<int>();
    const BigInt o = o_max_for_annulus(params, len, n + 1);
    if (params.p >= 4) {
        return counts.i_count(n + 1) + (params.q - 4) * (o - 1) +
               (params.q - 2) * (BigInt(len) - o + 1);
    }
    return 2 * counts.i2_count(n + 1) + counts.i1_count(n + 1) +
           (params.q - 6) * (o - 1) + (params.q - 4) * (BigInt(len) - o + 1);
}

// ---------------------------------------------------------------------------
// Canonical minimal shapes
// ---------------------------------------------------------------------------

int minimal_shape_required_depth(LatticeParams params, std::uint64_t n_vertices) {
    return enclosing_ball(params, BigInt(n_vertices)).first + 2;
}

namespace {

struct StripFrame {
    int n;                 // |B_n| <= N < |B_{n+1}|
    std::uint64_t ball_n;  // |B_n|
    int len;               // |N_o| = N - |B_n|, 0 in the ball case
    int target;            // o_max for this length
    std::vector<std::uint8_t> marks; // I/I2 pattern of layer n+1, cyclic order
};

StripFrame strip_frame(const LatticeBall& ball, std::uint64_t n_vertices) {
    const LatticeParams params = ball.params();
    if (n_vertices < std::uint64_t(params.p))
        throw TooSmall("build_minimal_shape: N < p has no inscribed face");
    const auto [n, counts] = enclosing_ball(params, BigInt(n_vertices));
    StripFrame fr;
    fr.n = n;
    fr.ball_n = counts.ball_size(n).convert_to<std::uint64_t>();
    fr.len = static_cast<int>(n_vertices - fr.ball_n);
    fr.target = 0;
    if (ball.depth() < n + (fr.len > 0 ? 2 : 1))
        throw DepthInsufficient("build_minimal_shape: ball depth " +
                                std::to_string(ball.depth()) + " < required " +
                                std::to_string(n + 2));
    if (fr.len > 0) {
        const auto [first, count] = ball.layer_ranges().at(n + 1);
        fr.marks.resize(count);
        for (std::uint32_t i = 0; i < count; ++i)
            fr.marks[i] = is_marked_class(params, ball.class_of(first + i)) ? 1 : 0;
        // The optimum available in this annulus is by definition the window
        // maximum of its own layer pattern.
        fr.target = max_window_count(fr.marks, fr.len);
    }
    return fr;
}

int window_count(const std::vector<std::uint8_t>& marks, int start, int len) {
    const int n = static_cast<int>(marks.size());
    int c = 0;
    for (int i = 0; i < len; ++i) c += marks[(start + i) % n];
    return c;
}

bool arc_has_mark(const std::vector<std::uint8_t>& marks, int start, int len) {
    return window_count(marks, start, len) > 0;
}

// Positions of single strips achieving the o_max count.
std::vector<int> single_strip_starts(const StripFrame& fr) {
    std::vector<int> starts;
    const int n = static_cast<int>(fr.marks.size());
    for (int s = 0; s < n; ++s)
        if (window_count(fr.marks, s, fr.len) == fr.target) starts.push_back(s);
    return starts;
}

struct SplitConfig {
    int start1, len1, start2, len2;
};

// Two-strip splittings jointly holding o_max + 1 marked vertices, each arc
// non-empty, arcs separated by at least one empty position on both sides (so
// s_e = 2), and each arc attached to the ball (contains a marked vertex) when
// p >= 4.
std::vector<SplitConfig> split_configs(const StripFrame& fr, bool need_mark_per_arc) {
    std::vector<SplitConfig> out;
    const int n = static_cast<int>(fr.marks.size());
    if (fr.len < 2) return out;
    for (int len1 = 1; len1 < fr.len; ++len1) {
        const int len2 = fr.len - len1;
        for (int s1 = 0; s1 < n; ++s1) {
            for (int s2 = 0; s2 < n; ++s2) {
                if (s1 >= s2) continue; // unordered pair once
                // Gap between arc1 end and arc2 start, and arc2 end and arc1
                // start, both >= 1 (cyclically).
                const int end1 = s1 + len1; // exclusive, not wrapped
                const int gap12 = s2 - end1;
                const int gap21 = (s1 + n) - (s2 + len2);
                if (gap12 < 1 || gap21 < 1) continue;
                if (window_count(fr.marks, s1, len1) + window_count(fr.marks, s2, len2) !=
                    fr.target + 1)
                    continue;
                if (need_mark_per_arc &&
                    (!arc_has_mark(fr.marks, s1, len1) || !arc_has_mark(fr.marks, s2, len2)))
                    continue;
                out.push_back({s1, len1, s2, len2});
            }
        }
    }
    return out;
}

} // namespace

Shape build_minimal_shape(const LatticeBall& ball, std::uint64_t n_vertices,
                          std::uint64_t variant_seed) {
    const StripFrame fr = strip_frame(ball, n_vertices);
    std::vector<VertexId> members(fr.ball_n);
    for (std::uint64_t v = 0; v < fr.ball_n; ++v) members[v] = static_cast<VertexId>(v);
    if (fr.len == 0) {
        if (variant_seed != 0)
            throw NonsenseParams("build_minimal_shape: the ball case has a single variant");
        return Shape(ball, std::move(members));
    }

    const auto [first, count] = ball.layer_ranges().at(fr.n + 1);
    auto add_arc = [&](int start, int len) {
        for (int i = 0; i < len; ++i)
            members.push_back(first + static_cast<VertexId>((start + i) % count));
    };

    const std::vector<int> singles = single_strip_starts(fr);
    if (singles.empty())
        throw InvariantViolation("build_minimal_shape: no strip achieves o_max");
    const bool need_mark = ball.params().p >= 4;
    std::vector<SplitConfig> splits;
    if (variant_seed >= singles.size() && count <= 4000)
        splits = split_configs(fr, need_mark);

    const std::uint64_t total = singles.size() + splits.size();
    const std::uint64_t idx = variant_seed % total;
    if (idx < singles.size()) {
        add_arc(singles[idx], fr.len);
    } else {
        const SplitConfig& sc = splits[idx - singles.size()];
        add_arc(sc.start1, sc.len1);
        add_arc(sc.start2, sc.len2);
    }
    Shape shape(ball, std::move(members));
    if (!shape.is_connected())
        throw InvariantViolation("build_minimal_shape: produced a disconnected shape");
    return shape;
}

// ---------------------------------------------------------------------------
// Classifier
// ---------------------------------------------------------------------------

Classification classify(const Shape& shape) {
    Classification c;
    if (!shape.is_connected()) {
        c.status = MembershipStatus::NotConnected;
        c.reason = "shape is not connected";
        return c;
    }
    const auto inscribed = max_inscribed_ball(shape);
    if (!inscribed) {
        c.status = MembershipStatus::NotInM;
        c.reason = "no complete face inside the shape";
        return c;
    }
    const LatticeBall& ball = shape.ball();
    const LatticeParams params = ball.params();
    c.center = inscribed->center;
    c.inner_radius = inscribed->radius;

    const FaceLayers fl = face_layers_covering(ball, c.center, shape);
    int outer = 0;
    for (VertexId v : shape.members()) outer = std::max(outer, fl.layer(v));
    c.outer_radius = outer;

    if (c.outer_radius == c.inner_radius) {
        c.status = MembershipStatus::InM;
        c.condition = "C1";
        c.s_e = 0;
        c.t = 0;
        c.occupied = 0;
        return c;
    }

    // Annulus analysis over layers inner+1 .. outer.
    long long s_e = 0, occupied_total = 0, t = 0;
    std::vector<std::uint8_t> first_layer_marks;
    for (int k = c.inner_radius + 1; k <= c.outer_radius; ++k) {
        const std::vector<VertexId> cycle = layer_cycle(ball, fl, k);
        const int n = static_cast<int>(cycle.size());
        std::vector<std::uint8_t> occ(n), marks(n);
        for (int i = 0; i < n; ++i) {
            occ[i] = shape.contains(cycle[i]) ? 1 : 0;
            int down = 0;
            for (VertexId w : ball.neighbors(cycle[i]))
                if (fl.layer(w) == k - 1) ++down;
            marks[i] = (params.p >= 4 ? down >= 1 : down == 2) ? 1 : 0;
        }
        if (k == c.inner_radius + 1) first_layer_marks = marks;
        // Count empty strips: transitions occupied -> empty, cyclically. A
        // fully empty layer is one strip; a fully occupied layer has none.
        bool all_same = true;
        for (int i = 1; i < n; ++i)
            if (occ[i] != occ[0]) all_same = false;
        if (all_same) {
            if (occ[0] == 0) s_e += 1;
        } else {
            for (int i = 0; i < n; ++i)
                if (occ[i] == 1 && occ[(i + 1) % n] == 0) s_e += 1;
        }
        for (int i = 0; i < n; ++i) {
            if (occ[i]) {
                occupied_total += 1;
                if (marks[i]) t += 1;
            }
        }
    }
    c.s_e = s_e;
    c.t = t;
    c.occupied = occupied_total;
    if (occupied_total == 0)
        throw InvariantViolation("classify: empty annulus with outer > inner radius");
    if (s_e == 0)
        throw InvariantViolation("classify: annulus without empty strips contradicts "
                                 "the maximality of the inscribed ball");

    // The strip optimum for this shape's arena: the window maximum of its own
    // first annulus layer when the strip fits there, the stable deep value
    // otherwise.
    if (occupied_total < static_cast<long long>(first_layer_marks.size()))
        c.o_max = max_window_count(first_layer_marks, static_cast<int>(occupied_total));
    else
        c.o_max = o_max_for_annulus(params, static_cast<int>(occupied_total),
                                    c.inner_radius + 1);
    if (t == c.o_max + (s_e - 1)) {
        c.status = MembershipStatus::InM;
        c.condition = "C2";
    } else {
        c.status = MembershipStatus::NotInM;
        c.reason = "annulus holds " + std::to_string(t) + " I-class occupied vertices, C2 "
                   "requires o_max + (s_e - 1) = " + std::to_string(c.o_max) + " + " +
                   std::to_string(s_e - 1);
    }
    return c;
}

} // namespace hyperlat

#include "hyperlat/verify.hpp"

#include "hyperlat/asymptotics.hpp"
#include "hyperlat/embedding.hpp"
#include "hyperlat/enumeration.hpp"
#include "hyperlat/shapes.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace hyperlat {

namespace {

std::string pq(LatticeParams params) {
    return "{" + std::to_string(params.p) + "," + std::to_string(params.q) + "}";
}

struct Battery {
    std::vector<CheckResult> results;

    void run(const std::string& name, const std::string& subject,
             const std::function<std::string()>& body) {
        CheckResult r{name, subject, false, ""};
        try {
            r.detail = body();
            r.pass = true;
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        results.push_back(r);
    }
};

void expect(bool cond, const std::string& message) {
    if (!cond) throw InvariantViolation(message);
}

int verify_depth(LatticeParams params) {
    const LayerCounts counts(params, 5);
    return counts.ball_size(5) <= 60000 ? 5 : 4;
}

std::string check_recursion_graph(LatticeParams params) {
    const int depth = verify_depth(params);
    const LayerCounts counts(params, depth);
    const LatticeBall ball = build_ball(params, depth);
    // build_ball already cross-checks per-layer class counts against the
    // recursion; re-verify layer sizes and saturation here.
    for (int n = 0; n <= depth; ++n)
        expect(BigInt(ball.layer_size(n)) == counts.layer_size(n), "layer size mismatch");
    for (VertexId v = 0; v < ball.vertex_count(); ++v) {
        if (ball.is_interior(v)) {
            expect(ball.degree(v) == params.q, "interior vertex not q-regular");
            expect(ball.faces_of(v).size() == std::size_t(params.q),
                   "interior vertex without q faces");
        }
        for (VertexId w : ball.neighbors(v))
            expect(std::abs(ball.layer_of(v) - ball.layer_of(w)) <= 1,
                   "edge skips a layer");
    }
    for (int n = 0; n + 1 <= depth; ++n) {
        std::vector<VertexId> members;
        for (VertexId v = 0; v < ball.vertex_count(); ++v)
            if (ball.layer_of(v) <= n) members.push_back(v);
        expect(BigInt(perimeter(ball, members)) == counts.boundary_size(n),
               "ball-perimeter identity failed at n=" + std::to_string(n));
    }
    return "depth " + std::to_string(depth) + ", |B| = " +
           std::to_string(ball.vertex_count());
}

std::string check_spectral(LatticeParams params) {
    const SpectralData s = spectral(params);
    expect(s.lambda_plus > 1.0, "lambda+ <= 1");
    expect(s.lambda_minus > 0.0 && s.lambda_minus < 1.0, "lambda- outside (0,1)");
    const double ie = cheeger_constant(params); // asserts the limit expressions
    const double ie2 = to_double(cheeger_constant_squared(params));
    expect(std::fabs(ie * ie - ie2) <= 1e-12 * ie2, "i_e^2 mismatch");
    std::ostringstream os;
    os << "lambda+ = " << s.lambda_plus << ", i_e = " << ie;
    return os.str();
}

std::string check_ratio_convergence(LatticeParams params) {
    const int n_max = 40;
    const auto ratios = ball_ratio_sequence(params, n_max);
    const BigRational ie2 = cheeger_constant_squared(params);
    for (const auto& r : ratios)
        expect(r * r > ie2, "ball ratio not strictly above i_e");
    const double ie = cheeger_constant(params);
    const double final_ratio = to_double(ratios[n_max]);
    expect(std::fabs(final_ratio - ie) <= 1e-6 * ie,
           "ball ratio at n=40 not within 1e-6 of i_e");
    // Minimal-shape ratios converge from above as well.
    std::vector<BigInt> sizes;
    const LayerCounts counts(params, 22);
    for (int n = 2; n <= 20; n += 6) sizes.push_back(counts.ball_size(n));
    sizes.push_back(counts.ball_size(12) + 5);
    const auto mins = minimal_shape_ratio_sequence(params, sizes);
    for (const auto& r : mins)
        expect(r * r > ie2, "minimal-shape ratio not strictly above i_e");
    expect(std::fabs(to_double(mins[mins.size() - 2]) - ie) <= 1e-4 * ie,
           "minimal-shape ratio at |B_20| not within 1e-4 of i_e");
    std::ostringstream os;
    os << "|dB_40|/|B_40| = " << final_ratio << " vs i_e = " << ie;
    return os.str();
}

std::string check_growth_series(LatticeParams params) {
    const RationalFunction f = growth_function(params); // asserts construction
    const auto coeffs = series_coefficients(f, 60);
    const LayerCounts counts(params, 61);
    if (params.p >= 4) {
        for (int n = 0; n <= 60; ++n)
            expect(coeffs[n] == counts.layer_size(n), "f1 coefficient != |L_n|");
    } else {
        expect(coeffs[0] == 3 * (params.q - 2), "f2 constant term");
        for (int n = 1; n <= 60; ++n)
            expect(coeffs[n] == counts.layer_size(n + 1),
                   "f2 coefficient != |L_{n+1}|");
    }
    for (int n = (params.p >= 4 ? 0 : 1); n <= 30; ++n) {
        const BigInt exact = animal_count_exact(params, n);
        const double closed = animal_count_closed_form(params, n);
        const double ex = to_double(exact);
        expect(std::fabs(closed - ex) <= 1e-9 * std::max(1.0, std::fabs(ex)),
               "closed-form animal count off at n=" + std::to_string(n));
    }
    const BigRational chi = euler_characteristic(params); // asserts both forms
    return "chi = " + to_string(chi);
}

std::string check_remark_bounds(LatticeParams params) {
    // "> 1" holds for q >= 4 and for the p = 3 form; at q = 3 the sequence
    // starts at 1/2. In every case it decreases in n towards i_e, staying
    // strictly above it.
    const auto bounds = remark_bound_sequence(params, 40);
    const BigRational ie2 = cheeger_constant_squared(params);
    for (const auto& b : bounds) {
        expect(b > 0, "remark bound not positive");
        expect(b * b > ie2, "remark bound not above i_e");
        if (params.q >= 4) expect(b > 1, "remark bound <= 1");
    }
    for (std::size_t n = 1; n < bounds.size(); ++n)
        expect(bounds[n] <= bounds[n - 1], "bound not decreasing in n");
    return "bound(40) = " + std::to_string(to_double(bounds.back()));
}

std::string check_o_max_stability(LatticeParams params) {
    // Stability across deep layers (K >= 2); layer 1 is allowed to be sparser.
    for (int len = 1; len <= 12; ++len) {
        const int canonical = o_max(params, len);
        int k = 2;
        while (LayerCounts(params, k).layer_size(k) < len + 2) ++k;
        const auto ball = build_ball(params, k + 1);
        expect(o_max_in_layer(ball, k + 1, len) == canonical,
               "o_max differs between layers K and K+1 at length " + std::to_string(len));
        expect(o_max_for_annulus(params, len, 1) <= canonical,
               "layer-1 window max exceeds the deep-layer value");
        if (len == 1) expect(canonical == 1, "o_max(1) != 1");
    }
    return "lengths 1..12 stable across layers >= 2";
}

std::string check_minimal_shapes(LatticeParams params, std::uint64_t seed) {
    const LayerCounts counts(params, 4);
    const std::uint64_t b2 = counts.ball_size(2).convert_to<std::uint64_t>();
    const int depth = minimal_shape_required_depth(params, b2);
    const LatticeBall ball = build_ball(params, depth);

    std::mt19937_64 rng(seed);
    std::uint64_t checked = 0, classified = 0, mutated = 0;
    for (std::uint64_t n = params.p; n <= b2; ++n) {
        const Shape shape = build_minimal_shape(ball, n);
        const BigInt closed = minimal_perimeter_closed_form(params, BigInt(n));
        expect(BigInt(shape.perimeter()) == closed,
               "closed-form perimeter != graph perimeter at N=" + std::to_string(n));
        ++checked;
        const bool small = n <= counts.ball_size(1).convert_to<std::uint64_t>() + 6;
        if (small || rng() % 7 == 0) {
            const Classification cls = classify(shape);
            expect(cls.status == MembershipStatus::InM,
                   "canonical shape not accepted at N=" + std::to_string(n));
            ++classified;
            // Variants exist only in the strip case; they must agree in
            // perimeter and verdict.
            const bool is_ball = cls.condition == "C1";
            for (std::uint64_t variant : {1ull, 2ull}) {
                if (is_ball) break;
                const Shape alt = build_minimal_shape(ball, n, variant);
                expect(alt.perimeter() == shape.perimeter(),
                       "variant perimeter differs at N=" + std::to_string(n));
                expect(classify(alt).status == MembershipStatus::InM,
                       "variant rejected at N=" + std::to_string(n));
            }
        }
    }

    // Mutation rejection: shift the strip to a window with fewer marked
    // vertices; the perimeter must strictly grow and the classifier reject.
    for (std::uint64_t n = params.p + 1; n <= b2 && mutated < 6; ++n) {
        const auto frame_n = [&]() {
            int k = 0;
            while (counts.ball_size(k + 1) <= n) ++k;
            return k;
        }();
        const std::uint64_t ball_n = counts.ball_size(frame_n).convert_to<std::uint64_t>();
        if (ball_n == n) continue;
        const int len = static_cast<int>(n - ball_n);
        const auto [first, count] = ball.layer_ranges()[frame_n + 1];
        const int target = o_max_for_annulus(params, len, frame_n + 1);
        auto window_count = [&](int start) {
            int c = 0;
            for (int i = 0; i < len; ++i) {
                const VertexId v = first + (start + i) % count;
                const VertexClass cl = ball.class_of(v);
                if (cl == VertexClass::I || cl == VertexClass::I2) ++c;
            }
            return c;
        };
        int shifted = -1;
        for (std::uint32_t s = 0; s < count; ++s) {
            const int c = window_count(int(s));
            if (c < target && (params.p == 3 || c >= 1)) {
                shifted = int(s);
                break;
            }
        }
        if (shifted < 0) continue;
        std::vector<VertexId> members(ball_n);
        for (std::uint64_t v = 0; v < ball_n; ++v) members[v] = VertexId(v);
        for (int i = 0; i < len; ++i) members.push_back(first + (shifted + i) % count);
        const Shape bad(ball, members);
        const Shape good = build_minimal_shape(ball, n);
        expect(bad.perimeter() > good.perimeter(),
               "suboptimal strip does not increase the perimeter at N=" + std::to_string(n));
        expect(classify(bad).status == MembershipStatus::NotInM,
               "suboptimal strip accepted at N=" + std::to_string(n));
        ++mutated;
    }
    std::ostringstream os;
    os << checked << " sizes, " << classified << " classified, " << mutated << " mutations";
    return os.str();
}

std::string check_small_oracle(LatticeParams params, int threads) {
    const int n_hi = params.p + 2;
    const LatticeBall ball = build_ball_for_enumeration(params, n_hi);
    std::ostringstream os;
    for (int n : {params.p, n_hi}) {
        EnumerationTask task;
        task.ball = &ball;
        task.root = 0;
        task.size = n;
        task.threads = threads;
        const BigInt closed = minimal_perimeter_closed_form(params, BigInt(n));
        task.perimeter_cap = closed.convert_to<std::uint64_t>();
        const OracleResult r = brute_force_min_perimeter(task);
        expect(BigInt(r.min_perimeter) == closed,
               "oracle minimum != closed form at N=" + std::to_string(n));
        expect(r.all_minimizers_classified_in_m,
               "a minimizer failed classification at N=" + std::to_string(n));
        os << "N=" << n << ": min=" << r.min_perimeter << " x" << r.minimizer_count << "  ";
    }
    return os.str();
}

std::string check_embedding(LatticeParams params) {
    const LatticeBall ball = build_ball(params, 2);
    const EmbeddingConfig cfg = EmbeddingConfig::for_params(params);
    expect(cfg.r > 0 && cfg.r < 1, "r outside (0,1)");
    const auto coords = embed_ball(ball, cfg);

    double min_len = 1e300, max_len = 0;
    for (VertexId v = 0; v < ball.vertex_count(); ++v) {
        expect(std::abs(coords[v]) < 1.0, "vertex outside the unit disc");
        for (VertexId w : ball.neighbors(v)) {
            if (w < v) continue;
            const double d = hyperbolic_distance(coords[v], coords[w]);
            min_len = std::min(min_len, d);
            max_len = std::max(max_len, d);
        }
    }
    expect(max_len - min_len <= 1e-9, "edges are not isometric");

    // Rotation periodicity of the printed generators.
    const MobiusTransform a = rho_a(cfg), b = rho_b(cfg);
    MobiusTransform ap = MobiusTransform::identity(), bq = MobiusTransform::identity();
    for (int i = 0; i < params.p; ++i) ap = ap.then(a);
    for (int i = 0; i < params.q; ++i) bq = bq.then(b);
    for (VertexId v = 0; v < ball.layer_size(0); ++v) {
        expect(std::abs(ap.apply(coords[v]) - coords[v]) <= 1e-9, "rho(a)^p not identity");
        expect(std::abs(bq.apply(coords[v]) - coords[v]) <= 1e-9, "rho(b)^q not identity");
    }
    expect(std::fabs(a.det() - 1.0) <= 1e-12 && std::fabs(b.det() - 1.0) <= 1e-12,
           "generator determinant != 1");

    // Adjacency recovered from coordinates at the common edge length matches
    // the combinatorial edge set.
    std::uint64_t geometric_edges = 0;
    for (VertexId v = 0; v < ball.vertex_count(); ++v) {
        for (VertexId w = v + 1; w < ball.vertex_count(); ++w) {
            const bool close =
                std::fabs(hyperbolic_distance(coords[v], coords[w]) - min_len) <= 1e-6;
            if (close) ++geometric_edges;
            expect(close == ball.adjacent(v, w), "geometric/combinatorial edge mismatch");
        }
    }
    std::ostringstream os;
    os << ball.vertex_count() << " vertices, edge length " << min_len << ", "
       << geometric_edges << " edges recovered";
    return os.str();
}

std::string check_global_identities(const std::vector<LatticeParams>&) {
    int pairs = 0;
    for (int p = 3; p <= 12; ++p) {
        for (int q = 3; q <= 12; ++q) {
            if (2 * (p + q) >= p * q) continue;
            const LatticeParams params = validate_params(p, q);
            // det T = 1 is checked symbolically inside spectral(); the Euler
            // characteristic asserts 1/f(1) = (2q+2p-pq)/(2p) exactly.
            spectral(params);
            euler_characteristic(params);
            const auto coeffs = series_coefficients(growth_function(params), 25);
            const LayerCounts counts(params, 26);
            for (int n = 0; n <= 25; ++n) {
                const BigInt want =
                    params.p >= 4 ? counts.layer_size(n)
                                  : (n == 0 ? BigInt(3 * (q - 2)) : counts.layer_size(n + 1));
                expect(coeffs[n] == want, "series coefficient mismatch on the big grid");
            }
            ++pairs;
        }
    }
    expect(pairs > 40, "unexpectedly few hyperbolic pairs");
    return std::to_string(pairs) + " hyperbolic pairs up to {12,12}";
}

} // namespace

std::vector<CheckResult> verify_all(const VerifyOptions& options) {
    Battery battery;
    for (const LatticeParams& params : options.grid) {
        const std::string subject = pq(params);
        battery.run("recursion-graph-agreement", subject,
                    [&] { return check_recursion_graph(params); });
        battery.run("spectral-and-cheeger", subject, [&] { return check_spectral(params); });
        battery.run("ratio-convergence", subject,
                    [&] { return check_ratio_convergence(params); });
        battery.run("growth-series-euler", subject,
                    [&] { return check_growth_series(params); });
        battery.run("remark-bounds", subject, [&] { return check_remark_bounds(params); });
        battery.run("o-max-stability", subject,
                    [&] { return check_o_max_stability(params); });
        battery.run("minimal-shapes", subject,
                    [&] { return check_minimal_shapes(params, options.seed); });
        battery.run("small-oracle", subject,
                    [&] { return check_small_oracle(params, options.threads); });
        battery.run("embedding", subject, [&] { return check_embedding(params); });
    }
    battery.run("global-identities", "grid",
                [&] { return check_global_identities(options.grid); });
    return battery.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

nlohmann::ordered_json verify_report(const std::vector<CheckResult>& results) {
    nlohmann::ordered_json doc;
    doc["pass"] = all_passed(results);
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json c;
        c["name"] = r.name;
        c["subject"] = r.subject;
        c["pass"] = r.pass;
        c["detail"] = r.detail;
        checks.push_back(c);
    }
    doc["checks"] = checks;
    return doc;
}

std::vector<LatticeParams> parse_grid(const std::string& spec) {
    std::vector<LatticeParams> grid;
    std::stringstream ss(spec);
    std::string entry;
    while (std::getline(ss, entry, ';')) {
        if (entry.empty()) continue;
        const auto comma = entry.find(',');
        if (comma == std::string::npos)
            throw NonsenseParams("grid entry '" + entry + "' is not p,q");
        grid.push_back(validate_params(std::stoi(entry.substr(0, comma)),
                                       std::stoi(entry.substr(comma + 1))));
    }
    if (grid.empty()) throw NonsenseParams("empty grid");
    return grid;
}

} // namespace hyperlat

// Command-line surface over the lattice library: exact layer counts, explicit
// ball construction, minimal shapes, the brute-force oracle, closed-form
// invariants, SVG rendering, and the headless verification battery.

#include "hyperlat/asymptotics.hpp"
#include "hyperlat/embedding.hpp"
#include "hyperlat/enumeration.hpp"
#include "hyperlat/json_io.hpp"
#include "hyperlat/lattice.hpp"
#include "hyperlat/render.hpp"
#include "hyperlat/shapes.hpp"
#include "hyperlat/verify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <thread>

namespace {

using namespace hyperlat;

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::BadParams: return 4;
        case ErrorKind::ResourceCap: return 3;
        case ErrorKind::InvariantViolation: return 2;
        case ErrorKind::Io: return 1;
    }
    return 1;
}

void run_counts(LatticeParams params, int n_max) {
    const LayerCounts counts(params, n_max);
    const double ie = cheeger_constant(params);
    std::printf("n,%s,%s,L_n,B_n,dB_n,ratio,i_e,error\n",
                params.p >= 4 ? "I_n" : "I1_n", params.p >= 4 ? "E_n" : "I2_n");
    for (int n = 0; n <= n_max; ++n) {
        const BigInt a = params.p >= 4 ? counts.i_count(n)
                                       : (n == 0 ? BigInt(0) : counts.i1_count(n));
        const BigInt b = params.p >= 4 ? counts.e_count(n)
                                       : (n == 0 ? BigInt(0) : counts.i2_count(n));
        const BigRational ratio(counts.boundary_size(n), counts.ball_size(n));
        const double rd = to_double(ratio);
        std::printf("%d,%s,%s,%s,%s,%s,%.12g,%.12g,%.3e\n", n, a.str().c_str(),
                    b.str().c_str(), counts.layer_size(n).str().c_str(),
                    counts.ball_size(n).str().c_str(),
                    counts.boundary_size(n).str().c_str(), rd, ie, rd - ie);
    }
}

void run_cheeger(LatticeParams params, int n_max) {
    const double ie = cheeger_constant(params);
    std::printf("i_e(L_{%d,%d}) = %.12f\n", params.p, params.q, ie);
    const auto ratios = ball_ratio_sequence(params, n_max);
    for (int n = 0; n <= n_max; ++n) {
        const double r = to_double(ratios[n]);
        std::printf("n=%-3d |dB_n|/|B_n| = %-22s = %.12f  (excess %.3e)\n", n,
                    to_string(ratios[n]).c_str(), r, r - ie);
    }
}

void run_growth(LatticeParams params, int n_max) {
    const RationalFunction f = growth_function(params);
    auto poly_str = [](const Poly& poly) {
        std::string s;
        for (int k = 0; k <= poly.degree(); ++k) {
            if (k) s += " + ";
            s += poly.at(k).str() + (k ? "*z^" + std::to_string(k) : "");
        }
        return s;
    };
    std::printf("f(z) = (%s) / (%s)\n", poly_str(f.numerator).c_str(),
                poly_str(f.denominator).c_str());
    const auto coeffs = series_coefficients(f, n_max);
    for (int n = 0; n <= n_max; ++n)
        std::printf("a_%d = %s\n", n, coeffs[n].str().c_str());
    if (params.p == 3)
        std::printf("# Corollary animal counts (p=3): a_n = 3 + |L_n|, n >= 1\n");
    const int start = params.p >= 4 ? 0 : 1;
    for (int n = start; n <= std::min(n_max, 10); ++n)
        std::printf("animals(size %d) = %s  (closed form %.6f)\n", n,
                    animal_count_exact(params, n).str().c_str(),
                    animal_count_closed_form(params, n));
}

void run_oracle(LatticeParams params, int n, std::uint64_t visit_cap, int threads,
                const std::string& report_path) {
    const auto t0 = std::chrono::steady_clock::now();
    const LatticeBall ball = build_ball_for_enumeration(params, n);
    EnumerationTask task;
    task.ball = &ball;
    task.root = 0;
    task.size = n;
    task.threads = threads;
    task.visit_cap = visit_cap;
    BigInt closed(-1);
    if (n >= params.p) {
        closed = minimal_perimeter_closed_form(params, BigInt(n));
        task.perimeter_cap = closed.convert_to<std::uint64_t>();
    }
    const OracleResult r = brute_force_min_perimeter(task);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    const bool match = closed >= 0 && BigInt(r.min_perimeter) == closed;

    Json doc;
    doc["p"] = params.p;
    doc["q"] = params.q;
    doc["N"] = n;
    doc["min_perimeter"] = r.min_perimeter;
    doc["closed_form"] = closed.str();
    doc["match"] = match;
    doc["minimizer_count"] = r.minimizer_count;
    doc["all_minimizers_in_M"] = r.all_minimizers_classified_in_m;
    doc["animals_visited"] = r.animals_visited;
    doc["animals_of_size_N"] = r.animals_of_size_n;
    doc["wall_time_ms"] = ms;
    if (!report_path.empty()) save_json(doc, report_path);
    std::printf("%s\n", doc.dump(2).c_str());
    if (n >= params.p && !match)
        throw InvariantViolation("oracle minimum does not match the closed form");
    if (n >= params.p && !r.all_minimizers_classified_in_m)
        throw InvariantViolation("a minimizer failed classification");
}

void run_render(LatticeParams params, int depth, const std::string& highlight_path,
                const std::string& out_path) {
    const LatticeBall ball = build_ball(params, depth);
    const EmbeddingConfig cfg = EmbeddingConfig::for_params(params);
    const auto coords = embed_ball(ball, cfg);
    std::vector<Highlight> highlights;
    if (!highlight_path.empty()) {
        const Json doc = load_json(highlight_path);
        Highlight h;
        h.vertices = shape_members_from_json(doc);
        highlights.push_back(std::move(h));
    }
    render_svg(ball, coords, highlights, cfg, out_path);
    std::printf("wrote %s (%u vertices)\n", out_path.c_str(), ball.vertex_count());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperbolic {p,q} lattice toolkit"};
    app.set_config("--config", "", "key=value config file; command-line flags win");
    app.require_subcommand(1);

    int threads = int(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    std::uint64_t seed = 0;
    app.add_option("--threads", threads, "worker threads for the oracle and verify-all");
    app.add_option("--seed", seed, "seed for variant sampling in verify-all");

    int p = 0, q = 0, n = 0, depth = 0;
    std::uint64_t big_n = 0, variant = 0, cap = 100'000'000;
    std::string out, report, highlight, grid_spec;

    auto* counts = app.add_subcommand("counts", "exact layer counts and ratios (CSV)");
    counts->add_option("--p", p)->required();
    counts->add_option("--q", q)->required();
    counts->add_option("--n", n, "max layer")->required();

    auto* ballcmd = app.add_subcommand("ball", "build a ball and write graph JSON");
    ballcmd->add_option("--p", p)->required();
    ballcmd->add_option("--q", q)->required();
    ballcmd->add_option("--depth", depth)->required();
    ballcmd->add_option("--out", out, "output graph.json")->required();

    auto* minimal = app.add_subcommand("minimal", "build a minimal shape and write JSON");
    minimal->add_option("--p", p)->required();
    minimal->add_option("--q", q)->required();
    minimal->add_option("--N", big_n)->required();
    minimal->add_option("--variant", variant, "variant seed");
    minimal->add_option("--out", out, "output shape.json")->required();

    auto* oracle = app.add_subcommand("oracle", "brute-force minimal perimeter");
    oracle->add_option("--p", p)->required();
    oracle->add_option("--q", q)->required();
    oracle->add_option("--N", n)->required();
    oracle->add_option("--cap", cap, "visited-node cap");
    oracle->add_option("--report", report, "output report.json");

    auto* cheeger = app.add_subcommand("cheeger", "Cheeger constant and ball ratios");
    cheeger->add_option("--p", p)->required();
    cheeger->add_option("--q", q)->required();
    int cheeger_n_max = 20;
    cheeger->add_option("--n-max", cheeger_n_max);

    auto* growth = app.add_subcommand("growth", "growth function and coefficients");
    growth->add_option("--p", p)->required();
    growth->add_option("--q", q)->required();
    growth->add_option("--n-max", n)->required();

    auto* euler = app.add_subcommand("euler", "Euler characteristic");
    euler->add_option("--p", p)->required();
    euler->add_option("--q", q)->required();

    auto* render = app.add_subcommand("render", "Poincare-disc SVG");
    render->add_option("--p", p)->required();
    render->add_option("--q", q)->required();
    render->add_option("--depth", depth)->required();
    render->add_option("--highlight", highlight, "shape.json with members to highlight");
    render->add_option("--out", out, "output SVG")->required();

    auto* verify = app.add_subcommand("verify-all", "run the property battery");
    verify->add_option("--grid", grid_spec, "p1,q1;p2,q2;...")->required();
    verify->add_option("--report", report, "output verify.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    try {
        if (*counts) {
            run_counts(validate_params(p, q), n);
        } else if (*ballcmd) {
            save_json(ball_to_json(build_ball(validate_params(p, q), depth)), out);
            std::printf("wrote %s\n", out.c_str());
        } else if (*minimal) {
            const LatticeParams params = validate_params(p, q);
            const int need = minimal_shape_required_depth(params, big_n);
            const LatticeBall ball = build_ball(params, need);
            const Shape shape = build_minimal_shape(ball, big_n, variant);
            const Classification cls = classify(shape);
            if (cls.status != MembershipStatus::InM)
                throw InvariantViolation("built shape failed classification: " + cls.reason);
            save_json(shape_to_json(shape, cls), out);
            std::printf("wrote %s (N=%llu, perimeter %llu, %s)\n", out.c_str(),
                        static_cast<unsigned long long>(big_n),
                        static_cast<unsigned long long>(shape.perimeter()),
                        cls.condition.c_str());
        } else if (*oracle) {
            run_oracle(validate_params(p, q), n, cap, threads, report);
        } else if (*cheeger) {
            run_cheeger(validate_params(p, q), cheeger_n_max);
        } else if (*growth) {
            run_growth(validate_params(p, q), n);
        } else if (*euler) {
            const LatticeParams params = validate_params(p, q);
            std::printf("chi(G_{%d,%d}) = %s\n", p, q,
                        to_string(euler_characteristic(params)).c_str());
        } else if (*render) {
            run_render(validate_params(p, q), depth, highlight, out);
        } else if (*verify) {
            VerifyOptions options;
            options.grid = parse_grid(grid_spec);
            options.threads = threads;
            options.seed = seed;
            const auto results = verify_all(options);
            for (const auto& r : results)
                std::printf("[%s] %-26s %-8s %s\n", r.pass ? "PASS" : "FAIL",
                            r.name.c_str(), r.subject.c_str(), r.detail.c_str());
            if (!report.empty()) save_json(verify_report(results), report);
            if (!all_passed(results)) return 2;
            std::printf("all %zu checks passed\n", results.size());
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

// Command-line front end: sample unions, compute model moments, run and
// sweep experiments, and drive the verification suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <gul/gul.hpp>

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw gul::config_error(path, "cannot open file");
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw gul::config_error(path, std::string("JSON parse error: ") + e.what());
    }
}

int cmd_sample(const std::string& spec_path, std::uint64_t seed, bool dot) {
    gul::ModelSpec spec = gul::model_spec_from_json(load_json(spec_path));
    gul::UnionGraph g = gul::sample_union(spec, seed);
    if (dot) {
        std::cout << "graph union {\n";
        for (gul::VertexId v = 1; static_cast<long long>(v) <= g.n; ++v)
            std::cout << "  v" << v << ";\n";
        for (gul::VertexId v = 1; static_cast<long long>(v) <= g.n; ++v)
            for (gul::VertexId u : g.adj[v])
                if (u > v) std::cout << "  v" << v << " -- v" << u << ";\n";
        std::cout << "}\n";
    } else {
        std::cout << "# union graph n=" << g.n << " m=" << spec.m
                  << " edges=" << g.edge_count << " seed=" << seed << "\n";
        for (gul::VertexId v = 1; static_cast<long long>(v) <= g.n; ++v)
            for (gul::VertexId u : g.adj[v])
                if (u > v) std::cout << v << " " << u << "\n";
    }
    return 0;
}

int cmd_moments(const std::string& spec_path) {
    gul::ModelSpec spec = gul::model_spec_from_json(load_json(spec_path));
    gul::theory::ModelMoments moments = gul::theory::model_moments(spec);

    nlohmann::ordered_json out;
    out["n"] = spec.n;
    out["m"] = spec.m;
    out["alpha"] = moments.alpha;
    out["kappa"] = moments.kappa;
    nlohmann::ordered_json kt = nlohmann::ordered_json::object();
    for (const auto& [t, v] : moments.kappa_t) kt[std::to_string(t)] = v;
    out["kappa_t"] = std::move(kt);
    if (moments.a) {
        out["a"] = *moments.a;
        out["kappa_a"] = moments.kappa_a;
    }
    if (moments.kappa > 0 && spec.n >= 2) {
        nlohmann::ordered_json lambdas = nlohmann::ordered_json::object();
        for (int k = 0; k <= 3; ++k)
            lambdas[std::to_string(k)] = gul::theory::lambda_k(
                spec.n, static_cast<double>(spec.m), moments.kappa, k);
        out["lambda"] = std::move(lambdas);
        double lambda0 = gul::theory::lambda_k(spec.n, static_cast<double>(spec.m),
                                               moments.kappa, 0);
        out["predicted_connected"] = gul::theory::predict_connect_prob(lambda0);
        if (moments.a) {
            gul::theory::WindowReport w =
                gul::theory::window(spec.n, spec.m, moments.kappa, *moments.a);
            out["window"] = {{"k", w.k},           {"lower", w.lower},
                             {"occupancy", w.occupancy}, {"upper", w.upper},
                             {"lambda_lo", w.lambda_lo}, {"lambda_hi", w.lambda_hi},
                             {"inside", w.inside},       {"degenerate", w.degenerate}};
        }
    }
    if (const auto* by = std::get_if<gul::BernoulliYQ>(&spec.kind))
        out["kappa_prime"] = gul::theory::example2_kappa_prime(by->support);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, bool need_sweep) {
    gul::harness::ExperimentConfig cfg = gul::harness::config_from_json(load_json(config_path));
    if (need_sweep && !cfg.sweep)
        throw gul::config_error("config.sweep", "sweep subcommand needs a sweep block");
    gul::harness::ExperimentResult result = gul::harness::run_experiment(cfg);
    gul::harness::write_outputs(result, out_dir);
    long long points = 0, skipped = 0;
    for (const auto& pr : result.points) (pr.skipped ? skipped : points) += 1;
    std::cout << "wrote " << points << " point(s) to " << out_dir;
    if (skipped > 0) std::cout << " (" << skipped << " skipped)";
    std::cout << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, long long budget) {
    gul::verify::SuiteReport report = gul::verify::run_suite(suite, budget);
    for (const auto& line : report.lines)
        std::cout << (line.pass ? "[PASS] " : "[FAIL] ") << report.suite << "/" << line.name
                  << ": " << line.detail << "\n";
    return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"union-of-random-subgraphs laboratory"};
    app.require_subcommand(1);

    std::string spec_path, config_path, out_dir, suite;
    std::uint64_t seed = 0;
    bool dot = false;
    long long budget = 0;

    auto* sample = app.add_subcommand("sample", "sample one union graph");
    sample->add_option("--spec", spec_path, "model spec JSON file")->required();
    sample->add_option("--seed", seed, "sampling seed")->required();
    sample->add_flag("--dot", dot, "emit Graphviz instead of an edge list");

    auto* moments = app.add_subcommand("moments", "closed-form moment summary");
    moments->add_option("--spec", spec_path, "model spec JSON file")->required();

    auto* run = app.add_subcommand("run", "run a Monte Carlo experiment");
    run->add_option("--config", config_path, "experiment config JSON file")->required();
    run->add_option("--out", out_dir, "output directory")->required();

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("--config", config_path, "experiment config JSON file")->required();
    sweep->add_option("--out", out_dir, "output directory")->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "suite name")->required();
    verify->add_option("--budget", budget, "override the suite's sample budget");

    try {
        app.parse(argc, argv);
        if (sample->parsed()) return cmd_sample(spec_path, seed, dot);
        if (moments->parsed()) return cmd_moments(spec_path);
        if (run->parsed()) return cmd_run(config_path, out_dir, false);
        if (sweep->parsed()) return cmd_run(config_path, out_dir, true);
        if (verify->parsed()) return cmd_verify(suite, budget);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const gul::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gul::spec_error& e) {
        std::cerr << "config error: " << e.what();
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

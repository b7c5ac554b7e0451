#pragma once

#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "conn.hpp"
#include "gen.hpp"
#include "json_io.hpp"
#include "model.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "theory.hpp"

namespace gul::harness {

enum class Stat { Connected, Kconn, Delta, EtaCensus, NCountersStat, Blossoms, EventA };

struct StatRequest {
    Stat stat = Stat::Connected;
    int k = 0;  // kconn order, or explicit step for n_counters(a); 0 = derive
};

struct SweepSpec {
    std::string parameter;  // "m" or "lambda0"
    std::vector<double> values;
};

struct ExperimentConfig {
    ModelSpec spec;
    long long trials = 0;
    std::uint64_t master_seed = 0;
    std::vector<StatRequest> statistics;
    std::optional<SweepSpec> sweep;
};

namespace detail {

inline StatRequest parse_stat(const std::string& s, const std::string& path) {
    auto open = s.find('(');
    std::string name = s.substr(0, open);
    std::optional<long long> arg;
    if (open != std::string::npos) {
        if (s.back() != ')') throw config_error(path, "malformed statistic '" + s + "'");
        std::string inner = s.substr(open + 1, s.size() - open - 2);
        try {
            size_t used = 0;
            arg = std::stoll(inner, &used);
            if (used != inner.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw config_error(path, "malformed statistic argument in '" + s + "'");
        }
    }
    if (name == "connected") {
        if (arg) throw config_error(path, "connected takes no argument");
        return {Stat::Connected, 0};
    }
    if (name == "kconn") {
        if (!arg || *arg < 1) throw config_error(path, "kconn needs an integer argument >= 1");
        return {Stat::Kconn, static_cast<int>(*arg)};
    }
    if (name == "delta") {
        if (arg) throw config_error(path, "delta takes no argument");
        return {Stat::Delta, 0};
    }
    if (name == "eta_census") {
        if (arg) throw config_error(path, "eta_census takes no argument");
        return {Stat::EtaCensus, 0};
    }
    if (name == "n_counters") {
        if (arg && *arg < 1) throw config_error(path, "n_counters argument must be >= 1");
        return {Stat::NCountersStat, arg ? static_cast<int>(*arg) : 0};
    }
    if (name == "blossoms") {
        if (arg) throw config_error(path, "blossoms takes no argument");
        return {Stat::Blossoms, 0};
    }
    if (name == "event_A") {
        if (arg) throw config_error(path, "event_A takes no argument");
        return {Stat::EventA, 0};
    }
    throw config_error(path, "unknown statistic '" + s + "'");
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    using json_detail::require;
    using json_detail::require_array;
    using json_detail::require_int;
    using json_detail::require_number;

    ExperimentConfig cfg;
    cfg.spec = model_spec_from_json(require(j, "spec", "config"), "config.spec");
    cfg.trials = require_int(require(j, "trials", "config"), "config.trials");
    if (cfg.trials < 1) throw config_error("config.trials", "must be >= 1");
    cfg.master_seed = static_cast<std::uint64_t>(
        require_int(require(j, "master_seed", "config"), "config.master_seed"));

    const auto& stats = require_array(require(j, "statistics", "config"), "config.statistics");
    for (size_t i = 0; i < stats.size(); ++i) {
        const std::string path = "config.statistics[" + std::to_string(i) + "]";
        if (!stats[i].is_string()) throw config_error(path, "expected a string");
        cfg.statistics.push_back(detail::parse_stat(stats[i].get<std::string>(), path));
    }
    if (cfg.statistics.empty()) throw config_error("config.statistics", "must be nonempty");

    if (j.contains("sweep")) {
        const auto& sj = j["sweep"];
        SweepSpec sweep;
        const auto& pj = require(sj, "parameter", "config.sweep");
        if (!pj.is_string()) throw config_error("config.sweep.parameter", "expected a string");
        sweep.parameter = pj.get<std::string>();
        if (sweep.parameter != "m" && sweep.parameter != "lambda0")
            throw config_error("config.sweep.parameter", "must be \"m\" or \"lambda0\"");
        const auto& vals = require_array(require(sj, "values", "config.sweep"),
                                         "config.sweep.values");
        for (size_t i = 0; i < vals.size(); ++i)
            sweep.values.push_back(
                require_number(vals[i], "config.sweep.values[" + std::to_string(i) + "]"));
        if (sweep.values.empty()) throw config_error("config.sweep.values", "must be nonempty");
        cfg.sweep = std::move(sweep);
    }
    return cfg;
}

// What run_one must compute, resolved once per experiment point.
struct StatPlan {
    bool connected = false;
    bool delta = false;
    bool eta_census = false;
    bool counters = false;
    bool blossoms = false;
    bool event_a = false;
    std::vector<int> kconn_ks;     // sorted, unique
    std::optional<int> fixed_a;    // explicit n_counters(a) argument or model value
    bool membership() const { return counters || blossoms || event_a; }
};

inline StatPlan make_plan(const ExperimentConfig& cfg,
                          const std::optional<theory::ModelMoments>& moments) {
    StatPlan plan;
    std::set<int> ks;
    for (const auto& req : cfg.statistics) {
        switch (req.stat) {
            case Stat::Connected: plan.connected = true; break;
            case Stat::Kconn: ks.insert(req.k); break;
            case Stat::Delta: plan.delta = true; break;
            case Stat::EtaCensus: plan.eta_census = true; break;
            case Stat::NCountersStat:
                plan.counters = true;
                if (req.k >= 1) plan.fixed_a = req.k;
                break;
            case Stat::Blossoms: plan.blossoms = true; break;
            case Stat::EventA: plan.event_a = true; break;
        }
    }
    plan.kconn_ks.assign(ks.begin(), ks.end());
    if (!plan.fixed_a && moments && moments->a) plan.fixed_a = *moments->a;
    return plan;
}

struct TrialRecord {
    long long trial_index = 0;
    std::uint64_t derived_seed = 0;
    std::optional<bool> connected;
    std::optional<int> delta;
    std::vector<std::pair<int, bool>> kconn;  // (k, is k-connected), k ascending
    std::optional<long long> eta1;
    std::map<int, long long> eta_census;
    std::map<int, long long> n_k, n_star_k, n_prime_k;
    std::optional<bool> blossom_ok;
    std::optional<bool> event_a;
    // Wall time stays in memory only: serializing it would break the
    // byte-identical rerun contract.
    long long wall_time_micros = 0;
};

inline TrialRecord run_one(const ModelSpec& spec, const StatPlan& plan,
                           std::uint64_t master_seed, long long t) {
    auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial_index = t;
    rec.derived_seed = RngStream::derive_seed(master_seed, static_cast<std::uint64_t>(t));
    UnionGraph g = sample_union(spec, rec.derived_seed);

    if (plan.connected || plan.eta_census) {
        ComponentCensus census = component_census(g);
        if (plan.connected) rec.connected = (g.n == 1) || (census.components == 1);
        if (plan.eta_census) {
            long long isolated = 0;
            for (VertexId v = 1; static_cast<long long>(v) <= g.n; ++v)
                if (g.degree(v) == 0) ++isolated;
            rec.eta1 = isolated;
            for (const auto& [size, count] : census.size_histogram)
                rec.eta_census[size] = count;
        }
    }
    if (plan.delta) rec.delta = min_degree(g);
    for (int k : plan.kconn_ks) rec.kconn.emplace_back(k, is_k_vertex_connected(g, k));

    if (plan.membership()) {
        int a = plan.fixed_a ? *plan.fixed_a : empirical_min_positive_degree(g).value_or(1);
        MembershipProfile mp = membership_profile(g, a);
        NCounters counters = n_counters(mp);
        if (plan.counters) {
            rec.n_k = counters.n_k;
            rec.n_star_k = counters.n_star_k;
            rec.n_prime_k = counters.n_prime_k;
        }
        if (plan.blossoms) rec.blossom_ok = blossom_property_holds(g, mp, counters);
        if (plan.event_a) rec.event_a = detect_event_A(mp);
    }

    rec.wall_time_micros = std::chrono::duration_cast<std::chrono::microseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    return rec;
}

inline int threads_from_env() {
    const char* env = std::getenv("GRAPH_UNION_LAB_THREADS");
    if (env == nullptr || *env == '\0') {
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }
    try {
        size_t used = 0;
        long v = std::stol(env, &used);
        if (used != std::string(env).size() || v < 1)
            throw std::invalid_argument("not a positive integer");
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw config_error("GRAPH_UNION_LAB_THREADS", "must be a positive integer");
    }
}

// All trials of one experiment point; records come back indexed by trial so
// the output bytes cannot depend on the worker count.
inline std::vector<TrialRecord> run_trials(const ModelSpec& spec, const StatPlan& plan,
                                           std::uint64_t master_seed, long long trials,
                                           int workers = 0) {
    if (trials < 1) throw config_error("config.trials", "must be >= 1");
    if (workers <= 0) workers = threads_from_env();
    workers = static_cast<int>(std::min<long long>(workers, trials));

    std::vector<TrialRecord> records(static_cast<size_t>(trials));
    if (workers == 1) {
        for (long long t = 0; t < trials; ++t)
            records[static_cast<size_t>(t)] = run_one(spec, plan, master_seed, t);
        return records;
    }

    std::atomic<long long> next{0};
    std::exception_ptr first_error = nullptr;
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            long long t = next.fetch_add(1);
            if (t >= trials || failed.load()) return;
            try {
                records[static_cast<size_t>(t)] = run_one(spec, plan, master_seed, t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return records;
}

// Wilson 95% score interval.
inline std::pair<double, double> wilson95(long long hits, long long trials) {
    const double z = 1.959963984540054;
    double nd = static_cast<double>(trials);
    double p = static_cast<double>(hits) / nd;
    double z2 = z * z;
    double denom = 1.0 + z2 / nd;
    double center = (p + z2 / (2.0 * nd)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
    return {center - half, center + half};
}

struct PointResult {
    int sweep_index = 0;
    std::string parameter;
    double value = 0.0;  // requested sweep coordinate (m or lambda0)
    ModelSpec spec_used;
    long long m_used = 0;
    double kappa = std::numeric_limits<double>::quiet_NaN();
    double lambda0 = std::numeric_limits<double>::quiet_NaN();
    double predicted_connected = std::numeric_limits<double>::quiet_NaN();
    std::optional<int> step_a;
    bool skipped = false;
    std::string note;
    std::vector<TrialRecord> records;
};

struct ExperimentResult {
    ExperimentConfig config;
    StatPlan plan;
    std::vector<PointResult> points;
};

inline ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers = 0) {
    ValidationReport rep = validate_spec(cfg.spec);
    if (!rep.ok()) throw spec_error(std::move(rep));

    ExperimentResult result;
    result.config = cfg;

    std::vector<std::pair<std::string, double>> points;
    if (cfg.sweep) {
        for (double v : cfg.sweep->values) points.emplace_back(cfg.sweep->parameter, v);
    } else {
        points.emplace_back("m", static_cast<double>(cfg.spec.m));
    }

    for (size_t i = 0; i < points.size(); ++i) {
        PointResult pr;
        pr.sweep_index = static_cast<int>(i);
        pr.parameter = points[i].first;
        pr.value = points[i].second;
        pr.spec_used = cfg.spec;

        if (pr.parameter == "m") {
            auto m = static_cast<long long>(std::llround(pr.value));
            if (m < 1) {
                pr.skipped = true;
                pr.note = "m < 1 after rounding";
                result.points.push_back(std::move(pr));
                continue;
            }
            pr.spec_used.m = m;
        } else {  // lambda0: m = round(n (ln n - lambda) / kappa)
            ModelSpec probe = cfg.spec;
            theory::ModelMoments probe_moments = theory::model_moments(probe);
            if (!(probe_moments.kappa > 0))
                throw config_error("config.sweep.parameter",
                                   "lambda0 sweep needs a model with kappa > 0");
            double nd = static_cast<double>(cfg.spec.n);
            auto m = static_cast<long long>(
                std::llround(nd * (std::log(nd) - pr.value) / probe_moments.kappa));
            if (m < 1) {
                pr.skipped = true;
                pr.note = "back-solved m < 1";
                result.points.push_back(std::move(pr));
                continue;
            }
            pr.spec_used.m = m;
        }
        pr.m_used = pr.spec_used.m;

        theory::ModelMoments moments = theory::model_moments(pr.spec_used);
        pr.kappa = moments.kappa;
        pr.step_a = moments.a;
        if (moments.kappa > 0 && pr.spec_used.n >= 2) {
            pr.lambda0 = theory::lambda_k(pr.spec_used.n, static_cast<double>(pr.m_used),
                                          moments.kappa, 0);
            pr.predicted_connected = theory::predict_connect_prob(pr.lambda0);
        }

        // Plan flags are identical across points (they come from the config);
        // moments only refine the default step for n_counters.
        result.plan = make_plan(cfg, moments);
        pr.records = run_trials(pr.spec_used, result.plan, cfg.master_seed, cfg.trials, workers);
        result.points.push_back(std::move(pr));
    }
    if (result.points.empty()) result.plan = make_plan(cfg, std::nullopt);
    return result;
}

namespace detail {

inline std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string config_digest(const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;
    j["spec"] = model_spec_to_json(cfg.spec);
    j["trials"] = cfg.trials;
    j["master_seed"] = cfg.master_seed;
    auto stats = nlohmann::ordered_json::array();
    for (const auto& req : cfg.statistics)
        stats.push_back({{"stat", static_cast<int>(req.stat)}, {"k", req.k}});
    j["statistics"] = std::move(stats);
    if (cfg.sweep) {
        j["sweep"] = {{"parameter", cfg.sweep->parameter}, {"values", cfg.sweep->values}};
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a64(j.dump()));
    return buf;
}

}  // namespace detail

// Aggregate CSV: one row per point, fixed column order, 9 significant
// digits, LF endings, Wilson interval beside every rate.
inline std::string aggregates_csv(const ExperimentResult& result) {
    const StatPlan& plan = result.plan;
    std::string out;
    out += "# graph-union-lab aggregate table\n";
    out += "# config_digest=" + detail::config_digest(result.config) +
           " master_seed=" + std::to_string(result.config.master_seed) + "\n";
    for (const auto& pr : result.points)
        if (pr.skipped)
            out += "# note: sweep_index=" + std::to_string(pr.sweep_index) + " skipped: " +
                   pr.note + "\n";

    std::vector<std::string> cols = {"sweep_index", "sweep_parameter", "sweep_value",
                                     "n",           "m",               "trials",
                                     "lambda0",     "predicted_connected"};
    if (plan.connected) {
        cols.push_back("connected_rate");
        cols.push_back("connected_lo");
        cols.push_back("connected_hi");
    }
    for (int k : plan.kconn_ks) {
        cols.push_back("lambda_" + std::to_string(k));
        cols.push_back("kconn" + std::to_string(k) + "_rate");
        cols.push_back("kconn" + std::to_string(k) + "_lo");
        cols.push_back("kconn" + std::to_string(k) + "_hi");
    }
    if (plan.delta) cols.push_back("delta_mean");
    if (plan.eta_census) cols.push_back("eta1_mean");
    if (plan.blossoms) {
        cols.push_back("blossom_rate");
        cols.push_back("blossom_lo");
        cols.push_back("blossom_hi");
    }
    if (plan.event_a) {
        cols.push_back("event_a_rate");
        cols.push_back("event_a_lo");
        cols.push_back("event_a_hi");
    }
    for (size_t i = 0; i < cols.size(); ++i) {
        out += cols[i];
        out += (i + 1 == cols.size()) ? '\n' : ',';
    }

    for (const auto& pr : result.points) {
        if (pr.skipped) continue;
        std::vector<std::string> row;
        row.push_back(std::to_string(pr.sweep_index));
        row.push_back(pr.parameter);
        row.push_back(detail::format_g9(pr.value));
        row.push_back(std::to_string(pr.spec_used.n));
        row.push_back(std::to_string(pr.m_used));
        row.push_back(std::to_string(static_cast<long long>(pr.records.size())));
        row.push_back(detail::format_g9(pr.lambda0));
        row.push_back(detail::format_g9(pr.predicted_connected));

        long long trials = static_cast<long long>(pr.records.size());
        auto rate_cols = [&](long long hits) {
            auto [lo, hi] = wilson95(hits, trials);
            row.push_back(detail::format_g9(static_cast<double>(hits) /
                                            static_cast<double>(trials)));
            row.push_back(detail::format_g9(lo));
            row.push_back(detail::format_g9(hi));
        };

        if (plan.connected) {
            long long hits = 0;
            for (const auto& r : pr.records) hits += (r.connected && *r.connected) ? 1 : 0;
            rate_cols(hits);
        }
        for (size_t ki = 0; ki < plan.kconn_ks.size(); ++ki) {
            int k = plan.kconn_ks[ki];
            double lam = std::numeric_limits<double>::quiet_NaN();
            if (pr.kappa > 0 && pr.spec_used.n >= 2)
                lam = theory::lambda_k(pr.spec_used.n, static_cast<double>(pr.m_used), pr.kappa,
                                       k);
            row.push_back(detail::format_g9(lam));
            long long hits = 0;
            for (const auto& r : pr.records) hits += r.kconn[ki].second ? 1 : 0;
            rate_cols(hits);
        }
        if (plan.delta) {
            double sum = 0.0, comp = 0.0;
            for (const auto& r : pr.records) {
                double term = static_cast<double>(*r.delta) - comp;
                double t = sum + term;
                comp = (t - sum) - term;
                sum = t;
            }
            row.push_back(detail::format_g9(sum / static_cast<double>(trials)));
        }
        if (plan.eta_census) {
            double sum = 0.0, comp = 0.0;
            for (const auto& r : pr.records) {
                double term = static_cast<double>(*r.eta1) - comp;
                double t = sum + term;
                comp = (t - sum) - term;
                sum = t;
            }
            row.push_back(detail::format_g9(sum / static_cast<double>(trials)));
        }
        if (plan.blossoms) {
            long long hits = 0;
            for (const auto& r : pr.records) hits += (r.blossom_ok && *r.blossom_ok) ? 1 : 0;
            rate_cols(hits);
        }
        if (plan.event_a) {
            long long hits = 0;
            for (const auto& r : pr.records) hits += (r.event_a && *r.event_a) ? 1 : 0;
            rate_cols(hits);
        }
        for (size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            out += (i + 1 == row.size()) ? '\n' : ',';
        }
    }
    return out;
}

// JSON-lines dump of the raw records of one point, keys in pinned order.
inline std::string trials_jsonl(const ExperimentResult& result, const PointResult& pr) {
    std::string out;
    out += "# graph-union-lab trial records sweep_index=" + std::to_string(pr.sweep_index) +
           " config_digest=" + detail::config_digest(result.config) +
           " master_seed=" + std::to_string(result.config.master_seed) + "\n";
    for (const auto& r : pr.records) {
        nlohmann::ordered_json j;
        j["trial_index"] = r.trial_index;
        j["derived_seed"] = r.derived_seed;
        if (r.connected) j["connected"] = *r.connected;
        if (r.delta) j["delta"] = *r.delta;
        if (!r.kconn.empty()) {
            nlohmann::ordered_json kj;
            for (const auto& [k, ok] : r.kconn) kj[std::to_string(k)] = ok;
            j["kconn"] = std::move(kj);
        }
        if (r.eta1) j["eta1"] = *r.eta1;
        auto put_map = [&](const char* key, const std::map<int, long long>& m, bool present) {
            if (!present) return;
            nlohmann::ordered_json mj = nlohmann::ordered_json::object();
            for (const auto& [k, v] : m) mj[std::to_string(k)] = v;
            j[key] = std::move(mj);
        };
        put_map("eta_census", r.eta_census, r.eta1.has_value());
        bool counters_present = !r.n_k.empty();
        put_map("n_k", r.n_k, counters_present);
        put_map("n_star_k", r.n_star_k, counters_present);
        put_map("n_prime_k", r.n_prime_k, counters_present);
        if (r.blossom_ok) j["blossom_ok"] = *r.blossom_ok;
        if (r.event_a) j["event_a"] = *r.event_a;
        out += j.dump();
        out += '\n';
    }
    return out;
}

// Write aggregates.csv plus trials_NNN.jsonl per point into out_dir.
inline void write_outputs(const ExperimentResult& result, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream f(out_dir / "aggregates.csv", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (out_dir / "aggregates.csv").string());
        f << aggregates_csv(result);
    }
    for (const auto& pr : result.points) {
        if (pr.skipped) continue;
        char name[32];
        std::snprintf(name, sizeof(name), "trials_%03d.jsonl", pr.sweep_index);
        std::ofstream f(out_dir / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (out_dir / name).string());
        f << trials_jsonl(result, pr);
    }
}

}  // namespace gul::harness

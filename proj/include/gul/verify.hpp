#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "conn.hpp"
#include "gen.hpp"
#include "harness.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "theory.hpp"

namespace gul::verify {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckLine> lines;
    bool pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return !lines.empty();
    }
};

inline std::vector<std::string> suite_names() {
    return {"formula-exact",       "inequality-exact", "oracle-equivalence",
            "connectivity-oracle", "poisson",          "degree-approx",
            "step-size-a"};
}

namespace detail {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline GraphTemplate k2_template() { return {2, {{1, 2}}}; }
inline GraphTemplate cherry_template() { return {3, {{1, 2}, {1, 3}}}; }

// ---- formula-exact -------------------------------------------------------

inline SuiteReport run_formula_exact() {
    SuiteReport rep{"formula-exact", {}};

    long long edge_cases = 0;
    bool edge_ok = true;
    std::string edge_detail;
    for (long long n = 2; n <= 30 && edge_ok; ++n)
        for (long long r = 1; r <= n - 1 && edge_ok; ++r) {
            long long crossing = 0, total = 0;
            for (long long u = 1; u <= n; ++u)
                for (long long v = u + 1; v <= n; ++v) {
                    ++total;
                    if ((u <= r) != (v <= r)) ++crossing;
                }
            if (oracle::p_edge_connects(n, r) != Rational(crossing, total)) {
                edge_ok = false;
                edge_detail = "mismatch at n=" + std::to_string(n) + " r=" + std::to_string(r);
            }
            ++edge_cases;
        }
    rep.lines.push_back({"edge-crossing-exact", edge_ok,
                         edge_ok ? std::to_string(edge_cases) + " (n,r) cases, exact rational match"
                                 : edge_detail});

    long long cherry_cases = 0;
    bool cherry_ok = true;
    std::string cherry_detail;
    for (long long n = 3; n <= 30 && cherry_ok; ++n)
        for (long long r = 1; r <= n - 1 && cherry_ok; ++r) {
            // Enumerate (center, {leaf, leaf}) configurations directly.
            long long crossing = 0, total = 0;
            for (long long c = 1; c <= n; ++c)
                for (long long u = 1; u <= n; ++u) {
                    if (u == c) continue;
                    for (long long w = u + 1; w <= n; ++w) {
                        if (w == c) continue;
                        ++total;
                        bool cf = c <= r, uf = u <= r, wf = w <= r;
                        if (!(cf == uf && uf == wf)) ++crossing;
                    }
                }
            if (oracle::p_cherry_connects(n, r) != Rational(crossing, total)) {
                cherry_ok = false;
                cherry_detail = "mismatch at n=" + std::to_string(n) + " r=" + std::to_string(r);
            }
            ++cherry_cases;
        }
    rep.lines.push_back(
        {"cherry-crossing-exact", cherry_ok,
         cherry_ok ? std::to_string(cherry_cases) + " (n,r) cases, exact rational match"
                   : cherry_detail});
    return rep;
}

// ---- inequality-exact ----------------------------------------------------

inline SuiteReport run_inequality_exact(long long fact1_vectors) {
    SuiteReport rep{"inequality-exact", {}};

    // Closed-form lower bounds never exceed the exact crossing probability.
    long long bound_cases = 0;
    bool bounds_ok = true;
    std::string bound_detail;
    for (long long n = 10; n <= 60 && bounds_ok; ++n)
        for (long long r = 1; 10 * r <= n && bounds_ok; ++r) {
            struct Case {
                long long x;
                Rational exact;
            };
            std::vector<Case> cases;
            cases.push_back({2, oracle::p_edge_connects(n, r)});
            if (n >= 3) cases.push_back({3, oracle::p_cherry_connects(n, r)});
            for (const auto& c : cases) {
                Rational basic = oracle::basic_lower_bound_rational(n, r, c.x);
                Rational refined = oracle::r_basic_lower_bound_rational(n, r, c.x);
                if (basic > c.exact || refined > c.exact) {
                    bounds_ok = false;
                    bound_detail = "bound exceeds exact at n=" + std::to_string(n) +
                                   " r=" + std::to_string(r) + " x=" + std::to_string(c.x);
                }
                ++bound_cases;
            }
        }
    rep.lines.push_back({"crossing-lower-bounds", bounds_ok,
                         bounds_ok ? std::to_string(bound_cases) + " rational comparisons"
                                   : bound_detail});

    // Strict negative correlation for disjoint structures, all admissible
    // (n, r) with n <= 200.
    long long corr_cases = 0;
    bool corr_ok = true;
    std::string corr_detail;
    for (long long n = 4; n <= 200 && corr_ok; ++n)
        for (long long r = 1; 4 * r <= n && corr_ok; ++r)
            for (const auto& chk : oracle::check_negative_correlation(n, r)) {
                if (!chk.applicable) continue;
                ++corr_cases;
                if (!chk.strict) {
                    corr_ok = false;
                    corr_detail = chk.name + " not strict at n=" + std::to_string(n) +
                                  " r=" + std::to_string(r);
                }
            }
    rep.lines.push_back({"negative-correlation-strict", corr_ok,
                         corr_ok ? std::to_string(corr_cases) + " applicable (n,r,check) triples"
                                 : corr_detail});

    // Symmetric-function remainder bound on random rational vectors.
    long long fact_cases = 0;
    bool fact_ok = true;
    std::string fact_detail;
    RngStream rng(0x5eedf00dULL, 7);
    for (long long i = 0; i < fact1_vectors && fact_ok; ++i) {
        int len = 1 + static_cast<int>(rng.uniform_below(8));
        int b = 2 + static_cast<int>(rng.uniform_below(3));
        std::vector<Rational> a;
        a.reserve(static_cast<size_t>(len));
        for (int k = 0; k < len; ++k) {
            long long num = static_cast<long long>(rng.uniform_below(21));
            long long den = 1 + static_cast<long long>(rng.uniform_below(20));
            a.emplace_back(num, den);
        }
        oracle::Fact1Check chk = oracle::fact1_check(a, b);
        ++fact_cases;
        if (!chk.pass) {
            fact_ok = false;
            fact_detail = "violation on vector " + std::to_string(i) + " (b=" +
                          std::to_string(b) + ")";
        }
    }
    rep.lines.push_back({"symmetric-remainder-bound", fact_ok,
                         fact_ok ? std::to_string(fact_cases) + " random rational vectors"
                                 : fact_detail});
    return rep;
}

// ---- oracle-equivalence --------------------------------------------------

struct McOutcomeCounts {
    std::map<bool, long long> connected;
    std::map<int, long long> eta1, dprime1, delta;
};

inline SuiteReport run_oracle_equivalence(long long trials) {
    SuiteReport rep{"oracle-equivalence", {}};

    struct Config {
        const char* label;
        int n;
        long long m;
        std::vector<GraphTemplate> templates;
        std::uint64_t seed;
    };
    std::vector<Config> configs = {
        {"n6-edge-cherry", 6, 2, {k2_template(), cherry_template()}, 0xC0FFEE01ULL},
        {"n8-three-edges", 8, 3, {k2_template()}, 0xC0FFEE02ULL},
        {"n6-three-cherries", 6, 3, {cherry_template()}, 0xC0FFEE03ULL},
        {"n7-cherry-edge", 7, 2, {cherry_template(), k2_template()}, 0xC0FFEE04ULL},
    };

    for (const auto& cf : configs) {
        oracle::ExactDistribution exact =
            oracle::enumerate_fixed_model(cf.n, cf.m, cf.templates);

        ModelSpec spec;
        spec.n = cf.n;
        spec.m = cf.m;
        spec.kind = FixedGraphs{cf.templates};

        McOutcomeCounts mc;
        for (long long t = 0; t < trials; ++t) {
            UnionGraph g = sample_union(spec, RngStream::derive_seed(cf.seed, static_cast<std::uint64_t>(t)));
            ComponentCensus census = component_census(g);
            int eta1 = 0;
            for (VertexId v = 1; static_cast<long long>(v) <= g.n; ++v)
                if (g.degree(v) == 0) ++eta1;
            MembershipProfile mp = membership_profile(g, 1);
            ++mc.connected[census.components == 1];
            ++mc.eta1[eta1];
            ++mc.dprime1[mp.dprime[1]];
            ++mc.delta[min_degree(g)];
        }

        // Marginal-by-marginal 3-sigma agreement, plus support containment.
        bool ok = true;
        std::string detail;
        auto check_cells = [&](const char* what, auto exact_of,
                               const std::map<int, long long>& obs, int lo, int hi) {
            for (int k = lo; k <= hi && ok; ++k) {
                double p = to_double(exact_of(k));
                auto it = obs.find(k);
                double o = it == obs.end() ? 0.0 : static_cast<double>(it->second);
                if (p == 0.0) {
                    if (o > 0) {
                        ok = false;
                        detail = std::string(what) + "=" + std::to_string(k) +
                                 " observed outside exact support";
                    }
                    continue;
                }
                double mean = static_cast<double>(trials) * p;
                double sigma = std::sqrt(static_cast<double>(trials) * p * (1.0 - p));
                if (std::abs(o - mean) > 3.0 * sigma + 1e-9) {
                    ok = false;
                    detail = std::string(what) + "=" + std::to_string(k) + " off by " +
                             fmt(std::abs(o - mean) / (sigma > 0 ? sigma : 1.0)) + " sigma";
                }
            }
        };

        {
            double p = to_double(exact.p_connected());
            double o = static_cast<double>(mc.connected[true]);
            double mean = static_cast<double>(trials) * p;
            double sigma = std::sqrt(static_cast<double>(trials) * p * (1.0 - p));
            if (std::abs(o - mean) > 3.0 * sigma + 1e-9) {
                ok = false;
                detail = "connected off by " +
                         fmt(std::abs(o - mean) / (sigma > 0 ? sigma : 1.0)) + " sigma";
            }
        }
        check_cells("eta1", [&](int k) { return exact.p_eta1(k); }, mc.eta1, 0, cf.n);
        check_cells("dprime1", [&](int k) { return exact.p_dprime1(k); }, mc.dprime1, 0,
                    static_cast<int>(cf.m));
        check_cells("delta", [&](int k) { return exact.p_delta(k); }, mc.delta, 0, cf.n - 1);

        // P{d'(1) = 0} must equal the exact isolation product T, as rationals.
        std::vector<long long> xs;
        for (long long i = 0; i < cf.m; ++i)
            xs.push_back(cf.templates[static_cast<size_t>(i) % cf.templates.size()].vertices);
        if (exact.p_dprime1(0) != theory::exact_T_rational(cf.n, xs)) {
            ok = false;
            detail = "P{d'(1)=0} differs from the exact isolation product";
        }

        rep.lines.push_back({std::string("oracle-vs-mc-") + cf.label, ok,
                             ok ? std::to_string(trials) + " trials within 3 sigma per cell"
                                : detail});
    }
    return rep;
}

// ---- connectivity-oracle -------------------------------------------------

inline SuiteReport run_connectivity_oracle(long long graphs) {
    SuiteReport rep{"connectivity-oracle", {}};
    bool match_ok = true, whitney_ok = true, monotone_ok = true;
    std::string match_detail, whitney_detail, monotone_detail;

    for (long long i = 0; i < graphs; ++i) {
        RngStream pick(0xAB5EEDULL, static_cast<std::uint64_t>(i));
        long long n = 4 + static_cast<long long>(pick.uniform_below(9));  // 4..12
        long long m = 1 + static_cast<long long>(pick.uniform_below(6));  // 1..6
        ModelSpec spec;
        spec.n = n;
        spec.m = m;
        switch (i % 4) {
            case 0: spec.kind = FixedGraphs{{k2_template(), cherry_template()}}; break;
            case 1: spec.kind = FixedGraphs{{cherry_template()}}; break;
            case 2: {
                long long y = 2 + static_cast<long long>(pick.uniform_below(static_cast<std::uint64_t>(n - 1)));
                spec.kind = BernoulliYQ{{{y, 0.6, 1.0}}};
                break;
            }
            default: {
                long long s = 2 + static_cast<long long>(pick.uniform_below(3));
                spec.kind = CliqueSizes{{{s, 1.0}}};
                break;
            }
        }
        UnionGraph g = sample_union(spec, RngStream::derive_seed(0xF10C0DEULL, static_cast<std::uint64_t>(i)));

        int flow = vertex_connectivity(g);
        int brute = brute_force_vertex_connectivity(g);
        if (flow != brute && match_ok) {
            match_ok = false;
            match_detail = "flow=" + std::to_string(flow) + " brute=" + std::to_string(brute) +
                           " at graph " + std::to_string(i);
        }
        int delta = min_degree(g);
        if (flow > delta && whitney_ok) {
            whitney_ok = false;
            whitney_detail = "kappa " + std::to_string(flow) + " > delta " +
                             std::to_string(delta) + " at graph " + std::to_string(i);
        }
        bool prev = true;
        for (int k = 1; k <= delta + 1; ++k) {
            bool now = is_k_vertex_connected(g, k);
            if ((now && !prev) || (now != (flow >= k))) {
                if (monotone_ok) {
                    monotone_ok = false;
                    monotone_detail = "k-connectivity inconsistent at graph " +
                                      std::to_string(i) + " k=" + std::to_string(k);
                }
            }
            prev = now;
        }
    }
    rep.lines.push_back({"flow-equals-bruteforce", match_ok,
                         match_ok ? std::to_string(graphs) + " seeded graphs" : match_detail});
    rep.lines.push_back({"whitney-kappa-le-delta", whitney_ok,
                         whitney_ok ? "kappa <= delta on every sample" : whitney_detail});
    rep.lines.push_back({"k-connectivity-monotone", monotone_ok,
                         monotone_ok ? "is_k_vertex_connected consistent with kappa"
                                     : monotone_detail});
    return rep;
}

// ---- poisson (threshold + eta1 law) --------------------------------------

inline SuiteReport run_poisson(long long trials) {
    SuiteReport rep{"poisson", {}};
    const long long n = 2000;
    const double kappa = 2.0;
    const std::vector<double> lambdas = {-4.0, -2.0, 0.0, 2.0, 4.0};

    harness::StatPlan plan;
    plan.connected = true;
    plan.eta_census = true;

    ModelSpec spec;
    spec.n = n;
    spec.kind = FixedGraphs{{k2_template()}};

    for (double lam : lambdas) {
        double nd = static_cast<double>(n);
        auto m = static_cast<long long>(std::llround(nd * (std::log(nd) - lam) / kappa));
        spec.m = m;
        auto records = harness::run_trials(spec, plan, 0xBADA55ULL, trials);

        long long hits = 0;
        for (const auto& r : records) hits += *r.connected ? 1 : 0;
        double observed = static_cast<double>(hits) / static_cast<double>(trials);
        double lambda0 = theory::lambda_k(n, static_cast<double>(m), kappa, 0);
        double predicted = theory::predict_connect_prob(lambda0);
        // Tolerance pinned against the nominal (requested) coordinate.
        double nominal = theory::predict_connect_prob(lam);
        double tol = 0.05 + 3.0 * std::sqrt(std::max(nominal * (1.0 - nominal), 1e-12) /
                                            static_cast<double>(trials));
        bool ok = std::abs(observed - predicted) <= tol;
        rep.lines.push_back({"connected@lambda0=" + fmt(lam), ok,
                             "observed=" + fmt(observed) + " predicted=" + fmt(predicted) +
                                 " tol=" + fmt(tol) + " m=" + std::to_string(m)});

        if (lam == 0.0) {
            // eta1 should follow Poisson(e^0) = Poisson(1).
            std::map<long long, long long> hist;
            for (const auto& r : records) ++hist[*r.eta1];
            double tv = 0.0;
            for (int k = 0; k <= 6; ++k) {
                double phat =
                    static_cast<double>(hist.count(k) ? hist[k] : 0) / static_cast<double>(trials);
                double pois = std::exp(-1.0);  // Poisson(1): e^{-1}/k!
                for (int j = 1; j <= k; ++j) pois /= j;
                tv += std::abs(phat - pois);
            }
            tv /= 2.0;
            bool ok_tv = tv <= 0.05;
            rep.lines.push_back({"eta1-tv@lambda0=0", ok_tv,
                                 "tv=" + fmt(tv) + " over counts 0..6, " +
                                     std::to_string(trials) + " trials"});
        }
    }
    return rep;
}

// ---- degree-approx -------------------------------------------------------

inline SuiteReport run_degree_approx(long long trials) {
    SuiteReport rep{"degree-approx", {}};
    const long long n = 500;
    const auto m = static_cast<long long>(std::ceil(500.0 * std::log(500.0)));  // 3108
    const double kappa = 2.0;

    ModelSpec spec;
    spec.n = n;
    spec.m = m;
    spec.kind = FixedGraphs{{k2_template()}};

    harness::StatPlan plan;
    plan.counters = true;
    plan.fixed_a = 1;
    auto records = harness::run_trials(spec, plan, 0xDE96EEULL, trials);

    std::map<int, long long> pooled;
    for (const auto& r : records)
        for (const auto& [k, c] : r.n_k) pooled[k] += c;
    const double pool = static_cast<double>(n) * static_cast<double>(trials);

    for (int k = 0; k <= 4; ++k) {
        double p = theory::degree_prob_approx(n, m, kappa, k);
        double expected = pool * p;
        double obs = static_cast<double>(pooled.count(k) ? pooled[k] : 0);
        double tol = std::max(0.15 * expected, 3.0 * std::sqrt(pool * p * (1.0 - p)));
        bool ok = std::abs(obs - expected) <= tol;
        rep.lines.push_back({"dprime-pmf-k" + std::to_string(k), ok,
                             "observed=" + fmt(obs) + " expected=" + fmt(expected) +
                                 " tol=" + fmt(tol)});
    }
    return rep;
}

// ---- step-size-a ---------------------------------------------------------

inline SuiteReport run_step_size_a(long long trials) {
    SuiteReport rep{"step-size-a", {}};
    const long long n = 500;

    ModelSpec spec;
    spec.n = n;
    spec.kind = CliqueSizes{{{3, 1.0}}};
    spec.m = 1;  // placeholder until back-solve
    theory::ModelMoments moments = theory::model_moments(spec);
    const double kappa = moments.kappa;  // 3
    const int a = moments.a.value_or(1);  // 2

    // Solve lambda(0) = -(1/2) ln(m/n):  kappa t = ln n + (1/2) ln t, t = m/n.
    double nd = static_cast<double>(n);
    double t = std::log(nd) / kappa;
    for (int i = 0; i < 80; ++i) t = (std::log(nd) + 0.5 * std::log(t)) / kappa;
    const auto m = static_cast<long long>(std::llround(nd * t));
    spec.m = m;
    const double lambda0 = theory::lambda_k(n, static_cast<double>(m), kappa, 0);

    long long delta2 = 0, conn2 = 0, conn3 = 0;
    bool step_check = true;
    std::string step_detail;
    for (long long i = 0; i < trials; ++i) {
        UnionGraph g = sample_union(spec, RngStream::derive_seed(0x57E9A2ULL, static_cast<std::uint64_t>(i)));
        if (min_degree(g) == 2) ++delta2;
        if (is_k_vertex_connected(g, 2)) ++conn2;
        if (is_k_vertex_connected(g, 3)) ++conn3;

        MembershipProfile mp = membership_profile(g, a);
        NCounters counters = n_counters(mp);
        auto it = counters.n_prime_k.find(1);
        bool n_prime1_zero = (it == counters.n_prime_k.end() || it->second == 0);
        if (n_prime1_zero && step_check) {
            std::vector<char> tainted(static_cast<size_t>(g.n) + 1, 0);
            for (const auto& [key, count] : mp.pair_counts)
                if (count >= 2) {
                    tainted[key >> 32] = 1;
                    tainted[key & 0xffffffffULL] = 1;
                }
            for (VertexId v = 1; static_cast<long long>(v) <= g.n; ++v)
                if (mp.dprime[v] == 1 && tainted[v]) {
                    step_check = false;
                    step_detail = "trial " + std::to_string(i) + " vertex " + std::to_string(v) +
                                  " has d'=1 but shares two communities";
                }
        }
    }
    double td = static_cast<double>(trials);
    double p_delta2 = static_cast<double>(delta2) / td;
    double p_conn2 = static_cast<double>(conn2) / td;
    double p_conn3 = static_cast<double>(conn3) / td;
    std::string coords = " (m=" + std::to_string(m) + ", lambda0=" + fmt(lambda0) + ")";
    rep.lines.push_back({"min-degree-two-rate", p_delta2 >= 0.8,
                         "observed=" + fmt(p_delta2) + " required>=0.8" + coords});
    rep.lines.push_back({"two-connected-rate", p_conn2 >= 0.8,
                         "observed=" + fmt(p_conn2) + " required>=0.8" + coords});
    rep.lines.push_back({"three-connected-rate", p_conn3 <= 0.5,
                         "observed=" + fmt(p_conn3) + " required<=0.5" + coords});
    rep.lines.push_back({"blossom-step-check", step_check,
                         step_check ? "every d'=1 vertex is a blossom center whenever N'_1=0"
                                    : step_detail});
    return rep;
}

}  // namespace detail

inline SuiteReport run_suite(const std::string& name, long long budget = 0) {
    if (name == "formula-exact") return detail::run_formula_exact();
    if (name == "inequality-exact")
        return detail::run_inequality_exact(budget > 0 ? budget : 1000);
    if (name == "oracle-equivalence")
        return detail::run_oracle_equivalence(budget > 0 ? budget : 100000);
    if (name == "connectivity-oracle")
        return detail::run_connectivity_oracle(budget > 0 ? budget : 1000);
    if (name == "poisson") return detail::run_poisson(budget > 0 ? budget : 2000);
    if (name == "degree-approx") return detail::run_degree_approx(budget > 0 ? budget : 500);
    if (name == "step-size-a") return detail::run_step_size_a(budget > 0 ? budget : 300);
    throw std::invalid_argument("unknown verify suite '" + name + "'");
}

// Byte-identity of serialized outputs across reruns and worker counts.
inline SuiteReport determinism_report() {
    SuiteReport rep{"determinism", {}};

    nlohmann::json cfg_json = {
        {"spec",
         {{"n", 60},
          {"m", 120},
          {"kind",
           {{"clique_sizes",
             {{"support", {{{"size", 2}, {"w", 0.5}}, {{"size", 3}, {"w", 0.5}}}}}}}}}},
        {"trials", 200},
        {"master_seed", 424242},
        {"statistics",
         {"connected", "kconn(2)", "delta", "eta_census", "n_counters", "blossoms", "event_A"}},
        {"sweep", {{"parameter", "m"}, {"values", {100, 150}}}}};
    harness::ExperimentConfig cfg = harness::config_from_json(cfg_json);

    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() /
                    ("gul-determinism-" + std::to_string(::getpid()));
    fs::remove_all(base);

    auto run_to = [&](const fs::path& dir, int workers) {
        harness::ExperimentResult res = harness::run_experiment(cfg, workers);
        harness::write_outputs(res, dir);
    };
    auto read_all = [](const fs::path& dir) {
        std::map<std::string, std::string> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            std::ifstream f(entry.path(), std::ios::binary);
            std::ostringstream ss;
            ss << f.rdbuf();
            files[entry.path().filename().string()] = ss.str();
        }
        return files;
    };

    run_to(base / "a", 1);
    run_to(base / "b", 4);
    run_to(base / "c", 1);  // rerun with identical settings

    // Env-var route for the worker count.
    std::string saved;
    bool had = false;
    if (const char* prev = std::getenv("GRAPH_UNION_LAB_THREADS")) {
        saved = prev;
        had = true;
    }
    ::setenv("GRAPH_UNION_LAB_THREADS", "3", 1);
    run_to(base / "d", 0);
    if (had)
        ::setenv("GRAPH_UNION_LAB_THREADS", saved.c_str(), 1);
    else
        ::unsetenv("GRAPH_UNION_LAB_THREADS");

    auto fa = read_all(base / "a"), fb = read_all(base / "b"), fc = read_all(base / "c"),
         fd = read_all(base / "d");
    rep.lines.push_back({"rerun-identical", fa == fc,
                         std::to_string(fa.size()) + " files byte-compared"});
    rep.lines.push_back({"workers-1-vs-4-identical", fa == fb,
                         "same bytes independent of worker count"});
    rep.lines.push_back({"env-var-workers-identical", fa == fd,
                         "GRAPH_UNION_LAB_THREADS=3 produces the same bytes"});
    fs::remove_all(base);
    return rep;
}

}  // namespace gul::verify

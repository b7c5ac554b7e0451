#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "model.hpp"
#include "rational.hpp"

namespace gul::theory {

namespace detail {

// (1-q)^e without cancellation for small q.
inline double pow1m(double q, double e) {
    if (q >= 1.0) return e == 0.0 ? 1.0 : 0.0;
    return std::exp(e * std::log1p(-q));
}

// P{Binomial(r, q) = t}, log-space, with the degenerate q handled exactly.
inline double binom_pmf(long long r, long long t, double q) {
    if (t < 0 || t > r) return 0.0;
    if (q <= 0.0) return t == 0 ? 1.0 : 0.0;
    if (q >= 1.0) return t == r ? 1.0 : 0.0;
    double lg = std::lgamma(static_cast<double>(r) + 1) -
                std::lgamma(static_cast<double>(t) + 1) -
                std::lgamma(static_cast<double>(r - t) + 1) +
                static_cast<double>(t) * std::log(q) +
                static_cast<double>(r - t) * std::log1p(-q);
    return std::exp(lg);
}

}  // namespace detail

// Moment summary of the community law (sizes truncated at n):
//   kappa_t[t] = expected number of degree-t vertices in one community,
//   kappa     = sum of kappa_t = expected non-isolated count,
//   alpha     = P{community has at least one edge},
//   a         = smallest t with kappa_t[t] > 0 (empty when edgeless),
//   kappa_a   = kappa_t[a] (0 when a is empty).
// per_community_x/z give E X_i and E X_i(X_i - 1) for each community index,
// feeding the exact isolation products.
struct ModelMoments {
    double alpha = 0.0;
    double kappa = 0.0;
    double kappa_a = 0.0;
    std::map<int, double> kappa_t;
    std::optional<int> a;
    std::vector<double> per_community_x;
    std::vector<double> per_community_z;
};

inline ModelMoments model_moments(const ModelSpec& spec) {
    ValidationReport rep = validate_spec(spec);
    if (!rep.ok()) throw spec_error(std::move(rep));

    ModelMoments M;
    if (const auto* fg = std::get_if<FixedGraphs>(&spec.kind)) {
        const auto T = static_cast<long long>(fg->templates.size());
        // Template j is used by communities j, j+T, j+2T, ...
        for (long long j = 0; j < T; ++j) {
            long long count = spec.m / T + (j < spec.m % T ? 1 : 0);
            if (count == 0) continue;
            const auto& t = fg->templates[static_cast<size_t>(j)];
            std::map<int, int> hist;
            std::vector<int> deg(static_cast<size_t>(t.vertices) + 1, 0);
            for (const auto& [u, v] : t.edges) {
                ++deg[u];
                ++deg[v];
            }
            for (int v = 1; v <= t.vertices; ++v) ++hist[deg[static_cast<size_t>(v)]];
            double share = static_cast<double>(count) / static_cast<double>(spec.m);
            for (const auto& [d, c] : hist)
                if (d > 0) M.kappa_t[d] += share * c;
        }
        M.alpha = 1.0;  // templates always carry an edge
        M.per_community_x.reserve(static_cast<size_t>(spec.m));
        M.per_community_z.reserve(static_cast<size_t>(spec.m));
        for (long long i = 0; i < spec.m; ++i) {
            const auto& t = fg->templates[static_cast<size_t>(i % T)];
            auto x = static_cast<double>(t.vertices);
            M.per_community_x.push_back(x);
            M.per_community_z.push_back(x * (x - 1));
        }
    } else if (const auto* cs = std::get_if<CliqueSizes>(&spec.kind)) {
        double x = 0, z = 0;
        for (const auto& atom : cs->support) {
            long long s = std::min(atom.size, spec.n);
            if (s < 2) continue;  // size 0/1 communities have no edges
            M.kappa_t[static_cast<int>(s - 1)] += atom.w * static_cast<double>(s);
            M.alpha += atom.w;
            x += atom.w * static_cast<double>(s);
            z += atom.w * static_cast<double>(s) * static_cast<double>(s - 1);
        }
        M.per_community_x.assign(static_cast<size_t>(spec.m), x);
        M.per_community_z.assign(static_cast<size_t>(spec.m), z);
    } else {
        const auto* by = std::get_if<BernoulliYQ>(&spec.kind);
        double x = 0, z = 0;
        for (const auto& atom : by->support) {
            long long k = std::min(atom.y, spec.n);
            if (k < 2 || atom.q <= 0.0) continue;
            double kd = static_cast<double>(k);
            // One member is non-isolated iff any of its k-1 pair slots fires.
            double h = 1.0 - detail::pow1m(atom.q, kd - 1.0);
            x += atom.w * kd * h;
            M.alpha += atom.w *
                       (1.0 - detail::pow1m(atom.q, kd * (kd - 1.0) / 2.0));
            // E X(X-1): both of two fixed members non-isolated, by
            // inclusion-exclusion over their isolation events.
            z += atom.w * kd * (kd - 1.0) *
                 (1.0 - 2.0 * detail::pow1m(atom.q, kd - 1.0) +
                  detail::pow1m(atom.q, 2.0 * kd - 3.0));
            if (atom.q >= 1.0) {
                M.kappa_t[static_cast<int>(k - 1)] += atom.w * kd;
            } else {
                for (long long t = 1; t <= k - 1; ++t)
                    M.kappa_t[static_cast<int>(t)] +=
                        atom.w * kd * detail::binom_pmf(k - 1, t, atom.q);
            }
        }
        M.per_community_x.assign(static_cast<size_t>(spec.m), x);
        M.per_community_z.assign(static_cast<size_t>(spec.m), z);
    }

    for (auto it = M.kappa_t.begin(); it != M.kappa_t.end();) {
        if (it->second <= 0.0) {
            it = M.kappa_t.erase(it);
        } else {
            M.kappa += it->second;
            ++it;
        }
    }
    if (!M.kappa_t.empty()) {
        M.a = M.kappa_t.begin()->first;
        M.kappa_a = M.kappa_t.begin()->second;
    }
    // Each edge contributes two non-isolated endpoints, so kappa >= 2*alpha.
    if (M.kappa + 1e-9 < 2.0 * M.alpha)
        throw std::logic_error("model_moments: kappa < 2*alpha, inconsistent moments");
    return M;
}

// lambda(k) = ln n + k ln(m/n) - (m/n) kappa. Accepts real m so sweeps can
// report the back-solved coordinate before rounding.
inline double lambda_k(long long n, double m, double kappa, int k) {
    if (n < 2) throw std::invalid_argument("lambda_k: n must be >= 2");
    if (!(m >= 1)) throw std::invalid_argument("lambda_k: m must be >= 1");
    if (!(kappa > 0)) throw std::invalid_argument("lambda_k: kappa must be positive");
    if (k < 0) throw std::invalid_argument("lambda_k: k must be >= 0");
    double ratio = m / static_cast<double>(n);
    return std::log(static_cast<double>(n)) + k * std::log(ratio) - ratio * kappa;
}

inline double predict_connect_prob(double lambda0) { return std::exp(-std::exp(lambda0)); }

// T = prod_i (1 - x_i/n): probability a fixed vertex is isolated in every
// community (x_i = E X_i). Compensated log-space product.
inline double exact_T(long long n, const std::vector<double>& xs) {
    if (n < 1) throw std::invalid_argument("exact_T: n must be >= 1");
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        double factor = 1.0 - x / static_cast<double>(n);
        if (factor < 0.0) throw std::invalid_argument("exact_T: factor below zero (x > n)");
        if (factor == 0.0) return 0.0;
        double term = std::log(factor) - comp;
        double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return std::exp(sum);
}

// H = prod_i (1 - 2 x_i/n + z_i/(n(n-1))): probability two fixed vertices are
// both isolated everywhere (z_i = E X_i(X_i - 1)).
inline double exact_H(long long n, const std::vector<double>& xs, const std::vector<double>& zs) {
    if (n < 2) throw std::invalid_argument("exact_H: n must be >= 2");
    if (xs.size() != zs.size()) throw std::invalid_argument("exact_H: xs/zs size mismatch");
    double sum = 0.0, comp = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double factor = 1.0 - 2.0 * xs[i] / static_cast<double>(n) +
                        zs[i] / (static_cast<double>(n) * static_cast<double>(n - 1));
        if (factor < 0.0) {
            if (factor >= -1e-12) factor = 0.0;  // rounding residue of a true zero
            else throw std::invalid_argument("exact_H: factor below zero");
        }
        if (factor == 0.0) return 0.0;
        double term = std::log(factor) - comp;
        double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    return std::exp(sum);
}

// Exact-rational twins for deterministic community sizes.
inline Rational exact_T_rational(long long n, const std::vector<long long>& xs) {
    if (n < 1) throw std::invalid_argument("exact_T_rational: n must be >= 1");
    Rational prod = 1;
    for (long long x : xs) {
        if (x > n) throw std::invalid_argument("exact_T_rational: x > n");
        prod *= Rational(n - x, n);
    }
    return prod;
}

inline Rational exact_H_rational(long long n, const std::vector<long long>& xs,
                                 const std::vector<long long>& zs) {
    if (n < 2) throw std::invalid_argument("exact_H_rational: n must be >= 2");
    if (xs.size() != zs.size()) throw std::invalid_argument("exact_H_rational: size mismatch");
    Rational prod = 1;
    for (size_t i = 0; i < xs.size(); ++i) {
        Rational factor = Rational(1) - Rational(2 * xs[i], n) + Rational(zs[i], n * (n - 1));
        if (factor < 0) throw std::invalid_argument("exact_H_rational: factor below zero");
        prod *= factor;
    }
    return prod;
}

// Poisson-style approximation P{d'(v) = k} ~ ((kappa m/n)^k / k!) e^{-kappa m/n}.
inline double degree_prob_approx(long long n, long long m, double kappa, int k) {
    if (n < 1 || m < 1) throw std::invalid_argument("degree_prob_approx: need n,m >= 1");
    if (k < 0) throw std::invalid_argument("degree_prob_approx: k must be >= 0");
    double rate = kappa * static_cast<double>(m) / static_cast<double>(n);
    if (k == 0) return std::exp(-rate);
    if (!(kappa > 0)) return 0.0;
    return std::exp(k * std::log(rate) - std::lgamma(k + 1.0) - rate);
}

// Same shape for blossom counts: kappa_a drives the polynomial factor while
// the full kappa stays in the exponent.
inline double blossom_degree_prob_approx(long long n, long long m, double kappa, double kappa_a,
                                         int k) {
    if (n < 1 || m < 1) throw std::invalid_argument("blossom_degree_prob_approx: need n,m >= 1");
    if (k < 0) throw std::invalid_argument("blossom_degree_prob_approx: k must be >= 0");
    double rate = kappa * static_cast<double>(m) / static_cast<double>(n);
    if (!(kappa_a > 0)) return k == 0 ? std::exp(-rate) : 0.0;
    double rate_a = kappa_a * static_cast<double>(m) / static_cast<double>(n);
    if (k == 0) return std::exp(-rate);
    return std::exp(k * std::log(rate_a) - std::lgamma(k + 1.0) - rate);
}

inline double expected_Nk(long long n, long long m, double kappa, int k) {
    return static_cast<double>(n) * degree_prob_approx(n, m, kappa, k);
}

inline double expected_N_star_k(long long n, long long m, double kappa, double kappa_a, int k) {
    return static_cast<double>(n) * blossom_degree_prob_approx(n, m, kappa, kappa_a, k);
}

// Untruncated first moment E[Y h(Y, Q)] for the Bernoulli law; diverges from
// kappa exactly when truncation at n bites.
inline double example2_kappa_prime(const std::vector<BernoulliYQAtom>& support) {
    double out = 0.0;
    for (const auto& atom : support) {
        if (atom.y < 2 || atom.q <= 0.0) continue;
        double y = static_cast<double>(atom.y);
        out += atom.w * y * (1.0 - detail::pow1m(atom.q, y - 1.0));
    }
    return out;
}

// Occupancy window for degree k: kappa m/n should sit between
// ln n + k ln(m/n) and ln n + (k+1) ln(m/n) for N_k to concentrate on
// nontrivial values; equivalently lambda(k) < 0 < lambda(k+1).
struct WindowReport {
    int k = 0;
    double lower = 0.0;
    double occupancy = 0.0;
    double upper = 0.0;
    double lambda_lo = 0.0;  // lambda(k)
    double lambda_hi = 0.0;  // lambda(k+1)
    bool inside = false;
    bool degenerate = false;  // m == n collapses the window
};

inline WindowReport window(long long n, long long m, double kappa, int k) {
    WindowReport w;
    w.k = k;
    double md = static_cast<double>(m);
    double ratio = md / static_cast<double>(n);
    w.lower = std::log(static_cast<double>(n)) + k * std::log(ratio);
    w.upper = std::log(static_cast<double>(n)) + (k + 1) * std::log(ratio);
    w.occupancy = kappa * ratio;
    w.lambda_lo = lambda_k(n, md, kappa, k);
    w.lambda_hi = lambda_k(n, md, kappa, k + 1);
    w.degenerate = (m == n);
    w.inside = (w.lambda_lo < 0.0) && (w.lambda_hi > 0.0);
    return w;
}

}  // namespace gul::theory

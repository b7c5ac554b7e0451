#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gen.hpp"
#include "model.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace gul::oracle {

// Joint outcome of one fully resolved union on small n.
struct Outcome {
    bool connected = false;
    int eta1 = 0;     // isolated vertices
    int dprime1 = 0;  // communities in which vertex 1 is non-isolated
    int delta = 0;    // minimum degree
    auto operator<=>(const Outcome&) const = default;
};

struct ExactDistribution {
    std::map<Outcome, Rational> p;

    Rational p_connected() const {
        Rational s = 0;
        for (const auto& [o, q] : p)
            if (o.connected) s += q;
        return s;
    }
    Rational p_eta1(int k) const {
        Rational s = 0;
        for (const auto& [o, q] : p)
            if (o.eta1 == k) s += q;
        return s;
    }
    Rational p_dprime1(int k) const {
        Rational s = 0;
        for (const auto& [o, q] : p)
            if (o.dprime1 == k) s += q;
        return s;
    }
    Rational p_delta(int k) const {
        Rational s = 0;
        for (const auto& [o, q] : p)
            if (o.delta == k) s += q;
        return s;
    }
};

namespace detail {

// Bit index of host pair (u < v), vertices 1-based, n <= 8 so < 28 bits.
inline int pair_bit(int u, int v, int n) {
    // Row u starts after sum_{a<u} (n - a) slots.
    int offset = 0;
    for (int a = 1; a < u; ++a) offset += n - a;
    return offset + (v - u - 1);
}

struct Copy {
    std::uint16_t members = 0;  // bit v-1 set when vertex v is a member
    std::uint32_t edges = 0;    // pair_bit mask
};

// All distinct embedded copies of one template into {1..n}. Every distinct
// copy arises from the same number of injections (the template's
// automorphism count), so uniform-over-copies equals uniform-over-injections.
inline std::vector<Copy> embedded_copies(const GraphTemplate& t, int n) {
    std::vector<Copy> out;
    std::set<std::pair<std::uint16_t, std::uint32_t>> seen;
    const int x = t.vertices;
    std::vector<int> subset(static_cast<size_t>(x));
    std::iota(subset.begin(), subset.end(), 1);
    auto next_subset = [&]() {
        int i = x - 1;
        while (i >= 0 && subset[static_cast<size_t>(i)] == n - (x - 1 - i)) --i;
        if (i < 0) return false;
        ++subset[static_cast<size_t>(i)];
        for (int j = i + 1; j < x; ++j)
            subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
        return true;
    };
    do {
        std::vector<int> perm(static_cast<size_t>(x));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            Copy c;
            for (int v : subset) c.members |= static_cast<std::uint16_t>(1u << (v - 1));
            for (const auto& [a, b] : t.edges) {
                int hu = subset[static_cast<size_t>(perm[static_cast<size_t>(a - 1)])];
                int hv = subset[static_cast<size_t>(perm[static_cast<size_t>(b - 1)])];
                if (hu > hv) std::swap(hu, hv);
                c.edges |= 1u << pair_bit(hu, hv, n);
            }
            if (seen.insert({c.members, c.edges}).second) out.push_back(c);
        } while (std::next_permutation(perm.begin(), perm.end()));
    } while (next_subset());
    return out;
}

}  // namespace detail

// Exhaustive distribution of (connected, eta1, d'(1), delta) for a fixed
// template model on n <= 8 vertices, communities cycling the template list.
// Throws when the total leaf count would exceed `budget`.
inline ExactDistribution enumerate_fixed_model(int n, long long m,
                                               const std::vector<GraphTemplate>& templates,
                                               unsigned long long budget = 1'000'000ULL) {
    if (n < 1 || n > 8) throw std::invalid_argument("enumerate_fixed_model: need 1 <= n <= 8");
    if (m < 1) throw std::invalid_argument("enumerate_fixed_model: need m >= 1");
    if (templates.empty()) throw std::invalid_argument("enumerate_fixed_model: no templates");
    for (const auto& t : templates) {
        if (t.vertices > n)
            throw std::invalid_argument("enumerate_fixed_model: template larger than n");
        if (t.vertices < 2 || t.edges.empty())
            throw std::invalid_argument("enumerate_fixed_model: degenerate template");
    }

    std::vector<std::vector<detail::Copy>> copies;
    copies.reserve(templates.size());
    for (const auto& t : templates) copies.push_back(detail::embedded_copies(t, n));

    BigInt leaves = 1;
    for (long long i = 0; i < m; ++i)
        leaves *= static_cast<long long>(copies[static_cast<size_t>(i) % copies.size()].size());
    if (leaves > BigInt(budget))
        throw std::invalid_argument("enumerate_fixed_model: " + leaves.str() +
                                    " leaves exceed budget " + std::to_string(budget));

    std::map<Outcome, long long> counts;
    const int edge_bits = n * (n - 1) / 2;
    std::vector<int> bit_u(static_cast<size_t>(edge_bits)), bit_v(static_cast<size_t>(edge_bits));
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) {
            int b = detail::pair_bit(u, v, n);
            bit_u[static_cast<size_t>(b)] = u;
            bit_v[static_cast<size_t>(b)] = v;
        }

    auto leaf = [&](std::uint32_t edge_mask, int dprime1) {
        std::uint16_t row[9] = {};
        for (int b = 0; b < edge_bits; ++b)
            if (edge_mask & (1u << b)) {
                int u = bit_u[static_cast<size_t>(b)], v = bit_v[static_cast<size_t>(b)];
                row[u] |= static_cast<std::uint16_t>(1u << (v - 1));
                row[v] |= static_cast<std::uint16_t>(1u << (u - 1));
            }
        Outcome o;
        o.dprime1 = dprime1;
        o.delta = n;
        for (int v = 1; v <= n; ++v) {
            int d = __builtin_popcount(row[v]);
            o.delta = std::min(o.delta, d);
            if (d == 0) ++o.eta1;
        }
        std::uint16_t all = static_cast<std::uint16_t>((1u << n) - 1u);
        std::uint16_t seen = 1, frontier = 1;
        while (frontier) {
            std::uint16_t next = 0;
            std::uint16_t f = frontier;
            while (f) {
                int v = __builtin_ctz(f) + 1;
                f = static_cast<std::uint16_t>(f & (f - 1));
                next |= row[v];
            }
            frontier = static_cast<std::uint16_t>(next & ~seen);
            seen |= next;
        }
        o.connected = (n == 1) || (seen == all);
        ++counts[o];
    };

    // Depth-first product over communities, OR-ing edge masks.
    std::vector<size_t> choice(static_cast<size_t>(m), 0);
    std::vector<std::uint32_t> acc_edges(static_cast<size_t>(m) + 1, 0);
    std::vector<int> acc_d1(static_cast<size_t>(m) + 1, 0);
    long long depth = 0;
    while (depth >= 0) {
        if (depth == m) {
            leaf(acc_edges[static_cast<size_t>(m)], acc_d1[static_cast<size_t>(m)]);
            --depth;
            continue;
        }
        auto& list = copies[static_cast<size_t>(depth) % copies.size()];
        size_t& c = choice[static_cast<size_t>(depth)];
        if (c == list.size()) {
            c = 0;
            --depth;
            continue;
        }
        const auto& copy = list[c++];
        acc_edges[static_cast<size_t>(depth) + 1] =
            acc_edges[static_cast<size_t>(depth)] | copy.edges;
        acc_d1[static_cast<size_t>(depth) + 1] =
            acc_d1[static_cast<size_t>(depth)] + static_cast<int>(copy.members & 1u);
        ++depth;
    }

    ExactDistribution dist;
    Rational total = leaves.convert_to<BigInt>();
    for (const auto& [o, c] : counts) dist.p[o] = Rational(c) / total;
    return dist;
}

// P{uniform K2 has one endpoint in a fixed r-set}: 2 r (n-r) / (n (n-1)).
inline Rational p_edge_connects(long long n, long long r) {
    if (n < 2) throw std::invalid_argument("p_edge_connects: n must be >= 2");
    if (r < 0 || r > n) throw std::invalid_argument("p_edge_connects: need 0 <= r <= n");
    return Rational(2 * r * (n - r), n * (n - 1));
}

// P{uniform cherry (path on 3) touches both sides}: crossing fails exactly
// when all three vertices land on one side, for any center position.
inline Rational p_cherry_connects(long long n, long long r) {
    if (n < 3) throw std::invalid_argument("p_cherry_connects: n must be >= 3");
    if (r < 0 || r > n) throw std::invalid_argument("p_cherry_connects: need 0 <= r <= n");
    BigInt denom = falling(n, 3);
    BigInt same = falling(r, 3) + falling(n - r, 3);
    return Rational(denom - same, denom);
}

// Lower bound (r/n)(1 - r/n) x - (1/2)(r/n)^2 x^2 for a basic graph on x
// vertices crossing an r-cut; valid in the regime 10 r <= n, 2 <= x <= n.
inline Rational basic_lower_bound_rational(long long n, long long r, long long x) {
    if (n < 1 || r < 1 || x < 2 || x > n || 10 * r > n)
        throw std::invalid_argument("basic_lower_bound_rational: out of regime");
    Rational rho(r, n);
    return rho * (Rational(1) - rho) * x - rho * rho * Rational(x * x, 2);
}

// Refined variant (r/n) x (1 - min{1, (3/2)(r/n) x}).
inline Rational r_basic_lower_bound_rational(long long n, long long r, long long x) {
    if (n < 1 || r < 1 || x < 2 || x > n || 10 * r > n)
        throw std::invalid_argument("r_basic_lower_bound_rational: out of regime");
    Rational rho(r, n);
    Rational inner = Rational(3, 2) * rho * x;
    if (inner > 1) inner = 1;
    return rho * Rational(x) * (Rational(1) - inner);
}

// One conditional-crossing class in a correlation computation.
struct CorrelationClass {
    std::string label;
    Rational weight;       // P{class | first structure crosses}
    Rational conditional;  // P{second structure crosses | class}
};

struct CorrelationCheck {
    std::string name;
    long long n = 0;
    long long r = 0;
    bool applicable = false;
    std::string skip_reason;
    Rational joint;    // P{both cross}
    Rational product;  // P{first crosses}^2 or product of marginals
    bool strict = false;
    std::vector<CorrelationClass> classes;
};

namespace detail {

// Crossing classes of a uniform (set, center) cherry against an r-cut:
// label, count of configurations, front vertices used, back vertices used.
struct CherryClass {
    const char* label;
    BigInt count;
    long long front;
    long long back;
};

inline std::vector<CherryClass> cherry_crossing_classes(long long n, long long r) {
    std::vector<CherryClass> cls;
    cls.push_back({"center-front-leaves-split", 2 * binomial(r, 2) * (n - r), 2, 1});
    cls.push_back({"center-back-leaves-split", 2 * binomial(n - r, 2) * r, 1, 2});
    cls.push_back({"center-front-leaves-back", binomial(n - r, 2) * r, 1, 2});
    cls.push_back({"center-back-leaves-front", binomial(r, 2) * (n - r), 2, 1});
    return cls;
}

}  // namespace detail

// Negative correlation of crossing events for vertex-disjoint structures
// drawn without replacement: the second structure sees a thinner front side.
inline std::vector<CorrelationCheck> check_negative_correlation(long long n, long long r) {
    std::vector<CorrelationCheck> out;

    {  // edge then disjoint edge, regime 4r <= n
        CorrelationCheck c;
        c.name = "edge-edge";
        c.n = n;
        c.r = r;
        if (n >= 4 && r >= 1 && 4 * r <= n) {
            c.applicable = true;
            Rational p1 = p_edge_connects(n, r);
            Rational cond(((r - 1) * (n - r - 1)) * 2, (n - 2) * (n - 3));
            c.classes.push_back({"front-back", 1, cond});
            c.joint = p1 * cond;
            c.product = p1 * p1;
            c.strict = c.joint < c.product;
        } else {
            c.skip_reason = "needs n >= 4 and 4r <= n";
        }
        out.push_back(std::move(c));
    }

    {  // edge then disjoint cherry, regime 6r <= n
        CorrelationCheck c;
        c.name = "edge-cherry";
        c.n = n;
        c.r = r;
        if (n >= 5 && r >= 1 && 6 * r <= n) {
            c.applicable = true;
            Rational p_edge = p_edge_connects(n, r);
            Rational p_cherry = p_cherry_connects(n, r);
            // Condition on the cherry's crossing class, then place the edge
            // on the remaining n-3 vertices.
            BigInt m_t = 3 * binomial(n, 3);
            Rational joint = 0;
            for (const auto& k : detail::cherry_crossing_classes(n, r)) {
                if (k.count == 0) continue;
                Rational weight(k.count, m_t);
                Rational cond(2 * (r - k.front) * (n - r - k.back), (n - 3) * (n - 4));
                if (cond < 0) cond = 0;
                c.classes.push_back({k.label, weight, cond});
                joint += weight * cond;
            }
            c.joint = joint;
            c.product = p_cherry * p_edge;
            c.strict = c.joint < c.product;
        } else {
            c.skip_reason = "needs n >= 5 and 6r <= n";
        }
        out.push_back(std::move(c));
    }

    {  // cherry then disjoint cherry, regime 10r <= n
        CorrelationCheck c;
        c.name = "cherry-cherry";
        c.n = n;
        c.r = r;
        if (n >= 6 && r >= 1 && 10 * r <= n) {
            c.applicable = true;
            Rational p_cherry = p_cherry_connects(n, r);
            BigInt m_t = 3 * binomial(n, 3);
            Rational joint = 0;
            for (const auto& k : detail::cherry_crossing_classes(n, r)) {
                if (k.count == 0) continue;
                Rational weight(k.count, m_t);
                long long r2 = r - k.front;
                Rational cond =
                    (r2 >= 0) ? p_cherry_connects(n - 3, r2) : Rational(0);
                c.classes.push_back({k.label, weight, cond});
                joint += weight * cond;
            }
            c.joint = joint;
            c.product = p_cherry * p_cherry;
            c.strict = c.joint < c.product;
        } else {
            c.skip_reason = "needs n >= 6 and 10r <= n";
        }
        out.push_back(std::move(c));
    }

    return out;
}

// b! e_b(a) = (sum a)^b - R with 0 <= R <= (b(b-1)/2)(sum a^2)(sum a)^{b-2}.
struct Fact1Check {
    Rational lhs;        // b! * e_b(a)
    Rational power;      // (sum a)^b
    Rational remainder;  // power - lhs
    Rational bound;
    bool pass = false;
};

inline Fact1Check fact1_check(const std::vector<Rational>& a, int b) {
    if (b < 2) throw std::invalid_argument("fact1_check: b must be >= 2");
    for (const auto& v : a)
        if (v < 0) throw std::invalid_argument("fact1_check: entries must be nonnegative");

    // Elementary symmetric polynomials by the usual one-pass recurrence.
    std::vector<Rational> e(static_cast<size_t>(b) + 1, 0);
    e[0] = 1;
    for (const auto& v : a)
        for (int j = b; j >= 1; --j)
            e[static_cast<size_t>(j)] += e[static_cast<size_t>(j - 1)] * v;

    Rational sum = 0, sum_sq = 0;
    for (const auto& v : a) {
        sum += v;
        sum_sq += v * v;
    }
    Fact1Check out;
    Rational fact = 1;
    for (int i = 2; i <= b; ++i) fact *= i;
    out.lhs = fact * e[static_cast<size_t>(b)];
    out.power = 1;
    for (int i = 0; i < b; ++i) out.power *= sum;
    out.remainder = out.power - out.lhs;
    Rational pow_bm2 = 1;
    for (int i = 0; i < b - 2; ++i) pow_bm2 *= sum;
    out.bound = Rational(static_cast<long long>(b) * (b - 1), 2) * sum_sq * pow_bm2;
    out.pass = out.remainder >= 0 && out.remainder <= out.bound;
    return out;
}

// Monte-Carlo sanity check that a template's cut-crossing rate clears one of
// the closed-form lower bounds with room to spare (4 sigma).
struct BoundCheck {
    double estimate = 0.0;
    double sigma = 0.0;
    double bound = 0.0;
    bool pass = false;
};

inline BoundCheck check_basic_bound(const GraphTemplate& t, long long n, long long r,
                                    long long trials, std::uint64_t seed, double bound) {
    if (trials < 1) throw std::invalid_argument("check_basic_bound: trials must be >= 1");
    if (r < 1 || r >= n) throw std::invalid_argument("check_basic_bound: need 1 <= r < n");
    long long hits = 0;
    for (long long i = 0; i < trials; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        CommunityInstance c = embed_fixed_graph(t, n, rng);
        for (const auto& [u, v] : c.edges)
            if ((static_cast<long long>(u) <= r) != (static_cast<long long>(v) <= r)) {
                ++hits;
                break;
            }
    }
    BoundCheck out;
    out.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    out.sigma = std::sqrt(std::max(out.estimate * (1.0 - out.estimate), 1e-12) /
                          static_cast<double>(trials));
    out.bound = bound;
    out.pass = out.estimate - 4.0 * out.sigma > bound;
    return out;
}

}  // namespace gul::oracle

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <gul/gen.hpp>
#include <gul/model.hpp>
#include <gul/rng.hpp>

using namespace gul;

namespace {

// Upper tail of the chi-square distribution with k degrees of freedom,
// via the regularized incomplete gamma function (series + continued
// fraction, Lentz's method).
double chi2_sf(double x, int k) {
    double a = k / 2.0, half = x / 2.0;
    if (half <= 0) return 1.0;
    auto lg = std::lgamma(a);
    if (half < a + 1.0) {
        // Lower series P(a, x), return 1 - P.
        double term = 1.0 / a, sum = term, ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= half / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        double p = sum * std::exp(-half + a * std::log(half) - lg);
        return 1.0 - p;
    }
    // Continued fraction for Q(a, x).
    double b = half + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return std::exp(-half + a * std::log(half) - lg) * h;
}

GraphTemplate k2() { return {2, {{1, 2}}}; }
GraphTemplate cherry() { return {3, {{1, 2}, {1, 3}}}; }

}  // namespace

TEST_CASE("sample_subset returns sorted distinct vertices in range", "[gen]") {
    RngStream rng(1, 0);
    for (int rep = 0; rep < 100; ++rep) {
        auto s = gul::detail::sample_subset(12, 5, rng);
        REQUIRE(s.size() == 5);
        CHECK(std::is_sorted(s.begin(), s.end()));
        CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
        CHECK(s.front() >= 1);
        CHECK(s.back() <= 12);
    }
}

TEST_CASE("sample_subset size n returns the full vertex set", "[gen]") {
    RngStream rng(2, 0);
    auto s = gul::detail::sample_subset(6, 6, rng);
    CHECK(s == std::vector<VertexId>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("sample_subset is uniform over subsets", "[gen]") {
    // All C(5,2) = 10 subsets equally likely: chi-square on 20000 draws.
    RngStream rng(3, 0);
    std::map<std::pair<VertexId, VertexId>, long long> counts;
    const long long draws = 20000;
    for (long long i = 0; i < draws; ++i) {
        auto s = gul::detail::sample_subset(5, 2, rng);
        ++counts[{s[0], s[1]}];
    }
    REQUIRE(counts.size() == 10);
    double expect = static_cast<double>(draws) / 10.0;
    double chi2 = 0;
    for (const auto& [key, c] : counts) {
        double d = static_cast<double>(c) - expect;
        chi2 += d * d / expect;
    }
    CHECK(chi2_sf(chi2, 9) > 0.001);
}

TEST_CASE("embed_fixed_graph preserves the template degree multiset", "[gen]") {
    RngStream rng(4, 0);
    for (int rep = 0; rep < 200; ++rep) {
        CommunityInstance c = embed_fixed_graph(cherry(), 10, rng);
        REQUIRE(c.members.size() == 3);
        REQUIRE(c.edges.size() == 2);
        std::map<VertexId, int> deg;
        for (auto [u, v] : c.edges) {
            ++deg[u];
            ++deg[v];
        }
        std::vector<int> degrees;
        for (auto [v, d] : deg) degrees.push_back(d);
        std::sort(degrees.begin(), degrees.end());
        CHECK(degrees == std::vector<int>{1, 1, 2});
        CHECK(std::is_sorted(c.edges.begin(), c.edges.end()));
    }
}

TEST_CASE("embed_fixed_graph places the cherry center exchangeably", "[gen]") {
    // On n=3 the cherry's center lands on each vertex with probability 1/3.
    RngStream rng(5, 0);
    std::map<VertexId, long long> center_counts;
    const long long draws = 30000;
    for (long long i = 0; i < draws; ++i) {
        CommunityInstance c = embed_fixed_graph(cherry(), 3, rng);
        std::map<VertexId, int> deg;
        for (auto [u, v] : c.edges) {
            ++deg[u];
            ++deg[v];
        }
        for (auto [v, d] : deg)
            if (d == 2) ++center_counts[v];
    }
    double expect = static_cast<double>(draws) / 3.0;
    double chi2 = 0;
    for (VertexId v = 1; v <= 3; ++v) {
        double d = static_cast<double>(center_counts[v]) - expect;
        chi2 += d * d / expect;
    }
    CHECK(chi2_sf(chi2, 2) > 0.001);
}

TEST_CASE("bernoulli community matches closed-form edge statistics", "[gen]") {
    SECTION("q = 1 gives the complete graph on the subset") {
        RngStream rng(6, 0);
        CommunityInstance c = sample_bernoulli_community(4, 1.0, 10, rng);
        CHECK(c.edges.size() == 6);
    }
    SECTION("q = 0 gives members but no edges") {
        RngStream rng(7, 0);
        CommunityInstance c = sample_bernoulli_community(4, 0.0, 10, rng);
        CHECK(c.members.size() == 4);
        CHECK(c.edges.empty());
    }
    SECTION("y > n truncates to n") {
        RngStream rng(8, 0);
        CommunityInstance c = sample_bernoulli_community(99, 0.5, 6, rng);
        CHECK(c.members.size() == 6);
    }
    SECTION("sparse path: edge count mean within 4 sigma of binomial") {
        // q = 0.05 <= 0.1 exercises the geometric-skip sampler.
        const double q = 0.05;
        const long long y = 20, pairs = y * (y - 1) / 2;
        const long long draws = 20000;
        long long total = 0;
        for (long long i = 0; i < draws; ++i) {
            RngStream rng(9, static_cast<std::uint64_t>(i));
            total += static_cast<long long>(sample_bernoulli_community(y, q, 50, rng).edges.size());
        }
        double mean = static_cast<double>(total) / static_cast<double>(draws);
        double expect = static_cast<double>(pairs) * q;
        double sigma = std::sqrt(static_cast<double>(pairs) * q * (1 - q) /
                                 static_cast<double>(draws));
        CHECK(std::abs(mean - expect) <= 4 * sigma);
    }
    SECTION("sparse path: per-pair marginal is uniform") {
        // Each of the C(6,2)=15 pairs of a full-size community fires equally often.
        const double q = 0.08;
        std::map<Edge, long long> counts;
        const long long draws = 30000;
        for (long long i = 0; i < draws; ++i) {
            RngStream rng(10, static_cast<std::uint64_t>(i));
            CommunityInstance c = sample_bernoulli_community(6, q, 6, rng);
            for (const auto& e : c.edges) ++counts[e];
        }
        double expect = static_cast<double>(draws) * q;
        double chi2 = 0;
        for (VertexId u = 1; u <= 6; ++u)
            for (VertexId v = u + 1; v <= 6; ++v) {
                double c = static_cast<double>(counts[{u, v}]);
                chi2 += (c - expect) * (c - expect) / expect;
            }
        CHECK(chi2_sf(chi2, 14) > 0.001);
    }
    SECTION("edges come out sorted without duplicates") {
        for (int i = 0; i < 50; ++i) {
            RngStream rng(11, static_cast<std::uint64_t>(i));
            CommunityInstance c = sample_bernoulli_community(12, 0.07, 30, rng);
            CHECK(std::is_sorted(c.edges.begin(), c.edges.end()));
            CHECK(std::adjacent_find(c.edges.begin(), c.edges.end()) == c.edges.end());
        }
    }
}

TEST_CASE("clique community is complete on its subset", "[gen]") {
    RngStream rng(12, 0);
    CommunityInstance c = sample_clique_community(4, 9, rng);
    REQUIRE(c.members.size() == 4);
    CHECK(c.edges.size() == 6);
    for (const auto& [u, v] : c.edges) {
        CHECK(std::binary_search(c.members.begin(), c.members.end(), u));
        CHECK(std::binary_search(c.members.begin(), c.members.end(), v));
    }
}

TEST_CASE("sample_union cycles fixed templates in order", "[gen]") {
    ModelSpec spec;
    spec.n = 12;
    spec.m = 5;
    spec.kind = FixedGraphs{{k2(), cherry()}};
    UnionGraph g = sample_union(spec, 99);
    REQUIRE(g.communities.size() == 5);
    CHECK(g.communities[0].members.size() == 2);
    CHECK(g.communities[1].members.size() == 3);
    CHECK(g.communities[2].members.size() == 2);
    CHECK(g.communities[3].members.size() == 3);
    CHECK(g.communities[4].members.size() == 2);
}

TEST_CASE("sample_union rejects invalid specs with a report", "[gen]") {
    ModelSpec spec;
    spec.n = 2;
    spec.m = 1;
    spec.kind = FixedGraphs{{{3, {{1, 2}, {2, 3}}}}};
    CHECK_THROWS_AS(sample_union(spec, 1), spec_error);
}

TEST_CASE("sample_union is deterministic in the seed", "[gen]") {
    ModelSpec spec;
    spec.n = 30;
    spec.m = 10;
    spec.kind = BernoulliYQ{{{4, 0.5, 0.5}, {6, 0.3, 0.5}}};
    UnionGraph g1 = sample_union(spec, 1234);
    UnionGraph g2 = sample_union(spec, 1234);
    UnionGraph g3 = sample_union(spec, 1235);
    REQUIRE(g1.communities.size() == g2.communities.size());
    bool same = true;
    for (size_t i = 0; i < g1.communities.size(); ++i) {
        same = same && g1.communities[i].members == g2.communities[i].members &&
               g1.communities[i].edges == g2.communities[i].edges;
    }
    CHECK(same);
    bool differs = g1.edge_count != g3.edge_count;
    for (size_t i = 0; !differs && i < g1.communities.size(); ++i)
        differs = g1.communities[i].members != g3.communities[i].members;
    CHECK(differs);
}

TEST_CASE("two random K2 communities on three vertices connect 2/3 of the time", "[gen]") {
    ModelSpec spec;
    spec.n = 3;
    spec.m = 2;
    spec.kind = FixedGraphs{{k2()}};
    const long long trials = 20000;
    long long connected = 0;
    for (long long t = 0; t < trials; ++t) {
        UnionGraph g = sample_union(spec, RngStream::derive_seed(777, static_cast<std::uint64_t>(t)));
        // Connected on n=3 means both possible unions differ: exactly when the
        // two edges differ.
        bool conn = true;
        for (VertexId v = 1; v <= 3; ++v)
            if (g.degree(v) == 0) conn = false;
        connected += conn ? 1 : 0;
    }
    double p = static_cast<double>(connected) / static_cast<double>(trials);
    double sigma = std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / static_cast<double>(trials));
    CHECK(std::abs(p - 2.0 / 3.0) <= 3 * sigma);
}

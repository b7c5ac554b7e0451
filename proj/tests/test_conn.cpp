#include <algorithm>
#include <numeric>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include <gul/conn.hpp>
#include <gul/gen.hpp>
#include <gul/model.hpp>
#include <gul/rng.hpp>

using namespace gul;

namespace {

UnionGraph from_edges(long long n, std::vector<Edge> edges) {
    CommunityInstance c;
    c.members.resize(static_cast<size_t>(n));
    std::iota(c.members.begin(), c.members.end(), VertexId{1});
    for (auto& e : edges) e = make_edge(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    c.edges = std::move(edges);
    return build_union(n, {std::move(c)});
}

UnionGraph cycle(int n) {
    std::vector<Edge> e;
    for (int v = 1; v < n; ++v) e.push_back({static_cast<VertexId>(v), static_cast<VertexId>(v + 1)});
    e.push_back({1, static_cast<VertexId>(n)});
    return from_edges(n, std::move(e));
}

UnionGraph complete(int n) {
    std::vector<Edge> e;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            e.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
    return from_edges(n, std::move(e));
}

}  // namespace

TEST_CASE("component census on a two-component graph", "[conn]") {
    // Path 1-2-3 plus edge 4-5 plus isolated 6.
    UnionGraph g = from_edges(6, {{1, 2}, {2, 3}, {4, 5}});
    ComponentCensus c = component_census(g);
    CHECK(c.components == 3);
    CHECK(c.eta(1) == 1);
    CHECK(c.eta(2) == 1);
    CHECK(c.eta(3) == 1);
    CHECK(c.eta(4) == 0);
    CHECK(c.label[1] == c.label[3]);
    CHECK(c.label[4] == c.label[5]);
    CHECK(c.label[1] != c.label[4]);
    CHECK_FALSE(is_connected(g));
}

TEST_CASE("vertex connectivity of standard graphs", "[conn]") {
    CHECK(vertex_connectivity(cycle(5)) == 2);
    CHECK(vertex_connectivity(complete(4)) == 3);
    CHECK(vertex_connectivity(complete(5)) == 4);
    // Star K_{1,4}: center 1.
    CHECK(vertex_connectivity(from_edges(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}})) == 1);
    // Path on 3 vertices.
    CHECK(vertex_connectivity(from_edges(3, {{1, 2}, {2, 3}})) == 1);
    // Two triangles sharing vertex 3: cut vertex.
    CHECK(vertex_connectivity(from_edges(5, {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}})) == 1);
    // Disconnected and single-vertex graphs have connectivity 0.
    CHECK(vertex_connectivity(from_edges(4, {{1, 2}})) == 0);
    CHECK(vertex_connectivity(from_edges(1, {})) == 0);
}

TEST_CASE("is_k_vertex_connected thresholds match kappa", "[conn]") {
    UnionGraph g = cycle(6);
    CHECK(is_k_vertex_connected(g, 1));
    CHECK(is_k_vertex_connected(g, 2));
    CHECK_FALSE(is_k_vertex_connected(g, 3));
    // K_4 is 3-connected but has only 4 vertices, so not 4-connected.
    UnionGraph k4 = complete(4);
    CHECK(is_k_vertex_connected(k4, 3));
    CHECK_FALSE(is_k_vertex_connected(k4, 4));
    CHECK_THROWS_AS(is_k_vertex_connected(g, 0), std::invalid_argument);
}

TEST_CASE("brute-force connectivity agrees on hand-checked graphs", "[conn]") {
    CHECK(brute_force_vertex_connectivity(cycle(5)) == 2);
    CHECK(brute_force_vertex_connectivity(complete(5)) == 4);
    CHECK(brute_force_vertex_connectivity(from_edges(3, {{1, 2}, {2, 3}})) == 1);
    UnionGraph big = complete(17);
    CHECK_THROWS_AS(brute_force_vertex_connectivity(big), std::invalid_argument);
}

TEST_CASE("flow connectivity equals brute force on random unions", "[conn]") {
    for (int i = 0; i < 200; ++i) {
        ModelSpec spec;
        RngStream shape(0xC0117E57ULL, static_cast<std::uint64_t>(i));
        spec.n = 4 + static_cast<long long>(shape.uniform_below(9));  // 4..12
        spec.m = 1 + static_cast<long long>(shape.uniform_below(6));  // 1..6
        switch (i % 3) {
            case 0:
                spec.kind = FixedGraphs{{{2, {{1, 2}}}, {3, {{1, 2}, {1, 3}}}}};
                break;
            case 1: {
                long long y = 2 + static_cast<long long>(shape.uniform_below(
                                      static_cast<std::uint64_t>(spec.n - 1)));
                spec.kind = BernoulliYQ{{{y, 0.6, 1.0}}};
                break;
            }
            default:
                spec.kind = CliqueSizes{{{2 + static_cast<long long>(shape.uniform_below(3)), 1.0}}};
        }
        UnionGraph g = sample_union(spec, RngStream::derive_seed(0xF00DULL, static_cast<std::uint64_t>(i)));
        int flow = vertex_connectivity(g);
        int brute = brute_force_vertex_connectivity(g);
        INFO("case " << i << " n=" << spec.n << " m=" << spec.m);
        REQUIRE(flow == brute);
        // Whitney: kappa <= delta.
        CHECK(flow <= min_degree(g));
        // k-connectivity is monotone in k and consistent with kappa.
        bool prev = true;
        for (int k = 1; k <= min_degree(g) + 1; ++k) {
            bool now = is_k_vertex_connected(g, k);
            CHECK((prev || !now));
            CHECK(now == (flow >= k));
            prev = now;
        }
    }
}

TEST_CASE("remove_vertices relabels and preserves structure", "[conn]") {
    // Star with center 3 on 5 vertices: removing the center disconnects.
    UnionGraph g = from_edges(5, {{3, 1}, {3, 2}, {3, 4}, {3, 5}});
    auto [reduced, old_of] = remove_vertices(g, {3});
    CHECK(reduced.n == 4);
    CHECK(reduced.edge_count == 0);
    CHECK_FALSE(is_connected(reduced));
    REQUIRE(old_of.size() == 5);  // slot 0 unused + 4 survivors
    CHECK(old_of[1] == 1);
    CHECK(old_of[2] == 2);
    CHECK(old_of[3] == 4);
    CHECK(old_of[4] == 5);

    // Removing a leaf from a path keeps the rest intact.
    UnionGraph p = from_edges(4, {{1, 2}, {2, 3}, {3, 4}});
    auto [rest, labels] = remove_vertices(p, {1});
    CHECK(rest.n == 3);
    CHECK(rest.edge_count == 2);
    CHECK(is_connected(rest));
    CHECK(labels[1] == 2);

    CHECK_THROWS_AS(remove_vertices(p, {0}), std::invalid_argument);
    CHECK_THROWS_AS(remove_vertices(p, {9}), std::invalid_argument);
    CHECK_THROWS_AS(remove_vertices(p, {1, 2, 3, 4}), std::invalid_argument);
}

#include <catch2/catch_amalgamated.hpp>

#include <gul/model.hpp>

using namespace gul;

namespace {

ModelSpec k2_spec(long long n, long long m) {
    ModelSpec s;
    s.n = n;
    s.m = m;
    s.kind = FixedGraphs{{{2, {{1, 2}}}}};
    return s;
}

}  // namespace

TEST_CASE("validate_spec accepts a well-formed fixed-template spec", "[model]") {
    CHECK(validate_spec(k2_spec(10, 3)).ok());
}

TEST_CASE("validate_spec pinpoints defects by field path", "[model]") {
    SECTION("nonpositive n and m") {
        ModelSpec s = k2_spec(0, 0);
        auto rep = validate_spec(s);
        // n = 0 also makes the template oversized, so expect at least n and m.
        REQUIRE(rep.issues.size() >= 2);
        CHECK(rep.issues[0].field == "n");
        CHECK(rep.issues[1].field == "m");
    }
    SECTION("self-loop in a template") {
        ModelSpec s;
        s.n = 5;
        s.m = 1;
        s.kind = FixedGraphs{{{3, {{1, 2}, {3, 3}}}}};
        auto rep = validate_spec(s);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues[0].field == "kind.fixed_graphs[0].edges[1]");
        CHECK(rep.issues[0].message == "self-loop");
    }
    SECTION("duplicate edge, either orientation") {
        ModelSpec s;
        s.n = 5;
        s.m = 1;
        s.kind = FixedGraphs{{{2, {{1, 2}, {2, 1}}}}};
        auto rep = validate_spec(s);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues[0].message == "duplicate edge");
    }
    SECTION("isolated template vertex") {
        ModelSpec s;
        s.n = 5;
        s.m = 1;
        s.kind = FixedGraphs{{{3, {{1, 2}}}}};
        auto rep = validate_spec(s);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues[0].message.find("isolated") != std::string::npos);
    }
    SECTION("template larger than the host graph") {
        ModelSpec s;
        s.n = 2;
        s.m = 1;
        s.kind = FixedGraphs{{{3, {{1, 2}, {2, 3}}}}};
        CHECK_FALSE(validate_spec(s).ok());
    }
    SECTION("bernoulli support validation") {
        ModelSpec s;
        s.n = 10;
        s.m = 1;
        s.kind = BernoulliYQ{{{-1, 1.5, 0.0}}};
        auto rep = validate_spec(s);
        REQUIRE(rep.issues.size() >= 3);
        CHECK(rep.issues[0].field == "kind.bernoulli_yq.support[0].y");
        CHECK(rep.issues[1].field == "kind.bernoulli_yq.support[0].q");
        CHECK(rep.issues[2].field == "kind.bernoulli_yq.support[0].w");
    }
    SECTION("weights must sum to one") {
        ModelSpec s;
        s.n = 10;
        s.m = 1;
        s.kind = CliqueSizes{{{2, 0.4}, {3, 0.4}}};
        auto rep = validate_spec(s);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues[0].field == "kind.clique_sizes.support");
    }
}

TEST_CASE("canonicalize sorts and dedupes members and edges", "[model]") {
    CommunityInstance c;
    c.members = {4, 1, 3, 1};
    c.edges = {{4, 1}, {1, 4}, {3, 1}};
    canonicalize(c);
    CHECK(c.members == std::vector<VertexId>{1, 3, 4});
    CHECK(c.edges == std::vector<Edge>{{1, 3}, {1, 4}});
}

TEST_CASE("build_union overlays communities into a simple graph", "[model]") {
    CommunityInstance a{{1, 2, 3}, {{1, 2}, {2, 3}}};
    CommunityInstance b{{2, 3, 4}, {{2, 3}, {3, 4}}};
    UnionGraph g = build_union(5, {a, b});
    CHECK(g.n == 5);
    CHECK(g.edge_count == 3);  // {2,3} appears in both communities
    CHECK(g.degree(2) == 2);
    CHECK(g.degree(5) == 0);
    CHECK(g.has_edge(2, 3));
    CHECK(g.has_edge(3, 2));
    CHECK_FALSE(g.has_edge(1, 4));
    for (VertexId v = 1; v <= 5; ++v)
        CHECK(std::is_sorted(g.adj[v].begin(), g.adj[v].end()));
    CHECK(g.communities.size() == 2);
}

TEST_CASE("build_union rejects inconsistent communities", "[model]") {
    SECTION("member outside host range") {
        CommunityInstance c{{1, 9}, {{1, 9}}};
        CHECK_THROWS_AS(build_union(5, {c}), std::invalid_argument);
    }
    SECTION("edge endpoint that is not a member") {
        CommunityInstance c{{1, 2}, {{1, 3}}};
        CHECK_THROWS_AS(build_union(5, {c}), std::invalid_argument);
    }
    SECTION("self-loop") {
        CommunityInstance c{{1, 2}, {{2, 2}}};
        CHECK_THROWS_AS(build_union(5, {c}), std::invalid_argument);
    }
}

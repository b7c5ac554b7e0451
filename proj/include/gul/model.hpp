#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gul {

// Vertices of the host graph K_n are 1..n.
using VertexId = std::uint32_t;

// Canonical undirected edge: first < second.
using Edge = std::pair<VertexId, VertexId>;

inline Edge make_edge(VertexId a, VertexId b) {
    return a < b ? Edge{a, b} : Edge{b, a};
}

// A fixed community template on its own vertex set 1..vertices.
struct GraphTemplate {
    int vertices = 0;
    std::vector<Edge> edges;
};

struct BernoulliYQAtom {
    long long y = 0;  // community size before truncation at n
    double q = 0.0;   // within-community edge probability
    double w = 0.0;   // atom weight
};

struct CliqueSizeAtom {
    long long size = 0;
    double w = 0.0;
};

struct FixedGraphs {
    std::vector<GraphTemplate> templates;
};

struct BernoulliYQ {
    std::vector<BernoulliYQAtom> support;
};

struct CliqueSizes {
    std::vector<CliqueSizeAtom> support;
};

using ModelKind = std::variant<FixedGraphs, BernoulliYQ, CliqueSizes>;

struct ModelSpec {
    long long n = 0;  // host vertex count
    long long m = 0;  // number of communities
    ModelKind kind;
};

struct ValidationIssue {
    std::string field;   // e.g. "kind.fixed_graphs[0].edges[2]"
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string to_string() const {
        std::ostringstream os;
        for (const auto& it : issues) os << it.field << ": " << it.message << "\n";
        return os.str();
    }
};

// Thrown when an invalid spec reaches an operation that requires a valid one.
class spec_error : public std::runtime_error {
  public:
    explicit spec_error(ValidationReport report)
        : std::runtime_error("invalid model spec:\n" + report.to_string()),
          report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

  private:
    ValidationReport report_;
};

// One sampled community: which host vertices it occupies and its edges among
// them (host labels, canonical, sorted, deduplicated).
struct CommunityInstance {
    std::vector<VertexId> members;  // sorted ascending
    std::vector<Edge> edges;        // canonical and sorted
};

// Union of the sampled communities, as a plain simple graph plus provenance.
struct UnionGraph {
    long long n = 0;
    std::vector<std::vector<VertexId>> adj;  // 1-based; adj[0] unused; rows sorted
    std::vector<CommunityInstance> communities;
    long long edge_count = 0;

    int degree(VertexId v) const { return static_cast<int>(adj[v].size()); }

    bool has_edge(VertexId u, VertexId v) const {
        const auto& row = adj[u];
        return std::binary_search(row.begin(), row.end(), v);
    }
};

namespace detail {

inline void validate_template(const GraphTemplate& t, long long n, const std::string& base,
                              ValidationReport& rep) {
    if (t.vertices < 2)
        rep.issues.push_back({base + ".vertices", "template needs at least 2 vertices"});
    if (t.vertices > n)
        rep.issues.push_back({base + ".vertices", "template larger than host graph"});
    if (t.edges.empty())
        rep.issues.push_back({base + ".edges", "template has no edges"});
    std::vector<char> touched(static_cast<size_t>(std::max(t.vertices, 0)) + 1, 0);
    std::vector<Edge> seen;
    for (size_t i = 0; i < t.edges.size(); ++i) {
        const std::string field = base + ".edges[" + std::to_string(i) + "]";
        auto [a, b] = t.edges[i];
        if (a == b) {
            rep.issues.push_back({field, "self-loop"});
            continue;
        }
        if (a < 1 || b < 1 || static_cast<long long>(a) > t.vertices ||
            static_cast<long long>(b) > t.vertices) {
            rep.issues.push_back({field, "endpoint outside 1..vertices"});
            continue;
        }
        Edge e = make_edge(a, b);
        if (std::find(seen.begin(), seen.end(), e) != seen.end()) {
            rep.issues.push_back({field, "duplicate edge"});
            continue;
        }
        seen.push_back(e);
        touched[a] = touched[b] = 1;
    }
    for (int v = 1; v <= t.vertices; ++v)
        if (!touched[v])
            rep.issues.push_back(
                {base, "vertex " + std::to_string(v) + " is isolated in the template"});
}

inline void validate_weights(double total, const std::string& base, ValidationReport& rep) {
    if (std::abs(total - 1.0) > 1e-9)
        rep.issues.push_back({base, "weights must sum to 1 (got " + std::to_string(total) + ")"});
}

}  // namespace detail

inline ValidationReport validate_spec(const ModelSpec& spec) {
    ValidationReport rep;
    if (spec.n < 1) rep.issues.push_back({"n", "must be >= 1"});
    if (spec.m < 1) rep.issues.push_back({"m", "must be >= 1"});
    if (const auto* fg = std::get_if<FixedGraphs>(&spec.kind)) {
        if (fg->templates.empty())
            rep.issues.push_back({"kind.fixed_graphs", "needs at least one template"});
        for (size_t i = 0; i < fg->templates.size(); ++i)
            detail::validate_template(fg->templates[i], spec.n,
                                      "kind.fixed_graphs[" + std::to_string(i) + "]", rep);
    } else if (const auto* by = std::get_if<BernoulliYQ>(&spec.kind)) {
        if (by->support.empty())
            rep.issues.push_back({"kind.bernoulli_yq.support", "must be nonempty"});
        double total = 0;
        for (size_t i = 0; i < by->support.size(); ++i) {
            const std::string base = "kind.bernoulli_yq.support[" + std::to_string(i) + "]";
            const auto& a = by->support[i];
            if (a.y < 0) rep.issues.push_back({base + ".y", "must be >= 0"});
            if (!(a.q >= 0.0 && a.q <= 1.0))
                rep.issues.push_back({base + ".q", "must lie in [0,1]"});
            if (!(a.w > 0.0)) rep.issues.push_back({base + ".w", "must be > 0"});
            total += a.w;
        }
        if (!by->support.empty())
            detail::validate_weights(total, "kind.bernoulli_yq.support", rep);
    } else if (const auto* cs = std::get_if<CliqueSizes>(&spec.kind)) {
        if (cs->support.empty())
            rep.issues.push_back({"kind.clique_sizes.support", "must be nonempty"});
        double total = 0;
        for (size_t i = 0; i < cs->support.size(); ++i) {
            const std::string base = "kind.clique_sizes.support[" + std::to_string(i) + "]";
            const auto& a = cs->support[i];
            if (a.size < 0) rep.issues.push_back({base + ".size", "must be >= 0"});
            if (!(a.w > 0.0)) rep.issues.push_back({base + ".w", "must be > 0"});
            total += a.w;
        }
        if (!cs->support.empty())
            detail::validate_weights(total, "kind.clique_sizes.support", rep);
    }
    return rep;
}

// Sort members, canonicalize + sort + dedupe edges, in place.
inline void canonicalize(CommunityInstance& c) {
    std::sort(c.members.begin(), c.members.end());
    c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
    for (auto& e : c.edges) e = make_edge(e.first, e.second);
    std::sort(c.edges.begin(), c.edges.end());
    c.edges.erase(std::unique(c.edges.begin(), c.edges.end()), c.edges.end());
}

// Overlay communities into one simple graph. Communities must already be
// canonical; each edge's endpoints must be members of its community.
inline UnionGraph build_union(long long n, std::vector<CommunityInstance> communities) {
    if (n < 1) throw std::invalid_argument("build_union: n must be >= 1");
    size_t total_edges = 0;
    for (size_t i = 0; i < communities.size(); ++i) {
        const auto& c = communities[i];
        for (VertexId v : c.members)
            if (v < 1 || static_cast<long long>(v) > n)
                throw std::invalid_argument("build_union: community " + std::to_string(i) +
                                            " has member outside 1..n");
        for (const auto& [u, v] : c.edges) {
            if (u == v)
                throw std::invalid_argument("build_union: community " + std::to_string(i) +
                                            " has a self-loop");
            if (!std::binary_search(c.members.begin(), c.members.end(), u) ||
                !std::binary_search(c.members.begin(), c.members.end(), v))
                throw std::invalid_argument("build_union: community " + std::to_string(i) +
                                            " has an edge endpoint outside its members");
        }
        total_edges += c.edges.size();
    }

    // Dedupe via packed directed keys (u<<32|v with u<v).
    std::vector<std::uint64_t> keys;
    keys.reserve(total_edges);
    for (const auto& c : communities)
        for (const auto& [u, v] : c.edges)
            keys.push_back((static_cast<std::uint64_t>(u) << 32) | v);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    UnionGraph g;
    g.n = n;
    g.communities = std::move(communities);
    g.edge_count = static_cast<long long>(keys.size());
    g.adj.assign(static_cast<size_t>(n) + 1, {});
    std::vector<int> deg(static_cast<size_t>(n) + 1, 0);
    for (std::uint64_t k : keys) {
        ++deg[k >> 32];
        ++deg[k & 0xffffffffULL];
    }
    for (long long v = 1; v <= n; ++v) g.adj[v].reserve(deg[v]);
    for (std::uint64_t k : keys) {
        auto u = static_cast<VertexId>(k >> 32);
        auto v = static_cast<VertexId>(k & 0xffffffffULL);
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    // Keys were sorted by (u,v), so each row is already ascending except for
    // the interleaving of the two directions; sort to make that airtight.
    for (long long v = 1; v <= n; ++v) std::sort(g.adj[v].begin(), g.adj[v].end());
    return g;
}

}  // namespace gul

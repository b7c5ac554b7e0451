#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "model.hpp"

namespace gul {

struct ComponentCensus {
    int components = 0;
    std::vector<int> label;  // 1-based; label[v] in 0..components-1
    std::map<int, long long> size_histogram;  // component size -> count

    // eta(k): number of components of size exactly k; eta(1) counts isolated
    // vertices whenever the graph has no size-1 communities covering them.
    long long eta(int k) const {
        auto it = size_histogram.find(k);
        return it == size_histogram.end() ? 0 : it->second;
    }
};

inline ComponentCensus component_census(const UnionGraph& g) {
    ComponentCensus c;
    c.label.assign(static_cast<size_t>(g.n) + 1, -1);
    std::vector<VertexId> stack;
    for (VertexId s = 1; static_cast<long long>(s) <= g.n; ++s) {
        if (c.label[s] != -1) continue;
        int id = c.components++;
        long long size = 0;
        stack.push_back(s);
        c.label[s] = id;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            ++size;
            for (VertexId u : g.adj[v])
                if (c.label[u] == -1) {
                    c.label[u] = id;
                    stack.push_back(u);
                }
        }
        ++c.size_histogram[static_cast<int>(size)];
    }
    return c;
}

inline bool is_connected(const UnionGraph& g) {
    if (g.n == 1) return true;
    return component_census(g).components == 1;
}

inline int min_degree(const UnionGraph& g) {
    int best = std::numeric_limits<int>::max();
    for (VertexId v = 1; static_cast<long long>(v) <= g.n; ++v)
        best = std::min(best, g.degree(v));
    return best;
}

namespace conn_detail {

// Unit-capacity max-flow on the vertex-split graph: node 2v = "in" copy,
// 2v+1 = "out" copy; the in->out arc carries capacity 1 (the vertex itself),
// each edge {u,v} contributes out(u)->in(v) and out(v)->in(u). Local vertex
// connectivity kappa(s,t) for non-adjacent s,t equals max-flow from out(s)
// to in(t) (Menger).
class SplitFlow {
  public:
    explicit SplitFlow(const UnionGraph& g) : node_count_(2 * (g.n + 1)) {
        head_.assign(static_cast<size_t>(node_count_), -1);
        long long arc_estimate = 2 * g.n + 4 * g.edge_count;
        to_.reserve(static_cast<size_t>(2 * arc_estimate));
        nxt_.reserve(static_cast<size_t>(2 * arc_estimate));
        cap0_.reserve(static_cast<size_t>(2 * arc_estimate));
        for (VertexId v = 1; static_cast<long long>(v) <= g.n; ++v)
            add_arc(in(v), out(v), 1);
        for (VertexId v = 1; static_cast<long long>(v) <= g.n; ++v)
            for (VertexId u : g.adj[v])
                if (u > v) {
                    add_arc(out(v), in(u), 1);
                    add_arc(out(u), in(v), 1);
                }
        cap_ = cap0_;
    }

    static int in(VertexId v) { return 2 * static_cast<int>(v); }
    static int out(VertexId v) { return 2 * static_cast<int>(v) + 1; }

    // Max flow out(s) -> in(t), stopping early once `limit` is reached.
    int max_flow(VertexId s, VertexId t, int limit) {
        cap_ = cap0_;  // reset residuals from the pristine capacities
        int flow = 0;
        while (flow < limit && augment(out(s), in(t))) ++flow;
        return flow;
    }

  private:
    void add_arc(int a, int b, int capacity) {
        to_.push_back(b);
        cap0_.push_back(capacity);
        nxt_.push_back(head_[static_cast<size_t>(a)]);
        head_[static_cast<size_t>(a)] = static_cast<int>(to_.size()) - 1;
        to_.push_back(a);
        cap0_.push_back(0);
        nxt_.push_back(head_[static_cast<size_t>(b)]);
        head_[static_cast<size_t>(b)] = static_cast<int>(to_.size()) - 1;
    }

    // One BFS augmenting path of unit flow; returns false when t unreachable.
    bool augment(int s, int t) {
        prev_arc_.assign(static_cast<size_t>(node_count_), -1);
        queue_.clear();
        queue_.push_back(s);
        prev_arc_[static_cast<size_t>(s)] = -2;
        for (size_t qi = 0; qi < queue_.size(); ++qi) {
            int v = queue_[qi];
            if (v == t) break;
            for (int a = head_[static_cast<size_t>(v)]; a != -1;
                 a = nxt_[static_cast<size_t>(a)]) {
                int w = to_[static_cast<size_t>(a)];
                if (cap_[static_cast<size_t>(a)] > 0 && prev_arc_[static_cast<size_t>(w)] == -1) {
                    prev_arc_[static_cast<size_t>(w)] = a;
                    queue_.push_back(w);
                }
            }
        }
        if (prev_arc_[static_cast<size_t>(t)] == -1) return false;
        for (int v = t; v != s;) {
            int a = prev_arc_[static_cast<size_t>(v)];
            --cap_[static_cast<size_t>(a)];
            ++cap_[static_cast<size_t>(a ^ 1)];
            v = to_[static_cast<size_t>(a ^ 1)];
        }
        return true;
    }

    long long node_count_;
    std::vector<int> head_, nxt_, to_, cap0_, cap_;
    std::vector<int> prev_arc_;
    std::vector<int> queue_;
};

}  // namespace conn_detail

// Whether kappa(G) >= k, by the standard reduction: fix a minimum-degree
// vertex v1; check local connectivity from v1 to every non-neighbor, then
// between non-adjacent pairs inside N(v1). A minimum separator S either
// misses v1 (then some non-neighbor of v1 lies across it, caught by phase 1)
// or contains v1 (then by minimality v1 has neighbors in every component of
// G - S, caught by phase 2).
inline bool is_k_vertex_connected(const UnionGraph& g, int k) {
    if (k < 1) throw std::invalid_argument("is_k_vertex_connected: k must be >= 1");
    if (g.n < k + 1) return false;  // definition requires more than k vertices
    if (!is_connected(g)) return false;
    if (k == 1) return true;
    VertexId v1 = 1;
    for (VertexId v = 2; static_cast<long long>(v) <= g.n; ++v)
        if (g.degree(v) < g.degree(v1)) v1 = v;
    if (g.degree(v1) < k) return false;

    conn_detail::SplitFlow flow(g);
    std::vector<char> near(static_cast<size_t>(g.n) + 1, 0);
    near[v1] = 1;
    for (VertexId u : g.adj[v1]) near[u] = 1;
    for (VertexId u = 1; static_cast<long long>(u) <= g.n; ++u)
        if (!near[u] && flow.max_flow(v1, u, k) < k) return false;
    const auto& nb = g.adj[v1];
    for (size_t i = 0; i < nb.size(); ++i)
        for (size_t j = i + 1; j < nb.size(); ++j)
            if (!g.has_edge(nb[i], nb[j]) && flow.max_flow(nb[i], nb[j], k) < k) return false;
    return true;  // complete graphs reach here with no flow queries
}

// kappa(G): 0 for disconnected or single-vertex graphs; n-1 for complete.
inline int vertex_connectivity(const UnionGraph& g) {
    if (g.n == 1) return 0;
    if (!is_connected(g)) return 0;
    int best = min_degree(g);
    if (best == 0) return 0;
    VertexId v1 = 1;
    for (VertexId v = 2; static_cast<long long>(v) <= g.n; ++v)
        if (g.degree(v) < g.degree(v1)) v1 = v;

    conn_detail::SplitFlow flow(g);
    std::vector<char> near(static_cast<size_t>(g.n) + 1, 0);
    near[v1] = 1;
    for (VertexId u : g.adj[v1]) near[u] = 1;
    for (VertexId u = 1; static_cast<long long>(u) <= g.n; ++u)
        if (!near[u]) best = std::min(best, flow.max_flow(v1, u, best));
    const auto& nb = g.adj[v1];
    for (size_t i = 0; i < nb.size(); ++i)
        for (size_t j = i + 1; j < nb.size(); ++j)
            if (!g.has_edge(nb[i], nb[j]))
                best = std::min(best, flow.max_flow(nb[i], nb[j], best));
    return best;
}

// Exhaustive oracle for small n: try every vertex subset as a separator.
inline int brute_force_vertex_connectivity(const UnionGraph& g) {
    if (g.n > 16) throw std::invalid_argument("brute_force_vertex_connectivity: n must be <= 16");
    if (g.n == 1) return 0;
    if (!is_connected(g)) return 0;
    const int n = static_cast<int>(g.n);
    std::vector<std::uint32_t> row(static_cast<size_t>(n), 0);
    for (int v = 1; v <= n; ++v)
        for (VertexId u : g.adj[static_cast<VertexId>(v)])
            row[static_cast<size_t>(v - 1)] |= 1u << (u - 1);

    auto disconnected_without = [&](std::uint32_t removed) {
        std::uint32_t alive = ((n == 32 ? 0u : (1u << n)) - 1u) & ~removed;
        if (alive == 0) return false;  // no vertices left: not a separator
        std::uint32_t start = alive & (~alive + 1);
        std::uint32_t seen = start, frontier = start;
        while (frontier) {
            std::uint32_t next = 0;
            std::uint32_t f = frontier;
            while (f) {
                int v = __builtin_ctz(f);
                f &= f - 1;
                next |= row[static_cast<size_t>(v)] & alive;
            }
            frontier = next & ~seen;
            seen |= next;
        }
        return seen != alive;
    };

    for (int s = 1; s <= n - 2; ++s) {
        // Gosper's hack over all s-subsets of an n-bit mask.
        std::uint32_t sub = (1u << s) - 1u;
        std::uint32_t end = 1u << n;
        while (sub < end) {
            if (disconnected_without(sub)) return s;
            std::uint32_t c = sub & (~sub + 1);
            std::uint32_t r = sub + c;
            sub = r | (((sub ^ r) >> 2) / c);
        }
    }
    return n - 1;  // complete graph
}

// Delete vertices and compact labels; communities keep surviving members and
// the edges among them. Returns the reduced graph and new->old label map.
inline std::pair<UnionGraph, std::vector<VertexId>> remove_vertices(
    const UnionGraph& g, const std::vector<VertexId>& doomed) {
    std::vector<char> dead(static_cast<size_t>(g.n) + 1, 0);
    for (VertexId v : doomed) {
        if (v < 1 || static_cast<long long>(v) > g.n)
            throw std::invalid_argument("remove_vertices: vertex out of range");
        dead[v] = 1;
    }
    std::vector<VertexId> old_of;  // new label (1-based) -> old label
    std::vector<VertexId> new_of(static_cast<size_t>(g.n) + 1, 0);
    old_of.push_back(0);  // index 0 unused
    for (VertexId v = 1; static_cast<long long>(v) <= g.n; ++v)
        if (!dead[v]) {
            old_of.push_back(v);
            new_of[v] = static_cast<VertexId>(old_of.size() - 1);
        }
    long long n2 = static_cast<long long>(old_of.size()) - 1;
    if (n2 < 1) throw std::invalid_argument("remove_vertices: must leave at least one vertex");

    std::vector<CommunityInstance> comms;
    comms.reserve(g.communities.size());
    for (const auto& c : g.communities) {
        CommunityInstance r;
        for (VertexId v : c.members)
            if (!dead[v]) r.members.push_back(new_of[v]);
        for (const auto& [u, v] : c.edges)
            if (!dead[u] && !dead[v]) r.edges.push_back(make_edge(new_of[u], new_of[v]));
        std::sort(r.members.begin(), r.members.end());
        std::sort(r.edges.begin(), r.edges.end());
        comms.push_back(std::move(r));
    }
    UnionGraph reduced = build_union(n2, std::move(comms));
    // old_of is 1-based like vertex labels: old_of[v] = original label of v.
    return {std::move(reduced), std::move(old_of)};
}

}  // namespace gul

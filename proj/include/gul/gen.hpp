#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "model.hpp"
#include "rng.hpp"

namespace gul {

namespace detail {

// Uniform `size`-subset of {1..n} via partial Fisher–Yates over a persistent
// identity pool. The pool survives across calls and the swaps are undone in
// reverse order, so each draw costs O(size) rather than O(n).
inline std::vector<VertexId> sample_subset(long long n, int size, RngStream& rng) {
    thread_local std::vector<VertexId> pool;
    if (static_cast<long long>(pool.size()) < n + 1) {
        size_t old = pool.size();
        pool.resize(static_cast<size_t>(n) + 1);
        for (size_t i = old; i < pool.size(); ++i) pool[i] = static_cast<VertexId>(i);
    }
    thread_local std::vector<std::pair<std::uint32_t, std::uint32_t>> swaps;
    swaps.clear();
    std::vector<VertexId> out(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) {
        auto j = static_cast<std::uint32_t>(
            1 + i + rng.uniform_below(static_cast<std::uint64_t>(n - i)));
        auto k = static_cast<std::uint32_t>(1 + i);
        std::swap(pool[k], pool[j]);
        swaps.emplace_back(k, j);
        out[static_cast<size_t>(i)] = pool[k];
    }
    for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
        std::swap(pool[it->first], pool[it->second]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// Embed a fixed template by a uniformly random injection into {1..n}:
// pick the member set uniformly, then a uniform bijection template->members.
inline CommunityInstance embed_fixed_graph(const GraphTemplate& t, long long n, RngStream& rng) {
    CommunityInstance c;
    c.members = detail::sample_subset(n, t.vertices, rng);
    std::vector<VertexId> place(c.members);  // place[slot] = host vertex for template slot+1
    for (int i = t.vertices - 1; i > 0; --i) {
        auto j = static_cast<size_t>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(place[static_cast<size_t>(i)], place[j]);
    }
    c.edges.reserve(t.edges.size());
    for (const auto& [a, b] : t.edges) c.edges.push_back(make_edge(place[a - 1], place[b - 1]));
    std::sort(c.edges.begin(), c.edges.end());
    return c;
}

// One community of the Bernoulli model: uniform min(y,n)-subset, then each of
// its pairs is an edge independently with probability q. Members that end up
// isolated stay members.
inline CommunityInstance sample_bernoulli_community(long long y, double q, long long n,
                                                    RngStream& rng) {
    CommunityInstance c;
    long long k = std::min(y, n);
    if (k <= 0) return c;
    c.members = detail::sample_subset(n, static_cast<int>(k), rng);
    if (k < 2 || q <= 0.0) return c;
    if (q >= 1.0) {
        for (size_t i = 0; i < c.members.size(); ++i)
            for (size_t j = i + 1; j < c.members.size(); ++j)
                c.edges.emplace_back(c.members[i], c.members[j]);
        return c;
    }
    if (q > 0.1) {
        for (size_t i = 0; i < c.members.size(); ++i)
            for (size_t j = i + 1; j < c.members.size(); ++j)
                if (rng.uniform01() < q) c.edges.emplace_back(c.members[i], c.members[j]);
        return c;
    }
    // Sparse case: geometric skips over the lexicographic pair index
    // (0,1),(0,2),...,(0,k-1),(1,2),...; row i holds k-1-i pairs.
    const double denom = std::log1p(-q);
    const auto ku = static_cast<std::uint64_t>(k);
    const std::uint64_t total = ku * (ku - 1) / 2;
    std::uint64_t idx = 0;        // next candidate pair index
    std::uint64_t row_start = 0;  // pair index of (row, row+1)
    std::uint64_t row = 0;
    while (true) {
        double u = rng.uniform01();
        double g = std::log1p(-u) / denom;
        // Compare in floating point first: g may exceed uint64 range.
        if (g >= static_cast<double>(total - idx)) break;  // also covers idx == total
        auto gap = static_cast<std::uint64_t>(g);
        if (gap >= total - idx) break;
        idx += gap;
        while (idx >= row_start + (ku - 1 - row)) {
            row_start += ku - 1 - row;
            ++row;
        }
        std::uint64_t col = row + 1 + (idx - row_start);
        c.edges.emplace_back(c.members[static_cast<size_t>(row)],
                             c.members[static_cast<size_t>(col)]);
        ++idx;
    }
    return c;
}

// Clique community: uniform min(size,n)-subset with all pairs present.
inline CommunityInstance sample_clique_community(long long size, long long n, RngStream& rng) {
    CommunityInstance c;
    long long k = std::min(size, n);
    if (k <= 0) return c;
    c.members = detail::sample_subset(n, static_cast<int>(k), rng);
    for (size_t i = 0; i < c.members.size(); ++i)
        for (size_t j = i + 1; j < c.members.size(); ++j)
            c.edges.emplace_back(c.members[i], c.members[j]);
    return c;
}

// Draw the full union: community i is generated from sub-stream (seed, i).
// FixedGraphs cycles templates round-robin; the law kinds draw an atom from
// the weight distribution first.
inline UnionGraph sample_union(const ModelSpec& spec, std::uint64_t seed) {
    ValidationReport rep = validate_spec(spec);
    if (!rep.ok()) throw spec_error(std::move(rep));

    std::vector<CommunityInstance> communities;
    communities.reserve(static_cast<size_t>(spec.m));

    std::vector<double> cumulative;
    if (const auto* by = std::get_if<BernoulliYQ>(&spec.kind)) {
        double acc = 0;
        for (const auto& a : by->support) cumulative.push_back(acc += a.w);
    } else if (const auto* cs = std::get_if<CliqueSizes>(&spec.kind)) {
        double acc = 0;
        for (const auto& a : cs->support) cumulative.push_back(acc += a.w);
    }
    auto pick_atom = [&](RngStream& rng) -> size_t {
        double u = rng.uniform01() * cumulative.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) --it;
        return static_cast<size_t>(it - cumulative.begin());
    };

    for (long long i = 0; i < spec.m; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        if (const auto* fg = std::get_if<FixedGraphs>(&spec.kind)) {
            const auto& t = fg->templates[static_cast<size_t>(i) % fg->templates.size()];
            communities.push_back(embed_fixed_graph(t, spec.n, rng));
        } else if (const auto* by = std::get_if<BernoulliYQ>(&spec.kind)) {
            const auto& a = by->support[pick_atom(rng)];
            communities.push_back(sample_bernoulli_community(a.y, a.q, spec.n, rng));
        } else {
            const auto* cs = std::get_if<CliqueSizes>(&spec.kind);
            const auto& a = cs->support[pick_atom(rng)];
            communities.push_back(sample_clique_community(a.size, spec.n, rng));
        }
    }
    return build_union(spec.n, std::move(communities));
}

}  // namespace gul

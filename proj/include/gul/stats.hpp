#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "model.hpp"

namespace gul {

// Degrees inside one community: member_degree[j] is the degree of members[j]
// within the community, x counts non-isolated members, x_t is the histogram
// of positive degrees.
struct CommunityProfile {
    std::vector<int> member_degree;
    int x = 0;
    std::map<int, int> x_t;
};

inline CommunityProfile community_profile(const CommunityInstance& c) {
    CommunityProfile p;
    p.member_degree.assign(c.members.size(), 0);
    auto index_of = [&](VertexId v) {
        auto it = std::lower_bound(c.members.begin(), c.members.end(), v);
        return static_cast<size_t>(it - c.members.begin());
    };
    for (const auto& [u, v] : c.edges) {
        ++p.member_degree[index_of(u)];
        ++p.member_degree[index_of(v)];
    }
    for (int d : p.member_degree)
        if (d > 0) {
            ++p.x;
            ++p.x_t[d];
        }
    return p;
}

// Cross-community membership statistics. For vertex v:
//   dprime[v]      = #communities in which v is non-isolated,
//   dprime_star[v] = #communities in which v has degree exactly a.
// pair_counts maps packed pairs (u<<32|v, u<v) to the number of communities
// in which both endpoints are non-isolated.
struct MembershipProfile {
    int a = 1;
    std::vector<int> dprime;       // 1-based
    std::vector<int> dprime_star;  // 1-based
    std::unordered_map<std::uint64_t, int> pair_counts;
    bool large_community = false;  // some X_i > 2000: pair counting went quadratic
};

inline MembershipProfile membership_profile(const UnionGraph& g, int a) {
    if (a < 1) throw std::invalid_argument("membership_profile: a must be >= 1");
    MembershipProfile mp;
    mp.a = a;
    mp.dprime.assign(static_cast<size_t>(g.n) + 1, 0);
    mp.dprime_star.assign(static_cast<size_t>(g.n) + 1, 0);
    std::vector<VertexId> active;
    for (const auto& c : g.communities) {
        CommunityProfile p = community_profile(c);
        active.clear();
        for (size_t j = 0; j < c.members.size(); ++j) {
            if (p.member_degree[j] == 0) continue;
            VertexId v = c.members[j];
            active.push_back(v);
            ++mp.dprime[v];
            if (p.member_degree[j] == a) ++mp.dprime_star[v];
        }
        if (active.size() > 2000) mp.large_community = true;
        for (size_t i = 0; i < active.size(); ++i)
            for (size_t j = i + 1; j < active.size(); ++j)
                ++mp.pair_counts[(static_cast<std::uint64_t>(active[i]) << 32) | active[j]];
    }
    return mp;
}

// N_k:  vertices with dprime == k (k = 0 included).
// N*_k: vertices with dprime == dprime_star == k (all incident communities
//       meet the vertex at the minimal degree a).
// N'_k: ordered incidences — every unordered pair {u,v} sharing at least two
//       communities adds 1 to N'_{dprime(u)} and 1 to N'_{dprime(v)}.
struct NCounters {
    std::map<int, long long> n_k;
    std::map<int, long long> n_star_k;
    std::map<int, long long> n_prime_k;
};

inline NCounters n_counters(const MembershipProfile& mp) {
    NCounters c;
    for (size_t v = 1; v < mp.dprime.size(); ++v) {
        ++c.n_k[mp.dprime[v]];
        if (mp.dprime_star[v] == mp.dprime[v]) ++c.n_star_k[mp.dprime[v]];
    }
    for (const auto& [key, count] : mp.pair_counts)
        if (count >= 2) {
            auto u = static_cast<VertexId>(key >> 32);
            auto v = static_cast<VertexId>(key & 0xffffffffULL);
            ++c.n_prime_k[mp.dprime[u]];
            ++c.n_prime_k[mp.dprime[v]];
        }
    return c;
}

// Event: some pair of vertices shares three or more communities.
inline bool detect_event_A(const MembershipProfile& mp) {
    for (const auto& [key, count] : mp.pair_counts)
        if (count >= 3) return true;
    return false;
}

// Smallest positive within-community degree realized anywhere in the sample;
// empty when every community is edgeless.
inline std::optional<int> empirical_min_positive_degree(const UnionGraph& g) {
    std::optional<int> best;
    for (const auto& c : g.communities) {
        CommunityProfile p = community_profile(c);
        if (p.x_t.empty()) continue;
        int d = p.x_t.begin()->first;
        if (!best || d < *best) best = d;
    }
    return best;
}

// w is a blossom center when the communities in which it is non-isolated
// (its petals) pairwise share no other non-isolated vertex. Vacuously true
// for at most one petal.
inline bool is_blossom_center(const UnionGraph& g, VertexId w) {
    if (w < 1 || static_cast<long long>(w) > g.n)
        throw std::invalid_argument("is_blossom_center: vertex out of range");
    std::vector<std::vector<VertexId>> petals;  // non-isolated member lists
    for (const auto& c : g.communities) {
        if (!std::binary_search(c.members.begin(), c.members.end(), w)) continue;
        CommunityProfile p = community_profile(c);
        std::vector<VertexId> alive;
        bool w_alive = false;
        for (size_t j = 0; j < c.members.size(); ++j)
            if (p.member_degree[j] > 0) {
                alive.push_back(c.members[j]);
                if (c.members[j] == w) w_alive = true;
            }
        if (w_alive) petals.push_back(std::move(alive));
    }
    std::unordered_map<VertexId, int> petal_hits;
    for (const auto& petal : petals)
        for (VertexId v : petal)
            if (v != w && ++petal_hits[v] >= 2) return false;
    return true;
}

// Checks, for every k with N'_k == 0, that all vertices of dprime == k are
// blossom centers. Derivable from the pair counters: a vertex fails exactly
// when some other vertex shares two of its petals.
inline bool blossom_property_holds(const UnionGraph& g, const MembershipProfile& mp,
                                   const NCounters& counters) {
    std::vector<char> tainted(static_cast<size_t>(g.n) + 1, 0);
    for (const auto& [key, count] : mp.pair_counts)
        if (count >= 2) {
            tainted[key >> 32] = 1;
            tainted[key & 0xffffffffULL] = 1;
        }
    for (VertexId v = 1; static_cast<long long>(v) <= g.n; ++v) {
        int k = mp.dprime[v];
        auto it = counters.n_prime_k.find(k);
        bool n_prime_zero = (it == counters.n_prime_k.end() || it->second == 0);
        if (n_prime_zero && tainted[v]) return false;
    }
    return true;
}

}  // namespace gul

#pragma once

// Brute-force oracles. Deliberately share no code paths with the library
// kernels they check: path families come from exhaustive DFS enumeration,
// distances from Floyd-Warshall.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "diversinet/graph.hpp"
#include "diversinet/node_model.hpp"
#include "diversinet/rng.hpp"

namespace oracle {

using diversinet::Graph;
using diversinet::NodeId;
using diversinet::PackageId;
using diversinet::SoftwareCatalog;

inline std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
    const std::size_t n = g.node_count();
    const int inf = std::numeric_limits<int>::max() / 4;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (NodeId i = 0; i < n; ++i) {
        d[i][i] = 0;
        for (NodeId j : g.neighbors(i)) d[i][j] = 1;
    }
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
    for (auto& row : d)
        for (int& x : row)
            if (x >= inf) x = -1;
    return d;
}

// Every simple path with 1..k hops ending at target, written entry -> target.
inline std::vector<std::vector<NodeId>> all_simple_paths_to(const Graph& g, NodeId target, std::size_t k) {
    std::vector<std::vector<NodeId>> out;
    std::vector<NodeId> stack{target};
    std::vector<char> on_path(g.node_count(), 0);
    on_path[target] = 1;
    auto dfs = [&](auto&& self, NodeId u) -> void {
        if (stack.size() - 1 == k) return;
        for (NodeId v : g.neighbors(u)) {
            if (on_path[v]) continue;
            on_path[v] = 1;
            stack.push_back(v);
            out.emplace_back(stack.rbegin(), stack.rend());
            self(self, v);
            stack.pop_back();
            on_path[v] = 0;
        }
    };
    dfs(dfs, target);
    return out;
}

inline double product_vulnerability(const std::vector<NodeId>& path, const std::vector<PackageId>& pkgs,
                                    const SoftwareCatalog& cat) {
    double v = 1.0;
    for (std::size_t h = 1; h < path.size(); ++h) {
        const PackageId from = pkgs[path[h - 1]];
        const PackageId to = pkgs[path[h]];
        v *= from == to ? 1.0 : cat.values()[to - 1];
    }
    return v;
}

// Greedy selection over the exhaustive path family: shortest first,
// lexicographically smallest entry->target sequence on ties, entry and
// interior nodes retired after each pick.
inline std::vector<std::vector<NodeId>> greedy_disjoint_paths(const Graph& g, NodeId target, std::size_t k,
                                                              std::size_t cap) {
    auto family = all_simple_paths_to(g, target, k);
    std::sort(family.begin(), family.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<char> used(g.node_count(), 0);
    std::vector<std::vector<NodeId>> chosen;
    for (const auto& p : family) {
        if (chosen.size() == cap) break;
        bool free = true;
        for (std::size_t h = 0; h + 1 < p.size(); ++h) free = free && !used[p[h]];
        if (!free) continue;
        for (std::size_t h = 0; h + 1 < p.size(); ++h) used[p[h]] = 1;
        chosen.push_back(p);
    }
    return chosen;
}

inline double software_diversity(const Graph& g, NodeId i, std::size_t k, std::size_t l,
                                 const std::vector<PackageId>& pkgs, const SoftwareCatalog& cat) {
    struct Scored {
        std::vector<NodeId> nodes;
        double v;
    };
    std::vector<Scored> scored;
    for (auto& p : greedy_disjoint_paths(g, i, k, 20)) {
        const double v = product_vulnerability(p, pkgs, cat);
        scored.push_back({std::move(p), v});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.v != b.v) return a.v > b.v;
        if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
        return a.nodes < b.nodes;
    });
    double sd = 1.0;
    for (std::size_t p = 0; p < std::min(l, scored.size()); ++p) sd *= 1.0 - scored[p].v;
    return sd;
}

inline double path_vulnerability_max(const Graph& g, NodeId i, std::size_t hops,
                                     const std::vector<PackageId>& pkgs, const SoftwareCatalog& cat) {
    double best = 0.0;
    for (const auto& p : greedy_disjoint_paths(g, i, hops, 20)) best = std::max(best, product_vulnerability(p, pkgs, cat));
    return best;
}

inline Graph random_graph(std::size_t n, double p, diversinet::Rng& rng) {
    return diversinet::generate_er(n, p, rng);
}

inline bool connected(const Graph& g) {
    return g.node_count() > 0 && diversinet::giant_component(g).size() == g.node_count();
}

inline std::vector<PackageId> random_packages(std::size_t n, std::size_t ns, diversinet::Rng& rng) {
    std::vector<PackageId> pkgs(n);
    for (auto& p : pkgs) p = static_cast<PackageId>(1 + rng.below(ns));
    return pkgs;
}

inline Graph path_graph(std::size_t n) {
    std::vector<diversinet::Edge> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Graph::from_edges(n, edges);
}

inline Graph star_graph(std::size_t leaves) {
    std::vector<diversinet::Edge> edges;
    for (NodeId i = 1; i <= leaves; ++i) edges.push_back({0, i});
    return Graph::from_edges(leaves + 1, edges);
}

inline Graph complete_graph(std::size_t n) {
    std::vector<diversinet::Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j});
    return Graph::from_edges(n, edges);
}

}  // namespace oracle

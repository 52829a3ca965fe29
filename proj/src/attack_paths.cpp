#include "diversinet/attack_paths.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace diversinet {

double path_vulnerability(std::span<const NodeId> path, std::span<const PackageId> pkgs,
                          const SoftwareCatalog& cat) {
    double v = 1.0;
    for (std::size_t h = 1; h < path.size(); ++h) {
        v *= hop_vulnerability(pkgs[path[h - 1]], pkgs[path[h]], cat);
    }
    return v;
}

std::vector<AttackPath> enumerate_disjoint_paths(const Graph& g, NodeId target, std::size_t k,
                                                 std::size_t cap, std::span<const PackageId> pkgs,
                                                 const SoftwareCatalog& cat) {
    if (k < 1) throw std::invalid_argument("hop cap k must be >= 1");
    if (cap < 1) throw std::invalid_argument("path cap must be >= 1");

    const std::size_t n = g.node_count();
    std::vector<char> available(n, 1);
    available[target] = 0;
    std::vector<int> dist(n);
    std::vector<AttackPath> paths;
    std::deque<NodeId> queue;

    while (paths.size() < cap) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[target] = 0;
        queue.assign(1, target);
        int shortest = -1;
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            if (static_cast<std::size_t>(dist[u]) == k) continue;
            // BFS layers are monotone, so the first layer reached is the shortest.
            if (shortest >= 0 && dist[u] >= shortest) break;
            for (NodeId v : g.neighbors(u)) {
                if (available[v] && dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    if (shortest < 0) shortest = dist[v];
                    queue.push_back(v);
                }
            }
        }
        if (shortest < 0) break;

        // Lexicographically smallest entry->target sequence of that length:
        // smallest entry at the shortest distance, then at each step the
        // smallest neighbor one layer closer to the target.
        NodeId entry = 0;
        while (dist[entry] != shortest) ++entry;
        AttackPath path;
        path.nodes.push_back(entry);
        NodeId cur = entry;
        while (cur != target) {
            for (NodeId w : g.neighbors(cur)) {
                if (dist[w] == dist[cur] - 1 && (available[w] || w == target)) {
                    cur = w;
                    break;
                }
            }
            path.nodes.push_back(cur);
        }
        for (std::size_t h = 0; h + 1 < path.nodes.size(); ++h) available[path.nodes[h]] = 0;
        path.vulnerability = path_vulnerability(path.nodes, pkgs, cat);
        paths.push_back(std::move(path));
    }
    return paths;
}

void rank_paths(std::vector<AttackPath>& paths) {
    std::sort(paths.begin(), paths.end(), [](const AttackPath& a, const AttackPath& b) {
        if (a.vulnerability != b.vulnerability) return a.vulnerability > b.vulnerability;
        if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
        return a.nodes < b.nodes;
    });
}

double software_diversity(const Graph& g, NodeId i, std::size_t k, std::size_t l,
                          std::span<const PackageId> pkgs, const SoftwareCatalog& cat) {
    if (l < 1) throw std::invalid_argument("path count l must be >= 1");
    auto paths = enumerate_disjoint_paths(g, i, k, kMaxAttackPaths, pkgs, cat);
    rank_paths(paths);
    double sd = 1.0;
    const std::size_t top = std::min(l, paths.size());
    for (std::size_t p = 0; p < top; ++p) sd *= 1.0 - paths[p].vulnerability;
    return sd;
}

std::vector<double> software_diversity_all(const Graph& g, std::size_t k, std::size_t l,
                                           std::span<const PackageId> pkgs,
                                           const SoftwareCatalog& cat) {
    const auto n = static_cast<std::int64_t>(g.node_count());
    std::vector<double> sd(g.node_count());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) {
        sd[i] = software_diversity(g, static_cast<NodeId>(i), k, l, pkgs, cat);
    }
    return sd;
}

namespace detail {

double pv_for_node(const Graph& g, NodeId i, std::span<const PackageId> pkgs, const SoftwareCatalog& cat,
                   std::size_t k, PvK1Mode mode) {
    if (k < 1) throw std::invalid_argument("hop distance k must be >= 1");
    if (k == 1) {
        if (mode == PvK1Mode::Literal) return 0.0;
        double best = 0.0;
        for (NodeId j : g.neighbors(i)) best = std::max(best, hop_vulnerability(pkgs[j], pkgs[i], cat));
        return best;
    }
    double best = 0.0;
    for (const auto& p : enumerate_disjoint_paths(g, i, k - 1, kMaxAttackPaths, pkgs, cat)) {
        best = std::max(best, p.vulnerability);
    }
    return best;
}

}  // namespace detail

std::vector<double> gen_pv(const Graph& g, std::span<const PackageId> pkgs, const SoftwareCatalog& cat,
                           std::size_t k, PvK1Mode mode) {
    const auto n = static_cast<std::int64_t>(g.node_count());
    std::vector<double> pv(g.node_count());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) {
        pv[i] = detail::pv_for_node(g, static_cast<NodeId>(i), pkgs, cat, k, mode);
    }
    return pv;
}

double mean_software_diversity(std::span<const double> sd) {
    if (sd.empty()) throw std::invalid_argument("mean software diversity of an empty network");
    return std::accumulate(sd.begin(), sd.end(), 0.0) / static_cast<double>(sd.size());
}

}  // namespace diversinet

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "diversinet/graph.hpp"
#include "diversinet/node_model.hpp"

namespace diversinet {

/// Maximum number of disjoint attack paths tracked per target.
inline constexpr std::size_t kMaxAttackPaths = 20;

/// Node sequence from an entry (attacker position) to the target.
struct AttackPath {
    std::vector<NodeId> nodes;
    double vulnerability = 0.0;
};

/// How path vulnerabilities are produced when the hop cap k - 1 is zero.
enum class PvK1Mode {
    Override,  // pv_i = strongest single-hop compromise probability into i
    Literal,   // pv_i = 0
};

/// Product over each non-entry node w (predecessor u) of 1 when u and w share a
/// package, sv[w] otherwise. Entry nodes contribute no factor.
double path_vulnerability(std::span<const NodeId> path, std::span<const PackageId> pkgs,
                          const SoftwareCatalog& cat);

/// Greedy node-disjoint enumeration: repeatedly take the shortest path (at
/// most k hops) from any still-available node to the target, lexicographically
/// smallest entry->target sequence on ties, then retire its entry and interior
/// nodes. Stops when nothing is reachable or `cap` paths are found.
std::vector<AttackPath> enumerate_disjoint_paths(const Graph& g, NodeId target, std::size_t k,
                                                 std::size_t cap, std::span<const PackageId> pkgs,
                                                 const SoftwareCatalog& cat);

/// Orders paths for top-l selection: vulnerability descending, then shorter
/// first, then lexicographic node sequence.
void rank_paths(std::vector<AttackPath>& paths);

/// Probability node i resists its l most vulnerable attack paths within k
/// hops; 1 when no path exists.
double software_diversity(const Graph& g, NodeId i, std::size_t k, std::size_t l,
                          std::span<const PackageId> pkgs, const SoftwareCatalog& cat);

/// software_diversity for every node (parallel over nodes).
std::vector<double> software_diversity_all(const Graph& g, std::size_t k, std::size_t l,
                                           std::span<const PackageId> pkgs,
                                           const SoftwareCatalog& cat);

/// Maximum attack-path vulnerability into each node using paths of at most
/// k - 1 hops (parallel over nodes).
std::vector<double> gen_pv(const Graph& g, std::span<const PackageId> pkgs, const SoftwareCatalog& cat,
                           std::size_t k, PvK1Mode mode = PvK1Mode::Override);

/// Arithmetic mean; throws std::invalid_argument on an empty vector.
double mean_software_diversity(std::span<const double> sd);

namespace detail {
double pv_for_node(const Graph& g, NodeId i, std::span<const PackageId> pkgs, const SoftwareCatalog& cat,
                   std::size_t k, PvK1Mode mode);
}  // namespace detail

}  // namespace diversinet

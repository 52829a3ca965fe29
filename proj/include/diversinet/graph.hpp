#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "diversinet/rng.hpp"

namespace diversinet {

using NodeId = std::uint32_t;

struct Edge {
    NodeId u;
    NodeId v;
    auto operator<=>(const Edge&) const = default;
};

/// Undirected simple graph over nodes 0..n-1. Adjacency lists are kept sorted,
/// which makes neighbor iteration order (and therefore every simulation that
/// walks neighbors) deterministic.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t node_count) : adj_(node_count) {}

    /// Builds a simple graph; self-loops and duplicates are dropped.
    /// Throws std::out_of_range for endpoints >= node_count.
    static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::size_t degree(NodeId i) const { return adj_[i].size(); }
    std::span<const NodeId> neighbors(NodeId i) const { return adj_[i]; }

    bool has_edge(NodeId i, NodeId j) const;
    // Both return whether the edge set changed.
    bool add_edge(NodeId i, NodeId j);
    bool remove_edge(NodeId i, NodeId j);
    /// Deletes every edge incident to i (site percolation).
    void isolate(NodeId i);

    /// All edges with u < v, ascending.
    std::vector<Edge> edges() const;

    bool operator==(const Graph&) const = default;

private:
    std::vector<std::vector<NodeId>> adj_;
    std::size_t edge_count_ = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A graph plus the sidecar mapping compact id -> id used in the source file.
struct LoadedGraph {
    Graph graph;
    std::vector<std::int64_t> original_ids;
};

LoadedGraph load_edge_list(std::string_view text);
LoadedGraph load_edge_list_file(const std::filesystem::path& path);

/// "# <n> nodes, <m> edges" header, then one "u v" line per edge with u < v,
/// ascending.
std::string write_edge_list(const Graph& g);
void write_edge_list_file(const Graph& g, const std::filesystem::path& path);

/// G(n, p): every pair i < j is visited in lexicographic order and kept with
/// probability p.
Graph generate_er(std::size_t n, double p, Rng& rng);

/// Largest connected component of the subgraph induced by alive nodes, sorted
/// ascending. Ties go to the component containing the smallest node index.
std::vector<NodeId> giant_component(const Graph& g, const std::vector<bool>& alive);
std::vector<NodeId> giant_component(const Graph& g);

/// BFS distances from source, truncated at max_depth. Unreached nodes get -1.
std::vector<int> bfs_distances(const Graph& g, NodeId source, std::size_t max_depth);

/// Nodes within shortest-path distance k of i (including i), ascending.
std::vector<NodeId> khop_neighborhood(const Graph& g, NodeId i, std::size_t k);

/// Boolean closure of (A + I)^(2k): (i, j) is set iff dist(i, j) <= 2k.
class ReachMask {
public:
    ReachMask() = default;
    explicit ReachMask(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    std::size_t size() const { return n_; }
    bool reaches(NodeId i, NodeId j) const {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
    }
    void set(NodeId i, NodeId j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }

    bool operator==(const ReachMask&) const = default;

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Rows are filled in parallel (one depth-2k BFS per node).
ReachMask reach_mask(const Graph& g, std::size_t k);

struct Subgraph {
    Graph graph;
    std::vector<NodeId> source_ids;  // compact id -> node id in the parent graph
};

/// Subgraph induced by `nodes`; compact ids follow the order of `nodes`.
Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Ranks nodes by degree (descending, ties by index), induces the subgraph on
/// ranks [lo_rank, hi_rank] (1-based, inclusive) and keeps its largest
/// connected component.
Subgraph derive_degree_rank_subgraph(const Graph& g, std::size_t lo_rank, std::size_t hi_rank);

}  // namespace diversinet

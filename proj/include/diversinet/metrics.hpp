#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "diversinet/graph.hpp"
#include "diversinet/node_model.hpp"

namespace diversinet {

struct MetricReport {
    double sd = 0.0;  // mean software diversity
    double sg = 0.0;  // giant component fraction (active, healthy nodes)
    double pc = 0.0;  // fraction of nodes ever compromised
    double dc = 0.0;  // defense cost
};

double metric_sg(const Graph& g, std::span<const NodeState> states);
double metric_pc(std::span<const NodeState> states);

/// Normalized edge difference between the two adjacency matrices plus the
/// shuffled-node fraction. Throws std::invalid_argument on a node-count
/// mismatch.
double metric_dc(const Graph& original, const Graph& final_graph, std::size_t n_sf);

}  // namespace diversinet

#include "diversinet/metrics.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace diversinet {

double metric_sg(const Graph& g, std::span<const NodeState> states) {
    const std::size_t n = g.node_count();
    if (states.size() != n) throw std::invalid_argument("metric_sg: state vector length mismatch");
    if (n == 0) return 0.0;
    std::vector<bool> healthy(n);
    for (std::size_t i = 0; i < n; ++i) healthy[i] = states[i].active && !states[i].compromised;
    return static_cast<double>(giant_component(g, healthy).size()) / static_cast<double>(n);
}

double metric_pc(std::span<const NodeState> states) {
    if (states.empty()) return 0.0;
    const auto count = std::count_if(states.begin(), states.end(), [](const NodeState& s) { return s.compromised; });
    return static_cast<double>(count) / static_cast<double>(states.size());
}

double metric_dc(const Graph& original, const Graph& final_graph, std::size_t n_sf) {
    const std::size_t n = original.node_count();
    if (final_graph.node_count() != n) throw std::invalid_argument("metric_dc: node count mismatch");
    const auto a = original.edges();
    const auto b = final_graph.edges();
    std::vector<Edge> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    // Each undirected edge occupies two matrix cells; the factor cancels.
    const double total = static_cast<double>(a.size() + b.size());
    const double edge_term = total == 0.0 ? 0.0 : static_cast<double>(diff.size()) / total;
    const double shuffle_term = n == 0 ? 0.0 : static_cast<double>(n_sf) / static_cast<double>(n);
    return edge_term + shuffle_term;
}

}  // namespace diversinet

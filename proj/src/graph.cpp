#include "diversinet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace diversinet {

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
    Graph g(node_count);
    for (const auto& e : edges) {
        if (e.u >= node_count || e.v >= node_count) {
            throw std::out_of_range("edge endpoint out of range");
        }
        if (e.u == e.v) continue;
        g.adj_[e.u].push_back(e.v);
        g.adj_[e.v].push_back(e.u);
    }
    std::size_t endpoints = 0;
    for (auto& nbrs : g.adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        endpoints += nbrs.size();
    }
    g.edge_count_ = endpoints / 2;
    return g;
}

bool Graph::has_edge(NodeId i, NodeId j) const {
    const auto& nbrs = adj_[i];
    return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

bool Graph::add_edge(NodeId i, NodeId j) {
    if (i == j) return false;
    auto& a = adj_[i];
    auto it = std::lower_bound(a.begin(), a.end(), j);
    if (it != a.end() && *it == j) return false;
    a.insert(it, j);
    auto& b = adj_[j];
    b.insert(std::lower_bound(b.begin(), b.end(), i), i);
    ++edge_count_;
    return true;
}

bool Graph::remove_edge(NodeId i, NodeId j) {
    auto& a = adj_[i];
    auto it = std::lower_bound(a.begin(), a.end(), j);
    if (it == a.end() || *it != j) return false;
    a.erase(it);
    auto& b = adj_[j];
    b.erase(std::lower_bound(b.begin(), b.end(), i));
    --edge_count_;
    return true;
}

void Graph::isolate(NodeId i) {
    for (NodeId j : adj_[i]) {
        auto& b = adj_[j];
        b.erase(std::lower_bound(b.begin(), b.end(), i));
    }
    edge_count_ -= adj_[i].size();
    adj_[i].clear();
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < adj_.size(); ++u) {
        for (NodeId v : adj_[u]) {
            if (u < v) out.push_back({u, v});
        }
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

bool next_token(std::string_view& s, std::string_view& token) {
    s = trim(s);
    if (s.empty()) return false;
    std::size_t end = s.find_first_of(" \t");
    if (end == std::string_view::npos) end = s.size();
    token = s.substr(0, end);
    s.remove_prefix(end);
    return true;
}

std::int64_t parse_id(std::string_view token, std::size_t line) {
    std::int64_t value = 0;
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(line, "expected integer node id, got '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

LoadedGraph load_edge_list(std::string_view text) {
    std::unordered_map<std::int64_t, NodeId> compact;
    std::vector<std::int64_t> original;
    std::vector<Edge> edges;
    const auto intern = [&](std::int64_t id) {
        auto [it, inserted] = compact.try_emplace(id, static_cast<NodeId>(original.size()));
        if (inserted) original.push_back(id);
        return it->second;
    };

    std::size_t line_no = 0;
    while (!text.empty()) {
        std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        std::string_view a, b, extra;
        if (!next_token(line, a) || !next_token(line, b) || next_token(line, extra)) {
            throw ParseError(line_no, "expected exactly two integer tokens");
        }
        const std::int64_t u = parse_id(a, line_no);
        const std::int64_t v = parse_id(b, line_no);
        const NodeId cu = intern(u);
        const NodeId cv = intern(v);
        edges.push_back({cu, cv});
    }
    return {Graph::from_edges(original.size(), edges), std::move(original)};
}

LoadedGraph load_edge_list_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open edge list: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_edge_list(buf.str());
}

std::string write_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "# " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

void write_edge_list_file(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write edge list: " + path.string());
    out << write_edge_list(g);
}

Graph generate_er(std::size_t n, double p, Rng& rng) {
    if (n < 1) throw std::invalid_argument("generate_er: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("generate_er: p must lie in [0, 1]");
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (rng.uniform01() < p) edges.push_back({i, j});
        }
    }
    return Graph::from_edges(n, edges);
}

std::vector<NodeId> giant_component(const Graph& g, const std::vector<bool>& alive) {
    const std::size_t n = g.node_count();
    if (alive.size() != n) throw std::invalid_argument("giant_component: mask length mismatch");
    std::vector<bool> seen(n, false);
    std::vector<NodeId> best;
    std::vector<NodeId> component;
    std::vector<NodeId> stack;
    // Scanning roots in index order means each component is first met at its
    // smallest index, so a strict '>' keeps the smallest-min-index component.
    for (NodeId root = 0; root < n; ++root) {
        if (!alive[root] || seen[root]) continue;
        component.clear();
        stack.assign(1, root);
        seen[root] = true;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            component.push_back(u);
            for (NodeId v : g.neighbors(u)) {
                if (alive[v] && !seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
            }
        }
        if (component.size() > best.size()) best = component;
    }
    std::sort(best.begin(), best.end());
    return best;
}

std::vector<NodeId> giant_component(const Graph& g) {
    return giant_component(g, std::vector<bool>(g.node_count(), true));
}

std::vector<int> bfs_distances(const Graph& g, NodeId source, std::size_t max_depth) {
    std::vector<int> dist(g.node_count(), -1);
    std::deque<NodeId> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        if (static_cast<std::size_t>(dist[u]) == max_depth) continue;
        for (NodeId v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::vector<NodeId> khop_neighborhood(const Graph& g, NodeId i, std::size_t k) {
    const auto dist = bfs_distances(g, i, k);
    std::vector<NodeId> out;
    for (NodeId v = 0; v < dist.size(); ++v) {
        if (dist[v] >= 0) out.push_back(v);
    }
    return out;
}

ReachMask reach_mask(const Graph& g, std::size_t k) {
    if (k < 1) throw std::invalid_argument("reach_mask: k must be >= 1");
    const std::size_t n = g.node_count();
    ReachMask mask(n);
    // Each iteration writes only its own row.
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        const auto dist = bfs_distances(g, static_cast<NodeId>(i), 2 * k);
        for (NodeId j = 0; j < n; ++j) {
            if (dist[j] >= 0) mask.set(static_cast<NodeId>(i), j);
        }
    }
    return mask;
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
    std::vector<std::int64_t> compact(g.node_count(), -1);
    for (std::size_t c = 0; c < nodes.size(); ++c) compact[nodes[c]] = static_cast<std::int64_t>(c);
    std::vector<Edge> edges;
    for (std::size_t c = 0; c < nodes.size(); ++c) {
        for (NodeId v : g.neighbors(nodes[c])) {
            if (compact[v] > static_cast<std::int64_t>(c)) {
                edges.push_back({static_cast<NodeId>(c), static_cast<NodeId>(compact[v])});
            }
        }
    }
    return {Graph::from_edges(nodes.size(), edges), {nodes.begin(), nodes.end()}};
}

Subgraph derive_degree_rank_subgraph(const Graph& g, std::size_t lo_rank, std::size_t hi_rank) {
    const std::size_t n = g.node_count();
    if (lo_rank < 1 || lo_rank > hi_rank || hi_rank > n) {
        throw std::invalid_argument("derive: ranks must satisfy 1 <= lo <= hi <= node_count");
    }
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });

    std::vector<NodeId> selected(order.begin() + static_cast<std::ptrdiff_t>(lo_rank - 1),
                                 order.begin() + static_cast<std::ptrdiff_t>(hi_rank));
    std::sort(selected.begin(), selected.end());
    const Subgraph induced = induced_subgraph(g, selected);
    if (induced.graph.node_count() == 0) throw std::runtime_error("derive: empty induced subgraph");

    const auto giant = giant_component(induced.graph);
    Subgraph out = induced_subgraph(induced.graph, giant);
    for (auto& id : out.source_ids) id = induced.source_ids[id];
    return out;
}

}  // namespace diversinet

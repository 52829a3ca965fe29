#include "diversinet/adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace diversinet {

std::size_t RemovedEdgeLedger::total() const { return std::accumulate(dn.begin(), dn.end(), std::size_t{0}); }

SdbaResult sdba(const Graph& g, std::span<const PackageId> pkgs) {
    if (pkgs.size() != g.node_count()) throw std::invalid_argument("sdba: package vector length mismatch");
    SdbaResult out{g, {std::vector<std::size_t>(g.node_count(), 0)}};
    for (const auto& e : g.edges()) {
        if (pkgs[e.u] == pkgs[e.v]) {
            out.graph.remove_edge(e.u, e.v);
            ++out.ledger.dn[e.u];
            ++out.ledger.dn[e.v];
        }
    }
    return out;
}

namespace {

void check_rho(double rho) {
    if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [-1, 1]");
}

// Products such as 0.6 * 5 can land a hair below an integer.
std::size_t floor_count(double x) { return static_cast<std::size_t>(std::floor(x + 1e-9)); }

bool rank_ascending(const EdgeCandidate& a, const EdgeCandidate& b) {
    if (a.sd_diff_sum != b.sd_diff_sum) return a.sd_diff_sum < b.sd_diff_sum;
    return a.i != b.i ? a.i < b.i : a.j < b.j;
}

bool rank_descending(const EdgeCandidate& a, const EdgeCandidate& b) {
    if (a.sd_diff_sum != b.sd_diff_sum) return a.sd_diff_sum > b.sd_diff_sum;
    return a.i != b.i ? a.i < b.i : a.j < b.j;
}

double addition_loss(double sd, double sv, double pv) { return sd - sd * (1.0 - sv * pv); }

}  // namespace

AdaptBudget set_eab(const RemovedEdgeLedger& ledger, const Graph& g, double rho, EabBase base) {
    check_rho(rho);
    const std::size_t n = g.node_count();
    if (ledger.dn.size() != n) throw std::invalid_argument("set_eab: ledger length mismatch");
    AdaptBudget budget{0, std::vector<std::size_t>(n, 0)};
    if (n == 0) return budget;

    const double removed = static_cast<double>(ledger.total()) / 2.0;
    const double scaled = (rho < 0.0 && base == EabBase::Prose) ? static_cast<double>(g.edge_count()) : removed;
    budget.t_global = floor_count(std::abs(rho) * scaled);

    const double kappa = (2.0 * static_cast<double>(g.edge_count()) + static_cast<double>(budget.t_global)) /
                         static_cast<double>(n);
    std::int64_t surplus = -static_cast<std::int64_t>(budget.t_global);
    for (NodeId i = 0; i < n; ++i) {
        const double deg = static_cast<double>(g.degree(i));
        const double room = rho > 0.0 ? kappa - deg : deg - kappa;
        budget.t_local[i] = room > 0.0 ? floor_count(room) : 0;
        surplus += static_cast<std::int64_t>(budget.t_local[i]);
    }
    while (surplus > 0) {
        for (NodeId i = 0; i < n && surplus > 0; ++i) {
            if (budget.t_local[i] > 0) {
                --budget.t_local[i];
                --surplus;
            }
        }
    }
    return budget;
}

std::vector<EdgeCandidate> geac(const Graph& g, const ReachMask& mask, std::span<const double> sd,
                                std::span<const double> pv, std::span<const PackageId> pkgs,
                                const SoftwareCatalog& cat) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<EdgeCandidate>> rows(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t row = 0; row < static_cast<std::int64_t>(n); ++row) {
        const auto i = static_cast<NodeId>(row);
        const double sv_i = cat.vulnerability(pkgs[i]);
        for (NodeId j = i + 1; j < n; ++j) {
            if (!mask.reaches(i, j) || pkgs[i] == pkgs[j] || g.has_edge(i, j)) continue;
            const double sv_j = cat.vulnerability(pkgs[j]);
            rows[i].push_back({i, j, addition_loss(sd[i], sv_i, pv[j]) + addition_loss(sd[j], sv_j, pv[i])});
        }
    }
    std::vector<EdgeCandidate> out;
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    std::sort(out.begin(), out.end(), rank_ascending);
    return out;
}

double removal_gain(double sd, double sv, double pv) {
    const double denom = 1.0 - sv * pv;
    if (denom <= kRemovalGuard) return std::min(sd * (1.0 / kRemovalGuard - 1.0), 1.0);
    return sd / denom - sd;
}

std::vector<EdgeCandidate> gerc(const Graph& g, std::span<const double> sd, std::span<const double> pv,
                                std::span<const PackageId> pkgs, const SoftwareCatalog& cat) {
    std::vector<EdgeCandidate> out;
    out.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        const double sv_i = cat.vulnerability(pkgs[e.u]);
        const double sv_j = cat.vulnerability(pkgs[e.v]);
        out.push_back({e.u, e.v, removal_gain(sd[e.u], sv_i, pv[e.v]) + removal_gain(sd[e.v], sv_j, pv[e.u])});
    }
    std::sort(out.begin(), out.end(), rank_descending);
    return out;
}

AdaptNtResult adapt_nt(Graph g, std::span<const EdgeCandidate> candidates, AdaptBudget budget, double rho) {
    check_rho(rho);
    AdaptNtResult result{std::move(g), 0, 0};
    if (rho == 0.0) return result;
    auto& graph = result.graph;
    const auto apply = [&](const EdgeCandidate& c) {
        return rho > 0.0 ? graph.add_edge(c.i, c.j) : graph.remove_edge(c.i, c.j);
    };

    for (const auto& c : candidates) {
        if (budget.t_global == 0) break;
        if (budget.t_local[c.i] > 0 && budget.t_local[c.j] > 0 && apply(c)) {
            --budget.t_local[c.i];
            --budget.t_local[c.j];
            --budget.t_global;
            ++result.pass1_actions;
        }
    }
    for (const auto& c : candidates) {
        if (budget.t_global == 0) break;
        if (apply(c)) {
            --budget.t_global;
            ++result.pass2_actions;
        }
    }
    return result;
}

Graph sda(const Graph& g, std::span<const PackageId> pkgs, const SoftwareCatalog& cat,
          const SdaOptions& options) {
    check_rho(options.rho);
    auto step1 = sdba(g, pkgs);
    if (options.rho == 0.0) return std::move(step1.graph);

    const Graph& adapted = step1.graph;
    auto budget = set_eab(step1.ledger, adapted, options.rho, options.eab_base);
    const auto sd = software_diversity_all(adapted, options.k, options.l, pkgs, cat);
    const auto pv = gen_pv(adapted, pkgs, cat, options.k, options.pv_mode);
    const auto candidates = options.rho > 0.0
                                ? geac(adapted, reach_mask(adapted, options.k), sd, pv, pkgs, cat)
                                : gerc(adapted, sd, pv, pkgs, cat);
    return adapt_nt(adapted, candidates, std::move(budget), options.rho).graph;
}

Graph random_a(const Graph& g, std::span<const PackageId> pkgs, Rng& rng) {
    auto step1 = sdba(g, pkgs);
    Graph& graph = step1.graph;
    auto& dn = step1.ledger.dn;
    const std::size_t n = graph.node_count();
    std::vector<NodeId> partners;
    for (NodeId i = 0; i < n; ++i) {
        if (dn[i] == 0) continue;
        partners.clear();
        for (NodeId j = 0; j < n; ++j) {
            if (j != i && dn[j] > 0 && pkgs[i] != pkgs[j] && !graph.has_edge(i, j)) partners.push_back(j);
        }
        while (dn[i] > 0 && !partners.empty()) {
            const std::size_t r = rng.below(partners.size());
            const NodeId j = partners[r];
            partners[r] = partners.back();
            partners.pop_back();
            graph.add_edge(i, j);
            --dn[i];
            --dn[j];
        }
    }
    return std::move(graph);
}

namespace {

PackageId least_common(std::span<const std::size_t> counts) {
    // counts[0] is unused; packages are 1-based.
    std::size_t best = 1;
    for (std::size_t p = 2; p < counts.size(); ++p) {
        if (counts[p] < counts[best]) best = p;
    }
    return static_cast<PackageId>(best);
}

}  // namespace

ShuffleResult random_graph_c(std::span<const PackageId> pkgs, const Graph& g, const SoftwareCatalog& cat) {
    const std::size_t n = g.node_count();
    if (pkgs.size() != n) throw std::invalid_argument("random_graph_c: package vector length mismatch");
    std::vector<std::size_t> global(cat.ns() + 1, 0);
    for (PackageId p : pkgs) ++global[p];
    const PackageId global_least = least_common(global);

    ShuffleResult out{PackageAssignment(pkgs.begin(), pkgs.end()), 0};
    std::vector<std::size_t> local(cat.ns() + 1);
    for (NodeId i = 0; i < n; ++i) {
        PackageId chosen = global_least;
        if (g.degree(i) > 0) {
            std::fill(local.begin(), local.end(), 0);
            for (NodeId j : g.neighbors(i)) ++local[pkgs[j]];
            chosen = least_common(local);
        }
        if (chosen != pkgs[i]) ++out.shuffle_count;
        out.packages[i] = chosen;
    }
    return out;
}

std::string_view scheme_token(Scheme s) {
    switch (s) {
        case Scheme::NoA: return "no-a";
        case Scheme::RandomA: return "random-a";
        case Scheme::RandomGraphC: return "random-graph-c";
        case Scheme::Sda: return "sda";
    }
    return "?";
}

Scheme parse_scheme(std::string_view token) {
    for (Scheme s : all_schemes()) {
        if (scheme_token(s) == token) return s;
    }
    throw std::invalid_argument("unknown scheme '" + std::string(token) + "'");
}

std::vector<Scheme> all_schemes() { return {Scheme::NoA, Scheme::RandomA, Scheme::RandomGraphC, Scheme::Sda}; }

}  // namespace diversinet

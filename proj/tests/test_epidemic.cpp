#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "diversinet/epidemic.hpp"
#include "diversinet/metrics.hpp"

using namespace diversinet;

namespace {

std::size_t compromised_count(const std::vector<NodeState>& states) {
    std::size_t c = 0;
    for (const auto& s : states) c += s.compromised;
    return c;
}

struct Scenario {
    Graph g;
    std::vector<NodeState> states;
    SoftwareCatalog cat = SoftwareCatalog::defaults(5);
};

Scenario random_scenario(Rng& rng, std::size_t n, double p, double pa) {
    Scenario s{generate_er(n, p, rng), {}};
    s.states = seed_attackers(make_states(assign_packages(n, s.cat, rng)), pa, rng);
    return s;
}

}  // namespace

TEST_SUITE("epidemic") {

TEST_CASE("gamma = 1 stops every seed in the first round") {
    Rng rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_scenario(rng, 100, 0.05, 0.1);
        const std::size_t seeds = compromised_count(s.states);
        EpidemicOptions opt;
        opt.gamma = 1.0;
        const auto out = run_epidemic(s.g, s.states, s.cat, opt, rng);
        CHECK(compromised_count(out.final_states) == seeds);
        CHECK(out.rounds == 1);
        for (const auto& st : out.final_states) {
            if (st.compromised) CHECK_FALSE(st.active);
            else CHECK(st.active);  // fp branch needs r1 > 1
        }
    }
}

TEST_CASE("gamma = 0 with full knowledge compromises a connected graph") {
    Rng rng(103);
    int tested = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto s = random_scenario(rng, 40, 0.15, 0.0);
        if (!oracle::connected(s.g)) continue;
        ++tested;
        const NodeId seed = static_cast<NodeId>(rng.below(40));
        s.states[seed].compromised = true;
        s.states[seed].learned = PackageSet::all(s.cat.ns());
        EpidemicOptions opt;
        opt.gamma = 0.0;
        opt.fp_mode = FalsePositiveMode::Off;
        const auto out = run_epidemic(s.g, s.states, s.cat, opt, rng);
        CHECK(metric_pc(out.final_states) == 1.0);
    }
    CHECK(tested > 20);
}

TEST_CASE("epidemic invariants") {
    Rng rng(107);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(120);
        auto s = random_scenario(rng, n, 0.05, 0.05 + 0.3 * rng.uniform01());
        EpidemicOptions opt;
        opt.gamma = rng.uniform01();
        opt.fp_mode = rng.below(2) ? FalsePositiveMode::On : FalsePositiveMode::Off;
        const auto out = run_epidemic(s.g, s.states, s.cat, opt, rng);
        CHECK(out.rounds >= 1);
        CHECK(out.rounds <= 3 * n + 1);
        for (NodeId i = 0; i < n; ++i) {
            const auto& st = out.final_states[i];
            CHECK(out.spread_counts[i] <= kSpreadChances);
            if (s.states[i].compromised) CHECK(st.compromised);
            if (!st.active) CHECK(out.final_graph.degree(i) == 0);
            if (st.compromised) CHECK(st.learned.contains(st.package));
            // Terminal state: every active attacker has used up its chances.
            if (st.active && st.compromised) CHECK(out.spread_counts[i] == kSpreadChances);
        }
        for (const auto& e : out.final_graph.edges()) CHECK(s.g.has_edge(e.u, e.v));
        const double pc = metric_pc(out.final_states);
        double active_compromised = 0.0;
        for (const auto& st : out.final_states) active_compromised += st.active && st.compromised;
        CHECK(metric_sg(out.final_graph, out.final_states) <= 1.0 - active_compromised / n + 1e-12);
        CHECK(pc >= metric_pc(s.states));
    }
}

TEST_CASE("no attackers and no false positives leave the network intact") {
    Rng rng(109);
    auto s = random_scenario(rng, 80, 0.1, 0.0);
    EpidemicOptions opt;
    opt.fp_mode = FalsePositiveMode::Off;
    const auto out = run_epidemic(s.g, s.states, s.cat, opt, rng);
    CHECK(out.final_graph == s.g);
    CHECK(out.rounds == 1);
    CHECK(metric_pc(out.final_states) == 0.0);
}

TEST_CASE("epidemic is deterministic for a fixed stream") {
    Rng setup(113);
    auto s = random_scenario(setup, 200, 0.03, 0.1);
    Rng a(5), b(5);
    const auto x = run_epidemic(s.g, s.states, s.cat, {}, a);
    const auto y = run_epidemic(s.g, s.states, s.cat, {}, b);
    CHECK(x.final_graph == y.final_graph);
    CHECK(x.rounds == y.rounds);
    CHECK(metric_pc(x.final_states) == metric_pc(y.final_states));
}

TEST_CASE("learned set inheritance switch") {
    // Path 0-1-2 with packages (1, 2, 3); seed 0 already knows package 3.
    const Graph g = oracle::path_graph(3);
    auto states = make_states(PackageAssignment{1, 2, 3});
    states[0].compromised = true;
    states[0].learned = PackageSet::all(3);
    const SoftwareCatalog cat({1.0, 1.0, 1e-300});
    EpidemicOptions opt;
    opt.gamma = 0.0;
    opt.fp_mode = FalsePositiveMode::Off;
    Rng a(1);
    const auto with = run_epidemic(g, states, cat, opt, a);
    CHECK(with.final_states[2].compromised);
    CHECK(with.final_states[1].learned.contains(3));

    opt.inherit_learned = false;
    Rng b(1);
    const auto without = run_epidemic(g, states, cat, opt, b);
    CHECK(without.final_states[1].compromised);
    CHECK_FALSE(without.final_states[1].learned.contains(3));
    CHECK_FALSE(without.final_states[2].compromised);
}

TEST_CASE("mean compromise grows with the attacker fraction") {
    const auto cat = SoftwareCatalog::defaults(5);
    Rng topo(127);
    const Graph g = generate_er(300, 0.025, topo);
    auto mean_pc = [&](double pa) {
        double total = 0.0;
        for (std::uint64_t run = 0; run < 40; ++run) {
            auto assign = Rng::for_stream(7, run, Stream::Assignment);
            auto seeding = Rng::for_stream(7, run, Stream::Seeding);
            auto epi = Rng::for_stream(7, run, Stream::Epidemic);
            auto states = seed_attackers(make_states(assign_packages(300, cat, assign)), pa, seeding);
            total += metric_pc(run_epidemic(g, states, cat, {}, epi).final_states);
        }
        return total / 40;
    };
    const double low = mean_pc(0.05), mid = mean_pc(0.15), high = mean_pc(0.3);
    CHECK(low < mid);
    CHECK(mid < high);
    CHECK(low > 0.05);
    CHECK(high < 1.0);
}

TEST_CASE("input validation") {
    Rng rng(1);
    const auto cat = SoftwareCatalog::defaults(2);
    EpidemicOptions bad;
    bad.gamma = 1.5;
    CHECK_THROWS(run_epidemic(Graph(2), make_states(PackageAssignment{1, 2}), cat, bad, rng));
    CHECK_THROWS(run_epidemic(Graph(3), make_states(PackageAssignment{1, 2}), cat, {}, rng));
}

}  // TEST_SUITE

TEST_SUITE("metrics") {

TEST_CASE("metric_sg examples") {
    const Graph path = oracle::path_graph(5);
    auto states = make_states(PackageAssignment(5, 1));
    CHECK(metric_sg(path, states) == 1.0);
    for (auto& s : states) s.compromised = true;
    CHECK(metric_sg(path, states) == 0.0);

    const Graph parts = Graph::from_edges(
        10, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {7, 8}});
    auto mixed = make_states(PackageAssignment(10, 1));
    mixed[7].compromised = true;
    mixed[8].active = false;
    mixed[9].compromised = true;
    CHECK(metric_sg(parts, mixed) == doctest::Approx(0.4));
}

TEST_CASE("metric_pc examples") {
    auto states = make_states(PackageAssignment(10, 1));
    CHECK(metric_pc(states) == 0.0);
    for (int i = 0; i < 3; ++i) states[i].compromised = true;
    CHECK(metric_pc(states) == doctest::Approx(0.3));
    for (auto& s : states) s.compromised = true;
    CHECK(metric_pc(states) == 1.0);
}

TEST_CASE("metric_dc examples") {
    const Graph tri = oracle::complete_graph(3);
    CHECK(metric_dc(tri, tri, 0) == 0.0);
    CHECK(metric_dc(tri, Graph(3), 0) == 1.0);
    CHECK(metric_dc(Graph(100), Graph(100), 5) == doctest::Approx(0.05));
    CHECK(metric_dc(Graph(4), Graph(4), 0) == 0.0);
    CHECK_THROWS(metric_dc(tri, Graph(4), 0));
}

TEST_CASE("metric_dc edge term is symmetric and bounded") {
    Rng rng(131);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(40);
        const Graph a = generate_er(n, 0.2, rng);
        const Graph b = generate_er(n, 0.2, rng);
        const double ab = metric_dc(a, b, 0);
        CHECK(ab == metric_dc(b, a, 0));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
    }
}

}  // TEST_SUITE

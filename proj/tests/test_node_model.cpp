#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "diversinet/node_model.hpp"

using namespace diversinet;

TEST_SUITE("node_model") {

TEST_CASE("catalog validation") {
    CHECK_THROWS_AS(SoftwareCatalog({}), std::invalid_argument);
    CHECK_THROWS_AS(SoftwareCatalog({0.0}), std::invalid_argument);
    CHECK_THROWS_AS(SoftwareCatalog({0.5, 1.5}), std::invalid_argument);
    CHECK_NOTHROW(SoftwareCatalog({1.0}));
    CHECK_THROWS(SoftwareCatalog::defaults(0));
    CHECK_THROWS(SoftwareCatalog::defaults(8));
    const auto cat = SoftwareCatalog::defaults(5);
    CHECK(cat.ns() == 5);
    CHECK(cat.vulnerability(1) == 0.41);
    CHECK(cat.vulnerability(5) == 0.16);
    CHECK_THROWS_AS(cat.vulnerability(0), std::out_of_range);
    CHECK_THROWS_AS(cat.vulnerability(6), std::out_of_range);
}

TEST_CASE("catalog text round trip") {
    const auto cat = SoftwareCatalog::defaults(7);
    CHECK(SoftwareCatalog::parse(cat.serialize()) == cat);
    const SoftwareCatalog odd({0.1 + 0.2, 1.0 / 3.0});
    CHECK(SoftwareCatalog::parse(odd.serialize()) == odd);
    CHECK_THROWS(SoftwareCatalog::parse("3 0.1 0.2"));
    CHECK_THROWS(SoftwareCatalog::parse("1 0.1 junk"));
}

TEST_CASE("assignment text round trip") {
    Rng rng(3);
    const auto cat = SoftwareCatalog::defaults(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pkgs = assign_packages(rng.below(50), cat, rng);
        CHECK(parse_assignment(serialize_assignment(pkgs)) == pkgs);
    }
    CHECK_THROWS(parse_assignment("2 1 0"));
    CHECK_THROWS(parse_assignment("2 1"));
}

TEST_CASE("assign_packages with a single package") {
    Rng rng(8);
    const auto pkgs = assign_packages(100, SoftwareCatalog::defaults(1), rng);
    for (PackageId p : pkgs) CHECK(p == 1);
}

TEST_CASE("assign_packages is uniform") {
    Rng rng(2024);
    const auto pkgs = assign_packages(10000, SoftwareCatalog::defaults(5), rng);
    std::size_t counts[6] = {};
    for (PackageId p : pkgs) {
        REQUIRE(p >= 1);
        REQUIRE(p <= 5);
        ++counts[p];
    }
    const double sigma = std::sqrt(10000 * 0.2 * 0.8);
    for (int p = 1; p <= 5; ++p) CHECK(std::abs(double(counts[p]) - 2000.0) < 3 * sigma);
}

TEST_CASE("assign_packages is deterministic") {
    Rng a(77), b(77);
    const auto cat = SoftwareCatalog::defaults(5);
    CHECK(assign_packages(500, cat, a) == assign_packages(500, cat, b));
}

TEST_CASE("hop_vulnerability rules") {
    const auto cat = SoftwareCatalog::defaults(5);
    CHECK(hop_vulnerability(3, 3, cat) == 1.0);
    CHECK(hop_vulnerability(2, 1, cat) == 0.41);
    PackageSet learned;
    learned.insert(1);
    CHECK(hop_vulnerability(2, 1, cat, learned) == 1.0);
    CHECK(hop_vulnerability(2, 4, cat, learned) == 0.22);
    NodeState target;
    target.package = 5;
    CHECK(hop_vulnerability(1, target, cat) == 0.16);
    CHECK(node_vulnerability(target, cat) == 0.16);
}

TEST_CASE("package set") {
    auto all = PackageSet::all(5);
    for (PackageId p = 1; p <= 5; ++p) CHECK(all.contains(p));
    CHECK_FALSE(all.contains(6));
    CHECK(all.count() == 5);
    CHECK(PackageSet::all(64).count() == 64);
    PackageSet a, b;
    a.insert(2);
    b.insert(7);
    a.merge(b);
    CHECK(a.contains(7));
    CHECK(a.count() == 2);
}

TEST_CASE("seed_attackers examples") {
    Rng rng(4);
    const auto fresh = make_states(PackageAssignment(100, 2));
    auto count = [](const std::vector<NodeState>& s) {
        std::size_t c = 0;
        for (const auto& x : s) c += x.compromised;
        return c;
    };
    CHECK(count(seed_attackers(fresh, 0.0, rng)) == 0);
    CHECK(count(seed_attackers(fresh, 1.0, rng)) == 100);
    const auto seeded = seed_attackers(fresh, 0.1, rng);
    CHECK(count(seeded) == 10);
    for (const auto& s : seeded) {
        if (!s.compromised) continue;
        CHECK(s.active);
        CHECK(s.learned.contains(2));
        CHECK(s.learned.count() == 1);
    }
    CHECK(seed_count(5, 0.1) == 1);  // 0.5 rounds up
    CHECK(seed_count(4, 0.1) == 0);
    CHECK_THROWS(seed_attackers(fresh, 1.5, rng));
}

TEST_CASE("seed_attackers picks every node with equal frequency") {
    std::size_t hits[20] = {};
    const auto fresh = make_states(PackageAssignment(20, 1));
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) {
        Rng rng(static_cast<std::uint64_t>(t));
        const auto s = seed_attackers(fresh, 0.25, rng);
        for (std::size_t i = 0; i < 20; ++i) hits[i] += s[i].compromised;
    }
    // Each node is a seed with probability 0.25.
    const double sigma = std::sqrt(trials * 0.25 * 0.75);
    for (std::size_t i = 0; i < 20; ++i) CHECK(std::abs(double(hits[i]) - trials * 0.25) < 4 * sigma);
}

TEST_CASE("rng streams are independent and reproducible") {
    auto a = Rng::for_stream(42, 3, Stream::Epidemic);
    auto b = Rng::for_stream(42, 3, Stream::Epidemic);
    auto c = Rng::for_stream(42, 3, Stream::Seeding);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    Rng r(1);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double w = r.uniform_open_closed();
        CHECK(w > 0.0);
        CHECK(w <= 1.0);
        CHECK(r.below(7) < 7);
    }
}

}  // TEST_SUITE

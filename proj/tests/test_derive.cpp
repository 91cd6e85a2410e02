#include <doctest.h>

#include <map>
#include <random>

#include "snnmap/engine.hpp"
#include "support.hpp"

using namespace snnmap;
using snnmap::testing::id;

namespace {

const DerivationParams kLine{4, Rational(3, 4), Rational(2, 3)};

// Highest copy of every neuron fails; the lowest source copy loses its edge to every target copy.
FailurePattern example_pattern(const NetworkSpec& a1, const DetailedNetwork& d) {
    FailurePattern f;
    const int m = d.copies.m();
    for (const auto& v : a1.neurons) f.failed_neurons.insert(d.copies.copies(v)[static_cast<std::size_t>(m - 1)]);
    for (const auto& e : a1.edges) {
        for (const auto& y : d.copies.copies(e.dst)) f.failed_edges.insert({d.copies.copies(e.src)[0], y});
    }
    return f;
}

}  // namespace

TEST_SUITE("derive") {

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(kLine.validate());
    CHECK_THROWS_AS((DerivationParams{0, Rational(1), Rational(1)}.validate()), ModelError);
    CHECK_THROWS_AS((DerivationParams{2, Rational(0), Rational(1)}.validate()), ModelError);
    CHECK_THROWS_AS((DerivationParams{2, Rational(1), Rational(3, 2)}.validate()), ModelError);
    CHECK(kLine.min_surviving_copies() == Rational(3));
    CHECK(kLine.min_surviving_edges() == Rational(2));
}

TEST_CASE("A2 thresholds") {
    const auto a2 = derive_a2(build_line({5}), kLine);
    for (const auto& [v, h] : a2.thresholds) CHECK(h == Rational(1, 2));

    const auto h5 = derive_a2(build_hierarchy({3, 5, Rational(4, 5)}), {32, Rational(15, 16), Rational(14, 15)});
    for (const auto& [v, h] : h5.thresholds) CHECK(h == Rational(7, 2));

    const auto line = build_line({5});
    auto same = derive_a2(line, {3, Rational(1), Rational(1)});
    same.name = line.name;
    CHECK(same == line);
}

TEST_CASE("D on the line") {
    const auto a1 = build_line({5});
    const auto d = derive_d(a1, kLine);
    CHECK(d.net.neurons.size() == 24);
    CHECK(d.net.edges.size() == 80);
    CHECK(validate_network(d.net).empty());
    for (const auto& [v, h] : d.net.thresholds) CHECK(h == Rational(1, 2));
    for (const auto& e : d.net.edges) CHECK(e.weight == Rational(1, 4));
    CHECK(d.net.input_neurons.size() == 4);
    CHECK(d.copies.copies(id("2")) ==
          std::vector<NeuronId>{id("2#0"), id("2#1"), id("2#2"), id("2#3")});
    CHECK(d.copies.original(id("2#3")) == id("2"));
    CHECK_FALSE(d.copies.find_original(id("7#0")).has_value());
}

TEST_CASE("D on the hierarchy") {
    const auto d = derive_d(build_hierarchy({3, 3, Rational(2, 3)}), kLine);
    for (const auto& [v, h] : d.net.thresholds) CHECK(h == Rational(1));
    CHECK(d.net.neurons.size() == 160);
    CHECK(d.net.edges.size() == 39 * 16);
}

TEST_CASE("m = 1 with full survival is an isomorphic copy") {
    const auto a1 = build_hierarchy({2, 3, Rational(2, 3)});
    const auto d = derive_d(a1, {1, Rational(1), Rational(1)});
    NetworkSpec renamed;
    renamed.name = a1.name;
    auto back = [&](const NeuronId& y) { return d.copies.original(y); };
    for (const auto& y : d.net.neurons) renamed.neurons.push_back(back(y));
    for (const auto& y : d.net.input_neurons) renamed.input_neurons.insert(back(y));
    for (const auto& e : d.net.edges) renamed.edges.push_back({back(e.src), back(e.dst), e.weight});
    for (const auto& [y, h] : d.net.thresholds) renamed.thresholds[back(y)] = h;
    for (const auto& [y, f] : d.net.initial_firing) renamed.initial_firing[back(y)] = f;
    CHECK(renamed == a1);
}

TEST_CASE("property: weight conservation and structure on random networks") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const auto a1 = snnmap::testing::random_network(rng, 2, 4, trial % 3 == 0);
        const DerivationParams p{std::uniform_int_distribution<int>(1, 4)(rng),
                                 snnmap::testing::pick(rng, snnmap::testing::survival_grid()),
                                 snnmap::testing::pick(rng, snnmap::testing::survival_grid())};
        const auto d = derive_d(a1, p);
        CHECK(validate_network(d.net).empty());
        CHECK(d.net.neurons.size() == a1.neurons.size() * static_cast<std::size_t>(p.m));
        CHECK(d.net.edges.size() == a1.edges.size() * static_cast<std::size_t>(p.m * p.m));
        CHECK(audit_derivation(a1, p, d.net, d.copies).empty());
        // For every abstract edge and target copy, the incoming weights sum to the abstract weight.
        std::map<std::pair<EdgeKey, NeuronId>, Rational> sums;
        for (const auto& e : d.net.edges) {
            sums[{EdgeKey{d.copies.original(e.src), d.copies.original(e.dst)}, e.dst}] += e.weight;
        }
        for (const auto& [key, sum] : sums) CHECK(sum == *a1.weight(key.first.src, key.first.dst));
        for (const auto& v : a1.non_inputs_in_order()) {
            for (const auto& y : d.copies.copies(v)) {
                CHECK(d.net.thresholds.at(y) == a1.thresholds.at(v) * p.s_v * p.s_e);
                CHECK(d.net.initially_fires(y) == a1.initially_fires(v));
            }
        }
    }
}

TEST_CASE("audit_derivation reports edits") {
    const auto a1 = build_line({3});
    auto d = derive_d(a1, kLine);
    d.net.thresholds[id("2#1")] = Rational(0);
    d.net.edges.front().weight = Rational(1);
    const auto diffs = audit_derivation(a1, kLine, d.net, d.copies);
    CHECK(diffs.size() == 2);
}

TEST_CASE("failure constraints") {
    const auto a1 = build_line({5});
    const auto d = derive_d(a1, kLine);
    const auto f = example_pattern(a1, d);
    CHECK(f.failed_neurons.size() == 6);
    CHECK(validate_failure_constraints(d.net, d.copies, kLine, f).satisfied());
    CHECK(validate_failure_constraints(d.net, d.copies, kLine, {}).satisfied());

    // One more failed copy of neuron 2 breaks constraint 1 for neuron 2 only.
    auto g = f;
    g.failed_neurons.insert(id("2#0"));
    const auto r1 = validate_failure_constraints(d.net, d.copies, kLine, g);
    REQUIRE_FALSE(r1.satisfied());
    CHECK(r1.violations.front().constraint == 1);
    CHECK(r1.violations.front().neuron == id("2"));
    CHECK(r1.violations.front().actual == 2);

    FailurePattern all;
    for (const auto& y : d.copies.copies(id("3"))) all.failed_neurons.insert(y);
    const auto r_all = validate_failure_constraints(d.net, d.copies, kLine, all);
    REQUIRE_FALSE(r_all.satisfied());
    CHECK(r_all.violations.front().describe().find("'3'") != std::string::npos);

    // Failing a second qualifying edge into 4#1 leaves one, below 2.
    auto h = f;
    h.failed_edges.insert({id("3#1"), id("4#1")});
    const auto r2 = validate_failure_constraints(d.net, d.copies, kLine, h);
    REQUIRE(r2.violations.size() == 1);
    CHECK(r2.violations.front().constraint == 2);
    CHECK(*r2.violations.front().copy == id("4#1"));
    CHECK(r2.violations.front().actual == 1);

    // Constraint 2 also binds at failed target copies.
    auto at_failed = f;
    at_failed.failed_edges.insert({id("3#1"), id("4#3")});
    CHECK_FALSE(validate_failure_constraints(d.net, d.copies, kLine, at_failed).satisfied());

    FailurePattern stray;
    stray.failed_neurons.insert(id("x#0"));
    CHECK_THROWS_AS(validate_failure_constraints(d.net, d.copies, kLine, stray), ModelError);
}

TEST_CASE("lift_input") {
    const auto a1 = build_line({5});
    const auto d = derive_d(a1, kLine);
    FailurePattern f;
    f.failed_neurons.insert(id("0#3"));
    const auto lifted = lift_input(pulse_schedule(a1, 3), d.copies, f);
    CHECK(lifted.inputs() == d.copies.copies(id("0")));
    for (int t = 0; t <= 3; ++t) {
        for (int i = 0; i < 4; ++i) CHECK(lifted.fires(t, id("0#" + std::to_string(i))) == (t == 0 && i < 3));
    }

    const auto empty = lift_input(InputSchedule(3, a1.inputs_in_order()), d.copies, f);
    for (int t = 0; t <= 3; ++t) {
        for (std::size_t i = 0; i < 4; ++i) CHECK_FALSE(empty.fires(t, i));
    }

    InputSchedule s(3, a1.inputs_in_order());
    s.set(0, id("0"), true);
    s.set(2, id("0"), true);
    const auto all = lift_input(s, d.copies, {});
    for (int t = 0; t <= 3; ++t) {
        for (std::size_t i = 0; i < 4; ++i) CHECK(all.fires(t, i) == (t == 0 || t == 2));
    }

    InputSchedule wrong(1, {id("1")});
    CHECK_THROWS_AS(lift_input(wrong, d.copies, {}), ModelError);
}

TEST_CASE("copies map bookkeeping") {
    CopiesMap map(2);
    map.add(id("a"), {id("a#0"), id("a#1")}, true);
    CHECK_THROWS_AS(map.add(id("b"), {id("b#0")}, false), ModelError);
    CHECK_THROWS_AS(map.add(id("b"), {id("a#0"), id("b#1")}, false), ModelError);
    CHECK_THROWS_AS(map.add(id("a"), {id("c#0"), id("c#1")}, false), ModelError);
    CHECK(map.abstract_inputs().contains(id("a")));
    CHECK_THROWS_AS((void)map.copies(id("zz")), ModelError);
}

}

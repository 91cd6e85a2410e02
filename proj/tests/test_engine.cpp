#include <doctest.h>

#include <map>
#include <random>

#include "snnmap/engine.hpp"
#include "support.hpp"

using namespace snnmap;
using snnmap::testing::id;

namespace {

// Straight transcription of the firing rule over NetworkSpec, no indexing.
std::vector<std::set<NeuronId>> reference_run(const NetworkSpec& net, const InputSchedule& s,
                                              const FailurePattern& f) {
    std::vector<std::set<NeuronId>> out;
    std::set<NeuronId> now;
    for (const auto& v : net.neurons) {
        if (f.neuron_failed(v)) continue;
        if (net.is_input(v) ? s.fires(0, v) : net.initially_fires(v)) now.insert(v);
    }
    out.push_back(now);
    for (int t = 1; t <= s.horizon(); ++t) {
        std::set<NeuronId> next;
        for (const auto& v : net.neurons) {
            if (f.neuron_failed(v)) continue;
            if (net.is_input(v)) {
                if (s.fires(t, v)) next.insert(v);
                continue;
            }
            Rational sum(0);
            for (const auto& e : net.edges) {
                if (e.dst == v && now.contains(e.src) && !f.edge_failed(e.src, e.dst)) sum += e.weight;
            }
            if (sum >= net.thresholds.at(v)) next.insert(v);
        }
        now = next;
        out.push_back(now);
    }
    return out;
}

std::set<NeuronId> firing_set(const ExecutionTrace& tr, int t) {
    const auto v = tr.firing_at(t);
    return {v.begin(), v.end()};
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("validate_network flags structural problems") {
    auto net = build_line({5});
    CHECK(validate_network(net).empty());

    auto into_input = net;
    into_input.edges.push_back({id("3"), id("0"), Rational(1)});
    const auto p1 = validate_network(into_input);
    REQUIRE(p1.size() == 1);
    CHECK(p1[0].find("(3,0)") != std::string::npos);

    auto loop_input = net;
    loop_input.edges.push_back({id("0"), id("0"), Rational(1)});
    CHECK(validate_network(loop_input).size() == 1);

    auto dup = net;
    dup.edges.push_back(dup.edges.front());
    CHECK_FALSE(validate_network(dup).empty());

    auto missing = net;
    missing.thresholds.erase(id("2"));
    CHECK_FALSE(validate_network(missing).empty());

    auto unknown = net;
    unknown.edges.push_back({id("1"), id("zz"), Rational(1)});
    CHECK_FALSE(validate_network(unknown).empty());
    CHECK_THROWS_AS(require_valid(unknown), ModelError);

    auto self_loop = net;
    self_loop.edges.push_back({id("2"), id("2"), Rational(1)});
    CHECK(validate_network(self_loop).empty());
}

TEST_CASE("incoming potential") {
    const auto line = build_line({5});
    const auto prev = configuration_of(line, {id("0")});
    CHECK(incoming_potential(line, prev, id("1"), {}) == Rational(1));
    CHECK(incoming_potential(line, configuration_of(line, {}), id("3"), {}) == Rational(0));

    const auto d = derive_d(line, {4, Rational(3, 4), Rational(2, 3)});
    const auto copies0 = d.copies.copies(id("0"));
    const auto y = d.copies.copies(id("1"))[0];
    FailurePattern f;
    f.failed_neurons.insert(copies0[3]);
    const auto prev_d = configuration_of(d.net, {copies0[0], copies0[1], copies0[2]});
    CHECK(incoming_potential(d.net, prev_d, y, f) == Rational(3, 4));
    f.failed_edges.insert({copies0[0], y});
    CHECK(incoming_potential(d.net, prev_d, y, f) == Rational(1, 2));

    CHECK_THROWS_AS(incoming_potential(line, prev, id("0"), {}), ModelError);
    CHECK_THROWS_AS(incoming_potential(line, prev, id("nope"), {}), ModelError);
}

TEST_CASE("step rule") {
    const auto line = build_line({5});
    const auto next = step(line, configuration_of(line, {id("0")}), {{id("0"), false}}, {});
    CHECK(next == configuration_of(line, {id("1")}));
    CHECK(step(line, configuration_of(line, {}), {{id("0"), false}}, {}) == configuration_of(line, {}));

    const auto h = build_hierarchy({3, 3, Rational(2, 3)});
    const auto two = configuration_of(h, {id("v_111"), id("v_112")});
    std::map<NeuronId, bool> quiet;
    for (const auto& i : h.inputs_in_order()) quiet[i] = false;
    const auto after = step(h, two, quiet, {});
    CHECK(after == configuration_of(h, {id("v_11")}));
    const auto one = configuration_of(h, {id("v_111")});
    CHECK(step(h, one, quiet, {}) == configuration_of(h, {}));
}

TEST_CASE("threshold is inclusive and negative weights inhibit") {
    NetworkSpec net;
    net.name = "inhibit";
    net.neurons = {id("x"), id("z"), id("y")};
    net.input_neurons = {id("x"), id("z")};
    net.edges = {{id("x"), id("y"), Rational(1)}, {id("z"), id("y"), Rational(-1, 2)}};
    net.thresholds[id("y")] = Rational(1);
    InputSchedule s(2, net.inputs_in_order());
    s.set(0, id("x"), true);
    s.set(1, id("x"), true);
    s.set(1, id("z"), true);
    const auto tr = execute(net, s, {});
    CHECK(tr.fires(id("y"), 1));
    CHECK_FALSE(tr.fires(id("y"), 2));
}

TEST_CASE("line golden trace") {
    const auto line = build_line({5});
    const auto tr = execute(line, pulse_schedule(line, 8), {});
    REQUIRE(tr.horizon() == 8);
    for (int t = 0; t <= 8; ++t) {
        if (t <= 5) {
            CHECK(tr.firing_at(t) == std::vector<NeuronId>{id(std::to_string(t))});
        } else {
            CHECK(tr.firing_at(t).empty());
        }
    }
}

TEST_CASE("ring trace matches closed form") {
    for (int lmax = 2; lmax <= 7; ++lmax) {
        const auto ring = build_ring({lmax});
        const int horizon = 3 * lmax;
        const auto tr = execute(ring, pulse_schedule(ring, horizon), {});
        for (int v = 1; v <= lmax; ++v) {
            for (int t = 0; t <= horizon; ++t) {
                const bool expected = t >= v && (t - v) % lmax == 0;
                CHECK_MESSAGE(tr.fires(id(std::to_string(v)), t) == expected, "lmax=", lmax, " v=", v, " t=", t);
            }
        }
    }
    const auto ring5 = build_ring({5});
    const auto tr = execute(ring5, pulse_schedule(ring5, 12), {});
    CHECK(firing_set(tr, 1) == std::set<NeuronId>{id("1")});
    CHECK(firing_set(tr, 6) == std::set<NeuronId>{id("1")});
    CHECK(firing_set(tr, 12) == std::set<NeuronId>{id("2")});
}

TEST_CASE("periodic input on the line") {
    const auto line = build_line({5});
    const auto tr = execute(line, periodic_schedule(line, 7, 2), {});
    CHECK(firing_set(tr, 7) == std::set<NeuronId>{id("1"), id("3"), id("5")});
}

TEST_CASE("all-zero schedule gives an all-zero trace") {
    const auto h = build_hierarchy({2, 3, Rational(2, 3)});
    const auto tr = execute(h, InputSchedule(5, h.inputs_in_order()), {});
    for (int t = 0; t <= 5; ++t) CHECK(tr.firing_at(t).empty());
}

TEST_CASE("failed neurons and edges are masked") {
    const auto line = build_line({3});
    FailurePattern f;
    f.failed_edges.insert({id("1"), id("2")});
    auto tr = execute(line, pulse_schedule(line, 4), f);
    CHECK(tr.fires(id("1"), 1));
    CHECK_FALSE(tr.fires(id("2"), 2));

    FailurePattern g;
    g.failed_neurons.insert(id("0"));
    tr = execute(line, pulse_schedule(line, 4), g);
    for (int t = 0; t <= 4; ++t) CHECK(tr.firing_at(t).empty());

    auto init = line;
    init.initial_firing[id("2")] = true;
    FailurePattern h;
    h.failed_neurons.insert(id("2"));
    tr = execute(init, InputSchedule(2, init.inputs_in_order()), h);
    CHECK_FALSE(tr.fires(id("2"), 0));
    CHECK_FALSE(tr.fires(id("3"), 1));

    FailurePattern bad;
    bad.failed_neurons.insert(id("9"));
    CHECK_THROWS_AS(execute(line, pulse_schedule(line, 2), bad), ModelError);
}

TEST_CASE("execution is deterministic") {
    std::mt19937_64 rng(11);
    const auto net = snnmap::testing::random_network(rng, 2, 5);
    const auto s = snnmap::testing::random_schedule(rng, net, 10);
    CHECK(execute(net, s, {}) == execute(net, s, {}));
}

TEST_CASE("witness explains a firing decision") {
    const auto line = build_line({2});
    const CompiledNetwork c(line);
    const auto text = c.explain(1, configuration_of(line, {id("0")}), c.no_failures());
    CHECK(text.find("potential 1") != std::string::npos);
    CHECK(text.find("threshold 1") != std::string::npos);
}

TEST_CASE("property: engine agrees with a direct transcription of the rule") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int inputs = std::uniform_int_distribution<int>(0, 3)(rng);
        const int hidden = std::uniform_int_distribution<int>(1, 6)(rng);
        const auto net = snnmap::testing::random_network(rng, inputs, hidden, trial % 2 == 1);
        const auto s = snnmap::testing::random_schedule(rng, net, 8);
        FailurePattern f;
        std::bernoulli_distribution coin(0.15);
        for (const auto& v : net.neurons) {
            if (coin(rng)) f.failed_neurons.insert(v);
        }
        for (const auto& e : net.edges) {
            if (coin(rng)) f.failed_edges.insert(e.key());
        }
        const auto tr = execute(net, s, f);
        const auto ref = reference_run(net, s, f);
        for (int t = 0; t <= 8; ++t) CHECK(firing_set(tr, t) == ref[static_cast<std::size_t>(t)]);
        // Failed neurons never fire.
        for (const auto& v : f.failed_neurons) {
            for (int t = 0; t <= 8; ++t) CHECK_FALSE(tr.fires(v, t));
        }
    }
}

TEST_CASE("property: the empty pattern is the reliable case") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto net = snnmap::testing::random_network(rng, 2, 4);
        const auto s = snnmap::testing::random_schedule(rng, net, 6);
        const auto tr = execute(net, s, {});
        const auto ref = reference_run(net, s, {});
        for (int t = 0; t <= 6; ++t) CHECK(firing_set(tr, t) == ref[static_cast<std::size_t>(t)]);
    }
}

}

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "snnmap/engine.hpp"
#include "snnmap/failures.hpp"
#include "snnmap/io.hpp"
#include "support.hpp"

using namespace snnmap;
using snnmap::testing::id;

TEST_SUITE("io") {

TEST_CASE("network JSON keeps rationals exact") {
    const auto h = build_hierarchy({2, 3, Rational(2, 3)});
    const auto a2 = derive_a2(h, {4, Rational(15, 16), Rational(14, 15)});
    const auto j = io::to_json(a2);
    CHECK(j["thresholds"]["v_1"] == "7/4");
    CHECK(io::network_from_json(j) == a2);

    auto bad = j;
    bad["thresholds"]["v_1"] = 1.75;
    CHECK_THROWS_AS(io::network_from_json(bad), ModelError);
    bad["thresholds"]["v_1"] = "1.75";
    CHECK_THROWS(io::network_from_json(bad));
    auto wrong = j;
    wrong["format"] = "snnmap-schedule/1";
    CHECK_THROWS_AS(io::network_from_json(wrong), ModelError);
}

TEST_CASE("property: round trips are the identity") {
    std::mt19937_64 rng(77);
    const auto dir = snnmap::testing::tmp_dir("io_roundtrip");
    for (int trial = 0; trial < 40; ++trial) {
        auto net = snnmap::testing::random_network(rng, 2, 4, true);
        net.name = "net" + std::to_string(trial);
        io::save_network(dir / "net.json", net);
        CHECK(io::load_network(dir / "net.json") == net);

        const auto s = snnmap::testing::random_schedule(rng, net, 6);
        io::write_json(dir / "s.json", io::to_json(s));
        CHECK(io::schedule_from_json(io::read_json(dir / "s.json")) == s);

        const DerivationParams p{std::uniform_int_distribution<int>(1, 4)(rng), Rational(1, 2), Rational(2, 3)};
        const auto d = derive_d(net, p);
        io::write_json(dir / "c.json", io::to_json(d.copies));
        CHECK(io::copies_from_json(io::read_json(dir / "c.json")) == d.copies);
        CHECK(io::params_from_json(io::to_json(p)) == p);

        const auto f = generate(d.net, d.copies, p, {FailureKind::random_iid, Rational(1, 10), Rational(1, 10), rng(), 1000});
        io::write_json(dir / "f.json", io::to_json(f));
        CHECK(io::failure_from_json(io::read_json(dir / "f.json")) == f);

        const auto tr = execute(net, s, {});
        std::stringstream csv;
        io::write_trace_csv(csv, tr);
        const auto back = io::read_trace_csv(csv);
        CHECK(back == io::trace_events(tr));
        CHECK(back.horizon == 6);
        std::size_t events = 0;
        for (int t = 0; t <= 6; ++t) events += tr.firing_at(t).size();
        CHECK(back.events.size() == events);
    }
}

TEST_CASE("line trace CSV matches the golden file") {
    const auto line = build_line({5});
    std::ostringstream os;
    io::write_trace_csv(os, execute(line, pulse_schedule(line, 8), {}));
    std::ifstream golden(std::string(SNNMAP_GOLDEN_DIR) + "/line5_pulse.csv");
    REQUIRE(golden);
    std::stringstream want;
    want << golden.rdbuf();
    CHECK(os.str() == want.str());
}

TEST_CASE("empty schedule gives a header-only CSV") {
    const auto line = build_line({3});
    std::ostringstream os;
    io::write_trace_csv(os, execute(line, InputSchedule(4, line.inputs_in_order()), {}));
    CHECK(os.str() == "time,neuron,fired\n# horizon=4\n");
}

TEST_CASE("raster") {
    const auto line = build_line({2});
    std::ostringstream os;
    io::write_raster(os, execute(line, pulse_schedule(line, 3), {}));
    CHECK(os.str() == "0 #...\n1 .#..\n2 ..#.\n");
}

TEST_CASE("malformed inputs are rejected") {
    std::stringstream no_header("1,0,1\n");
    CHECK_THROWS_AS(io::read_trace_csv(no_header), ModelError);
    std::stringstream bad_row("time,neuron,fired\n1,0,0\n");
    CHECK_THROWS_AS(io::read_trace_csv(bad_row), ModelError);
    CHECK_THROWS_AS(io::read_json("/nonexistent/file.json"), ModelError);
    const auto dir = snnmap::testing::tmp_dir("io_bad");
    std::ofstream(dir / "broken.json") << "{ not json";
    CHECK_THROWS_AS(io::read_json(dir / "broken.json"), ModelError);
}

}

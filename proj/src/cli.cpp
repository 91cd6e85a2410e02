#include "snnmap/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace snnmap::cli {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

int parse_int(const std::string& text, const char* what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw ModelError(std::string(what) + " must be an integer, got '" + text + "'");
    return value;
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
        value = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-') {
        throw ModelError(std::string(what) + " must be a non-negative integer, got '" + text + "'");
    }
    return value;
}

Rational parse_fraction(const std::string& text, const char* what) {
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw ModelError(std::string(what) + " must be an exact fraction p/q, got '" + text + "'");
    }
}

fs::path resolve(const fs::path& base, const fs::path& p) {
    if (p.empty() || p.is_absolute() || base.empty()) return p;
    return base / p;
}

InputSchedule random_schedule(const NetworkSpec& net, int horizon, std::uint64_t seed) {
    InputSchedule s(horizon, net.inputs_in_order());
    FailureRng rng(seed);
    const Rational half(1, 2);
    for (int t = 0; t <= horizon; ++t) {
        for (std::size_t i = 0; i < s.inputs().size(); ++i) s.set(t, i, rng.bernoulli(half));
    }
    return s;
}

/// Raw flag values; empty strings mean "not given".
struct Flags {
    std::string manifest;
    std::string net;
    std::string m;
    std::string sv;
    std::string se;
    std::string failures;
    std::string p_neuron;
    std::string p_edge;
    std::string seed;
    std::string schedule;
    std::string horizon;
    std::string actuator;
    std::string trials;
    std::string out;
    std::string detailed;
    std::string copies;
    std::string max_attempts;
    std::string max_schedules;
    std::string max_patterns;
    std::string trial_seed;
    bool raster = false;
};

void add_run_flags(CLI::App* app, Flags& f) {
    app->add_option("--manifest", f.manifest, "Run manifest (JSON); flags override its fields");
    app->add_option("--net", f.net, "Network file, or line:<lmax>[:selfloop], ring:<lmax>, hierarchy:<lmax>:<k>:<r>");
    app->add_option("--m", f.m, "Copies per neuron in the detailed network");
    app->add_option("--sv", f.sv, "Neuron survival fraction s_V (p/q)");
    app->add_option("--se", f.se, "Edge survival fraction s_E (p/q)");
    app->add_option("--failures", f.failures, "none | paper | random | maximal | <failure file>");
    app->add_option("--p-neuron", f.p_neuron, "Neuron failure probability for random failures (p/q)");
    app->add_option("--p-edge", f.p_edge, "Edge failure probability for random failures (p/q)");
    app->add_option("--max-attempts", f.max_attempts, "Resampling budget for random failures");
    app->add_option("--seed", f.seed, "Seed for random failures and schedules");
    app->add_option("--schedule", f.schedule, "pulse0 | every:<k> | random | <schedule file>");
    app->add_option("--horizon", f.horizon, "Last simulated time step");
    app->add_option("--actuator", f.actuator, "Abstract neuron feeding an actuator (or 'none')");
    app->add_option("--out", f.out, "Output directory");
}

RunManifest manifest_from_flags(const Flags& f) {
    RunManifest m;
    if (!f.manifest.empty()) {
        const fs::path path(f.manifest);
        m = manifest_from_json(io::read_json(path), path.parent_path());
    }
    if (!f.net.empty()) m.network = NetworkSource::parse(f.net);
    if (!f.m.empty() || !f.sv.empty() || !f.se.empty()) {
        DerivationParams p = m.params.value_or(DerivationParams{});
        if (!f.m.empty()) p.m = parse_int(f.m, "--m");
        if (!f.sv.empty()) p.s_v = parse_fraction(f.sv, "--sv");
        if (!f.se.empty()) p.s_e = parse_fraction(f.se, "--se");
        m.params = p;
    }
    if (!f.failures.empty()) {
        m.failures.file.clear();
        m.failures.inline_pattern.reset();
        try {
            m.failures.policy.kind = parse_failure_kind(f.failures);
        } catch (const ModelError&) {
            m.failures.file = f.failures;
        }
    }
    if (!f.p_neuron.empty()) m.failures.policy.p_neuron = parse_fraction(f.p_neuron, "--p-neuron");
    if (!f.p_edge.empty()) m.failures.policy.p_edge = parse_fraction(f.p_edge, "--p-edge");
    if (!f.max_attempts.empty()) m.failures.policy.max_attempts = parse_int(f.max_attempts, "--max-attempts");
    if (!f.seed.empty()) {
        m.seed = parse_u64(f.seed, "--seed");
        m.failures.policy.seed = m.seed;
    }
    if (!f.schedule.empty()) m.schedule = ScheduleSource::parse(f.schedule);
    if (!f.horizon.empty()) m.horizon = parse_int(f.horizon, "--horizon");
    if (!f.actuator.empty()) {
        if (f.actuator == "none") {
            m.actuator.reset();
        } else {
            m.actuator = NeuronId(f.actuator);
        }
    }
    if (!f.out.empty()) m.out = f.out;
    if (!f.detailed.empty()) m.detailed_file = f.detailed;
    if (!f.copies.empty()) m.copies_file = f.copies;
    return m;
}

const DerivationParams& require_params(const RunManifest& m) {
    if (!m.params) throw ModelError("this command needs derivation parameters (--m, --sv, --se)");
    m.params->validate();
    return *m.params;
}

CorrespondingRun build_run(const RunManifest& m, const NetworkSpec& a1, const InputSchedule& schedule) {
    const auto& params = require_params(m);
    if (!m.detailed_file.empty()) {
        if (m.copies_file.empty()) throw ModelError("--detailed needs --copies");
        const auto d = io::load_network(m.detailed_file);
        const auto map = io::copies_from_json(io::read_json(m.copies_file));
        const auto failure =
            m.failures.explicit_pattern() ? m.failures.load_pattern() : generate(d, map, params, m.failures.policy);
        return run_networks(a1, derive_a2(a1, params), d, map, params, failure, schedule, m.actuator);
    }
    if (m.failures.explicit_pattern()) {
        return make_corresponding_run(a1, params, m.failures.load_pattern(), schedule, m.actuator);
    }
    return make_corresponding_run(a1, params, m.failures.policy, schedule, m.actuator);
}

CheckSummary summarize(const RunManifest& m, const CorrespondingRun& run) {
    auto summary = check_all(run);
    if (!m.detailed_file.empty()) {
        // Strip the actuator again before comparing against a fresh derivation.
        auto d = run.d;
        if (run.actuator) {
            const auto a = run.actuator->actuator;
            std::erase(d.neurons, a);
            d.thresholds.erase(a);
            d.initial_firing.erase(a);
            std::erase_if(d.edges, [&](const Edge& e) { return e.dst == a; });
        }
        NetworkSpec a1 = run.a1;
        if (run.actuator) a1 = m.network.load();
        summary.derivation_mismatches = audit_derivation(a1, run.params, d, run.map);
    }
    return summary;
}

void print_report(std::ostream& out, const TheoremReport& r) {
    out << "theorem " << to_string(r.theorem) << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.cells_checked
        << " cells";
    if (r.min_firing_copies) out << ", min firing copies " << *r.min_firing_copies;
    out << ")\n";
    for (const auto& v : r.violations) out << "  " << v.describe() << '\n';
}

void print_summary(std::ostream& out, const CheckSummary& s) {
    print_report(out, s.firing);
    print_report(out, s.nonfiring);
    if (s.actuator) {
        print_report(out, s.actuator->fires);
        print_report(out, s.actuator->silent);
    }
    out << "cells:";
    for (const auto& [kind, n] : s.cells.counts) out << ' ' << to_string(kind) << '=' << n;
    out << '\n';
    for (const auto& [id, t] : s.cells.cells_of(CellKind::middle)) out << "  MIDDLE " << id.str() << " t=" << t << '\n';
    for (const auto& [id, t] : s.cells.cells_of(CellKind::anomaly)) out << "  ANOMALY " << id.str() << " t=" << t << '\n';
    for (const auto& v : s.masking_violations) out << "masking: " << v << '\n';
    for (const auto& v : s.derivation_mismatches) out << "derivation mismatch: " << v << '\n';
    if (s.negative_weights) out << "note: network has negative weights; the guarantees assume non-negative weights\n";
    out << (s.passed() ? "RESULT: PASS" : "RESULT: FAIL") << '\n';
}

io::Json counterexample_manifest(RunManifest m, const FailurePattern& failure, const InputSchedule& schedule) {
    if (!m.network.builder.empty() || !m.network.file.empty()) {
        m.network.inline_net = m.network.load();
        m.network.builder.clear();
        m.network.file.clear();
    }
    m.failures.file.clear();
    m.failures.inline_pattern = failure;
    m.schedule = ScheduleSource{"inline", 1, {}, schedule};
    m.horizon = schedule.horizon();
    m.out.clear();
    return to_json(m);
}

int cmd_build(const std::string& family, int lmax, int k, const std::string& r, bool self_loop,
              const std::string& net_file, const std::string& out_path, std::ostream& out) {
    NetworkSpec net;
    if (family == "line") {
        net = build_line({lmax, self_loop ? LineVariant::self_loop_on_1 : LineVariant::pulse_only});
    } else if (family == "ring") {
        net = build_ring({lmax});
    } else if (family == "hierarchy") {
        net = build_hierarchy({lmax, k, parse_fraction(r, "--r"), self_loop});
    } else if (family == "file") {
        if (net_file.empty()) throw ModelError("build file needs --net <network file>");
        net = io::load_network(net_file);
        require_valid(net);
    } else {
        throw ModelError("unknown network family '" + family + "'");
    }
    if (out_path.empty()) {
        out << io::to_json(net).dump(2) << '\n';
    } else {
        io::save_network(out_path, net);
    }
    out << "neurons: " << net.neurons.size() << " edges: " << net.edges.size() << '\n';
    return kOk;
}

int cmd_derive(const RunManifest& m, std::ostream& out) {
    const auto& params = require_params(m);
    const auto a1 = m.network.load();
    const auto a2 = derive_a2(a1, params);
    const auto d = derive_d(a1, params);
    const fs::path dir = m.out.empty() ? fs::path(".") : m.out;
    io::save_network(dir / "a2.json", a2);
    io::save_network(dir / "d.json", d.net);
    io::write_json(dir / "copies.json", io::to_json(d.copies));
    out << "A2: " << a2.neurons.size() << " neurons, " << a2.edges.size() << " edges\n";
    out << "D: " << d.net.neurons.size() << " neurons, " << d.net.edges.size() << " edges\n";
    out << "wrote " << (dir / "a2.json").string() << ", " << (dir / "d.json").string() << ", "
        << (dir / "copies.json").string() << '\n';
    return kOk;
}

int cmd_run(const RunManifest& m, bool raster, std::ostream& out) {
    const auto a1 = m.network.load();
    const int horizon = m.horizon_for(a1);
    const auto schedule = m.schedule.load(a1, horizon, m.seed);
    if (!m.params) {
        NetworkSpec net = a1;
        if (m.actuator) net = attach_actuator(a1, ActuatorSpec{*m.actuator}, DerivationParams{});
        const auto failure = m.failures.explicit_pattern() ? m.failures.load_pattern() : FailurePattern{};
        const auto trace = execute(net, schedule, failure);
        if (m.out.empty()) {
            io::write_trace_csv(out, trace);
        } else {
            io::save_trace_csv(m.out / "trace_a1.csv", trace);
        }
        if (raster) io::write_raster(out, trace);
        return kOk;
    }
    const auto run = build_run(m, a1, schedule);
    if (m.out.empty()) {
        io::write_trace_csv(out, run.trace_d);
    } else {
        io::save_trace_csv(m.out / "trace_a1.csv", run.trace_a1);
        io::save_trace_csv(m.out / "trace_a2.csv", run.trace_a2);
        io::save_trace_csv(m.out / "trace_d.csv", run.trace_d);
        io::write_json(m.out / "failures.json", io::to_json(run.failure));
    }
    if (raster) {
        out << "A1:\n";
        io::write_raster(out, run.trace_a1);
        out << "D:\n";
        io::write_raster(out, run.trace_d);
    }
    return kOk;
}

int cmd_check(const RunManifest& m, std::ostream& out) {
    const auto a1 = m.network.load();
    const auto schedule = m.schedule.load(a1, m.horizon_for(a1), m.seed);
    const auto run = build_run(m, a1, schedule);
    const auto summary = summarize(m, run);
    print_summary(out, summary);
    if (!m.out.empty()) {
        io::write_json(m.out / "report.json", io::to_json(summary));
        if (!summary.passed()) {
            io::write_json(m.out / "counterexample.json", counterexample_manifest(m, run.failure, schedule));
        }
    }
    return summary.passed() ? kOk : kViolation;
}

int cmd_fuzz(RunManifest m, bool schedule_given, const std::string& trials_text, const std::string& trial_seed,
             std::ostream& out) {
    require_params(m);
    const auto a1 = m.network.load();
    const int horizon = m.horizon_for(a1);
    if (!schedule_given) m.schedule.kind = "random";
    const int trials = trial_seed.empty() ? (trials_text.empty() ? 100 : parse_int(trials_text, "--trials")) : 1;
    if (trials < 0) throw ModelError("--trials must be non-negative");

    std::ofstream log;
    if (!m.out.empty()) {
        fs::create_directories(m.out);
        log.open(m.out / "fuzz_log.csv");
        log << "trial,seed,outcome\n";
    }
    int passed = 0;
    int failed = 0;
    int skipped = 0;
    for (int i = 0; i < trials; ++i) {
        const std::uint64_t seed =
            trial_seed.empty() ? derive_seed(m.seed, static_cast<std::uint64_t>(i)) : parse_u64(trial_seed, "--trial-seed");
        RunManifest trial = m;
        trial.seed = seed;
        trial.failures.policy.seed = seed;
        std::string outcome;
        try {
            const auto schedule = trial.schedule.load(a1, horizon, derive_seed(seed, 0));
            const auto run = build_run(trial, a1, schedule);
            const auto summary = summarize(trial, run);
            if (summary.passed()) {
                ++passed;
                outcome = "pass";
            } else {
                ++failed;
                outcome = "FAIL";
                print_summary(out, summary);
                if (!m.out.empty()) {
                    const auto path = m.out / ("counterexample_trial" + std::to_string(i) + ".json");
                    io::write_json(path, counterexample_manifest(trial, run.failure, schedule));
                    out << "counterexample manifest: " << path.string() << '\n';
                }
            }
        } catch (const GenerationError& e) {
            ++skipped;
            outcome = "skipped";
        }
        out << "trial " << i << " seed " << seed << ": " << outcome << '\n';
        if (log.is_open()) log << i << ',' << seed << ',' << outcome << '\n';
    }
    out << "fuzz: " << trials << " trials, " << passed << " passed, " << failed << " failed, " << skipped
        << " skipped (no admissible failure pattern)\n";
    return failed == 0 ? kOk : kViolation;
}

int cmd_oracle(const RunManifest& m, bool no_actuator, std::uint64_t max_schedules, std::uint64_t max_patterns,
               std::ostream& out) {
    const auto& params = require_params(m);
    const auto a1 = m.network.load();
    EnumerationLimits limits;
    limits.horizon = m.horizon.value_or(4);
    limits.max_schedules = max_schedules;
    limits.max_patterns = max_patterns;
    std::optional<NeuronId> actuator = m.actuator;
    if (!actuator && !no_actuator && !a1.non_inputs_in_order().empty()) actuator = a1.non_inputs_in_order().back();
    const auto summary = exhaustive_verify(a1, params, limits, actuator);
    out << "oracle: " << summary.schedules << " schedules x " << summary.patterns << " failure patterns = "
        << summary.runs_checked << " runs";
    if (actuator) out << " (actuator on " << actuator->str() << ")";
    out << "\nviolating runs: " << summary.violating_runs << '\n';
    if (summary.schedules_capped) out << "schedule enumeration capped at " << limits.max_schedules << '\n';
    if (summary.patterns_capped) out << "pattern enumeration capped at " << limits.max_patterns << '\n';
    for (const auto& c : summary.counterexamples) {
        out << "counterexample (pattern " << c.pattern_index << ", schedule " << c.schedule_index << "):\n";
        for (const auto& v : c.violations) out << "  " << v.describe() << '\n';
        for (const auto& v : c.masking) out << "  masking: " << v << '\n';
    }
    if (!m.out.empty()) {
        io::write_json(m.out / "oracle.json", io::to_json(summary));
        if (!summary.counterexamples.empty()) {
            RunManifest ce = m;
            ce.actuator = actuator;
            const auto& first = summary.counterexamples.front();
            io::write_json(m.out / "counterexample.json", counterexample_manifest(ce, first.failure, first.schedule));
        }
    }
    if (!summary.clean()) return kViolation;
    return summary.capped() ? kCapped : kOk;
}

}  // namespace

NetworkSource NetworkSource::parse(const std::string& text) {
    NetworkSource s;
    const auto parts = split(text, ':');
    if (parts.size() >= 2 && (parts[0] == "line" || parts[0] == "ring" || parts[0] == "hierarchy")) {
        s.builder = parts[0];
        s.lmax = parse_int(parts[1], "lmax");
        if (s.builder == "line" && parts.size() == 3 && parts[2] == "selfloop") {
            s.self_loop = true;
        } else if (s.builder == "hierarchy") {
            if (parts.size() != 4) throw ModelError("hierarchy source must be hierarchy:<lmax>:<k>:<r>");
            s.k = parse_int(parts[2], "k");
            s.r = parse_fraction(parts[3], "r");
        } else if (parts.size() != 2) {
            throw ModelError("malformed network source '" + text + "'");
        }
        return s;
    }
    s.file = text;
    return s;
}

NetworkSpec NetworkSource::load() const {
    if (inline_net) return *inline_net;
    if (builder == "line") return build_line({lmax, self_loop ? LineVariant::self_loop_on_1 : LineVariant::pulse_only});
    if (builder == "ring") return build_ring({lmax});
    if (builder == "hierarchy") return build_hierarchy({lmax, k, r, self_loop});
    if (file.empty()) throw ModelError("no network given (use --net)");
    return io::load_network(file);
}

ScheduleSource ScheduleSource::parse(const std::string& text) {
    ScheduleSource s;
    if (text == "pulse0" || text == "random") {
        s.kind = text;
    } else if (text.rfind("every:", 0) == 0) {
        s.kind = "every";
        s.period = parse_int(text.substr(6), "schedule period");
        if (s.period < 1) throw ModelError("schedule period must be at least 1");
    } else {
        s.kind = "file";
        s.file = text;
    }
    return s;
}

InputSchedule ScheduleSource::load(const NetworkSpec& net, int horizon, std::uint64_t seed) const {
    if (kind == "pulse0") return pulse_schedule(net, horizon);
    if (kind == "every") return periodic_schedule(net, horizon, period);
    if (kind == "random") return random_schedule(net, horizon, seed);
    if (kind == "inline" && inline_schedule) return *inline_schedule;
    if (kind == "file") return io::schedule_from_json(io::read_json(file));
    throw ModelError("unknown schedule source '" + kind + "'");
}

FailurePattern FailureSource::load_pattern() const {
    if (inline_pattern) return *inline_pattern;
    return io::failure_from_json(io::read_json(file));
}

int RunManifest::horizon_for(const NetworkSpec& a1) const {
    const int h = horizon.value_or(static_cast<int>(a1.neurons.size()) + 1);
    if (h < 0) throw ModelError("horizon must be non-negative");
    return h;
}

io::Json to_json(const RunManifest& m) {
    io::Json j;
    io::Json net;
    if (m.network.inline_net) {
        net["inline"] = io::to_json(*m.network.inline_net);
    } else if (!m.network.builder.empty()) {
        net["builder"] = m.network.builder;
        net["lmax"] = m.network.lmax;
        if (m.network.builder == "hierarchy") {
            net["k"] = m.network.k;
            net["r"] = m.network.r.str();
        }
        if (m.network.self_loop) net["self_loop"] = true;
    } else {
        net["file"] = m.network.file.string();
    }
    j["network"] = std::move(net);
    if (m.params) j["derivation"] = io::to_json(*m.params);
    io::Json failures;
    if (m.failures.inline_pattern) {
        failures["inline"] = io::to_json(*m.failures.inline_pattern);
    } else if (!m.failures.file.empty()) {
        failures["file"] = m.failures.file.string();
    } else {
        failures["policy"] = to_string(m.failures.policy.kind);
        failures["p_neuron"] = m.failures.policy.p_neuron.str();
        failures["p_edge"] = m.failures.policy.p_edge.str();
        failures["seed"] = m.failures.policy.seed;
        failures["max_attempts"] = m.failures.policy.max_attempts;
    }
    j["failures"] = std::move(failures);
    io::Json sched{{"kind", m.schedule.kind}};
    if (m.schedule.kind == "every") sched["period"] = m.schedule.period;
    if (m.schedule.kind == "file") sched["file"] = m.schedule.file.string();
    if (m.schedule.kind == "inline" && m.schedule.inline_schedule) sched["inline"] = io::to_json(*m.schedule.inline_schedule);
    j["schedule"] = std::move(sched);
    if (m.horizon) j["horizon"] = *m.horizon;
    if (m.actuator) j["actuator"] = m.actuator->str();
    j["seed"] = m.seed;
    if (!m.out.empty()) j["out"] = m.out.string();
    if (!m.detailed_file.empty()) j["detailed"] = m.detailed_file.string();
    if (!m.copies_file.empty()) j["copies"] = m.copies_file.string();
    return j;
}

RunManifest manifest_from_json(const io::Json& j, const fs::path& base_dir) {
    RunManifest m;
    try {
        const auto& net = j.at("network");
        if (net.contains("inline")) {
            m.network.inline_net = io::network_from_json(net.at("inline"));
        } else if (net.contains("builder")) {
            m.network.builder = net.at("builder").get<std::string>();
            m.network.lmax = net.at("lmax").get<int>();
            m.network.k = net.value("k", 0);
            if (net.contains("r")) m.network.r = parse_fraction(net.at("r").get<std::string>(), "r");
            m.network.self_loop = net.value("self_loop", false);
        } else {
            m.network.file = resolve(base_dir, net.at("file").get<std::string>());
        }
        if (j.contains("derivation")) m.params = io::params_from_json(j.at("derivation"));
        if (j.contains("failures")) {
            const auto& f = j.at("failures");
            if (f.contains("inline")) {
                m.failures.inline_pattern = io::failure_from_json(f.at("inline"));
            } else if (f.contains("file")) {
                m.failures.file = resolve(base_dir, f.at("file").get<std::string>());
            } else {
                m.failures.policy.kind = parse_failure_kind(f.value("policy", std::string("none")));
                m.failures.policy.p_neuron = parse_fraction(f.value("p_neuron", std::string("0")), "p_neuron");
                m.failures.policy.p_edge = parse_fraction(f.value("p_edge", std::string("0")), "p_edge");
                m.failures.policy.seed = f.value("seed", std::uint64_t{0});
                m.failures.policy.max_attempts = f.value("max_attempts", 1000);
            }
        }
        if (j.contains("schedule")) {
            const auto& s = j.at("schedule");
            m.schedule.kind = s.value("kind", std::string("pulse0"));
            m.schedule.period = s.value("period", 1);
            if (s.contains("file")) m.schedule.file = resolve(base_dir, s.at("file").get<std::string>());
            if (s.contains("inline")) m.schedule.inline_schedule = io::schedule_from_json(s.at("inline"));
        }
        if (j.contains("horizon")) m.horizon = j.at("horizon").get<int>();
        if (j.contains("actuator")) m.actuator = NeuronId(j.at("actuator").get<std::string>());
        m.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("out")) m.out = resolve(base_dir, j.at("out").get<std::string>());
        if (j.contains("detailed")) m.detailed_file = resolve(base_dir, j.at("detailed").get<std::string>());
        if (j.contains("copies")) m.copies_file = resolve(base_dir, j.at("copies").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ModelError(std::string("malformed manifest: ") + e.what());
    }
    return m;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"snnmap: simulate spiking networks and check abstract/detailed mapping guarantees", "snnmap"};
    app.require_subcommand(1);

    Flags f;
    std::string family;
    int lmax = 0;
    int k = 0;
    std::string r = "1";
    bool self_loop = false;

    auto* build = app.add_subcommand("build", "Write one of the example networks to a file");
    build->add_option("family", family, "line | ring | hierarchy | file")->required();
    build->add_option("--lmax", lmax, "Length / depth parameter");
    build->add_option("--k", k, "Hierarchy branching factor");
    build->add_option("--r", r, "Hierarchy firing fraction (p/q)");
    build->add_flag("--self-loop", self_loop, "Line: self-loop on neuron 1; hierarchy: level-1 self-loops");
    build->add_option("--net", f.net, "Network file to validate and normalise (family 'file')");
    build->add_option("--out", f.out, "Output network file");

    auto* derive = app.add_subcommand("derive", "Write A2, D and the copies map for a network");
    add_run_flags(derive, f);

    auto* run = app.add_subcommand("run", "Simulate and write firing traces (CSV)");
    add_run_flags(run, f);
    run->add_flag("--raster", f.raster, "Print a text raster of the traces");

    auto* check = app.add_subcommand("check", "Run corresponding executions and check the mapping theorems");
    add_run_flags(check, f);
    check->add_option("--detailed", f.detailed, "Use this detailed network instead of deriving it");
    check->add_option("--copies", f.copies, "Copies map for --detailed");

    auto* fuzz = app.add_subcommand("fuzz", "Randomised theorem checks with per-trial seeds");
    add_run_flags(fuzz, f);
    fuzz->add_option("--trials", f.trials, "Number of trials (default 100)");
    fuzz->add_option("--trial-seed", f.trial_seed, "Replay the single trial with this logged seed");

    auto* oracle = app.add_subcommand("oracle", "Exhaustively check every schedule and failure pattern");
    add_run_flags(oracle, f);
    oracle->add_option("--max-schedules", f.max_schedules, "Schedule enumeration cap (default 2^20)");
    oracle->add_option("--max-patterns", f.max_patterns, "Failure pattern enumeration cap (default 2^20)");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("snnmap");
    for (const auto& a : args) argv_store.push_back(a);
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (build->parsed()) return cmd_build(family, lmax, k, r, self_loop, f.net, f.out, out);
        const RunManifest m = manifest_from_flags(f);
        if (derive->parsed()) return cmd_derive(m, out);
        if (run->parsed()) return cmd_run(m, f.raster, out);
        if (check->parsed()) return cmd_check(m, out);
        if (fuzz->parsed()) return cmd_fuzz(m, !f.schedule.empty() || !f.manifest.empty(), f.trials, f.trial_seed, out);
        if (oracle->parsed()) {
            const auto max_s = f.max_schedules.empty() ? (std::uint64_t{1} << 20) : parse_u64(f.max_schedules, "--max-schedules");
            const auto max_p = f.max_patterns.empty() ? (std::uint64_t{1} << 20) : parse_u64(f.max_patterns, "--max-patterns");
            return cmd_oracle(m, f.actuator == "none", max_s, max_p, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace snnmap::cli

#include "snnmap/io.hpp"

#include <fstream>
#include <sstream>

namespace snnmap::io {
namespace {

constexpr const char* kNetworkFormat = "snnmap-network/1";
constexpr const char* kScheduleFormat = "snnmap-schedule/1";
constexpr const char* kFailureFormat = "snnmap-failures/1";
constexpr const char* kCopiesFormat = "snnmap-copies/1";

void expect_format(const Json& j, const char* format) {
    if (!j.is_object()) throw ModelError(std::string("expected a JSON object for ") + format);
    if (j.contains("format") && j.at("format").get<std::string>() != format) {
        throw ModelError("expected format '" + std::string(format) + "', found '" + j.at("format").get<std::string>() + "'");
    }
}

Rational rational_field(const Json& j) {
    if (!j.is_string()) throw ModelError("rational values must be strings of the form \"p/q\", got " + j.dump());
    return Rational::parse(j.get<std::string>());
}

NeuronId id_field(const Json& j) {
    if (!j.is_string()) throw ModelError("neuron ids must be strings, got " + j.dump());
    return NeuronId(j.get<std::string>());
}

Json violation_json(const TheoremViolation& v) {
    Json j{{"theorem", to_string(v.theorem)},
           {"neuron", v.neuron.str()},
           {"time", v.time},
           {"observed", v.observed.str()},
           {"required", v.required.str()}};
    if (!v.witness.empty()) j["witness"] = v.witness;
    return j;
}

}  // namespace

Json to_json(const NetworkSpec& net) {
    Json j;
    j["format"] = kNetworkFormat;
    j["name"] = net.name;
    Json neurons = Json::array();
    for (const auto& n : net.neurons) neurons.push_back(n.str());
    j["neurons"] = std::move(neurons);
    Json inputs = Json::array();
    for (const auto& n : net.inputs_in_order()) inputs.push_back(n.str());
    // Inputs that are not neurons would be lost by inputs_in_order(); keep them so validation still sees them.
    for (const auto& n : net.input_neurons) {
        if (!net.contains(n)) inputs.push_back(n.str());
    }
    j["inputs"] = std::move(inputs);
    Json edges = Json::array();
    for (const auto& e : net.edges) edges.push_back(Json::array({e.src.str(), e.dst.str(), e.weight.str()}));
    j["edges"] = std::move(edges);
    Json thresholds = Json::object();
    for (const auto& [id, h] : net.thresholds) thresholds[id.str()] = h.str();
    j["thresholds"] = std::move(thresholds);
    Json initial = Json::object();
    for (const auto& [id, f] : net.initial_firing) initial[id.str()] = f ? 1 : 0;
    j["initial_firing"] = std::move(initial);
    return j;
}

NetworkSpec network_from_json(const Json& j) {
    expect_format(j, kNetworkFormat);
    NetworkSpec net;
    net.name = j.value("name", std::string{});
    for (const auto& n : j.at("neurons")) net.neurons.push_back(id_field(n));
    for (const auto& n : j.at("inputs")) net.input_neurons.insert(id_field(n));
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) throw ModelError("edges must be [src, dst, \"p/q\"] triples");
        net.edges.push_back({id_field(e[0]), id_field(e[1]), rational_field(e[2])});
    }
    if (j.contains("thresholds")) {
        for (const auto& [k, v] : j.at("thresholds").items()) net.thresholds[NeuronId(k)] = rational_field(v);
    }
    if (j.contains("initial_firing")) {
        for (const auto& [k, v] : j.at("initial_firing").items()) {
            const int bit = v.get<int>();
            if (bit != 0 && bit != 1) throw ModelError("initial firing of '" + k + "' must be 0 or 1");
            net.initial_firing[NeuronId(k)] = bit == 1;
        }
    }
    return net;
}

Json to_json(const InputSchedule& schedule) {
    Json j;
    j["format"] = kScheduleFormat;
    j["horizon"] = schedule.horizon();
    Json inputs = Json::array();
    for (const auto& n : schedule.inputs()) inputs.push_back(n.str());
    j["inputs"] = std::move(inputs);
    Json fires = Json::array();
    for (int t = 0; t <= schedule.horizon(); ++t) {
        for (std::size_t i = 0; i < schedule.inputs().size(); ++i) {
            if (schedule.fires(t, i)) fires.push_back(Json::array({t, schedule.inputs()[i].str()}));
        }
    }
    j["fires"] = std::move(fires);
    return j;
}

InputSchedule schedule_from_json(const Json& j) {
    expect_format(j, kScheduleFormat);
    std::vector<NeuronId> inputs;
    for (const auto& n : j.at("inputs")) inputs.push_back(id_field(n));
    InputSchedule s(j.at("horizon").get<int>(), std::move(inputs));
    for (const auto& ev : j.at("fires")) {
        if (!ev.is_array() || ev.size() != 2) throw ModelError("schedule events must be [time, input] pairs");
        s.set(ev[0].get<int>(), id_field(ev[1]), true);
    }
    return s;
}

Json to_json(const FailurePattern& failure) {
    Json j;
    j["format"] = kFailureFormat;
    Json neurons = Json::array();
    for (const auto& n : failure.failed_neurons) neurons.push_back(n.str());
    j["failed_neurons"] = std::move(neurons);
    Json edges = Json::array();
    for (const auto& e : failure.failed_edges) edges.push_back(Json::array({e.src.str(), e.dst.str()}));
    j["failed_edges"] = std::move(edges);
    return j;
}

FailurePattern failure_from_json(const Json& j) {
    expect_format(j, kFailureFormat);
    FailurePattern f;
    for (const auto& n : j.at("failed_neurons")) f.failed_neurons.insert(id_field(n));
    for (const auto& e : j.at("failed_edges")) {
        if (!e.is_array() || e.size() != 2) throw ModelError("failed edges must be [src, dst] pairs");
        f.failed_edges.insert({id_field(e[0]), id_field(e[1])});
    }
    return f;
}

Json to_json(const CopiesMap& map) {
    Json j;
    j["format"] = kCopiesFormat;
    j["m"] = map.m();
    Json neurons = Json::array();
    for (const auto& v : map.abstract_neurons()) {
        Json copies = Json::array();
        for (const auto& y : map.copies(v)) copies.push_back(y.str());
        neurons.push_back(Json{{"neuron", v.str()}, {"input", map.abstract_inputs().contains(v)}, {"copies", copies}});
    }
    j["neurons"] = std::move(neurons);
    return j;
}

CopiesMap copies_from_json(const Json& j) {
    expect_format(j, kCopiesFormat);
    CopiesMap map(j.at("m").get<int>());
    for (const auto& entry : j.at("neurons")) {
        std::vector<NeuronId> copies;
        for (const auto& y : entry.at("copies")) copies.push_back(id_field(y));
        map.add(id_field(entry.at("neuron")), std::move(copies), entry.value("input", false));
    }
    return map;
}

Json to_json(const DerivationParams& params) {
    return Json{{"m", params.m}, {"s_v", params.s_v.str()}, {"s_e", params.s_e.str()}};
}

DerivationParams params_from_json(const Json& j) {
    DerivationParams p;
    p.m = j.at("m").get<int>();
    p.s_v = rational_field(j.at("s_v"));
    p.s_e = rational_field(j.at("s_e"));
    return p;
}

Json to_json(const TheoremReport& report) {
    Json j{{"theorem", to_string(report.theorem)}, {"passed", report.passed()}, {"cells_checked", report.cells_checked}};
    if (report.min_firing_copies) j["min_firing_copies"] = *report.min_firing_copies;
    Json v = Json::array();
    for (const auto& x : report.violations) v.push_back(violation_json(x));
    j["violations"] = std::move(v);
    return j;
}

Json to_json(const CellClassification& cells) {
    Json counts = Json::object();
    for (const auto& [kind, n] : cells.counts) counts[to_string(kind)] = n;
    Json j{{"counts", counts}};
    for (CellKind kind : {CellKind::middle, CellKind::anomaly}) {
        Json list = Json::array();
        for (const auto& [id, t] : cells.cells_of(kind)) list.push_back(Json::array({id.str(), t}));
        j[kind == CellKind::middle ? "middle" : "anomalies"] = std::move(list);
    }
    return j;
}

Json to_json(const CheckSummary& summary) {
    Json j;
    j["passed"] = summary.passed();
    j["negative_weights"] = summary.negative_weights;
    Json theorems = Json::array({to_json(summary.firing), to_json(summary.nonfiring)});
    if (summary.actuator) {
        theorems.push_back(to_json(summary.actuator->fires));
        theorems.push_back(to_json(summary.actuator->silent));
    }
    j["theorems"] = std::move(theorems);
    j["cells"] = to_json(summary.cells);
    j["masking_violations"] = summary.masking_violations;
    j["derivation_mismatches"] = summary.derivation_mismatches;
    return j;
}

Json to_json(const OracleSummary& summary) {
    Json j{{"schedules", summary.schedules},
           {"patterns", summary.patterns},
           {"runs_checked", summary.runs_checked},
           {"violating_runs", summary.violating_runs},
           {"schedules_capped", summary.schedules_capped},
           {"patterns_capped", summary.patterns_capped}};
    Json ce = Json::array();
    for (const auto& c : summary.counterexamples) {
        Json v = Json::array();
        for (const auto& x : c.violations) v.push_back(violation_json(x));
        ce.push_back(Json{{"pattern_index", c.pattern_index},
                          {"schedule_index", c.schedule_index},
                          {"failures", to_json(c.failure)},
                          {"schedule", to_json(c.schedule)},
                          {"violations", v},
                          {"masking", c.masking}});
    }
    j["counterexamples"] = std::move(ce);
    return j;
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ModelError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const Json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ModelError("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

NetworkSpec load_network(const std::filesystem::path& path) {
    try {
        return network_from_json(read_json(path));
    } catch (const nlohmann::json::exception& e) {
        throw ModelError("malformed network file '" + path.string() + "': " + e.what());
    }
}

void save_network(const std::filesystem::path& path, const NetworkSpec& net) { write_json(path, to_json(net)); }

void write_trace_csv(std::ostream& os, const ExecutionTrace& trace) {
    os << "time,neuron,fired\n";
    for (int t = 0; t <= trace.horizon(); ++t) {
        for (const auto& id : trace.firing_at(t)) os << t << ',' << id.str() << ",1\n";
    }
    os << "# horizon=" << trace.horizon() << '\n';
}

void save_trace_csv(const std::filesystem::path& path, const ExecutionTrace& trace) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ModelError("cannot write '" + path.string() + "'");
    write_trace_csv(out, trace);
}

TraceEvents read_trace_csv(std::istream& is) {
    TraceEvents out;
    std::string line;
    if (!std::getline(is, line) || line != "time,neuron,fired") throw ModelError("trace CSV lacks its header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("# horizon=", 0) == 0) {
            out.horizon = std::stoi(line.substr(10));
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = line.rfind(',');
        if (c1 == std::string::npos || c1 == c2 || line.substr(c2 + 1) != "1") {
            throw ModelError("malformed trace row '" + line + "'");
        }
        out.events.emplace_back(std::stoi(line.substr(0, c1)), NeuronId(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    return out;
}

TraceEvents trace_events(const ExecutionTrace& trace) {
    std::stringstream ss;
    write_trace_csv(ss, trace);
    return read_trace_csv(ss);
}

void write_raster(std::ostream& os, const ExecutionTrace& trace) {
    std::size_t width = 0;
    for (const auto& id : trace.neurons->ids()) width = std::max(width, id.str().size());
    for (std::size_t v = 0; v < trace.neurons->size(); ++v) {
        const auto& name = trace.neurons->id(v).str();
        os << name << std::string(width - name.size() + 1, ' ');
        for (int t = 0; t <= trace.horizon(); ++t) os << (trace.fires(v, t) ? '#' : '.');
        os << '\n';
    }
}

}  // namespace snnmap::io

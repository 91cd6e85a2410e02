#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "snnmap/check.hpp"
#include "snnmap/oracle.hpp"

namespace snnmap::io {

using Json = nlohmann::ordered_json;

// Every rational is written as a string "p/q" (or "p"); readers reject JSON
// numbers for rational fields so no value can pass through floating point.

Json to_json(const NetworkSpec& net);
NetworkSpec network_from_json(const Json& j);

Json to_json(const InputSchedule& schedule);
InputSchedule schedule_from_json(const Json& j);

Json to_json(const FailurePattern& failure);
FailurePattern failure_from_json(const Json& j);

Json to_json(const CopiesMap& map);
CopiesMap copies_from_json(const Json& j);

Json to_json(const DerivationParams& params);
DerivationParams params_from_json(const Json& j);

Json to_json(const TheoremReport& report);
Json to_json(const CellClassification& cells);
Json to_json(const CheckSummary& summary);
Json to_json(const OracleSummary& summary);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

NetworkSpec load_network(const std::filesystem::path& path);
void save_network(const std::filesystem::path& path, const NetworkSpec& net);

/// Sparse trace CSV: header "time,neuron,fired", one row per firing event in
/// time then neuron order, and a closing "# horizon=T" line.
void write_trace_csv(std::ostream& os, const ExecutionTrace& trace);
void save_trace_csv(const std::filesystem::path& path, const ExecutionTrace& trace);

/// Firing events and horizon parsed back from a trace CSV.
struct TraceEvents {
    int horizon = -1;
    std::vector<std::pair<int, NeuronId>> events;

    friend bool operator==(const TraceEvents&, const TraceEvents&) = default;
};
TraceEvents read_trace_csv(std::istream& is);
TraceEvents trace_events(const ExecutionTrace& trace);

/// One row per neuron, one column per time step: '#' firing, '.' silent.
void write_raster(std::ostream& os, const ExecutionTrace& trace);

}  // namespace snnmap::io

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snnmap/derive.hpp"
#include "snnmap/engine.hpp"
#include "snnmap/failures.hpp"

namespace snnmap {

enum class Theorem { firing, nonfiring, actuator_fires, actuator_silent };
std::string to_string(Theorem theorem);

struct TheoremViolation {
    Theorem theorem = Theorem::firing;
    NeuronId neuron;  // abstract neuron, or the actuator
    int time = 0;
    Rational observed;
    Rational required;
    std::string witness;  // local evidence from the detailed execution

    [[nodiscard]] std::string describe() const;
};

struct TheoremReport {
    Theorem theorem = Theorem::firing;
    std::vector<TheoremViolation> violations;
    std::int64_t cells_checked = 0;
    // Fewest firing copies over the cells the firing check constrains.
    std::optional<std::int64_t> min_firing_copies;

    TheoremReport() = default;
    explicit TheoremReport(Theorem t) : theorem(t) {}

    [[nodiscard]] bool passed() const noexcept { return violations.empty(); }
};

/// Reliable external neuron fed by `target` (or by all of its copies).
struct ActuatorSpec {
    NeuronId target;
    NeuronId actuator{"a"};

    friend bool operator==(const ActuatorSpec&, const ActuatorSpec&) = default;
};

/// Adds a reliable actuator with threshold s_V and initial state 0.
///
/// Without `map`, `target` is a neuron of `net` and gets one weight-1 edge to
/// the actuator. With `map`, `net` is a detailed network and every copy of the
/// abstract `target` gets a weight-1/m edge. Throws ModelError if the target is
/// unknown or an input, or the actuator id is taken.
NetworkSpec attach_actuator(const NetworkSpec& net, const ActuatorSpec& spec, const DerivationParams& params,
                            const CopiesMap* map = nullptr);

/// A1, A2 and D executed on corresponding inputs under one failure pattern.
///
/// When `actuator` is set, a1/a2/d are A1^a, A2^a, D^a; the copies map and the
/// failure pattern never mention the actuator.
struct CorrespondingRun {
    NetworkSpec a1;
    NetworkSpec a2;
    NetworkSpec d;
    CopiesMap map;
    DerivationParams params;
    FailurePattern failure;
    InputSchedule schedule_a;
    std::optional<ActuatorSpec> actuator;
    ExecutionTrace trace_a1;
    ExecutionTrace trace_a2;
    ExecutionTrace trace_d;
    std::shared_ptr<const CompiledNetwork> compiled_d;
    FailureMask mask_d;
};

/// Borrowed view of the pieces the checks need; lets callers reuse traces.
struct RunView {
    const ExecutionTrace& a1;
    const ExecutionTrace& a2;
    const ExecutionTrace& d;
    const CopiesMap& map;
    const DerivationParams& params;
    const CompiledNetwork* detailed = nullptr;  // enables witnesses
    const FailureMask* mask = nullptr;
    std::optional<NeuronId> actuator;
};

RunView view_of(const CorrespondingRun& run);

/// Derives A2 and D, generates failures, lifts inputs and executes all three.
CorrespondingRun make_corresponding_run(const NetworkSpec& a1, const DerivationParams& params,
                                        const GeneratorPolicy& failures, const InputSchedule& schedule_a,
                                        const std::optional<NeuronId>& actuator_target = std::nullopt);

/// Same, with an explicit failure pattern; throws ModelError naming the
/// violated constraint when the pattern is inadmissible.
CorrespondingRun make_corresponding_run(const NetworkSpec& a1, const DerivationParams& params,
                                        const FailurePattern& failure, const InputSchedule& schedule_a,
                                        const std::optional<NeuronId>& actuator_target = std::nullopt);

/// Builds a run over caller-supplied A2 and D (for auditing stored or edited
/// networks). Constraints are still enforced on `d`.
CorrespondingRun run_networks(const NetworkSpec& a1, const NetworkSpec& a2, const NetworkSpec& d,
                              const CopiesMap& map, const DerivationParams& params, const FailurePattern& failure,
                              const InputSchedule& schedule_a,
                              const std::optional<NeuronId>& actuator_target = std::nullopt);

/// v fires at t in A1  =>  at least s_V * m copies of v fire at t in D.
TheoremReport check_firing_theorem(const RunView& run);
TheoremReport check_firing_theorem(const CorrespondingRun& run);

/// v silent at t in A2  =>  no copy of v fires at t in D.
TheoremReport check_nonfiring_theorem(const RunView& run);
TheoremReport check_nonfiring_theorem(const CorrespondingRun& run);

struct ActuatorReport {
    TheoremReport fires{Theorem::actuator_fires};    // a fires in A1^a  =>  a fires in D^a
    TheoremReport silent{Theorem::actuator_silent};  // a silent in A2^a =>  a silent in D^a

    [[nodiscard]] bool passed() const noexcept { return fires.passed() && silent.passed(); }
};

/// Checks times 1..horizon. Throws ModelError if the run has no actuator.
ActuatorReport check_actuator_theorem(const RunView& run);
ActuatorReport check_actuator_theorem(const CorrespondingRun& run);

enum class CellKind : std::uint8_t { fires_a1, silent_a2, middle, anomaly };
std::string to_string(CellKind kind);

/// Per (neuron of A1, time) classification against A1 and A2.
///
/// `anomaly` marks a neuron firing in A1 but silent in A2 on the same inputs.
struct CellClassification {
    std::vector<NeuronId> neurons;
    int horizon = 0;
    std::vector<CellKind> cells;  // neuron-major
    std::map<CellKind, std::int64_t> counts;

    [[nodiscard]] CellKind at(std::size_t neuron_pos, int t) const;
    [[nodiscard]] CellKind at(const NeuronId& id, int t) const;
    [[nodiscard]] std::int64_t count(CellKind kind) const;
    [[nodiscard]] std::vector<std::pair<NeuronId, int>> cells_of(CellKind kind) const;
};

CellClassification classify_cells(const ExecutionTrace& a1, const ExecutionTrace& a2);
CellClassification classify_cells(const CorrespondingRun& run);

/// Failed neurons observed firing in the trace; empty for a well-formed trace.
std::vector<std::string> audit_failure_masking(const ExecutionTrace& trace);

/// Every check applicable to one run.
struct CheckSummary {
    TheoremReport firing;
    TheoremReport nonfiring;
    std::optional<ActuatorReport> actuator;
    CellClassification cells;
    std::vector<std::string> masking_violations;
    std::vector<std::string> derivation_mismatches;
    bool negative_weights = false;  // the theorems assume non-negative weights

    [[nodiscard]] bool passed() const;
};

CheckSummary check_all(const CorrespondingRun& run);

bool has_negative_weights(const NetworkSpec& net);

}  // namespace snnmap

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "snnmap/check.hpp"

namespace snnmap {

struct EnumerationLimits {
    int horizon = 4;
    std::uint64_t max_schedules = std::uint64_t{1} << 20;
    std::uint64_t max_patterns = std::uint64_t{1} << 20;

    void validate() const;
};

struct EnumerationResult {
    std::uint64_t count = 0;
    bool capped = false;  // more items existed beyond the cap
};

/// Visits all 2^(inputs * (horizon+1)) schedules in binary-counting order.
///
/// Schedule number k fires slot j = t * inputs + i (inputs in neuron order)
/// iff bit j of k is set.
EnumerationResult enumerate_schedules(const NetworkSpec& net, int horizon, std::uint64_t max_schedules,
                                      const std::function<void(const InputSchedule&)>& visit);

/// Visits every failure pattern satisfying both survival constraints.
///
/// A pattern is read as one binary number whose high part is the neuron
/// list of `d` (bit set = failed, last neuron most significant) and whose low
/// part is the edge list of `d`. Patterns are visited in increasing order of
/// that number, i.e. binary counting with inadmissible patterns skipped.
EnumerationResult enumerate_failure_patterns(const NetworkSpec& d, const CopiesMap& map,
                                             const DerivationParams& params, std::uint64_t max_patterns,
                                             const std::function<void(const FailurePattern&)>& visit);

struct OracleCounterexample {
    std::uint64_t pattern_index = 0;
    std::uint64_t schedule_index = 0;
    FailurePattern failure;
    InputSchedule schedule;
    std::vector<TheoremViolation> violations;
    std::vector<std::string> masking;
};

struct OracleSummary {
    std::uint64_t schedules = 0;
    std::uint64_t patterns = 0;
    std::uint64_t runs_checked = 0;
    std::uint64_t violating_runs = 0;
    bool schedules_capped = false;
    bool patterns_capped = false;
    // Violating runs in enumeration order, at most `max_counterexamples` kept.
    std::vector<OracleCounterexample> counterexamples;

    [[nodiscard]] bool capped() const noexcept { return schedules_capped || patterns_capped; }
    [[nodiscard]] bool clean() const noexcept { return violating_runs == 0; }
};

/// Checks the firing and non-firing theorems (and the actuator theorem when a target is given)
/// on every (schedule, admissible failure pattern) pair.
OracleSummary exhaustive_verify(const NetworkSpec& a1, const DerivationParams& params,
                                const EnumerationLimits& limits,
                                const std::optional<NeuronId>& actuator_target = std::nullopt,
                                std::size_t max_counterexamples = 16, unsigned threads = 0);

}  // namespace snnmap

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "snnmap/network.hpp"

namespace snnmap {

/// Replication count m and survival fractions s_V, s_E shared by A2 and D.
struct DerivationParams {
    int m = 1;
    Rational s_v{1};
    Rational s_e{1};

    /// Throws ModelError unless m >= 1 and both fractions lie in (0,1].
    void validate() const;
    [[nodiscard]] Rational threshold_scale() const { return s_v * s_e; }
    /// s_V * m: the minimum surviving (and, for firing, firing) copies per neuron.
    [[nodiscard]] Rational min_surviving_copies() const { return s_v * Rational(m); }
    /// s_V * s_E * m: the minimum qualifying edges per (abstract edge, target copy).
    [[nodiscard]] Rational min_surviving_edges() const { return s_v * s_e * Rational(m); }

    friend bool operator==(const DerivationParams&, const DerivationParams&) = default;
};

/// Name of copy i of abstract neuron v: "v#i".
NeuronId copy_name(const NeuronId& v, int i);

/// Bookkeeping between abstract neurons and their ordered copies.
class CopiesMap {
public:
    CopiesMap() = default;
    explicit CopiesMap(int m) : m_(m) {}

    /// Throws ModelError on a wrong copy count or a reused copy id.
    void add(const NeuronId& abstract, std::vector<NeuronId> copies, bool is_input);

    [[nodiscard]] int m() const noexcept { return m_; }
    /// Abstract neurons in insertion order.
    [[nodiscard]] const std::vector<NeuronId>& abstract_neurons() const noexcept { return order_; }
    [[nodiscard]] const std::set<NeuronId>& abstract_inputs() const noexcept { return inputs_; }
    [[nodiscard]] bool has_abstract(const NeuronId& v) const { return forward_.contains(v); }
    /// Throws ModelError for unknown ids.
    [[nodiscard]] const std::vector<NeuronId>& copies(const NeuronId& v) const;
    [[nodiscard]] const NeuronId& original(const NeuronId& copy) const;
    [[nodiscard]] std::optional<NeuronId> find_original(const NeuronId& copy) const;

    friend bool operator==(const CopiesMap&, const CopiesMap&) = default;

private:
    int m_ = 0;
    std::vector<NeuronId> order_;
    std::set<NeuronId> inputs_;
    std::map<NeuronId, std::vector<NeuronId>> forward_;
    std::map<NeuronId, NeuronId> backward_;
};

struct DetailedNetwork {
    NetworkSpec net;
    CopiesMap copies;
};

/// A1 with every non-input threshold h replaced by s_V * s_E * h.
NetworkSpec derive_a2(const NetworkSpec& a1, const DerivationParams& params);

/// m copies per neuron, complete copy-to-copy edges at weight/m, thresholds s_V * s_E * h.
DetailedNetwork derive_d(const NetworkSpec& a1, const DerivationParams& params);

struct ConstraintViolation {
    int constraint = 1;  // 1: surviving copies per neuron, 2: qualifying edges per target copy
    NeuronId neuron;     // abstract v
    std::optional<EdgeKey> edge;   // abstract (u,v), constraint 2 only
    std::optional<NeuronId> copy;  // target y, constraint 2 only
    Rational required;
    std::int64_t actual = 0;

    [[nodiscard]] std::string describe() const;
};

struct ConstraintReport {
    std::vector<ConstraintViolation> violations;

    [[nodiscard]] bool satisfied() const noexcept { return violations.empty(); }
    /// One line per violation.
    [[nodiscard]] std::string describe() const;
};

/// Checks both survival constraints of `failure` on the detailed network.
///
/// Constraint 2 is applied to every copy y, failed or not. Throws ModelError
/// when `d` and `map` disagree or the pattern names elements outside `d`.
ConstraintReport validate_failure_constraints(const NetworkSpec& d, const CopiesMap& map,
                                              const DerivationParams& params, const FailurePattern& failure);

/// Detailed-network schedule where the surviving copies of a firing abstract input fire.
InputSchedule lift_input(const InputSchedule& schedule_a, const CopiesMap& map, const FailurePattern& failure);

/// Differences between (d, map) and derive_d(a1, params); empty when they agree.
std::vector<std::string> audit_derivation(const NetworkSpec& a1, const DerivationParams& params,
                                          const NetworkSpec& d, const CopiesMap& map);

}  // namespace snnmap

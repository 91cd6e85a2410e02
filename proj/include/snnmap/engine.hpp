#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "snnmap/network.hpp"

namespace snnmap {

/// Failure pattern resolved to positions of a CompiledNetwork.
struct FailureMask {
    std::vector<std::uint8_t> neuron;  // by neuron position
    std::vector<std::uint8_t> edge;    // by edge position (NetworkSpec::edges order)
};

/// Validated, index-based form of a NetworkSpec used for execution.
class CompiledNetwork {
public:
    /// Throws ModelError when the network is invalid.
    explicit CompiledNetwork(const NetworkSpec& net);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const std::shared_ptr<const NeuronIndex>& index() const noexcept { return index_; }
    [[nodiscard]] std::size_t size() const noexcept { return index_->size(); }
    [[nodiscard]] bool is_input(std::size_t v) const { return is_input_.at(v) != 0; }
    [[nodiscard]] const Rational& threshold(std::size_t v) const { return threshold_.at(v); }

    /// Throws ModelError if the pattern names elements outside the network.
    [[nodiscard]] FailureMask mask(const FailurePattern& failure) const;
    [[nodiscard]] FailureMask no_failures() const;

    /// Sum of firing(u) * weight(u,v) over incoming edges of v that survive.
    [[nodiscard]] Rational potential(std::size_t v, const Configuration& prev, const FailureMask& mask) const;

    [[nodiscard]] Configuration initial(const InputSchedule& schedule, const FailureMask& mask) const;
    /// `inputs_next` holds one entry per input of `schedule_inputs` order, see input_positions().
    [[nodiscard]] Configuration step(const Configuration& prev, const std::vector<std::uint8_t>& inputs_next,
                                     const std::vector<std::size_t>& input_positions,
                                     const FailureMask& mask) const;

    /// Neuron positions of the schedule's inputs; throws ModelError on mismatch with the network inputs.
    [[nodiscard]] std::vector<std::size_t> input_positions(const InputSchedule& schedule) const;

    [[nodiscard]] ExecutionTrace execute(const InputSchedule& schedule, const FailureMask& mask,
                                         std::shared_ptr<const FailurePattern> failure) const;
    [[nodiscard]] ExecutionTrace execute(const InputSchedule& schedule, const FailurePattern& failure) const;

    /// Human-readable local witness for v's update from `prev`: potential,
    /// threshold and the firing in-neighbours over surviving edges.
    [[nodiscard]] std::string explain(std::size_t v, const Configuration& prev, const FailureMask& mask) const;

private:
    struct InEdge {
        std::size_t src;
        std::size_t edge;
        Rational weight;
    };

    std::string name_;
    std::shared_ptr<const NeuronIndex> index_;
    std::vector<std::uint8_t> is_input_;
    std::vector<Rational> threshold_;
    std::vector<std::uint8_t> initial_;
    std::vector<std::size_t> in_offsets_;
    std::vector<InEdge> in_edges_;
    std::map<EdgeKey, std::size_t> edge_pos_;
    std::size_t input_count_ = 0;
};

Rational incoming_potential(const NetworkSpec& net, const Configuration& prev, const NeuronId& v,
                            const FailurePattern& failure);

Configuration step(const NetworkSpec& net, const Configuration& prev, const std::map<NeuronId, bool>& inputs_next,
                   const FailurePattern& failure);

ExecutionTrace execute(const NetworkSpec& net, const InputSchedule& schedule, const FailurePattern& failure);

/// Configuration of `net` with exactly the listed neurons firing.
Configuration configuration_of(const NetworkSpec& net, const std::vector<NeuronId>& firing);

}  // namespace snnmap

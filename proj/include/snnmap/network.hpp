#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "snnmap/rational.hpp"

namespace snnmap {

/// Thrown for malformed networks, schedules, failure patterns and queries.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NeuronId {
public:
    NeuronId() = default;
    explicit NeuronId(std::string name) : name_(std::move(name)) {}

    [[nodiscard]] const std::string& str() const noexcept { return name_; }

    friend auto operator<=>(const NeuronId&, const NeuronId&) = default;
    friend bool operator==(const NeuronId&, const NeuronId&) = default;

private:
    std::string name_;
};

struct EdgeKey {
    NeuronId src;
    NeuronId dst;

    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

struct Edge {
    NeuronId src;
    NeuronId dst;
    Rational weight;

    [[nodiscard]] EdgeKey key() const { return {src, dst}; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted digraph with thresholds and initial states.
///
/// Plain data: it can hold an ill-formed network, which validate_network()
/// reports. Everything that executes a network validates it first.
struct NetworkSpec {
    std::string name;
    std::vector<NeuronId> neurons;
    std::set<NeuronId> input_neurons;
    std::vector<Edge> edges;
    std::map<NeuronId, Rational> thresholds;
    // Non-input neurons absent from this map start silent.
    std::map<NeuronId, bool> initial_firing;

    [[nodiscard]] bool is_input(const NeuronId& id) const { return input_neurons.contains(id); }
    [[nodiscard]] bool contains(const NeuronId& id) const;
    [[nodiscard]] bool initially_fires(const NeuronId& id) const;
    /// Input neurons in neuron order.
    [[nodiscard]] std::vector<NeuronId> inputs_in_order() const;
    [[nodiscard]] std::vector<NeuronId> non_inputs_in_order() const;
    [[nodiscard]] std::optional<Rational> weight(const NeuronId& src, const NeuronId& dst) const;

    friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

/// One entry per violated structural invariant; empty means valid.
std::vector<std::string> validate_network(const NetworkSpec& net);

/// Throws ModelError listing every violation.
void require_valid(const NetworkSpec& net);

/// Dense position lookup for a fixed neuron order.
class NeuronIndex {
public:
    explicit NeuronIndex(std::vector<NeuronId> ids);

    [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
    [[nodiscard]] const std::vector<NeuronId>& ids() const noexcept { return ids_; }
    [[nodiscard]] const NeuronId& id(std::size_t pos) const { return ids_.at(pos); }
    [[nodiscard]] std::optional<std::size_t> find(const NeuronId& id) const;
    /// Throws ModelError for unknown ids.
    [[nodiscard]] std::size_t at(const NeuronId& id) const;

private:
    struct Hash {
        std::size_t operator()(const NeuronId& id) const noexcept { return std::hash<std::string>{}(id.str()); }
    };
    std::vector<NeuronId> ids_;
    std::unordered_map<NeuronId, std::size_t, Hash> pos_;
};

/// Firing state of every neuron, aligned with the owning network's neuron order.
struct Configuration {
    std::vector<std::uint8_t> firing;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Firing of each input neuron at times 0..horizon.
class InputSchedule {
public:
    InputSchedule() = default;
    /// All-zero schedule.
    InputSchedule(int horizon, std::vector<NeuronId> inputs);

    [[nodiscard]] int horizon() const noexcept { return horizon_; }
    [[nodiscard]] const std::vector<NeuronId>& inputs() const noexcept { return inputs_; }
    [[nodiscard]] bool fires(int t, const NeuronId& input) const;
    [[nodiscard]] bool fires(int t, std::size_t input_pos) const;
    void set(int t, const NeuronId& input, bool value);
    void set(int t, std::size_t input_pos, bool value);

    friend bool operator==(const InputSchedule&, const InputSchedule&) = default;

private:
    [[nodiscard]] std::size_t slot(int t, std::size_t input_pos) const;
    [[nodiscard]] std::size_t position(const NeuronId& input) const;

    int horizon_ = 0;
    std::vector<NeuronId> inputs_;
    std::vector<std::uint8_t> fires_;  // time-major
};

/// Every input fires at t = 0 and at no other time.
InputSchedule pulse_schedule(const NetworkSpec& net, int horizon);
/// Every input fires at each multiple of `period`.
InputSchedule periodic_schedule(const NetworkSpec& net, int horizon, int period);
/// The listed inputs fire at t = 0 only.
InputSchedule subset_pulse_schedule(const NetworkSpec& net, int horizon, const std::vector<NeuronId>& firing);

/// Initially and permanently failed neurons and edges.
struct FailurePattern {
    std::set<NeuronId> failed_neurons;
    std::set<EdgeKey> failed_edges;

    [[nodiscard]] bool empty() const { return failed_neurons.empty() && failed_edges.empty(); }
    [[nodiscard]] bool neuron_failed(const NeuronId& id) const { return failed_neurons.contains(id); }
    [[nodiscard]] bool edge_failed(const NeuronId& src, const NeuronId& dst) const {
        return failed_edges.contains({src, dst});
    }

    friend bool operator==(const FailurePattern&, const FailurePattern&) = default;
};

/// Configurations C(0) .. C(horizon) of one execution.
struct ExecutionTrace {
    std::string network_name;
    std::shared_ptr<const NeuronIndex> neurons;
    std::shared_ptr<const FailurePattern> failure;
    std::vector<Configuration> configs;

    [[nodiscard]] int horizon() const noexcept { return static_cast<int>(configs.size()) - 1; }
    [[nodiscard]] bool fires(std::size_t neuron_pos, int t) const { return configs.at(t).firing.at(neuron_pos) != 0; }
    [[nodiscard]] bool fires(const NeuronId& id, int t) const { return fires(neurons->at(id), t); }
    /// Neurons firing at t, in neuron order.
    [[nodiscard]] std::vector<NeuronId> firing_at(int t) const;

    friend bool operator==(const ExecutionTrace& a, const ExecutionTrace& b) {
        return a.network_name == b.network_name && a.neurons->ids() == b.neurons->ids() &&
               *a.failure == *b.failure && a.configs == b.configs;
    }
};

}  // namespace snnmap

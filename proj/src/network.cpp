#include "snnmap/network.hpp"

#include <algorithm>

namespace snnmap {

bool NetworkSpec::contains(const NeuronId& id) const {
    return std::find(neurons.begin(), neurons.end(), id) != neurons.end();
}

bool NetworkSpec::initially_fires(const NeuronId& id) const {
    auto it = initial_firing.find(id);
    return it != initial_firing.end() && it->second;
}

std::vector<NeuronId> NetworkSpec::inputs_in_order() const {
    std::vector<NeuronId> out;
    for (const auto& n : neurons) {
        if (is_input(n)) out.push_back(n);
    }
    return out;
}

std::vector<NeuronId> NetworkSpec::non_inputs_in_order() const {
    std::vector<NeuronId> out;
    for (const auto& n : neurons) {
        if (!is_input(n)) out.push_back(n);
    }
    return out;
}

std::optional<Rational> NetworkSpec::weight(const NeuronId& src, const NeuronId& dst) const {
    for (const auto& e : edges) {
        if (e.src == src && e.dst == dst) return e.weight;
    }
    return std::nullopt;
}

std::vector<std::string> validate_network(const NetworkSpec& net) {
    std::vector<std::string> out;
    std::set<NeuronId> known;
    for (const auto& n : net.neurons) {
        if (n.str().empty()) out.push_back("neuron with empty name");
        if (!known.insert(n).second) out.push_back("duplicate neuron '" + n.str() + "'");
    }
    for (const auto& in : net.input_neurons) {
        if (!known.contains(in)) out.push_back("input '" + in.str() + "' is not a neuron of the network");
    }
    std::set<EdgeKey> seen;
    for (const auto& e : net.edges) {
        const std::string label = "edge (" + e.src.str() + "," + e.dst.str() + ")";
        if (!known.contains(e.src)) out.push_back(label + " has unknown source '" + e.src.str() + "'");
        if (!known.contains(e.dst)) out.push_back(label + " has unknown target '" + e.dst.str() + "'");
        if (net.is_input(e.dst)) {
            if (e.src == e.dst) {
                out.push_back(label + " is a self-loop on input neuron '" + e.dst.str() + "'");
            } else {
                out.push_back(label + " enters input neuron '" + e.dst.str() + "'");
            }
        }
        if (!seen.insert(e.key()).second) out.push_back(label + " is a parallel edge");
    }
    for (const auto& n : net.neurons) {
        if (!net.is_input(n) && !net.thresholds.contains(n)) {
            out.push_back("non-input neuron '" + n.str() + "' has no threshold");
        }
    }
    for (const auto& [id, h] : net.thresholds) {
        if (!known.contains(id)) {
            out.push_back("threshold for unknown neuron '" + id.str() + "'");
        } else if (net.is_input(id)) {
            out.push_back("input neuron '" + id.str() + "' has a threshold");
        }
    }
    for (const auto& [id, f] : net.initial_firing) {
        if (!known.contains(id)) {
            out.push_back("initial state for unknown neuron '" + id.str() + "'");
        } else if (net.is_input(id)) {
            out.push_back("input neuron '" + id.str() + "' has an initial state");
        }
    }
    return out;
}

void require_valid(const NetworkSpec& net) {
    const auto problems = validate_network(net);
    if (problems.empty()) return;
    std::string msg = "invalid network '" + net.name + "':";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ModelError(msg);
}

NeuronIndex::NeuronIndex(std::vector<NeuronId> ids) : ids_(std::move(ids)) {
    pos_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!pos_.emplace(ids_[i], i).second) throw ModelError("duplicate neuron '" + ids_[i].str() + "'");
    }
}

std::optional<std::size_t> NeuronIndex::find(const NeuronId& id) const {
    auto it = pos_.find(id);
    if (it == pos_.end()) return std::nullopt;
    return it->second;
}

std::size_t NeuronIndex::at(const NeuronId& id) const {
    auto it = pos_.find(id);
    if (it == pos_.end()) throw ModelError("unknown neuron '" + id.str() + "'");
    return it->second;
}

InputSchedule::InputSchedule(int horizon, std::vector<NeuronId> inputs)
    : horizon_(horizon), inputs_(std::move(inputs)) {
    if (horizon < 0) throw ModelError("negative horizon");
    fires_.assign(static_cast<std::size_t>(horizon + 1) * inputs_.size(), 0);
}

std::size_t InputSchedule::slot(int t, std::size_t input_pos) const {
    if (t < 0 || t > horizon_) throw ModelError("time " + std::to_string(t) + " outside schedule horizon");
    if (input_pos >= inputs_.size()) throw ModelError("input position out of range");
    return static_cast<std::size_t>(t) * inputs_.size() + input_pos;
}

std::size_t InputSchedule::position(const NeuronId& input) const {
    auto it = std::find(inputs_.begin(), inputs_.end(), input);
    if (it == inputs_.end()) throw ModelError("'" + input.str() + "' is not an input of this schedule");
    return static_cast<std::size_t>(it - inputs_.begin());
}

bool InputSchedule::fires(int t, const NeuronId& input) const { return fires_[slot(t, position(input))] != 0; }
bool InputSchedule::fires(int t, std::size_t input_pos) const { return fires_[slot(t, input_pos)] != 0; }
void InputSchedule::set(int t, const NeuronId& input, bool value) { fires_[slot(t, position(input))] = value; }
void InputSchedule::set(int t, std::size_t input_pos, bool value) { fires_[slot(t, input_pos)] = value; }

InputSchedule pulse_schedule(const NetworkSpec& net, int horizon) { return periodic_schedule(net, horizon, 0); }

InputSchedule periodic_schedule(const NetworkSpec& net, int horizon, int period) {
    InputSchedule s(horizon, net.inputs_in_order());
    for (int t = 0; t <= horizon; ++t) {
        const bool on = period > 0 ? t % period == 0 : t == 0;
        for (std::size_t i = 0; i < s.inputs().size(); ++i) s.set(t, i, on);
    }
    return s;
}

InputSchedule subset_pulse_schedule(const NetworkSpec& net, int horizon, const std::vector<NeuronId>& firing) {
    InputSchedule s(horizon, net.inputs_in_order());
    for (const auto& id : firing) s.set(0, id, true);
    return s;
}

std::vector<NeuronId> ExecutionTrace::firing_at(int t) const {
    std::vector<NeuronId> out;
    const auto& c = configs.at(t);
    for (std::size_t i = 0; i < c.firing.size(); ++i) {
        if (c.firing[i]) out.push_back(neurons->id(i));
    }
    return out;
}

}  // namespace snnmap

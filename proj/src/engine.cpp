#include "snnmap/engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace snnmap {

CompiledNetwork::CompiledNetwork(const NetworkSpec& net) : name_(net.name) {
    require_valid(net);
    index_ = std::make_shared<const NeuronIndex>(net.neurons);
    const std::size_t n = index_->size();
    is_input_.assign(n, 0);
    threshold_.assign(n, Rational{});
    initial_.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& id = index_->id(v);
        if (net.is_input(id)) {
            is_input_[v] = 1;
            ++input_count_;
        } else {
            threshold_[v] = net.thresholds.at(id);
            initial_[v] = net.initially_fires(id) ? 1 : 0;
        }
    }

    std::vector<std::size_t> counts(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    ends.reserve(net.edges.size());
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
        const auto& edge = net.edges[e];
        const auto src = index_->at(edge.src);
        const auto dst = index_->at(edge.dst);
        ends.emplace_back(src, dst);
        ++counts[dst];
        edge_pos_.emplace(edge.key(), e);
    }
    in_offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) in_offsets_[v + 1] = in_offsets_[v] + counts[v];
    in_edges_.resize(net.edges.size());
    std::vector<std::size_t> fill(in_offsets_.begin(), in_offsets_.end() - 1);
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
        const auto [src, dst] = ends[e];
        in_edges_[fill[dst]++] = InEdge{src, e, net.edges[e].weight};
    }
}

FailureMask CompiledNetwork::no_failures() const {
    return FailureMask{std::vector<std::uint8_t>(size(), 0), std::vector<std::uint8_t>(in_edges_.size(), 0)};
}

FailureMask CompiledNetwork::mask(const FailurePattern& failure) const {
    FailureMask m = no_failures();
    for (const auto& id : failure.failed_neurons) {
        auto pos = index_->find(id);
        if (!pos) throw ModelError("failure pattern names unknown neuron '" + id.str() + "'");
        m.neuron[*pos] = 1;
    }
    for (const auto& key : failure.failed_edges) {
        auto it = edge_pos_.find(key);
        if (it == edge_pos_.end()) {
            throw ModelError("failure pattern names unknown edge (" + key.src.str() + "," + key.dst.str() + ")");
        }
        m.edge[it->second] = 1;
    }
    return m;
}

Rational CompiledNetwork::potential(std::size_t v, const Configuration& prev, const FailureMask& mask) const {
    Rational pot;
    for (std::size_t i = in_offsets_[v]; i < in_offsets_[v + 1]; ++i) {
        const auto& in = in_edges_[i];
        if (prev.firing[in.src] && !mask.edge[in.edge]) pot += in.weight;
    }
    return pot;
}

std::vector<std::size_t> CompiledNetwork::input_positions(const InputSchedule& schedule) const {
    std::vector<std::size_t> out;
    out.reserve(schedule.inputs().size());
    std::set<std::size_t> seen;
    for (const auto& id : schedule.inputs()) {
        auto pos = index_->find(id);
        if (!pos || !is_input_[*pos]) {
            throw ModelError("schedule input '" + id.str() + "' is not an input neuron of '" + name_ + "'");
        }
        if (!seen.insert(*pos).second) throw ModelError("schedule lists input '" + id.str() + "' twice");
        out.push_back(*pos);
    }
    if (out.size() != input_count_) {
        throw ModelError("schedule does not cover every input neuron of '" + name_ + "'");
    }
    return out;
}

Configuration CompiledNetwork::initial(const InputSchedule& schedule, const FailureMask& mask) const {
    const auto positions = input_positions(schedule);
    Configuration c{std::vector<std::uint8_t>(size(), 0)};
    for (std::size_t v = 0; v < size(); ++v) {
        if (!is_input_[v]) c.firing[v] = initial_[v];
    }
    for (std::size_t i = 0; i < positions.size(); ++i) c.firing[positions[i]] = schedule.fires(0, i) ? 1 : 0;
    for (std::size_t v = 0; v < size(); ++v) {
        if (mask.neuron[v]) c.firing[v] = 0;
    }
    return c;
}

Configuration CompiledNetwork::step(const Configuration& prev, const std::vector<std::uint8_t>& inputs_next,
                                    const std::vector<std::size_t>& input_positions,
                                    const FailureMask& mask) const {
    Configuration next{std::vector<std::uint8_t>(size(), 0)};
    for (std::size_t i = 0; i < input_positions.size(); ++i) {
        const auto v = input_positions[i];
        next.firing[v] = (inputs_next[i] && !mask.neuron[v]) ? 1 : 0;
    }
    for (std::size_t v = 0; v < size(); ++v) {
        if (is_input_[v] || mask.neuron[v]) continue;
        next.firing[v] = potential(v, prev, mask) >= threshold_[v] ? 1 : 0;
    }
    return next;
}

ExecutionTrace CompiledNetwork::execute(const InputSchedule& schedule, const FailureMask& mask,
                                        std::shared_ptr<const FailurePattern> failure) const {
    if (mask.neuron.size() != size() || mask.edge.size() != in_edges_.size()) {
        throw ModelError("failure mask does not match network '" + name_ + "'");
    }
    const auto positions = input_positions(schedule);
    ExecutionTrace trace;
    trace.network_name = name_;
    trace.neurons = index_;
    trace.failure = std::move(failure);
    trace.configs.reserve(static_cast<std::size_t>(schedule.horizon()) + 1);
    trace.configs.push_back(initial(schedule, mask));
    std::vector<std::uint8_t> inputs(positions.size(), 0);
    for (int t = 1; t <= schedule.horizon(); ++t) {
        for (std::size_t i = 0; i < positions.size(); ++i) inputs[i] = schedule.fires(t, i) ? 1 : 0;
        trace.configs.push_back(step(trace.configs.back(), inputs, positions, mask));
    }
    return trace;
}

ExecutionTrace CompiledNetwork::execute(const InputSchedule& schedule, const FailurePattern& failure) const {
    return execute(schedule, mask(failure), std::make_shared<const FailurePattern>(failure));
}

std::string CompiledNetwork::explain(std::size_t v, const Configuration& prev, const FailureMask& mask) const {
    std::ostringstream os;
    os << index_->id(v).str() << ": ";
    if (is_input_[v]) {
        os << "input neuron";
        return os.str();
    }
    os << "potential " << potential(v, prev, mask) << " vs threshold " << threshold_[v];
    if (mask.neuron[v]) os << " (failed)";
    os << "; firing in-neighbours over surviving edges: {";
    bool first = true;
    for (std::size_t i = in_offsets_[v]; i < in_offsets_[v + 1]; ++i) {
        const auto& in = in_edges_[i];
        if (!prev.firing[in.src] || mask.edge[in.edge]) continue;
        os << (first ? "" : ", ") << index_->id(in.src).str() << "*" << in.weight;
        first = false;
    }
    os << "}";
    return os.str();
}

Rational incoming_potential(const NetworkSpec& net, const Configuration& prev, const NeuronId& v,
                            const FailurePattern& failure) {
    CompiledNetwork compiled(net);
    const auto pos = compiled.index()->find(v);
    if (!pos) throw ModelError("incoming_potential: unknown neuron '" + v.str() + "'");
    if (compiled.is_input(*pos)) throw ModelError("incoming_potential: '" + v.str() + "' is an input neuron");
    if (prev.firing.size() != compiled.size()) throw ModelError("configuration does not match network");
    return compiled.potential(*pos, prev, compiled.mask(failure));
}

Configuration step(const NetworkSpec& net, const Configuration& prev, const std::map<NeuronId, bool>& inputs_next,
                   const FailurePattern& failure) {
    CompiledNetwork compiled(net);
    if (prev.firing.size() != compiled.size()) throw ModelError("configuration does not match network");
    std::vector<std::size_t> positions;
    std::vector<std::uint8_t> values;
    for (const auto& id : net.inputs_in_order()) {
        auto it = inputs_next.find(id);
        if (it == inputs_next.end()) throw ModelError("no next value for input '" + id.str() + "'");
        positions.push_back(compiled.index()->at(id));
        values.push_back(it->second ? 1 : 0);
    }
    if (inputs_next.size() != positions.size()) throw ModelError("input values given for non-input neurons");
    return compiled.step(prev, values, positions, compiled.mask(failure));
}

ExecutionTrace execute(const NetworkSpec& net, const InputSchedule& schedule, const FailurePattern& failure) {
    return CompiledNetwork(net).execute(schedule, failure);
}

Configuration configuration_of(const NetworkSpec& net, const std::vector<NeuronId>& firing) {
    NeuronIndex index(net.neurons);
    Configuration c{std::vector<std::uint8_t>(index.size(), 0)};
    for (const auto& id : firing) c.firing[index.at(id)] = 1;
    return c;
}

}  // namespace snnmap

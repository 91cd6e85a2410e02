#include "snnmap/builders.hpp"

#include <vector>

namespace snnmap {
namespace {

NeuronId numbered(int v) { return NeuronId(std::to_string(v)); }

std::string join_path(const std::vector<int>& digits, int k) {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (k > 9 && i > 0) out += '.';
        out += std::to_string(digits[i]);
    }
    return out;
}

}  // namespace

NeuronId hierarchy_neuron(const std::string& path) {
    return NeuronId(path.empty() ? std::string("v_lambda") : "v_" + path);
}

NetworkSpec build_line(const LineParams& p) {
    if (p.lmax < 1) throw ModelError("line: lmax must be at least 1");
    NetworkSpec net;
    net.name = "line" + std::to_string(p.lmax);
    for (int v = 0; v <= p.lmax; ++v) net.neurons.push_back(numbered(v));
    net.input_neurons.insert(numbered(0));
    for (int v = 0; v < p.lmax; ++v) net.edges.push_back({numbered(v), numbered(v + 1), Rational(1)});
    if (p.variant == LineVariant::self_loop_on_1) net.edges.push_back({numbered(1), numbered(1), Rational(1)});
    for (int v = 1; v <= p.lmax; ++v) {
        net.thresholds[numbered(v)] = Rational(1);
        net.initial_firing[numbered(v)] = false;
    }
    return net;
}

NetworkSpec build_ring(const RingParams& p) {
    if (p.lmax < 2) throw ModelError("ring: lmax must be at least 2");
    NetworkSpec net = build_line(LineParams{p.lmax, LineVariant::pulse_only});
    net.name = "ring" + std::to_string(p.lmax);
    net.edges.push_back({numbered(p.lmax), numbered(1), Rational(1)});
    return net;
}

NetworkSpec build_hierarchy(const HierarchyParams& p) {
    if (p.lmax < 1) throw ModelError("hierarchy: lmax must be at least 1");
    if (p.k < 1) throw ModelError("hierarchy: k must be at least 1");
    if (p.r <= Rational(0) || p.r > Rational(1)) throw ModelError("hierarchy: r must lie in (0,1]");

    NetworkSpec net;
    net.name = "hierarchy" + std::to_string(p.lmax) + "_" + std::to_string(p.k);
    const Rational threshold = p.r * Rational(p.k);

    // levels[d] holds the digit paths at depth d from the root.
    std::vector<std::vector<std::vector<int>>> levels(static_cast<std::size_t>(p.lmax) + 1);
    levels[0].push_back({});
    for (int d = 1; d <= p.lmax; ++d) {
        for (const auto& parent : levels[d - 1]) {
            for (int c = 1; c <= p.k; ++c) {
                auto child = parent;
                child.push_back(c);
                levels[d].push_back(std::move(child));
            }
        }
    }
    for (int d = p.lmax; d >= 0; --d) {
        for (const auto& path : levels[d]) {
            const NeuronId id = hierarchy_neuron(join_path(path, p.k));
            net.neurons.push_back(id);
            if (d == p.lmax) {
                net.input_neurons.insert(id);
            } else {
                net.thresholds[id] = threshold;
                net.initial_firing[id] = false;
            }
        }
    }
    for (int d = p.lmax; d >= 1; --d) {
        for (const auto& path : levels[d]) {
            const std::vector<int> parent(path.begin(), path.end() - 1);
            net.edges.push_back({hierarchy_neuron(join_path(path, p.k)),
                                 hierarchy_neuron(join_path(parent, p.k)), Rational(1)});
        }
    }
    if (p.level1_self_loops && p.lmax >= 1) {
        for (const auto& path : levels[p.lmax - 1]) {
            const NeuronId id = hierarchy_neuron(join_path(path, p.k));
            net.edges.push_back({id, id, threshold});
        }
    }
    return net;
}

}  // namespace snnmap

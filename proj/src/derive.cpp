#include "snnmap/derive.hpp"

#include <sstream>

namespace snnmap {

void DerivationParams::validate() const {
    if (m < 1) throw ModelError("m must be a positive integer, got " + std::to_string(m));
    if (s_v <= Rational(0) || s_v > Rational(1)) throw ModelError("s_V must lie in (0,1], got " + s_v.str());
    if (s_e <= Rational(0) || s_e > Rational(1)) throw ModelError("s_E must lie in (0,1], got " + s_e.str());
}

NeuronId copy_name(const NeuronId& v, int i) { return NeuronId(v.str() + "#" + std::to_string(i)); }

void CopiesMap::add(const NeuronId& abstract, std::vector<NeuronId> copies, bool is_input) {
    if (static_cast<int>(copies.size()) != m_) {
        throw ModelError("neuron '" + abstract.str() + "' has " + std::to_string(copies.size()) + " copies, expected " +
                         std::to_string(m_));
    }
    if (forward_.contains(abstract)) throw ModelError("neuron '" + abstract.str() + "' mapped twice");
    for (const auto& c : copies) {
        if (!backward_.emplace(c, abstract).second) throw ModelError("copy '" + c.str() + "' used twice");
    }
    order_.push_back(abstract);
    if (is_input) inputs_.insert(abstract);
    forward_.emplace(abstract, std::move(copies));
}

const std::vector<NeuronId>& CopiesMap::copies(const NeuronId& v) const {
    auto it = forward_.find(v);
    if (it == forward_.end()) throw ModelError("no copies recorded for '" + v.str() + "'");
    return it->second;
}

const NeuronId& CopiesMap::original(const NeuronId& copy) const {
    auto it = backward_.find(copy);
    if (it == backward_.end()) throw ModelError("'" + copy.str() + "' is not a recorded copy");
    return it->second;
}

std::optional<NeuronId> CopiesMap::find_original(const NeuronId& copy) const {
    auto it = backward_.find(copy);
    if (it == backward_.end()) return std::nullopt;
    return it->second;
}

NetworkSpec derive_a2(const NetworkSpec& a1, const DerivationParams& params) {
    require_valid(a1);
    params.validate();
    NetworkSpec a2 = a1;
    a2.name = a1.name + "_a2";
    const Rational scale = params.threshold_scale();
    for (auto& [id, h] : a2.thresholds) h = scale * h;
    return a2;
}

DetailedNetwork derive_d(const NetworkSpec& a1, const DerivationParams& params) {
    require_valid(a1);
    params.validate();
    DetailedNetwork out{NetworkSpec{}, CopiesMap(params.m)};
    auto& d = out.net;
    d.name = a1.name + "_d";
    const Rational scale = params.threshold_scale();
    for (const auto& v : a1.neurons) {
        std::vector<NeuronId> copies;
        copies.reserve(static_cast<std::size_t>(params.m));
        for (int i = 0; i < params.m; ++i) copies.push_back(copy_name(v, i));
        for (const auto& y : copies) {
            d.neurons.push_back(y);
            if (a1.is_input(v)) {
                d.input_neurons.insert(y);
            } else {
                d.thresholds[y] = scale * a1.thresholds.at(v);
                d.initial_firing[y] = a1.initially_fires(v);
            }
        }
        out.copies.add(v, std::move(copies), a1.is_input(v));
    }
    const Rational m(params.m);
    d.edges.reserve(a1.edges.size() * static_cast<std::size_t>(params.m) * static_cast<std::size_t>(params.m));
    for (const auto& e : a1.edges) {
        const Rational w = e.weight / m;
        for (const auto& x : out.copies.copies(e.src)) {
            for (const auto& y : out.copies.copies(e.dst)) d.edges.push_back({x, y, w});
        }
    }
    return out;
}

std::string ConstraintViolation::describe() const {
    std::ostringstream os;
    if (constraint == 1) {
        os << "constraint 1 violated for neuron '" << neuron.str() << "': " << actual
           << " surviving copies, required at least " << required;
    } else {
        os << "constraint 2 violated for edge (" << edge->src.str() << "," << edge->dst.str() << ") at copy '"
           << copy->str() << "': " << actual << " surviving edges from surviving copies, required at least "
           << required;
    }
    return os.str();
}

std::string ConstraintReport::describe() const {
    std::string out;
    for (const auto& v : violations) out += v.describe() + "\n";
    return out;
}

ConstraintReport validate_failure_constraints(const NetworkSpec& d, const CopiesMap& map,
                                              const DerivationParams& params, const FailurePattern& failure) {
    params.validate();
    if (map.m() != params.m) throw ModelError("copies map has m=" + std::to_string(map.m()) + ", params say " +
                                              std::to_string(params.m));
    const std::set<NeuronId> neurons(d.neurons.begin(), d.neurons.end());
    for (const auto& y : d.neurons) {
        if (!map.find_original(y)) throw ModelError("detailed neuron '" + y.str() + "' missing from copies map");
    }
    for (const auto& v : map.abstract_neurons()) {
        for (const auto& y : map.copies(v)) {
            if (!neurons.contains(y)) throw ModelError("copy '" + y.str() + "' missing from detailed network");
        }
    }
    std::set<EdgeKey> edges;
    std::set<EdgeKey> abstract_edges;
    for (const auto& e : d.edges) {
        edges.insert(e.key());
        abstract_edges.insert({map.original(e.src), map.original(e.dst)});
    }
    for (const auto& id : failure.failed_neurons) {
        if (!neurons.contains(id)) throw ModelError("failed neuron '" + id.str() + "' is not in the detailed network");
    }
    for (const auto& key : failure.failed_edges) {
        if (!edges.contains(key)) {
            throw ModelError("failed edge (" + key.src.str() + "," + key.dst.str() + ") is not in the detailed network");
        }
    }

    ConstraintReport report;
    const Rational need_copies = params.min_surviving_copies();
    for (const auto& v : map.abstract_neurons()) {
        std::int64_t surviving = 0;
        for (const auto& y : map.copies(v)) surviving += failure.neuron_failed(y) ? 0 : 1;
        if (Rational(surviving) < need_copies) report.violations.push_back({1, v, std::nullopt, std::nullopt, need_copies, surviving});
    }
    const Rational need_edges = params.min_surviving_edges();
    for (const auto& ab : abstract_edges) {
        const auto& sources = map.copies(ab.src);
        for (const auto& y : map.copies(ab.dst)) {
            std::int64_t qualifying = 0;
            for (const auto& x : sources) {
                if (failure.neuron_failed(x)) continue;
                const EdgeKey key{x, y};
                if (edges.contains(key) && !failure.failed_edges.contains(key)) ++qualifying;
            }
            if (Rational(qualifying) < need_edges) report.violations.push_back({2, ab.dst, ab, y, need_edges, qualifying});
        }
    }
    return report;
}

InputSchedule lift_input(const InputSchedule& schedule_a, const CopiesMap& map, const FailurePattern& failure) {
    std::vector<NeuronId> inputs;
    for (const auto& v : schedule_a.inputs()) {
        if (!map.abstract_inputs().contains(v)) {
            throw ModelError("cannot lift schedule: '" + v.str() + "' is not an abstract input neuron");
        }
        for (const auto& y : map.copies(v)) inputs.push_back(y);
    }
    InputSchedule lifted(schedule_a.horizon(), std::move(inputs));
    const auto m = static_cast<std::size_t>(map.m());
    for (int t = 0; t <= schedule_a.horizon(); ++t) {
        for (std::size_t i = 0; i < schedule_a.inputs().size(); ++i) {
            if (!schedule_a.fires(t, i)) continue;
            const auto& copies = map.copies(schedule_a.inputs()[i]);
            for (std::size_t j = 0; j < m; ++j) {
                if (!failure.neuron_failed(copies[j])) lifted.set(t, i * m + j, true);
            }
        }
    }
    return lifted;
}

std::vector<std::string> audit_derivation(const NetworkSpec& a1, const DerivationParams& params,
                                          const NetworkSpec& d, const CopiesMap& map) {
    const auto expected = derive_d(a1, params);
    std::vector<std::string> out;
    if (!(expected.copies == map)) out.push_back("copies map differs from the derived one");
    if (expected.net.neurons != d.neurons) out.push_back("neuron list differs from the derived one");
    if (expected.net.input_neurons != d.input_neurons) out.push_back("input neurons differ from the derived ones");
    for (const auto& [id, h] : expected.net.thresholds) {
        auto it = d.thresholds.find(id);
        if (it == d.thresholds.end()) {
            out.push_back("neuron '" + id.str() + "' has no threshold, expected " + h.str());
        } else if (it->second != h) {
            out.push_back("neuron '" + id.str() + "' has threshold " + it->second.str() + ", expected " + h.str());
        }
    }
    for (const auto& [id, f] : d.thresholds) {
        if (!expected.net.thresholds.contains(id)) out.push_back("unexpected threshold on '" + id.str() + "'");
    }
    for (const auto& id : expected.net.non_inputs_in_order()) {
        if (expected.net.initially_fires(id) != d.initially_fires(id)) {
            out.push_back("neuron '" + id.str() + "' has a different initial firing state");
        }
    }
    std::map<EdgeKey, Rational> want;
    for (const auto& e : expected.net.edges) want.emplace(e.key(), e.weight);
    std::set<EdgeKey> have;
    for (const auto& e : d.edges) {
        have.insert(e.key());
        auto it = want.find(e.key());
        if (it == want.end()) {
            out.push_back("unexpected edge (" + e.src.str() + "," + e.dst.str() + ")");
        } else if (it->second != e.weight) {
            out.push_back("edge (" + e.src.str() + "," + e.dst.str() + ") has weight " + e.weight.str() +
                          ", expected " + it->second.str());
        }
    }
    for (const auto& [key, w] : want) {
        if (!have.contains(key)) out.push_back("missing edge (" + key.src.str() + "," + key.dst.str() + ")");
    }
    return out;
}

}  // namespace snnmap

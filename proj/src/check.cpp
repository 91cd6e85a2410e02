#include "snnmap/check.hpp"

#include <sstream>

namespace snnmap {
namespace {

std::vector<std::vector<std::size_t>> copy_positions(const RunView& run) {
    std::vector<std::vector<std::size_t>> out;
    out.reserve(run.map.abstract_neurons().size());
    for (const auto& v : run.map.abstract_neurons()) {
        std::vector<std::size_t> pos;
        for (const auto& y : run.map.copies(v)) pos.push_back(run.d.neurons->at(y));
        out.push_back(std::move(pos));
    }
    return out;
}

std::string witness_for(const RunView& run, std::size_t y, int t) {
    if (run.detailed == nullptr || run.mask == nullptr) return {};
    if (t == 0) return run.d.neurons->id(y).str() + ": initial configuration";
    return run.detailed->explain(y, run.d.configs.at(static_cast<std::size_t>(t) - 1), *run.mask);
}

void require_same_horizon(const RunView& run) {
    if (run.a1.horizon() != run.a2.horizon() || run.a1.horizon() != run.d.horizon()) {
        throw ModelError("corresponding traces have different horizons");
    }
}

}  // namespace

std::string to_string(Theorem theorem) {
    switch (theorem) {
        case Theorem::firing: return "firing";
        case Theorem::nonfiring: return "nonfiring";
        case Theorem::actuator_fires: return "actuator_fires";
        case Theorem::actuator_silent: return "actuator_silent";
    }
    return "unknown";
}

std::string to_string(CellKind kind) {
    switch (kind) {
        case CellKind::fires_a1: return "FIRES_A1";
        case CellKind::silent_a2: return "SILENT_A2";
        case CellKind::middle: return "MIDDLE";
        case CellKind::anomaly: return "ANOMALY";
    }
    return "unknown";
}

std::string TheoremViolation::describe() const {
    std::ostringstream os;
    os << to_string(theorem) << " violated at neuron '" << neuron.str() << "', time " << time << ": observed "
       << observed << ", required ";
    switch (theorem) {
        case Theorem::firing: os << ">= " << required << " firing copies"; break;
        case Theorem::nonfiring: os << required << " firing copies"; break;
        case Theorem::actuator_fires:
        case Theorem::actuator_silent: os << required << " (actuator firing)"; break;
    }
    if (!witness.empty()) os << " | " << witness;
    return os.str();
}

NetworkSpec attach_actuator(const NetworkSpec& net, const ActuatorSpec& spec, const DerivationParams& params,
                            const CopiesMap* map) {
    params.validate();
    if (net.contains(spec.actuator)) throw ModelError("actuator id '" + spec.actuator.str() + "' is already in use");
    NetworkSpec out = net;
    out.neurons.push_back(spec.actuator);
    out.thresholds[spec.actuator] = params.s_v;
    out.initial_firing[spec.actuator] = false;
    if (map == nullptr) {
        if (!net.contains(spec.target)) throw ModelError("actuator target '" + spec.target.str() + "' is unknown");
        if (net.is_input(spec.target)) throw ModelError("actuator target '" + spec.target.str() + "' is an input");
        out.edges.push_back({spec.target, spec.actuator, Rational(1)});
    } else {
        if (!map->has_abstract(spec.target)) {
            throw ModelError("actuator target '" + spec.target.str() + "' is not an abstract neuron");
        }
        if (map->abstract_inputs().contains(spec.target)) {
            throw ModelError("actuator target '" + spec.target.str() + "' is an input");
        }
        const Rational w = Rational(1) / Rational(map->m());
        for (const auto& y : map->copies(spec.target)) {
            if (!net.contains(y)) throw ModelError("copy '" + y.str() + "' is not in the detailed network");
            out.edges.push_back({y, spec.actuator, w});
        }
    }
    return out;
}

RunView view_of(const CorrespondingRun& run) {
    RunView v{run.trace_a1, run.trace_a2, run.trace_d, run.map, run.params, run.compiled_d.get(), &run.mask_d,
              std::nullopt};
    if (run.actuator) v.actuator = run.actuator->actuator;
    return v;
}

CorrespondingRun run_networks(const NetworkSpec& a1, const NetworkSpec& a2, const NetworkSpec& d,
                              const CopiesMap& map, const DerivationParams& params, const FailurePattern& failure,
                              const InputSchedule& schedule_a, const std::optional<NeuronId>& actuator_target) {
    params.validate();
    require_valid(a1);
    const auto constraints = validate_failure_constraints(d, map, params, failure);
    if (!constraints.satisfied()) throw ModelError("inadmissible failure pattern: " + constraints.violations.front().describe());

    CorrespondingRun run;
    run.params = params;
    run.map = map;
    run.failure = failure;
    run.schedule_a = schedule_a;
    if (actuator_target) {
        ActuatorSpec spec{*actuator_target};
        run.actuator = spec;
        run.a1 = attach_actuator(a1, spec, params);
        run.a2 = attach_actuator(a2, spec, params);
        run.d = attach_actuator(d, spec, params, &map);
    } else {
        run.a1 = a1;
        run.a2 = a2;
        run.d = d;
    }
    const auto none = std::make_shared<const FailurePattern>();
    const CompiledNetwork c1(run.a1);
    const CompiledNetwork c2(run.a2);
    run.trace_a1 = c1.execute(schedule_a, c1.no_failures(), none);
    run.trace_a2 = c2.execute(schedule_a, c2.no_failures(), none);
    run.compiled_d = std::make_shared<const CompiledNetwork>(run.d);
    run.mask_d = run.compiled_d->mask(failure);
    run.trace_d = run.compiled_d->execute(lift_input(schedule_a, map, failure), run.mask_d,
                                          std::make_shared<const FailurePattern>(failure));
    return run;
}

CorrespondingRun make_corresponding_run(const NetworkSpec& a1, const DerivationParams& params,
                                        const FailurePattern& failure, const InputSchedule& schedule_a,
                                        const std::optional<NeuronId>& actuator_target) {
    auto derived = derive_d(a1, params);
    return run_networks(a1, derive_a2(a1, params), derived.net, derived.copies, params, failure, schedule_a,
                        actuator_target);
}

CorrespondingRun make_corresponding_run(const NetworkSpec& a1, const DerivationParams& params,
                                        const GeneratorPolicy& failures, const InputSchedule& schedule_a,
                                        const std::optional<NeuronId>& actuator_target) {
    auto derived = derive_d(a1, params);
    const auto failure = generate(derived.net, derived.copies, params, failures);
    return run_networks(a1, derive_a2(a1, params), derived.net, derived.copies, params, failure, schedule_a,
                        actuator_target);
}

TheoremReport check_firing_theorem(const RunView& run) {
    require_same_horizon(run);
    TheoremReport report{Theorem::firing};
    const auto positions = copy_positions(run);
    const Rational need = run.params.min_surviving_copies();
    const auto& abstract = run.map.abstract_neurons();
    for (std::size_t i = 0; i < abstract.size(); ++i) {
        const auto a1_pos = run.a1.neurons->at(abstract[i]);
        for (int t = 0; t <= run.a1.horizon(); ++t) {
            if (!run.a1.fires(a1_pos, t)) continue;
            ++report.cells_checked;
            std::int64_t firing = 0;
            for (auto y : positions[i]) firing += run.d.fires(y, t) ? 1 : 0;
            if (!report.min_firing_copies || firing < *report.min_firing_copies) report.min_firing_copies = firing;
            if (Rational(firing) >= need) continue;
            std::string witness;
            for (auto y : positions[i]) {
                if (!run.d.fires(y, t) && !(run.mask && run.mask->neuron[y])) {
                    witness = witness_for(run, y, t);
                    break;
                }
            }
            report.violations.push_back({Theorem::firing, abstract[i], t, Rational(firing), need, witness});
        }
    }
    return report;
}

TheoremReport check_firing_theorem(const CorrespondingRun& run) { return check_firing_theorem(view_of(run)); }

TheoremReport check_nonfiring_theorem(const RunView& run) {
    require_same_horizon(run);
    TheoremReport report{Theorem::nonfiring};
    const auto positions = copy_positions(run);
    const auto& abstract = run.map.abstract_neurons();
    for (std::size_t i = 0; i < abstract.size(); ++i) {
        const auto a2_pos = run.a2.neurons->at(abstract[i]);
        for (int t = 0; t <= run.a2.horizon(); ++t) {
            if (run.a2.fires(a2_pos, t)) continue;
            ++report.cells_checked;
            std::int64_t firing = 0;
            std::optional<std::size_t> first;
            for (auto y : positions[i]) {
                if (!run.d.fires(y, t)) continue;
                ++firing;
                if (!first) first = y;
            }
            if (firing == 0) continue;
            report.violations.push_back(
                {Theorem::nonfiring, abstract[i], t, Rational(firing), Rational(0), witness_for(run, *first, t)});
        }
    }
    return report;
}

TheoremReport check_nonfiring_theorem(const CorrespondingRun& run) { return check_nonfiring_theorem(view_of(run)); }

ActuatorReport check_actuator_theorem(const RunView& run) {
    if (!run.actuator) throw ModelError("run has no actuator");
    require_same_horizon(run);
    const auto& a = *run.actuator;
    const auto p1 = run.a1.neurons->at(a);
    const auto p2 = run.a2.neurons->at(a);
    const auto pd = run.d.neurons->at(a);
    ActuatorReport report;
    for (int t = 1; t <= run.d.horizon(); ++t) {
        const bool in_d = run.d.fires(pd, t);
        if (run.a1.fires(p1, t)) {
            ++report.fires.cells_checked;
            if (!in_d) {
                report.fires.violations.push_back(
                    {Theorem::actuator_fires, a, t, Rational(0), Rational(1), witness_for(run, pd, t)});
            }
        }
        if (!run.a2.fires(p2, t)) {
            ++report.silent.cells_checked;
            if (in_d) {
                report.silent.violations.push_back(
                    {Theorem::actuator_silent, a, t, Rational(1), Rational(0), witness_for(run, pd, t)});
            }
        }
    }
    return report;
}

ActuatorReport check_actuator_theorem(const CorrespondingRun& run) { return check_actuator_theorem(view_of(run)); }

CellKind CellClassification::at(std::size_t neuron_pos, int t) const {
    return cells.at(neuron_pos * static_cast<std::size_t>(horizon + 1) + static_cast<std::size_t>(t));
}

CellKind CellClassification::at(const NeuronId& id, int t) const {
    for (std::size_t i = 0; i < neurons.size(); ++i) {
        if (neurons[i] == id) return at(i, t);
    }
    throw ModelError("neuron '" + id.str() + "' is not classified");
}

std::int64_t CellClassification::count(CellKind kind) const {
    auto it = counts.find(kind);
    return it == counts.end() ? 0 : it->second;
}

std::vector<std::pair<NeuronId, int>> CellClassification::cells_of(CellKind kind) const {
    std::vector<std::pair<NeuronId, int>> out;
    for (std::size_t i = 0; i < neurons.size(); ++i) {
        for (int t = 0; t <= horizon; ++t) {
            if (at(i, t) == kind) out.emplace_back(neurons[i], t);
        }
    }
    return out;
}

CellClassification classify_cells(const ExecutionTrace& a1, const ExecutionTrace& a2) {
    if (a1.horizon() != a2.horizon()) throw ModelError("traces have different horizons");
    CellClassification out;
    out.neurons = a1.neurons->ids();
    out.horizon = a1.horizon();
    out.cells.reserve(out.neurons.size() * static_cast<std::size_t>(out.horizon + 1));
    for (CellKind k : {CellKind::fires_a1, CellKind::silent_a2, CellKind::middle, CellKind::anomaly}) out.counts[k] = 0;
    for (std::size_t i = 0; i < out.neurons.size(); ++i) {
        const auto p2 = a2.neurons->at(out.neurons[i]);
        for (int t = 0; t <= out.horizon; ++t) {
            const bool f1 = a1.fires(i, t);
            const bool f2 = a2.fires(p2, t);
            CellKind kind = f1 ? (f2 ? CellKind::fires_a1 : CellKind::anomaly)
                               : (f2 ? CellKind::middle : CellKind::silent_a2);
            out.cells.push_back(kind);
            ++out.counts[kind];
        }
    }
    return out;
}

CellClassification classify_cells(const CorrespondingRun& run) { return classify_cells(run.trace_a1, run.trace_a2); }

std::vector<std::string> audit_failure_masking(const ExecutionTrace& trace) {
    std::vector<std::string> out;
    if (!trace.failure) return out;
    for (const auto& id : trace.failure->failed_neurons) {
        const auto pos = trace.neurons->find(id);
        if (!pos) continue;
        for (int t = 0; t <= trace.horizon(); ++t) {
            if (trace.fires(*pos, t)) {
                out.push_back("failed neuron '" + id.str() + "' fires at time " + std::to_string(t));
            }
        }
    }
    return out;
}

bool has_negative_weights(const NetworkSpec& net) {
    for (const auto& e : net.edges) {
        if (e.weight < Rational(0)) return true;
    }
    return false;
}

bool CheckSummary::passed() const {
    return firing.passed() && nonfiring.passed() && (!actuator || actuator->passed()) &&
           cells.count(CellKind::anomaly) == 0 && masking_violations.empty() && derivation_mismatches.empty();
}

CheckSummary check_all(const CorrespondingRun& run) {
    CheckSummary s;
    const auto view = view_of(run);
    s.firing = check_firing_theorem(view);
    s.nonfiring = check_nonfiring_theorem(view);
    if (run.actuator) s.actuator = check_actuator_theorem(view);
    s.cells = classify_cells(run);
    s.masking_violations = audit_failure_masking(run.trace_d);
    s.negative_weights = has_negative_weights(run.a1);
    return s;
}

}  // namespace snnmap

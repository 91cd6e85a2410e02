#include "snnmap/oracle.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace snnmap {
namespace {

struct StopEnumeration {};

// Depth-first search from the most significant bit with the "keep" branch
// first, so admissible patterns come out in increasing numeric order.
class PatternSearch {
public:
    PatternSearch(const NetworkSpec& d, const CopiesMap& map, const DerivationParams& params,
                  std::uint64_t max_patterns, const std::function<void(const FailurePattern&)>& visit)
        : d_(d), max_(max_patterns), visit_(visit),
          need_copies_(params.min_surviving_copies()), need_edges_(params.min_surviving_edges()) {
        const NeuronIndex index(d.neurons);
        std::map<NeuronId, std::size_t> abstract_group;
        for (std::size_t i = 0; i < map.abstract_neurons().size(); ++i) {
            abstract_group.emplace(map.abstract_neurons()[i], i);
        }
        neuron_group_.resize(d.neurons.size());
        group_size_.assign(map.abstract_neurons().size(), 0);
        for (std::size_t y = 0; y < d.neurons.size(); ++y) {
            neuron_group_[y] = abstract_group.at(map.original(d.neurons[y]));
            ++group_size_[neuron_group_[y]];
        }
        std::map<std::pair<EdgeKey, std::size_t>, std::size_t> edge_groups;
        for (const auto& e : d.edges) {
            const auto src = index.at(e.src);
            const auto dst = index.at(e.dst);
            const EdgeKey abstract{map.original(e.src), map.original(e.dst)};
            auto [it, fresh] = edge_groups.emplace(std::make_pair(abstract, dst), edge_groups.size());
            edge_src_.push_back(src);
            edge_group_.push_back(it->second);
        }
        edge_group_count_ = edge_groups.size();
        failed_neuron_.assign(d.neurons.size(), 0);
        failed_edge_.assign(d.edges.size(), 0);
    }

    EnumerationResult run() {
        remaining_copies_ = group_size_;
        try {
            neuron_step(static_cast<std::ptrdiff_t>(d_.neurons.size()) - 1);
        } catch (const StopEnumeration&) {
            result_.capped = true;
        }
        return result_;
    }

private:
    void neuron_step(std::ptrdiff_t pos) {
        if (pos < 0) {
            start_edges();
            return;
        }
        const auto y = static_cast<std::size_t>(pos);
        neuron_step(pos - 1);
        const auto g = neuron_group_[y];
        if (Rational(static_cast<std::int64_t>(remaining_copies_[g]) - 1) >= need_copies_) {
            failed_neuron_[y] = 1;
            --remaining_copies_[g];
            neuron_step(pos - 1);
            ++remaining_copies_[g];
            failed_neuron_[y] = 0;
        }
    }

    void start_edges() {
        qualifying_.assign(edge_group_count_, 0);
        for (std::size_t e = 0; e < edge_src_.size(); ++e) {
            if (!failed_neuron_[edge_src_[e]]) ++qualifying_[edge_group_[e]];
        }
        for (auto q : qualifying_) {
            if (Rational(static_cast<std::int64_t>(q)) < need_edges_) return;
        }
        edge_step(static_cast<std::ptrdiff_t>(edge_src_.size()) - 1);
    }

    void edge_step(std::ptrdiff_t pos) {
        if (pos < 0) {
            emit();
            return;
        }
        const auto e = static_cast<std::size_t>(pos);
        edge_step(pos - 1);
        const bool counts = !failed_neuron_[edge_src_[e]];
        const auto g = edge_group_[e];
        if (!counts || Rational(static_cast<std::int64_t>(qualifying_[g]) - 1) >= need_edges_) {
            failed_edge_[e] = 1;
            if (counts) --qualifying_[g];
            edge_step(pos - 1);
            if (counts) ++qualifying_[g];
            failed_edge_[e] = 0;
        }
    }

    void emit() {
        if (result_.count == max_) throw StopEnumeration{};
        FailurePattern f;
        for (std::size_t y = 0; y < failed_neuron_.size(); ++y) {
            if (failed_neuron_[y]) f.failed_neurons.insert(d_.neurons[y]);
        }
        for (std::size_t e = 0; e < failed_edge_.size(); ++e) {
            if (failed_edge_[e]) f.failed_edges.insert(d_.edges[e].key());
        }
        ++result_.count;
        visit_(f);
    }

    const NetworkSpec& d_;
    std::uint64_t max_;
    const std::function<void(const FailurePattern&)>& visit_;
    Rational need_copies_;
    Rational need_edges_;
    std::vector<std::size_t> neuron_group_;
    std::vector<std::size_t> group_size_;
    std::vector<std::size_t> remaining_copies_;
    std::vector<std::size_t> edge_src_;
    std::vector<std::size_t> edge_group_;
    std::size_t edge_group_count_ = 0;
    std::vector<std::size_t> qualifying_;
    std::vector<std::uint8_t> failed_neuron_;
    std::vector<std::uint8_t> failed_edge_;
    EnumerationResult result_;
};

}  // namespace

void EnumerationLimits::validate() const {
    if (horizon < 0) throw ModelError("enumeration horizon must be non-negative");
    if (max_schedules < 1 || max_patterns < 1) throw ModelError("enumeration caps must be positive");
}

EnumerationResult enumerate_schedules(const NetworkSpec& net, int horizon, std::uint64_t max_schedules,
                                      const std::function<void(const InputSchedule&)>& visit) {
    if (horizon < 0) throw ModelError("enumeration horizon must be non-negative");
    const auto inputs = net.inputs_in_order();
    const std::size_t slots = inputs.size() * static_cast<std::size_t>(horizon + 1);
    const bool huge = slots >= 64;
    const std::uint64_t total = huge ? 0 : (std::uint64_t{1} << slots);
    EnumerationResult result;
    for (std::uint64_t k = 0; huge || k < total; ++k) {
        if (result.count == max_schedules) {
            result.capped = true;
            break;
        }
        InputSchedule s(horizon, inputs);
        for (std::size_t j = 0; j < slots && j < 64; ++j) {
            if ((k >> j) & 1u) s.set(static_cast<int>(j / inputs.size()), j % inputs.size(), true);
        }
        ++result.count;
        visit(s);
    }
    return result;
}

EnumerationResult enumerate_failure_patterns(const NetworkSpec& d, const CopiesMap& map,
                                             const DerivationParams& params, std::uint64_t max_patterns,
                                             const std::function<void(const FailurePattern&)>& visit) {
    params.validate();
    PatternSearch search(d, map, params, max_patterns, visit);
    return search.run();
}

OracleSummary exhaustive_verify(const NetworkSpec& a1, const DerivationParams& params,
                                const EnumerationLimits& limits, const std::optional<NeuronId>& actuator_target,
                                std::size_t max_counterexamples, unsigned threads) {
    limits.validate();
    params.validate();
    const auto derived = derive_d(a1, params);
    const NetworkSpec a2 = derive_a2(a1, params);

    NetworkSpec a1x = a1;
    NetworkSpec a2x = a2;
    NetworkSpec dx = derived.net;
    if (actuator_target) {
        const ActuatorSpec spec{*actuator_target};
        a1x = attach_actuator(a1, spec, params);
        a2x = attach_actuator(a2, spec, params);
        dx = attach_actuator(derived.net, spec, params, &derived.copies);
    }

    OracleSummary summary;
    std::vector<InputSchedule> schedules;
    const auto sched = enumerate_schedules(a1, limits.horizon, limits.max_schedules,
                                           [&](const InputSchedule& s) { schedules.push_back(s); });
    summary.schedules = sched.count;
    summary.schedules_capped = sched.capped;

    std::vector<FailurePattern> patterns;
    const auto pats = enumerate_failure_patterns(derived.net, derived.copies, params, limits.max_patterns,
                                                 [&](const FailurePattern& f) { patterns.push_back(f); });
    summary.patterns = pats.count;
    summary.patterns_capped = pats.capped;

    const CompiledNetwork c1(a1x);
    const CompiledNetwork c2(a2x);
    const CompiledNetwork cd(dx);
    const auto none = std::make_shared<const FailurePattern>();
    std::vector<ExecutionTrace> traces_a1;
    std::vector<ExecutionTrace> traces_a2;
    for (const auto& s : schedules) {
        traces_a1.push_back(c1.execute(s, c1.no_failures(), none));
        traces_a2.push_back(c2.execute(s, c2.no_failures(), none));
    }

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, patterns.size())));

    struct Partial {
        std::uint64_t runs = 0;
        std::uint64_t violating = 0;
        std::vector<OracleCounterexample> found;
    };
    std::vector<Partial> partials(threads);
    auto worker = [&](unsigned w) {
        auto& out = partials[w];
        for (std::size_t p = w; p < patterns.size(); p += threads) {
            const auto failure = std::make_shared<const FailurePattern>(patterns[p]);
            const auto mask = cd.mask(*failure);
            for (std::size_t s = 0; s < schedules.size(); ++s) {
                const auto trace_d = cd.execute(lift_input(schedules[s], derived.copies, *failure), mask, failure);
                RunView view{traces_a1[s], traces_a2[s], trace_d, derived.copies, params, &cd, &mask, std::nullopt};
                if (actuator_target) view.actuator = ActuatorSpec{*actuator_target}.actuator;
                std::vector<TheoremViolation> bad;
                for (auto& v : check_firing_theorem(view).violations) bad.push_back(std::move(v));
                for (auto& v : check_nonfiring_theorem(view).violations) bad.push_back(std::move(v));
                if (actuator_target) {
                    auto act = check_actuator_theorem(view);
                    for (auto& v : act.fires.violations) bad.push_back(std::move(v));
                    for (auto& v : act.silent.violations) bad.push_back(std::move(v));
                }
                auto masking = audit_failure_masking(trace_d);
                ++out.runs;
                if (bad.empty() && masking.empty()) continue;
                ++out.violating;
                if (out.found.size() < max_counterexamples) {
                    out.found.push_back({p, s, patterns[p], schedules[s], std::move(bad), std::move(masking)});
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker, w);
    worker(0);
    for (auto& t : pool) t.join();

    for (auto& part : partials) {
        summary.runs_checked += part.runs;
        summary.violating_runs += part.violating;
        for (auto& c : part.found) summary.counterexamples.push_back(std::move(c));
    }
    std::sort(summary.counterexamples.begin(), summary.counterexamples.end(), [](const auto& x, const auto& y) {
        return std::tie(x.pattern_index, x.schedule_index) < std::tie(y.pattern_index, y.schedule_index);
    });
    if (summary.counterexamples.size() > max_counterexamples) summary.counterexamples.resize(max_counterexamples);
    return summary;
}

}  // namespace snnmap

#include "snnmap/failures.hpp"

#include <limits>
#include <map>
#include <vector>

namespace snnmap {
namespace {

// Abstract edges of the derivation in first-seen order of d's edge list.
std::vector<EdgeKey> abstract_edges(const NetworkSpec& d, const CopiesMap& map) {
    std::vector<EdgeKey> order;
    std::set<EdgeKey> seen;
    for (const auto& e : d.edges) {
        EdgeKey key{map.original(e.src), map.original(e.dst)};
        if (seen.insert(key).second) order.push_back(std::move(key));
    }
    return order;
}

void require_satisfied(const NetworkSpec& d, const CopiesMap& map, const DerivationParams& params,
                       const FailurePattern& pattern, FailureKind kind) {
    const auto report = validate_failure_constraints(d, map, params, pattern);
    if (report.satisfied()) return;
    throw GenerationError(to_string(kind) + " failures are not admissible for m=" + std::to_string(params.m) +
                              ", s_V=" + params.s_v.str() + ", s_E=" + params.s_e.str() + ": " +
                              report.violations.front().describe(),
                          1);
}

FailurePattern paper_adversarial(const NetworkSpec& d, const CopiesMap& map) {
    FailurePattern f;
    for (const auto& v : map.abstract_neurons()) f.failed_neurons.insert(map.copies(v).back());
    for (const auto& ab : abstract_edges(d, map)) {
        const auto& lowest = map.copies(ab.src).front();
        for (const auto& y : map.copies(ab.dst)) f.failed_edges.insert({lowest, y});
    }
    return f;
}

FailurePattern maximal(const NetworkSpec& d, const CopiesMap& map, const DerivationParams& params) {
    FailurePattern f;
    const std::int64_t keep = params.min_surviving_copies().ceil();
    const std::int64_t drop = std::max<std::int64_t>(0, params.m - keep);
    for (const auto& v : map.abstract_neurons()) {
        const auto& copies = map.copies(v);
        for (std::int64_t i = 0; i < drop; ++i) f.failed_neurons.insert(copies[copies.size() - 1 - i]);
    }
    const std::int64_t need = params.min_surviving_edges().ceil();
    for (const auto& ab : abstract_edges(d, map)) {
        const auto& sources = map.copies(ab.src);
        for (const auto& y : map.copies(ab.dst)) {
            std::int64_t qualifying = 0;
            for (const auto& x : sources) qualifying += f.neuron_failed(x) ? 0 : 1;
            for (const auto& x : sources) {
                if (f.neuron_failed(x)) {
                    f.failed_edges.insert({x, y});
                } else if (qualifying - 1 >= need) {
                    f.failed_edges.insert({x, y});
                    --qualifying;
                }
            }
        }
    }
    return f;
}

FailurePattern random_iid(const NetworkSpec& d, const CopiesMap& map, const DerivationParams& params,
                          const GeneratorPolicy& policy) {
    FailureRng rng(policy.seed);
    for (int attempt = 1; attempt <= policy.max_attempts; ++attempt) {
        FailurePattern f;
        for (const auto& y : d.neurons) {
            if (rng.bernoulli(policy.p_neuron)) f.failed_neurons.insert(y);
        }
        for (const auto& e : d.edges) {
            if (rng.bernoulli(policy.p_edge)) f.failed_edges.insert(e.key());
        }
        if (validate_failure_constraints(d, map, params, f).satisfied()) return f;
    }
    throw GenerationError("random_iid failures: no constraint-satisfying pattern after " +
                              std::to_string(policy.max_attempts) + " attempts (seed " + std::to_string(policy.seed) +
                              ")",
                          policy.max_attempts);
}

}  // namespace

std::string to_string(FailureKind kind) {
    switch (kind) {
        case FailureKind::none: return "none";
        case FailureKind::paper_adversarial: return "paper_adversarial";
        case FailureKind::random_iid: return "random_iid";
        case FailureKind::maximal: return "maximal";
    }
    return "unknown";
}

FailureKind parse_failure_kind(const std::string& text) {
    if (text == "none") return FailureKind::none;
    if (text == "paper" || text == "paper_adversarial") return FailureKind::paper_adversarial;
    if (text == "random" || text == "random_iid") return FailureKind::random_iid;
    if (text == "maximal") return FailureKind::maximal;
    throw ModelError("unknown failure policy '" + text + "'");
}

void GeneratorPolicy::validate() const {
    const auto check = [](const Rational& p, const char* name) {
        if (p < Rational(0) || p >= Rational(1)) throw ModelError(std::string(name) + " must lie in [0,1), got " + p.str());
    };
    check(p_neuron, "p_neuron");
    check(p_edge, "p_edge");
    if (max_attempts < 1) throw ModelError("max_attempts must be at least 1");
}

bool FailureRng::bernoulli(const Rational& p) {
    const auto b = static_cast<std::uint64_t>(p.den());
    const auto a = static_cast<std::uint64_t>(p.num());
    constexpr auto top = std::numeric_limits<std::uint64_t>::max();
    // Outputs at or above `limit` would bias the residue.
    const std::uint64_t excess = (top % b + 1) % b;
    const std::uint64_t limit = top - excess + 1;  // 0 means "no rejection" (2^64 is a multiple of b)
    std::uint64_t x = engine_();
    while (limit != 0 && x >= limit) x = engine_();
    return x % b < a;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

FailurePattern generate(const NetworkSpec& d, const CopiesMap& map, const DerivationParams& params,
                        const GeneratorPolicy& policy) {
    params.validate();
    policy.validate();
    FailurePattern f;
    switch (policy.kind) {
        case FailureKind::none: break;
        case FailureKind::paper_adversarial: f = paper_adversarial(d, map); break;
        case FailureKind::maximal: f = maximal(d, map, params); break;
        case FailureKind::random_iid: return random_iid(d, map, params, policy);
    }
    require_satisfied(d, map, params, f, policy.kind);
    return f;
}

bool reproducibility_check(const NetworkSpec& d, const CopiesMap& map, const DerivationParams& params,
                           const GeneratorPolicy& policy) {
    return generate(d, map, params, policy) == generate(d, map, params, policy);
}

}  // namespace snnmap

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "snnmap/derive.hpp"

namespace snnmap {

enum class FailureKind { none, paper_adversarial, random_iid, maximal };

std::string to_string(FailureKind kind);
/// Accepts "none", "paper", "paper_adversarial", "random", "random_iid", "maximal".
FailureKind parse_failure_kind(const std::string& text);

struct GeneratorPolicy {
    FailureKind kind = FailureKind::none;
    Rational p_neuron{0};  // random_iid only
    Rational p_edge{0};    // random_iid only
    std::uint64_t seed = 0;
    int max_attempts = 1000;

    void validate() const;
    friend bool operator==(const GeneratorPolicy&, const GeneratorPolicy&) = default;
};

/// Raised when no constraint-satisfying pattern could be produced.
class GenerationError : public ModelError {
public:
    GenerationError(const std::string& what, int attempts) : ModelError(what), attempts_(attempts) {}
    [[nodiscard]] int attempts() const noexcept { return attempts_; }

private:
    int attempts_;
};

/// Bernoulli draws with exact rational probabilities on top of std::mt19937_64.
///
/// Each draw for p = a/b consumes 64-bit outputs x until x falls below the
/// largest multiple of b, then succeeds iff (x mod b) < a. Both the engine and
/// the reduction are fully specified, so streams are identical across builds.
class FailureRng {
public:
    explicit FailureRng(std::uint64_t seed) : engine_(seed) {}
    bool bernoulli(const Rational& p);
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 mix of (base, index); used to derive per-trial seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Produces a pattern for the detailed network that satisfies both survival
/// constraints, or throws GenerationError.
///
/// random_iid visits the neurons of `d` in order, then its edges in order,
/// with one draw each per attempt; attempts continue on the same stream.
FailurePattern generate(const NetworkSpec& d, const CopiesMap& map, const DerivationParams& params,
                        const GeneratorPolicy& policy);

/// True iff two generate() calls with identical arguments agree.
bool reproducibility_check(const NetworkSpec& d, const CopiesMap& map, const DerivationParams& params,
                           const GeneratorPolicy& policy);

}  // namespace snnmap

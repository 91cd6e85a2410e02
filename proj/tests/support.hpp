#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "snnmap/builders.hpp"
#include "snnmap/derive.hpp"

namespace snnmap::testing {

inline std::filesystem::path tmp_dir(const std::string& name) {
    const auto dir = std::filesystem::path(SNNMAP_TEST_TMP) / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline NeuronId id(const std::string& s) { return NeuronId(s); }

inline Rational pick(std::mt19937_64& rng, const std::vector<Rational>& grid) {
    return grid[std::uniform_int_distribution<std::size_t>(0, grid.size() - 1)(rng)];
}

/// Random valid network: `inputs` inputs, `hidden` non-inputs, edge density
/// about 1/2, weights from a small grid (non-negative unless allowed).
inline NetworkSpec random_network(std::mt19937_64& rng, int inputs, int hidden, bool allow_negative = false) {
    NetworkSpec net;
    net.name = "random";
    for (int i = 0; i < inputs; ++i) {
        net.neurons.emplace_back("in" + std::to_string(i));
        net.input_neurons.insert(net.neurons.back());
    }
    for (int i = 0; i < hidden; ++i) net.neurons.emplace_back("h" + std::to_string(i));
    const std::vector<Rational> weights{Rational(1, 2), Rational(1), Rational(2), Rational(1, 3), Rational(3, 2)};
    const std::vector<Rational> thresholds{Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
    std::bernoulli_distribution coin(0.5);
    for (const auto& src : net.neurons) {
        for (int j = 0; j < hidden; ++j) {
            const NeuronId dst("h" + std::to_string(j));
            if (!coin(rng)) continue;
            Rational w = pick(rng, weights);
            if (allow_negative && coin(rng)) w = -w;
            net.edges.push_back({src, dst, w});
        }
    }
    for (int j = 0; j < hidden; ++j) {
        const NeuronId v("h" + std::to_string(j));
        net.thresholds[v] = pick(rng, thresholds);
        net.initial_firing[v] = std::uniform_int_distribution<int>(0, 3)(rng) == 0;
    }
    return net;
}

inline InputSchedule random_schedule(std::mt19937_64& rng, const NetworkSpec& net, int horizon) {
    InputSchedule s(horizon, net.inputs_in_order());
    std::bernoulli_distribution coin(0.4);
    for (int t = 0; t <= horizon; ++t) {
        for (std::size_t i = 0; i < s.inputs().size(); ++i) s.set(t, i, coin(rng));
    }
    return s;
}

inline const std::vector<Rational>& survival_grid() {
    static const std::vector<Rational> grid{Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3),
                                            Rational(3, 4), Rational(4, 5), Rational(1)};
    return grid;
}

}  // namespace snnmap::testing

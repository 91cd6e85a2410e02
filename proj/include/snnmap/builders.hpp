#pragma once

#include <string>

#include "snnmap/network.hpp"

namespace snnmap {

enum class LineVariant { pulse_only, self_loop_on_1 };

struct LineParams {
    int lmax = 1;
    LineVariant variant = LineVariant::pulse_only;
};

struct RingParams {
    int lmax = 2;
};

struct HierarchyParams {
    int lmax = 1;  // number of levels above the leaves
    int k = 1;     // children per internal neuron
    Rational r{1};
    // Adds weight-rk self-loops on level-1 neurons for persistent firing.
    bool level1_self_loops = false;
};

/// Neurons 0..lmax, input 0, unit edges (v, v+1), thresholds 1.
NetworkSpec build_line(const LineParams& p);
/// Line plus the closing edge (lmax, 1).
NetworkSpec build_ring(const RingParams& p);
/// Complete k-ary tree with child-to-parent unit edges; leaves are the inputs.
///
/// Neurons are named by digit path from the root: the root is "v_lambda",
/// its children "v_1".."v_k", their children "v_11".. and so on. For k > 9
/// path components are separated by '.'. Neurons are ordered leaves first,
/// root last.
NetworkSpec build_hierarchy(const HierarchyParams& p);

/// Name of the hierarchy neuron at the given digit path ("" is the root).
NeuronId hierarchy_neuron(const std::string& path);

}  // namespace snnmap

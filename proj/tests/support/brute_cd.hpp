#pragma once

#include "seuguard/cfg.hpp"

namespace seuguard::testing {

// Path-based post-dominance, independent of the iterative dataflow in the
// cfg module: s post-dominates n iff n cannot reach exit once s is removed
// (every n->exit path passes s).
std::vector<std::vector<bool>> brute_post_dominators(const cfg::Cfg& g);

// The control-dependence criterion applied directly to the path-based sets.
std::vector<cfg::ControlEdge> brute_control_dependence(const cfg::Cfg& g);

}  // namespace seuguard::testing

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seuguard/cfg.hpp"

namespace seuguard::slicer {

struct SlicingCriterion {
  int location = -1;           // statement node in the Pdg
  std::vector<int> variables;  // variables observed there
};

struct Slice {
  std::vector<int> statements;          // sorted node ids, predecessor-closed
  std::vector<int> relevant_variables;  // sorted variable indices
};

// Backward slice: the smallest predecessor-closed node set containing the
// criterion location and the reaching definitions of the criterion variables
// there. relevant_variables = variables defined or used by slice statements
// plus the criterion variables. Throws std::invalid_argument when the
// location is not a node of the graph.
Slice backward_slice(const cfg::Pdg& pdg, const SlicingCriterion& criterion);

std::vector<int> relevant_variables(const Slice& slice);

// The criterion the pipeline derives from a safety spec: union of backward
// slices at every output point (output/return node), with the spec's output
// variable observed.
Slice slice_at_output_points(const cfg::Pdg& pdg, int output_variable);

bool in_slice(const Slice& slice, int variable);

// Sliced source rendering: every line-bearing statement outside the slice is
// marked. Used by --emit-slice.
std::string render_sliced_source(const ast::Program& p, const Slice& slice);

}  // namespace seuguard::slicer

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seuguard/ast.hpp"

namespace seuguard::cfg {

enum class NodeKind {
  Entry,
  Exit,
  ParamDef,    // synthetic definition of one parameter
  LocalInit,   // local declaration with initializer
  Assign,
  CondIf,
  CondWhile,
  Output,
  Return,
  Print,
};

enum class EdgeLabel { None, True, False };

// input() both reads and advances the input stream; that cursor is modeled
// as a pseudo-variable (index = program variable count) defined and used by
// every input-bearing node, so statements that shift later reads stay inside
// backward slices.
struct Node {
  int id = -1;
  NodeKind kind = NodeKind::Entry;
  const ast::Stmt* stmt = nullptr;      // statement-backed nodes
  const ast::VarDecl* decl = nullptr;   // ParamDef / LocalInit
  std::vector<int> defs;                // variables defined here (sorted)
  std::vector<int> uses;                // variables read here, sorted
  std::string label;
  Span span;
};

struct Edge {
  int from = -1;
  int to = -1;
  EdgeLabel label = EdgeLabel::None;
};

struct Cfg {
  std::vector<Node> nodes;  // indexed by node id
  std::vector<Edge> edges;  // sorted by (from, to)
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;
  int entry = -1;
  int exit = -1;
  const ast::Program* program = nullptr;

  int size() const { return static_cast<int>(nodes.size()); }
  bool is_condition(int id) const {
    return nodes[id].kind == NodeKind::CondIf || nodes[id].kind == NodeKind::CondWhile;
  }

  // Recomputes succ/pred from the edge list; used by tests that build
  // graphs by hand.
  void finalize();
};

// Statement-level CFG: one node per param def, local init, assignment,
// condition, output, return and print, plus unique entry and exit.
Cfg build_cfg(const ast::Program& p);

// Index of the stream-cursor pseudo-variable for a program.
inline int stream_cursor_index(const ast::Program& p) {
  return static_cast<int>(p.vars.size());
}

struct PostDominators {
  // pd[n] holds the post-dominator set of n as a bit vector over node ids
  // (reflexive). Nodes that cannot reach exit are excluded.
  std::vector<std::vector<bool>> pd;
  std::vector<int> excluded;
};

PostDominators post_dominators(const Cfg& g);

struct ControlEdge {
  int from;  // condition node
  int to;    // dependent node
  bool operator==(const ControlEdge&) const = default;
};

// Standard criterion: s control-depends on condition c iff c has a successor
// u with s post-dominating u but s not post-dominating c.
std::vector<ControlEdge> control_dependence(const Cfg& g);
std::vector<ControlEdge> control_dependence(const Cfg& g, const PostDominators& pd);

struct DataEdge {
  int from;  // defining node
  int to;    // using node
  int var;
  bool operator==(const DataEdge&) const = default;
};

// Reaching-definitions def-use edges, loop-carried edges included.
std::vector<DataEdge> data_dependence(const Cfg& g);

struct Pdg {
  const Cfg* cfg = nullptr;
  std::vector<ControlEdge> control;
  std::vector<DataEdge> data;
  std::vector<std::vector<int>> preds;  // union of both edge kinds, deduped
  // reach_in[n] = (var, def node) pairs whose definitions reach n.
  std::vector<std::vector<std::pair<int, int>>> reach_in;
};

Pdg build_pdg(const Cfg& g);

std::string to_dot(const Cfg& g);
std::string to_dot(const Pdg& g);

}  // namespace seuguard::cfg

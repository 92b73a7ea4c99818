#pragma once

#include <optional>
#include <vector>

#include "mrd/linkage.hpp"

namespace mrd {

struct Branching {
  IndexSet vertices;
  IndexSet edges;
  friend bool operator==(const Branching&, const Branching&) = default;
};

/// One branching per matroid element, indexed by ElemId.
struct Packing {
  std::vector<Branching> branchings;
  friend bool operator==(const Packing&, const Packing&) = default;
};

/// Needs of the original instance, frozen for feasibility tests.
class NeedTable {
 public:
  explicit NeedTable(const RootedDigraph& orig);
  const IndexSet& at(VertexId v) const { return need_.at(v); }
  int rank_at(VertexId v) const { return rank_.at(v); }

 private:
  std::vector<IndexSet> need_;
  std::vector<int> rank_;
};

bool is_feasible(const NeedTable& needs, const RootedDigraph& cur,
                 const ExtensionStep& step);
bool is_feasible(const RootedDigraph& orig, const RootedDigraph& cur,
                 const ExtensionStep& step);

/// Restricts the deficiency scan to (v, W); nullopt means scan everything.
struct Focus {
  VertexId vertex = -1;
  IndexSet w;
};

std::optional<ExtensionStep> find_feasible(const NeedTable& needs,
                                           const RootedDigraph& cur,
                                           const std::optional<Focus>& focus = {});
std::optional<ExtensionStep> find_feasible(const RootedDigraph& orig,
                                           const RootedDigraph& cur);

struct SolveResult {
  Packing packing;
  ExtensionTrace trace;
  RootedDigraph final_state;
};

/// Throws precondition (with the failing vertex) when R is not independent
/// or fails the linkage condition.
void check_solve_preconditions(const RootedDigraph& r);
SolveResult solve(const RootedDigraph& r);

/// Extends until S(v) cap W is a base of N(v) cap W. W must be a union of
/// matroid components.
SolveResult augment_at(const RootedDigraph& orig, const RootedDigraph& cur,
                       VertexId v, const IndexSet& w);
SolveResult schedule(const RootedDigraph& r,
                     const std::vector<std::pair<VertexId, IndexSet>>& order);

Packing packing_from_trace(const RootedDigraph& orig, const ExtensionTrace& trace);

}  // namespace mrd

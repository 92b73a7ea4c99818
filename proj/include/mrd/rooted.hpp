#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mrd/digraph.hpp"
#include "mrd/matroid.hpp"

namespace mrd {

struct ExtensionStep {
  ElemId elem = -1;
  EdgeId edge = -1;
  friend bool operator==(const ExtensionStep&, const ExtensionStep&) = default;
};

using ExtensionTrace = std::vector<ExtensionStep>;

struct QuotientMap;

/// (D, M, pi). Elements are matroid indices, pi(i) a nonempty vertex set.
class RootedDigraph {
 public:
  RootedDigraph(Digraph d, Matroid m, std::vector<IndexSet> pi);

  const Digraph& digraph() const { return d_; }
  const Matroid& matroid() const { return m_; }
  const IndexSet& pi(ElemId i) const { return pi_.at(i); }
  const std::vector<IndexSet>& pi() const { return pi_; }

  /// S(X) = { i : pi(i) meets X }.
  IndexSet s_of(const IndexSet& x) const;
  IndexSet s_at(VertexId v) const;
  /// N(X) = span(S(to(X))). X nonempty.
  IndexSet need(const IndexSet& x) const;
  IndexSet need_at(VertexId v) const;

  /// First vertex whose S(v) is dependent, if any.
  std::optional<VertexId> first_dependent_vertex() const;
  bool check_independent() const { return !first_dependent_vertex(); }

  /// Throws edge_not_leaving_root / extension_dependent when undefined.
  void check_step(const ExtensionStep& step) const;
  bool step_defined(const ExtensionStep& step) const;
  RootedDigraph extend(const ExtensionStep& step) const;
  RootedDigraph apply_trace(const ExtensionTrace& trace) const;

  /// R[X]: D[X], M|S(X) plus a free element per in-edge of X rooted at its
  /// head. No tightness check here; see checked_quotient.
  RootedDigraph quotient(const IndexSet& x) const;
  RootedDigraph quotient_with_map(const IndexSet& x, QuotientMap& map) const;

  IndexSet single(VertexId v) const;

  friend bool operator==(const RootedDigraph&, const RootedDigraph&) = default;

 private:
  Digraph d_;
  Matroid m_;
  std::vector<IndexSet> pi_;
};

struct QuotientMap {
  std::vector<VertexId> vertex;  // quotient vertex -> original
  std::vector<EdgeId> edge;      // quotient edge -> original
  std::vector<ElemId> elem;      // quotient element -> original, -1 if fresh
  std::vector<EdgeId> fresh;     // quotient element -> in-edge, -1 if not fresh
  IndexSet to_quotient_vertices(const IndexSet& orig, std::size_t n) const;
};

}  // namespace mrd

#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mrd/error.hpp"
#include "mrd/index_set.hpp"

namespace mrd {

using VertexId = int;
using EdgeId = int;

struct EdgeSpec {
  std::string id;
  std::string tail;
  std::string head;
};

/// Finite multidigraph without loops. Vertex and edge indices are stable:
/// deleting an edge only marks it dead, so edge ids survive extension
/// sequences. `induced` re-indexes into a fresh digraph.
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges);

  std::size_t vertex_count() const { return vertex_names_.size(); }
  /// Number of edge slots, dead ones included.
  std::size_t edge_slots() const { return tails_.size(); }
  std::size_t edge_count() const { return alive_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
  const std::string& edge_name(EdgeId e) const { return edge_names_.at(e); }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  const std::vector<std::string>& edge_names() const { return edge_names_; }
  VertexId vertex_index(const std::string& name) const;
  EdgeId edge_index(const std::string& name) const;
  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<EdgeId> find_edge(const std::string& name) const;
  IndexSet vertex_set_of(const std::vector<std::string>& names) const;

  VertexId tail(EdgeId e) const { return tails_.at(e); }
  VertexId head(EdgeId e) const { return heads_.at(e); }
  bool alive(EdgeId e) const { return alive_.contains(e); }
  const IndexSet& alive_edges() const { return alive_; }
  IndexSet vertices() const { return IndexSet::full(vertex_count()); }
  IndexSet no_vertices() const { return IndexSet(vertex_count()); }
  IndexSet no_edges() const { return IndexSet(edge_slots()); }

  /// Alive edges leaving / entering v, in edge-id order.
  std::vector<EdgeId> out_of(VertexId v) const;
  std::vector<EdgeId> into(VertexId v) const;

  IndexSet in_edges(const IndexSet& x) const;
  IndexSet out_edges(const IndexSet& x) const;
  /// Vertices from which x is reachable (x included). x must be nonempty.
  IndexSet to_set(const IndexSet& x) const;
  /// Vertices reachable from x (x included).
  IndexSet reachable_from(const IndexSet& x) const;

  Digraph delete_edge(EdgeId e) const;
  /// D[X], re-indexed; names are preserved.
  Digraph induced(const IndexSet& x) const;
  /// Copy with extra edges appended after the existing slots.
  Digraph with_edges(const std::vector<EdgeSpec>& extra) const;

  void check_vertices(const IndexSet& x) const;
  void check_vertex(VertexId v) const;
  void check_edge(EdgeId e) const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.vertex_names_ == b.vertex_names_ &&
           a.edge_names_ == b.edge_names_ && a.tails_ == b.tails_ &&
           a.heads_ == b.heads_ && a.alive_ == b.alive_;
  }

 private:
  void rebuild_index();

  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<VertexId> tails_, heads_;
  IndexSet alive_;
  std::vector<std::vector<EdgeId>> out_adj_, in_adj_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, EdgeId> edge_index_;
};

/// Directed path without repeated vertices. A trivial path has no edges and
/// is anchored at a single vertex.
class Path {
 public:
  Path() = default;
  static Path trivial(VertexId v) { return Path(v, {}); }
  /// Validates chaining and simplicity against d.
  static Path from_edges(const Digraph& d, VertexId start,
                         std::vector<EdgeId> edges);

  VertexId start() const { return start_; }
  VertexId end(const Digraph& d) const {
    return edges_.empty() ? start_ : d.head(edges_.back());
  }
  const std::vector<EdgeId>& edges() const { return edges_; }
  bool is_trivial() const { return edges_.empty(); }
  std::size_t length() const { return edges_.size(); }
  std::vector<VertexId> vertices(const Digraph& d) const;
  bool contains_vertex(const Digraph& d, VertexId v) const;

  friend bool operator==(const Path&, const Path&) = default;

 private:
  Path(VertexId s, std::vector<EdgeId> e) : start_(s), edges_(std::move(e)) {}
  VertexId start_ = -1;
  std::vector<EdgeId> edges_;
};

/// True when p is a simple path over alive edges of d.
bool is_valid_path(const Digraph& d, const Path& p);

/// Joins p and q where a terminal segment of p equals an initial segment of
/// q (at least end(p) == start(q)), then erases cycles from the walk.
Path concat(const Digraph& d, const Path& p, const Path& q);
/// P[u, v]; requires u <=_P v.
Path segment(const Digraph& d, const Path& p, VertexId u, VertexId v);

bool edge_disjoint(std::span<const Path> paths);
/// A(P): union of edge sets.
IndexSet edges_of(const Digraph& d, std::span<const Path> paths);
/// A_last(P): last edges of the non-trivial paths.
IndexSet last_edges(const Digraph& d, std::span<const Path> paths);

std::string emit_dot(const Digraph& d);

}  // namespace mrd

#include "mrd/digraph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace mrd {

Digraph::Digraph(std::vector<std::string> vertices,
                 const std::vector<EdgeSpec>& edges)
    : vertex_names_(std::move(vertices)) {
  for (std::size_t v = 0; v < vertex_names_.size(); ++v)
    if (!vertex_index_.emplace(vertex_names_[v], static_cast<VertexId>(v)).second)
      fail(Errc::invalid_digraph, "duplicate vertex '" + vertex_names_[v] + "'");
  for (const auto& e : edges) {
    VertexId t = vertex_index(e.tail);
    VertexId h = vertex_index(e.head);
    if (t == h) fail(Errc::invalid_digraph, "loop edge '" + e.id + "'");
    if (!edge_index_.emplace(e.id, static_cast<EdgeId>(edge_names_.size())).second)
      fail(Errc::invalid_digraph, "duplicate edge '" + e.id + "'");
    edge_names_.push_back(e.id);
    tails_.push_back(t);
    heads_.push_back(h);
  }
  alive_ = IndexSet::full(edge_names_.size());
  rebuild_index();
}

void Digraph::rebuild_index() {
  out_adj_.assign(vertex_names_.size(), {});
  in_adj_.assign(vertex_names_.size(), {});
  for (std::size_t e = 0; e < tails_.size(); ++e) {
    out_adj_[tails_[e]].push_back(static_cast<EdgeId>(e));
    in_adj_[heads_[e]].push_back(static_cast<EdgeId>(e));
  }
}

VertexId Digraph::vertex_index(const std::string& name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end())
    fail(Errc::unknown_vertex, "unknown vertex '" + name + "'");
  return it->second;
}

EdgeId Digraph::edge_index(const std::string& name) const {
  auto it = edge_index_.find(name);
  if (it == edge_index_.end())
    fail(Errc::unknown_edge, "unknown edge '" + name + "'");
  return it->second;
}

std::optional<VertexId> Digraph::find_vertex(const std::string& name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Digraph::find_edge(const std::string& name) const {
  auto it = edge_index_.find(name);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

IndexSet Digraph::vertex_set_of(const std::vector<std::string>& names) const {
  IndexSet s(vertex_count());
  for (const auto& n : names) s.insert(vertex_index(n));
  return s;
}

void Digraph::check_vertices(const IndexSet& x) const {
  if (x.universe() != vertex_count())
    fail(Errc::unknown_vertex, "vertex set universe does not match digraph");
}

void Digraph::check_vertex(VertexId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= vertex_count())
    fail(Errc::unknown_vertex, "vertex index " + std::to_string(v) + " out of range");
}

void Digraph::check_edge(EdgeId e) const {
  if (e < 0 || static_cast<std::size_t>(e) >= edge_slots())
    fail(Errc::unknown_edge, "edge index " + std::to_string(e) + " out of range");
}

std::vector<EdgeId> Digraph::out_of(VertexId v) const {
  std::vector<EdgeId> out;
  for (EdgeId e : out_adj_.at(v))
    if (alive(e)) out.push_back(e);
  return out;
}

std::vector<EdgeId> Digraph::into(VertexId v) const {
  std::vector<EdgeId> out;
  for (EdgeId e : in_adj_.at(v))
    if (alive(e)) out.push_back(e);
  return out;
}

IndexSet Digraph::in_edges(const IndexSet& x) const {
  check_vertices(x);
  IndexSet out(edge_slots());
  for (int e : alive_)
    if (x.contains(heads_[e]) && !x.contains(tails_[e])) out.insert(e);
  return out;
}

IndexSet Digraph::out_edges(const IndexSet& x) const {
  check_vertices(x);
  IndexSet out(edge_slots());
  for (int e : alive_)
    if (x.contains(tails_[e]) && !x.contains(heads_[e])) out.insert(e);
  return out;
}

IndexSet Digraph::to_set(const IndexSet& x) const {
  check_vertices(x);
  if (x.empty()) fail(Errc::empty_set, "to_set of the empty set");
  IndexSet seen = x;
  std::deque<VertexId> queue(x.begin(), x.end());
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : in_adj_[v]) {
      if (!alive(e) || seen.contains(tails_[e])) continue;
      seen.insert(tails_[e]);
      queue.push_back(tails_[e]);
    }
  }
  return seen;
}

IndexSet Digraph::reachable_from(const IndexSet& x) const {
  check_vertices(x);
  IndexSet seen = x;
  std::deque<VertexId> queue(x.begin(), x.end());
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : out_adj_[v]) {
      if (!alive(e) || seen.contains(heads_[e])) continue;
      seen.insert(heads_[e]);
      queue.push_back(heads_[e]);
    }
  }
  return seen;
}

Digraph Digraph::delete_edge(EdgeId e) const {
  check_edge(e);
  Digraph d = *this;
  d.alive_.erase(e);
  return d;
}

Digraph Digraph::induced(const IndexSet& x) const {
  check_vertices(x);
  std::vector<std::string> names;
  for (int v : x) names.push_back(vertex_names_[v]);
  std::vector<EdgeSpec> edges;
  for (int e : alive_)
    if (x.contains(tails_[e]) && x.contains(heads_[e]))
      edges.push_back({edge_names_[e], vertex_names_[tails_[e]],
                       vertex_names_[heads_[e]]});
  return Digraph(std::move(names), edges);
}

Digraph Digraph::with_edges(const std::vector<EdgeSpec>& extra) const {
  Digraph d = *this;
  for (const auto& e : extra) {
    VertexId t = vertex_index(e.tail);
    VertexId h = vertex_index(e.head);
    if (t == h) fail(Errc::invalid_digraph, "loop edge '" + e.id + "'");
    if (!d.edge_index_.emplace(e.id, static_cast<EdgeId>(d.edge_names_.size())).second)
      fail(Errc::invalid_digraph, "duplicate edge '" + e.id + "'");
    d.edge_names_.push_back(e.id);
    d.tails_.push_back(t);
    d.heads_.push_back(h);
  }
  IndexSet alive(d.edge_names_.size());
  for (int e : alive_) alive.insert(e);
  for (std::size_t e = edge_slots(); e < d.edge_names_.size(); ++e)
    alive.insert(static_cast<int>(e));
  d.alive_ = std::move(alive);
  d.rebuild_index();
  return d;
}

Path Path::from_edges(const Digraph& d, VertexId start,
                      std::vector<EdgeId> edges) {
  d.check_vertex(start);
  Path p(start, std::move(edges));
  VertexId cur = start;
  for (EdgeId e : p.edges_) {
    d.check_edge(e);
    if (d.tail(e) != cur)
      fail(Errc::inconsistent_linkage,
           "path edge '" + d.edge_name(e) + "' does not continue the path");
    cur = d.head(e);
  }
  auto vs = p.vertices(d);
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
    fail(Errc::inconsistent_linkage, "path repeats a vertex");
  return p;
}

std::vector<VertexId> Path::vertices(const Digraph& d) const {
  std::vector<VertexId> out{start_};
  for (EdgeId e : edges_) out.push_back(d.head(e));
  return out;
}

bool Path::contains_vertex(const Digraph& d, VertexId v) const {
  if (start_ == v) return true;
  for (EdgeId e : edges_)
    if (d.head(e) == v) return true;
  return false;
}

bool is_valid_path(const Digraph& d, const Path& p) {
  if (p.start() < 0 || static_cast<std::size_t>(p.start()) >= d.vertex_count())
    return false;
  VertexId cur = p.start();
  IndexSet seen(d.vertex_count());
  seen.insert(cur);
  for (EdgeId e : p.edges()) {
    if (e < 0 || static_cast<std::size_t>(e) >= d.edge_slots()) return false;
    if (!d.alive(e) || d.tail(e) != cur) return false;
    cur = d.head(e);
    if (seen.contains(cur)) return false;
    seen.insert(cur);
  }
  return true;
}

Path concat(const Digraph& d, const Path& p, const Path& q) {
  // Find the longest terminal segment of p that is an initial segment of q.
  auto pv = p.vertices(d);
  auto qv = q.vertices(d);
  std::size_t overlap = 0;
  for (std::size_t k = std::min(p.length(), q.length()) + 1; k >= 1; --k) {
    bool ok = std::equal(pv.end() - static_cast<std::ptrdiff_t>(k), pv.end(),
                         qv.begin()) &&
              std::equal(p.edges().end() - static_cast<std::ptrdiff_t>(k - 1),
                         p.edges().end(), q.edges().begin());
    if (ok) {
      overlap = k;
      break;
    }
  }
  if (overlap == 0)
    fail(Errc::paths_not_joinable, "concat: end of first path does not start the second");
  // Walk: p followed by the part of q after the overlap.
  std::vector<EdgeId> walk = p.edges();
  walk.insert(walk.end(), q.edges().begin() + static_cast<std::ptrdiff_t>(overlap - 1),
              q.edges().end());
  // Loop erasure.
  std::vector<VertexId> verts{p.start()};
  std::vector<EdgeId> kept;
  for (EdgeId e : walk) {
    VertexId h = d.head(e);
    auto it = std::find(verts.begin(), verts.end(), h);
    if (it != verts.end()) {
      std::size_t keep = static_cast<std::size_t>(it - verts.begin());
      verts.resize(keep + 1);
      kept.resize(keep);
    } else {
      verts.push_back(h);
      kept.push_back(e);
    }
  }
  return Path::from_edges(d, p.start(), std::move(kept));
}

Path segment(const Digraph& d, const Path& p, VertexId u, VertexId v) {
  auto vs = p.vertices(d);
  auto iu = std::find(vs.begin(), vs.end(), u);
  auto iv = std::find(vs.begin(), vs.end(), v);
  if (iu == vs.end() || iv == vs.end())
    fail(Errc::not_on_path, "segment: vertex not on path");
  if (iv < iu) fail(Errc::not_on_path, "segment: vertices out of order");
  auto from = static_cast<std::size_t>(iu - vs.begin());
  auto to = static_cast<std::size_t>(iv - vs.begin());
  return Path::from_edges(
      d, u,
      std::vector<EdgeId>(p.edges().begin() + static_cast<std::ptrdiff_t>(from),
                          p.edges().begin() + static_cast<std::ptrdiff_t>(to)));
}

bool edge_disjoint(std::span<const Path> paths) {
  std::vector<EdgeId> all;
  for (const auto& p : paths) all.insert(all.end(), p.edges().begin(), p.edges().end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

IndexSet edges_of(const Digraph& d, std::span<const Path> paths) {
  IndexSet out = d.no_edges();
  for (const auto& p : paths)
    for (EdgeId e : p.edges()) out.insert(e);
  return out;
}

IndexSet last_edges(const Digraph& d, std::span<const Path> paths) {
  IndexSet out = d.no_edges();
  for (const auto& p : paths)
    if (!p.is_trivial()) out.insert(p.edges().back());
  return out;
}

namespace {
std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string emit_dot(const Digraph& d) {
  std::ostringstream os;
  os << "digraph D {\n";
  for (const auto& v : d.vertex_names()) os << "  " << quoted(v) << ";\n";
  for (int e : d.alive_edges())
    os << "  " << quoted(d.vertex_name(d.tail(e))) << " -> "
       << quoted(d.vertex_name(d.head(e))) << " [label=" << quoted(d.edge_name(e))
       << "];\n";
  os << "}\n";
  return os.str();
}

}  // namespace mrd

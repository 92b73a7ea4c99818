#include "mrd/rooted.hpp"

#include <unordered_set>

namespace mrd {

RootedDigraph::RootedDigraph(Digraph d, Matroid m, std::vector<IndexSet> pi)
    : d_(std::move(d)), m_(std::move(m)), pi_(std::move(pi)) {
  if (pi_.size() != m_.size())
    fail(Errc::invalid_instance, "pi must assign a root set to every element");
  for (std::size_t i = 0; i < pi_.size(); ++i) {
    if (pi_[i].universe() != d_.vertex_count())
      fail(Errc::invalid_instance, "root set of '" + m_.name(static_cast<ElemId>(i)) +
                                       "' is over the wrong vertex universe");
    if (pi_[i].empty())
      fail(Errc::invalid_instance,
           "root set of '" + m_.name(static_cast<ElemId>(i)) + "' is empty");
  }
}

IndexSet RootedDigraph::s_of(const IndexSet& x) const {
  d_.check_vertices(x);
  IndexSet out = m_.empty_set();
  for (std::size_t i = 0; i < pi_.size(); ++i)
    if (pi_[i].intersects(x)) out.insert(static_cast<int>(i));
  return out;
}

IndexSet RootedDigraph::single(VertexId v) const {
  d_.check_vertex(v);
  IndexSet x = d_.no_vertices();
  x.insert(v);
  return x;
}

IndexSet RootedDigraph::s_at(VertexId v) const { return s_of(single(v)); }

IndexSet RootedDigraph::need(const IndexSet& x) const {
  if (x.empty()) fail(Errc::empty_set, "need of the empty set");
  return m_.span(s_of(d_.to_set(x)));
}

IndexSet RootedDigraph::need_at(VertexId v) const { return need(single(v)); }

std::optional<VertexId> RootedDigraph::first_dependent_vertex() const {
  for (std::size_t v = 0; v < d_.vertex_count(); ++v)
    if (!m_.is_independent(s_at(static_cast<VertexId>(v))))
      return static_cast<VertexId>(v);
  return std::nullopt;
}

void RootedDigraph::check_step(const ExtensionStep& step) const {
  m_.check_element(step.elem);
  d_.check_edge(step.edge);
  if (!d_.alive(step.edge) || !pi_[step.elem].contains(d_.tail(step.edge)))
    fail(Errc::edge_not_leaving_root,
         "edge '" + d_.edge_name(step.edge) + "' does not leave the root set of '" +
             m_.name(step.elem) + "'");
  if (!m_.is_independent(s_at(d_.head(step.edge)).with(step.elem)))
    fail(Errc::extension_dependent,
         "S(" + d_.vertex_name(d_.head(step.edge)) + ") + '" + m_.name(step.elem) +
             "' is dependent");
}

bool RootedDigraph::step_defined(const ExtensionStep& step) const {
  try {
    check_step(step);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::edge_not_leaving_root ||
        e.code() == Errc::extension_dependent)
      return false;
    throw;
  }
}

RootedDigraph RootedDigraph::extend(const ExtensionStep& step) const {
  check_step(step);
  auto pi = pi_;
  pi[step.elem].insert(d_.head(step.edge));
  return RootedDigraph(d_.delete_edge(step.edge), m_, std::move(pi));
}

RootedDigraph RootedDigraph::apply_trace(const ExtensionTrace& trace) const {
  RootedDigraph cur = *this;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    try {
      cur = cur.extend(trace[k]);
    } catch (const Error& e) {
      throw Error(e.code(), "trace step " + std::to_string(k) + ": " + e.what());
    }
  }
  return cur;
}

RootedDigraph RootedDigraph::quotient(const IndexSet& x) const {
  QuotientMap map;
  return quotient_with_map(x, map);
}

RootedDigraph RootedDigraph::quotient_with_map(const IndexSet& x,
                                               QuotientMap& map) const {
  d_.check_vertices(x);
  if (x.empty()) fail(Errc::empty_set, "quotient by the empty set");
  Digraph dx = d_.induced(x);
  map.vertex = x.elements();
  map.edge.clear();
  for (const auto& name : dx.edge_names()) map.edge.push_back(d_.edge_index(name));

  IndexSet sx = s_of(x);
  IndexSet in = d_.in_edges(x);
  std::unordered_set<std::string> used;
  for (int i : sx) used.insert(m_.name(i));
  std::vector<std::string> fresh_names;
  for (int e : in) {
    std::string name = "@" + d_.edge_name(e);
    while (used.count(name)) name = "@" + name;
    used.insert(name);
    fresh_names.push_back(name);
  }
  Matroid mq = Matroid::direct_sum(
      {Matroid::restriction(m_, sx), Matroid::free(std::move(fresh_names))});

  std::vector<VertexId> to_q(d_.vertex_count(), -1);
  for (std::size_t k = 0; k < map.vertex.size(); ++k)
    to_q[map.vertex[k]] = static_cast<VertexId>(k);
  std::vector<IndexSet> pi;
  map.elem.clear();
  map.fresh.clear();
  for (int i : sx) {
    IndexSet p = dx.no_vertices();
    for (int v : pi_[i] & x) p.insert(to_q[v]);
    pi.push_back(std::move(p));
    map.elem.push_back(i);
    map.fresh.push_back(-1);
  }
  for (int e : in) {
    IndexSet p = dx.no_vertices();
    p.insert(to_q[d_.head(e)]);
    pi.push_back(std::move(p));
    map.elem.push_back(-1);
    map.fresh.push_back(e);
  }
  return RootedDigraph(std::move(dx), std::move(mq), std::move(pi));
}

IndexSet QuotientMap::to_quotient_vertices(const IndexSet& orig,
                                           std::size_t n) const {
  IndexSet out(n);
  for (std::size_t k = 0; k < vertex.size(); ++k)
    if (orig.contains(vertex[k])) out.insert(static_cast<int>(k));
  return out;
}

}  // namespace mrd

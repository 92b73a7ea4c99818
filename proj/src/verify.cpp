#include "mrd/verify.hpp"

#include <deque>

namespace mrd {

VerifyReport verify_packing(const RootedDigraph& r, const Packing& p) {
  const auto& d = r.digraph();
  const auto& m = r.matroid();
  VerifyReport rep;
  if (p.branchings.size() != m.size()) {
    rep.root_set = false;
    rep.failures.push_back("packing does not have one branching per element");
    return rep;
  }
  IndexSet used = d.no_edges();
  for (std::size_t k = 0; k < p.branchings.size(); ++k) {
    const auto& b = p.branchings[k];
    const std::string& name = m.name(static_cast<ElemId>(k));
    if (b.vertices.universe() != d.vertex_count() ||
        b.edges.universe() != d.edge_slots()) {
      rep.branching_shape = false;
      rep.failures.push_back("branching of '" + name + "' has the wrong universe");
      continue;
    }
    if (!b.edges.is_subset_of(d.alive_edges())) {
      rep.branching_shape = false;
      rep.failures.push_back("branching of '" + name + "' uses an unknown edge");
      continue;
    }
    if (used.intersects(b.edges)) {
      rep.edge_disjoint = false;
      rep.failures.push_back("branching of '" + name + "' shares an edge");
    }
    used |= b.edges;

    std::vector<int> indeg(d.vertex_count(), 0);
    bool shape = true;
    for (int e : b.edges) {
      if (!b.vertices.contains(d.tail(e)) || !b.vertices.contains(d.head(e)))
        shape = false;
      ++indeg[d.head(e)];
    }
    IndexSet roots = d.no_vertices();
    for (int v : b.vertices) {
      if (indeg[v] == 0) roots.insert(v);
      if (indeg[v] > 1) shape = false;
    }
    if (roots != r.pi(static_cast<ElemId>(k))) {
      rep.root_set = false;
      rep.failures.push_back("root set of '" + name + "' differs from pi");
    }
    // Every vertex must be reached from the roots along branching edges.
    IndexSet seen = roots;
    std::deque<VertexId> queue(roots.begin(), roots.end());
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId e : d.out_of(v))
        if (b.edges.contains(e) && !seen.contains(d.head(e))) {
          seen.insert(d.head(e));
          queue.push_back(d.head(e));
        }
    }
    if (seen != b.vertices) shape = false;
    if (!shape) {
      rep.branching_shape = false;
      rep.failures.push_back("'" + name + "' is not a branching");
    }
  }
  if (!rep.ok()) return rep;

  for (std::size_t v = 0; v < d.vertex_count(); ++v) {
    IndexSet sb = m.empty_set();
    for (std::size_t k = 0; k < p.branchings.size(); ++k)
      if (p.branchings[k].vertices.contains(static_cast<int>(v)))
        sb.insert(static_cast<int>(k));
    const std::string& vn = d.vertex_name(static_cast<VertexId>(v));
    if (!m.is_independent(sb)) {
      rep.independence = false;
      rep.failures.push_back("S_B(" + vn + ") is dependent");
      continue;
    }
    if (!r.need_at(static_cast<VertexId>(v)).is_subset_of(m.span(sb))) {
      rep.maximality = false;
      rep.failures.push_back("S_B(" + vn + ") does not span N(" + vn + ")");
    }
  }
  return rep;
}

}  // namespace mrd

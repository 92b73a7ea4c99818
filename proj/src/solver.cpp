#include "mrd/solver.hpp"

#include <algorithm>
#include <tuple>

#include "mrd/verify.hpp"

namespace mrd {

namespace {

bool deficient(const NeedTable& needs, const RootedDigraph& cur, VertexId v,
               const IndexSet* w) {
  const auto& m = cur.matroid();
  IndexSet have = cur.s_at(v);
  IndexSet want = needs.at(v);
  if (w) {
    have &= *w;
    want &= *w;
  }
  return m.rank(have) < m.rank(want);
}

}  // namespace

NeedTable::NeedTable(const RootedDigraph& orig) {
  for (std::size_t v = 0; v < orig.digraph().vertex_count(); ++v) {
    need_.push_back(orig.need_at(static_cast<VertexId>(v)));
    rank_.push_back(orig.matroid().rank(need_.back()));
  }
}

bool is_feasible(const NeedTable& needs, const RootedDigraph& cur,
                 const ExtensionStep& step) {
  RootedDigraph next = cur.extend(step);
  const auto& m = cur.matroid();
  for (std::size_t v = 0; v < cur.digraph().vertex_count(); ++v) {
    auto vid = static_cast<VertexId>(v);
    auto ml = max_linkage(next, next.single(vid));
    if (ml.rank < needs.rank_at(vid)) return false;
    if (!needs.at(vid).is_subset_of(m.span(ml.elements))) return false;
  }
  return true;
}

bool is_feasible(const RootedDigraph& orig, const RootedDigraph& cur,
                 const ExtensionStep& step) {
  return is_feasible(NeedTable(orig), cur, step);
}

std::optional<ExtensionStep> find_feasible(const NeedTable& needs,
                                           const RootedDigraph& cur,
                                           const std::optional<Focus>& focus) {
  const auto& d = cur.digraph();
  const IndexSet* w = focus ? &focus->w : nullptr;
  std::optional<VertexId> target;
  if (focus) {
    if (deficient(needs, cur, focus->vertex, w)) target = focus->vertex;
  } else {
    for (std::size_t v = 0; v < d.vertex_count() && !target; ++v)
      if (deficient(needs, cur, static_cast<VertexId>(v), nullptr))
        target = static_cast<VertexId>(v);
  }
  if (!target) return std::nullopt;

  auto usable = [&](const ExtensionStep& st) {
    if (w && !w->contains(st.elem)) return false;
    if (cur.pi(st.elem).contains(d.head(st.edge))) return false;
    return cur.step_defined(st) && is_feasible(needs, cur, st);
  };

  // Shortest witness paths of a reduced linkage for the deficient vertex.
  Linkage witness = reduced_linkage_for(cur, cur.single(*target));
  std::vector<std::tuple<std::size_t, ElemId, EdgeId>> order;
  for (const auto& [i, p] : witness.paths)
    order.emplace_back(p.length(), i, p.edges().front());
  std::sort(order.begin(), order.end());
  for (const auto& [len, i, e] : order) {
    ExtensionStep st{i, e};
    if (usable(st)) return st;
  }
  for (std::size_t i = 0; i < cur.matroid().size(); ++i)
    for (int e : d.alive_edges()) {
      ExtensionStep st{static_cast<ElemId>(i), e};
      if (!cur.pi(st.elem).contains(d.tail(e))) continue;
      if (usable(st)) return st;
    }
  fail(Errc::internal_defect, "vertex '" + d.vertex_name(*target) +
                                  "' is deficient but no feasible extension exists");
}

std::optional<ExtensionStep> find_feasible(const RootedDigraph& orig,
                                           const RootedDigraph& cur) {
  return find_feasible(NeedTable(orig), cur);
}

void check_solve_preconditions(const RootedDigraph& r) {
  if (auto v = r.first_dependent_vertex())
    fail(Errc::precondition,
         "not independent: S(" + r.digraph().vertex_name(*v) + ") is dependent");
  auto rep = check_linkage_condition(r);
  if (!rep.ok) {
    const auto& cert = rep.witnesses[*rep.failing_vertex].certificate;
    std::string xs;
    for (int v : cert.x) xs += (xs.empty() ? "" : ",") + r.digraph().vertex_name(v);
    fail(Errc::precondition, "linkage condition fails at '" +
                                 r.digraph().vertex_name(*rep.failing_vertex) +
                                 "' (certificate X={" + xs + "})");
  }
}

Packing packing_from_trace(const RootedDigraph& orig, const ExtensionTrace& trace) {
  const auto& d = orig.digraph();
  Packing p;
  for (std::size_t i = 0; i < orig.matroid().size(); ++i)
    p.branchings.push_back({orig.pi(static_cast<ElemId>(i)), d.no_edges()});
  for (const auto& st : trace) {
    orig.matroid().check_element(st.elem);
    d.check_edge(st.edge);
    p.branchings[st.elem].edges.insert(st.edge);
    p.branchings[st.elem].vertices.insert(d.head(st.edge));
  }
  return p;
}

namespace {

void finish(const RootedDigraph& r, SolveResult& res) {
  if (res.trace.size() > r.digraph().edge_count())
    fail(Errc::internal_defect, "trace longer than the number of edges");
  res.packing = packing_from_trace(r, res.trace);
  auto rep = verify_packing(r, res.packing);
  if (!rep.ok())
    fail(Errc::internal_defect,
         "solver produced a packing the verifier rejects: " + rep.failures.front());
}

}  // namespace

SolveResult solve(const RootedDigraph& r) {
  check_solve_preconditions(r);
  NeedTable needs(r);
  SolveResult res{{}, {}, r};
  while (auto st = find_feasible(needs, res.final_state)) {
    res.trace.push_back(*st);
    res.final_state = res.final_state.extend(*st);
    if (res.trace.size() > r.digraph().edge_count())
      fail(Errc::internal_defect, "trace longer than the number of edges");
  }
  finish(r, res);
  return res;
}

SolveResult augment_at(const RootedDigraph& orig, const RootedDigraph& cur,
                       VertexId v, const IndexSet& w) {
  const auto& m = orig.matroid();
  m.check_subset(w);
  orig.digraph().check_vertex(v);
  for (const auto& c : m.components())
    if (c.intersects(w) && !c.is_subset_of(w))
      fail(Errc::precondition, "W is not a union of matroid components");
  NeedTable needs(orig);
  SolveResult res{{}, {}, cur};
  Focus focus{v, w};
  while (auto st = find_feasible(needs, res.final_state, focus)) {
    res.trace.push_back(*st);
    res.final_state = res.final_state.extend(*st);
  }
  res.packing = packing_from_trace(cur, res.trace);
  return res;
}

SolveResult schedule(const RootedDigraph& r,
                     const std::vector<std::pair<VertexId, IndexSet>>& order) {
  check_solve_preconditions(r);
  const auto comps = r.matroid().components();
  for (std::size_t v = 0; v < r.digraph().vertex_count(); ++v)
    for (const auto& c : comps) {
      bool covered = false;
      for (const auto& [u, w] : order)
        if (u == static_cast<VertexId>(v) && c.is_subset_of(w)) covered = true;
      if (!covered)
        fail(Errc::precondition, "schedule does not cover vertex '" +
                                     r.digraph().vertex_name(static_cast<VertexId>(v)) +
                                     "' with every component");
    }
  SolveResult res{{}, {}, r};
  for (const auto& [v, w] : order) {
    auto part = augment_at(r, res.final_state, v, w);
    res.trace.insert(res.trace.end(), part.trace.begin(), part.trace.end());
    res.final_state = std::move(part.final_state);
  }
  finish(r, res);
  return res;
}

}  // namespace mrd

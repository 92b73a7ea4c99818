// Exhaustive reference implementations. Nothing here calls the linkage
// engine or the solver; only the digraph and matroid primitives are shared.

#include "mrd/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

#include "mrd/verify.hpp"

namespace mrd::oracle {

namespace {

using Mask = std::uint64_t;

void guard_fail(const std::string& what) { fail(Errc::guard_exceeded, what); }

void check_size(const RootedDigraph& r, const Guard& g) {
  check_guard(g);
  const auto& d = r.digraph();
  if (d.vertex_count() > g.max_vertices)
    guard_fail("oracle guard: " + std::to_string(d.vertex_count()) +
               " vertices exceed the limit " + std::to_string(g.max_vertices));
  if (d.edge_slots() > g.max_edges)
    guard_fail("oracle guard: " + std::to_string(d.edge_slots()) +
               " edges exceed the limit " + std::to_string(g.max_edges));
  if (r.matroid().size() > g.max_elements)
    guard_fail("oracle guard: " + std::to_string(r.matroid().size()) +
               " elements exceed the limit " + std::to_string(g.max_elements));
}

/// Edge masks of all simple paths starting in `from`, staying inside
/// `within`, avoiding `avoid`, and ending at a vertex of `to`.
std::vector<Mask> path_masks(const Digraph& d, const IndexSet& from,
                             const IndexSet& to, const IndexSet& within,
                             Mask avoid) {
  std::vector<Mask> out;
  IndexSet on_path = d.no_vertices();
  std::function<void(VertexId, Mask)> dfs = [&](VertexId v, Mask used) {
    if (to.contains(v)) out.push_back(used);
    for (EdgeId e : d.out_of(v)) {
      VertexId h = d.head(e);
      if (((avoid >> e) & 1u) || !within.contains(h) || on_path.contains(h)) continue;
      on_path.insert(h);
      dfs(h, used | (Mask{1} << e));
      on_path.erase(h);
    }
  };
  for (int v : from & within) {
    on_path.insert(v);
    dfs(v, 0);
    on_path.erase(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IndexSet elements_meeting(const RootedDigraph& r, const IndexSet& x) {
  IndexSet out = r.matroid().empty_set();
  for (std::size_t i = 0; i < r.matroid().size(); ++i)
    if (r.pi(static_cast<ElemId>(i)).intersects(x)) out.insert(static_cast<int>(i));
  return out;
}

/// Largest independent subset of `pool` admitting edge-disjoint paths.
LinkableResult best_linkable(const Matroid& m, const std::vector<int>& pool,
                             const std::vector<std::vector<Mask>>& paths) {
  LinkableResult best{0, m.empty_set()};
  int cap = m.rank(IndexSet::from(m.size(), pool));
  IndexSet cur = m.empty_set();
  std::function<void(std::size_t, Mask, int)> go = [&](std::size_t k, Mask used,
                                                       int size) {
    if (size > best.rank) {
      best.rank = size;
      best.set = cur;
    }
    if (best.rank == cap || k == pool.size()) return;
    if (size + static_cast<int>(pool.size() - k) <= best.rank) return;
    int i = pool[k];
    IndexSet with = cur.with(i);
    if (m.is_independent(with)) {
      for (Mask p : paths[k]) {
        if (p & used) continue;
        cur = with;
        go(k + 1, used | p, size + 1);
        cur.erase(i);
        if (best.rank == cap) return;
      }
    }
    go(k + 1, used, size);
  };
  go(0, 0, 0);
  return best;
}

LinkableResult linkable_into(const RootedDigraph& r, const IndexSet& targets,
                             const IndexSet& elems, Mask avoid) {
  const auto& d = r.digraph();
  std::vector<int> pool;
  std::vector<std::vector<Mask>> paths;
  for (int i : elems) {
    auto ps = path_masks(d, r.pi(i), targets, d.vertices(), avoid);
    if (ps.empty()) continue;
    pool.push_back(i);
    paths.push_back(std::move(ps));
  }
  return best_linkable(r.matroid(), pool, paths);
}

/// Can every demand get its own path, edge-disjointly?
bool assign_all(const std::vector<std::vector<Mask>>& demands, std::size_t k,
                Mask used) {
  if (k == demands.size()) return true;
  for (Mask p : demands[k])
    if (!(p & used) && assign_all(demands, k + 1, used | p)) return true;
  return false;
}

IndexSet vertex_subset(const Digraph& d, std::uint32_t bits) {
  IndexSet x = d.no_vertices();
  for (std::size_t v = 0; v < d.vertex_count(); ++v)
    if ((bits >> v) & 1u) x.insert(static_cast<int>(v));
  return x;
}

}  // namespace

void check_guard(const Guard& g) {
  if (g.max_vertices > kHardCaps.max_vertices || g.max_edges > kHardCaps.max_edges ||
      g.max_elements > kHardCaps.max_elements ||
      g.max_packing_edges > kHardCaps.max_packing_edges ||
      g.max_packing_elements > kHardCaps.max_packing_elements)
    guard_fail("oracle guard override exceeds the compiled hard caps");
}

LinkableResult brute_force_max_linkable(const RootedDigraph& r,
                                        const IndexSet& targets, const Guard& g) {
  check_size(r, g);
  if (targets.empty()) fail(Errc::empty_set, "oracle: empty target set");
  return linkable_into(r, targets, r.matroid().ground(), 0);
}

bool brute_force_t_good(const RootedDigraph& r, VertexId t, const IndexSet& x,
                        const Guard& g) {
  check_size(r, g);
  const auto& d = r.digraph();
  const auto& m = r.matroid();
  if (!x.contains(t)) fail(Errc::precondition, "oracle: t must lie in X");
  IndexSet tset = d.no_vertices();
  tset.insert(t);
  std::vector<std::vector<Mask>> fixed;
  for (int e : d.in_edges(x)) {
    IndexSet h = d.no_vertices();
    h.insert(d.head(e));
    fixed.push_back(path_masks(d, h, tset, x, 0));
    if (fixed.back().empty()) return false;
  }
  IndexSet sx = elements_meeting(r, x);
  int rk = m.rank(sx);
  std::vector<int> sv = sx.elements();
  std::vector<std::vector<Mask>> own;
  for (int i : sv) own.push_back(path_masks(d, r.pi(i) & x, tset, x, 0));
  // Try every base of S(X).
  std::function<bool(std::size_t, IndexSet&, std::vector<std::vector<Mask>>&)> bases =
      [&](std::size_t k, IndexSet& b, std::vector<std::vector<Mask>>& demands) {
        if (static_cast<int>(b.size()) == rk) return assign_all(demands, 0, 0);
        if (k == sv.size()) return false;
        if (static_cast<int>(b.size() + sv.size() - k) < rk) return false;
        int i = sv[k];
        if (!own[k].empty() && m.is_independent(b.with(i))) {
          b.insert(i);
          demands.push_back(own[k]);
          bool ok = bases(k + 1, b, demands);
          demands.pop_back();
          b.erase(i);
          if (ok) return true;
        }
        return bases(k + 1, b, demands);
      };
  IndexSet b = m.empty_set();
  return bases(0, b, fixed);
}

IndexSet brute_force_largest_t_good(const RootedDigraph& r, VertexId t,
                                    const Guard& g) {
  check_size(r, g);
  const auto& d = r.digraph();
  IndexSet out = d.no_vertices();
  out.insert(t);
  std::uint32_t n = static_cast<std::uint32_t>(d.vertex_count());
  for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
    if (!((bits >> t) & 1u)) continue;
    IndexSet x = vertex_subset(d, bits);
    if (x.is_subset_of(out)) continue;
    if (brute_force_t_good(r, t, x, g)) out |= x;
  }
  if (!brute_force_t_good(r, t, out, g))
    fail(Errc::internal_defect, "oracle: union of t-good sets is not t-good");
  return out;
}

bool brute_force_tight(const RootedDigraph& r, const IndexSet& x, const Guard& g) {
  check_size(r, g);
  if (x.empty()) fail(Errc::empty_set, "oracle: tightness of the empty set");
  const auto& d = r.digraph();
  const auto& m = r.matroid();
  IndexSet need = m.span(elements_meeting(r, d.to_set(x)));
  int rk = m.rank(need);
  for (int e : d.in_edges(x))
    if (linkable_into(r, x, need, Mask{1} << e).rank >= rk) return false;
  return true;
}

bool brute_force_is_dangerous(const RootedDigraph& r, const IndexSet& x, ElemId i,
                              const Guard& g) {
  return r.matroid().span(elements_meeting(r, x)).contains(i) &&
         brute_force_tight(r, x, g);
}

std::optional<IndexSet> brute_force_dangerous(const RootedDigraph& r, ElemId i,
                                              EdgeId e, const Guard& g) {
  check_size(r, g);
  const auto& d = r.digraph();
  std::uint32_t n = static_cast<std::uint32_t>(d.vertex_count());
  for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
    if (((bits >> d.tail(e)) & 1u) || !((bits >> d.head(e)) & 1u)) continue;
    IndexSet x = vertex_subset(d, bits);
    if (brute_force_is_dangerous(r, x, i, g)) return x;
  }
  return std::nullopt;
}

std::optional<Packing> brute_force_packing(const RootedDigraph& r, const Guard& g) {
  check_size(r, g);
  const auto& d = r.digraph();
  const auto& m = r.matroid();
  if (d.edge_count() > g.max_packing_edges)
    guard_fail("oracle guard: packing search limited to " +
               std::to_string(g.max_packing_edges) + " edges");
  if (m.size() > g.max_packing_elements)
    guard_fail("oracle guard: packing search limited to " +
               std::to_string(g.max_packing_elements) + " elements");
  std::vector<int> edges = d.alive_edges().elements();
  Packing p;
  for (std::size_t i = 0; i < m.size(); ++i)
    p.branchings.push_back({r.pi(static_cast<ElemId>(i)), d.no_edges()});
  std::vector<IndexSet> s_at(d.vertex_count(), m.empty_set());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int v : r.pi(static_cast<ElemId>(i))) s_at[v].insert(static_cast<int>(i));

  std::optional<Packing> found;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (found) return;
    if (k == edges.size()) {
      if (verify_packing(r, p).ok()) found = p;
      return;
    }
    go(k + 1);  // edge unused
    EdgeId e = edges[k];
    VertexId h = d.head(e);
    for (std::size_t i = 0; i < m.size() && !found; ++i) {
      auto& b = p.branchings[i];
      if (b.vertices.contains(h)) continue;  // one in-edge per vertex, roots none
      IndexSet grown = s_at[h].with(static_cast<int>(i));
      if (!m.is_independent(grown)) continue;
      IndexSet saved = s_at[h];
      s_at[h] = grown;
      b.vertices.insert(h);
      b.edges.insert(e);
      go(k + 1);
      b.vertices.erase(h);
      b.edges.erase(e);
      s_at[h] = saved;
    }
  };
  go(0);
  return found;
}

}  // namespace mrd::oracle

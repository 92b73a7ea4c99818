#include "mrd/linkage.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace mrd {

namespace {

thread_local const AuditHooks* g_audit = nullptr;

void defect(const std::string& what) { fail(Errc::internal_defect, what); }

}  // namespace

AuditScope::AuditScope(AuditHooks hooks)
    : hooks_(std::move(hooks)), prev_(g_audit) {
  g_audit = &hooks_;
}

AuditScope::~AuditScope() { g_audit = prev_; }

IndexSet Linkage::elements(std::size_t ground) const {
  IndexSet out(ground);
  for (const auto& [i, p] : paths) out.insert(i);
  return out;
}

std::vector<Path> Linkage::path_list() const {
  std::vector<Path> out;
  for (const auto& [i, p] : paths) out.push_back(p);
  return out;
}

void check_linkage(const RootedDigraph& r, const IndexSet& targets,
                   const Linkage& lk) {
  const auto& d = r.digraph();
  const auto& m = r.matroid();
  d.check_vertices(targets);
  for (const auto& [i, p] : lk.paths) {
    m.check_element(i);
    if (!is_valid_path(d, p))
      fail(Errc::inconsistent_linkage, "path of '" + m.name(i) + "' is not a path of D");
    if (!r.pi(i).contains(p.start()))
      fail(Errc::inconsistent_linkage,
           "path of '" + m.name(i) + "' does not start in its root set");
    if (!targets.contains(p.end(d)))
      fail(Errc::inconsistent_linkage,
           "path of '" + m.name(i) + "' does not end in the target set");
  }
  auto list = lk.path_list();
  if (!edge_disjoint(list))
    fail(Errc::inconsistent_linkage, "linkage paths share an edge");
  if (!m.is_independent(lk.elements(m.size())))
    fail(Errc::inconsistent_linkage, "linkage index set is dependent");
}

ComplementarityReport check_complementarity(const RootedDigraph& r,
                                            const Linkage& lk,
                                            const IndexSet& x) {
  const auto& d = r.digraph();
  const auto& m = r.matroid();
  d.check_vertices(x);
  for (const auto& [i, p] : lk.paths)
    if (!x.contains(p.end(d)))
      fail(Errc::precondition, "complementarity: path of '" + m.name(i) +
                                   "' does not end in X");
  IndexSet sx = r.s_of(x);
  IndexSet in = d.in_edges(x);
  IndexSet elems = lk.elements(m.size());
  IndexSet inner = elems & sx;

  ComplementarityReport rep;
  rep.conditions[0] = m.rank(inner) == m.rank(sx) && m.is_independent(inner);
  rep.conditions[1] = true;
  rep.conditions[2] = true;
  IndexSet outer_edges = d.no_edges();
  IndexSet entries = d.no_edges();
  for (const auto& [i, p] : lk.paths) {
    if (inner.contains(i)) {
      for (VertexId v : p.vertices(d))
        if (!x.contains(v)) rep.conditions[1] = false;
      continue;
    }
    int crossings = 0;
    bool first = true;
    for (EdgeId e : p.edges()) {
      outer_edges.insert(e);
      if (in.contains(e)) {
        ++crossings;
        if (first) entries.insert(e);
        first = false;
      }
    }
    if (crossings != 1) rep.conditions[2] = false;
  }
  rep.conditions[3] = in.is_subset_of(outer_edges);
  rep.alternate = entries == in;
  bool tail_form = rep.conditions[1] && rep.conditions[2] && rep.conditions[3];
  if (tail_form != rep.alternate)
    defect("complementarity: alternate form disagrees with conditions 2-4");
  return rep;
}

namespace {

enum class ArcKind { d_edge, su, uw, wv, injected };

struct Aux {
  int n = 0;  // vertices of D occupy nodes 0..n-1
  int s = 0;
  std::vector<int> u_node, w_node;
  std::vector<int> tail, head;
  std::vector<ArcKind> kind;
  std::vector<EdgeId> d_edge;
  std::vector<ElemId> elem;  // w-element for su/uw/wv/injected arcs
  std::vector<std::vector<int>> out, in;
  std::vector<int> su_arc, uw_arc;
  std::vector<std::vector<int>> wv_arc;  // [elem][vertex]
  std::vector<int> d_arc;                // D edge id -> arc

  int add_node() {
    out.emplace_back();
    in.emplace_back();
    return static_cast<int>(out.size()) - 1;
  }
  int add_arc(int a, int b, ArcKind k, EdgeId de, ElemId el) {
    int id = static_cast<int>(tail.size());
    tail.push_back(a);
    head.push_back(b);
    kind.push_back(k);
    d_edge.push_back(de);
    elem.push_back(el);
    out[a].push_back(id);
    in[b].push_back(id);
    return id;
  }
};

class Engine {
 public:
  Engine(const RootedDigraph& r, const IndexSet& targets, const Linkage& lk,
         const EngineOptions& opt)
      : r_(r), d_(r.digraph()), m_(r.matroid()), targets_(targets), lk_(lk),
        opt_(opt) {
    if (targets.empty()) fail(Errc::empty_set, "linkage target set is empty");
    check_linkage(r, targets, lk);
    allowed_ = m_.ground();
    elems_ = lk.elements(m_.size());
    build();
  }

  Augmentation run() {
    Augmentation out;
    std::vector<int> first_out_round(m_.size(), -1);
    IndexSet f_seen = m_.empty_set();
    for (int round = 0;; ++round) {
      if (round > static_cast<int>(m_.size()) + 1)
        defect("augmentation did not terminate within |S| rounds");
      auto found = search();
      if (found) {
        out.augmented = true;
        out.linkage = augment(*found);
        post_check(out.linkage);
        if (g_audit && g_audit->on_augment)
          g_audit->on_augment(r_, targets_, lk_, out.linkage);
        return out;
      }
      IndexSet u = d_.no_vertices();
      for (int v = 0; v < aux_.n; ++v)
        if (!reached_[v]) u.insert(v);
      IndexSet su = r_.s_of(u) & allowed_;
      IndexSet inner = elems_ & su;
      IndexSet outer = elems_ - inner;
      IndexSet f = su - m_.span(inner);
      RoundInfo info{u, f, {}};
      if (f.empty()) {
        if (opt_.record_rounds) out.rounds.push_back(info);
        out.certificate = certificate(u);
        if (g_audit && g_audit->on_certificate)
          g_audit->on_certificate(r_, targets_, lk_, *out.certificate);
        return out;
      }
      if (f.intersects(f_seen)) defect("replacement sets are not disjoint");
      f_seen |= f;
      for (int j : outer)
        if (first_out_round[j] < 0) first_out_round[j] = round;
      for (int i : f) {
        if (!m_.span(elems_).contains(i)) defect("replacement element outside span(I)");
        IndexSet c = m_.fundamental_circuit(i, elems_) & outer;
        int best = -1;
        for (int j : c)
          if (best < 0 || std::pair(first_out_round[j], j) <
                              std::pair(first_out_round[best], best))
            best = j;
        if (best < 0) defect("fundamental circuit misses the outer elements");
        aux_.add_arc(aux_.u_node[best], aux_.w_node[i], ArcKind::injected, -1, i);
        info.injected.emplace_back(best, i);
      }
      if (opt_.record_rounds) out.rounds.push_back(std::move(info));
    }
  }

 private:
  struct Step {
    int arc;
    bool forward;
  };

  void build() {
    aux_.n = static_cast<int>(d_.vertex_count());
    for (int v = 0; v < aux_.n; ++v) aux_.add_node();
    aux_.d_arc.assign(d_.edge_slots(), -1);
    for (int e : d_.alive_edges())
      aux_.d_arc[e] = aux_.add_arc(d_.tail(e), d_.head(e), ArcKind::d_edge, e, -1);
    aux_.s = aux_.add_node();
    std::size_t k = m_.size();
    aux_.u_node.assign(k, -1);
    aux_.w_node.assign(k, -1);
    aux_.su_arc.assign(k, -1);
    aux_.uw_arc.assign(k, -1);
    aux_.wv_arc.assign(k, std::vector<int>(d_.vertex_count(), -1));
    IndexSet star = elems_ | (allowed_ - m_.span(elems_));
    for (int i : allowed_) {
      aux_.w_node[i] = aux_.add_node();
      if (star.contains(i)) aux_.u_node[i] = aux_.add_node();
    }
    for (int i : allowed_) {
      if (star.contains(i)) {
        aux_.su_arc[i] = aux_.add_arc(aux_.s, aux_.u_node[i], ArcKind::su, -1, i);
        aux_.uw_arc[i] =
            aux_.add_arc(aux_.u_node[i], aux_.w_node[i], ArcKind::uw, -1, i);
      }
      for (int v : r_.pi(i))
        aux_.wv_arc[i][v] = aux_.add_arc(aux_.w_node[i], v, ArcKind::wv, -1, i);
    }
    flow_.assign(aux_.tail.size(), 0);
    owner_.assign(aux_.tail.size(), -1);
    for (const auto& [i, p] : lk_.paths) {
      std::vector<int> arcs{aux_.su_arc[i], aux_.uw_arc[i], aux_.wv_arc[i][p.start()]};
      for (EdgeId e : p.edges()) arcs.push_back(aux_.d_arc[e]);
      for (int a : arcs) {
        flow_[a] = 1;
        owner_[a] = i;
      }
    }
  }

  bool is_target(int node) const { return node < aux_.n && targets_.contains(node); }

  /// BFS in the residual digraph; returns the s -> T path if one exists and
  /// leaves reached_ describing the reachable nodes.
  std::optional<std::vector<Step>> search() {
    std::size_t arcs = aux_.tail.size();
    flow_.resize(arcs, 0);
    owner_.resize(arcs, -1);
    std::size_t nodes = aux_.out.size();
    reached_.assign(nodes, 0);
    std::vector<Step> parent(nodes, Step{-1, true});
    std::deque<int> queue{aux_.s};
    reached_[aux_.s] = 1;
    std::vector<Step> cand;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      cand.clear();
      for (int a : aux_.out[x])
        if (!flow_[a]) cand.push_back({a, true});
      for (int a : aux_.in[x])
        if (flow_[a]) cand.push_back({a, false});
      std::sort(cand.begin(), cand.end(),
                [](const Step& a, const Step& b) { return a.arc < b.arc; });
      for (const auto& st : cand) {
        int y = st.forward ? aux_.head[st.arc] : aux_.tail[st.arc];
        if (reached_[y]) continue;
        reached_[y] = 1;
        parent[y] = st;
        if (is_target(y)) {
          std::vector<Step> path;
          for (int z = y; z != aux_.s;) {
            const Step& p = parent[z];
            path.push_back(p);
            z = p.forward ? aux_.tail[p.arc] : aux_.head[p.arc];
          }
          std::reverse(path.begin(), path.end());
          return path;
        }
        queue.push_back(y);
      }
    }
    return std::nullopt;
  }

  Linkage augment(const std::vector<Step>& path) {
    std::set<ElemId> touched;
    for (const auto& st : path)
      if (!st.forward) touched.insert(owner_[st.arc]);
    Linkage next;
    for (const auto& [i, p] : lk_.paths)
      if (!touched.count(i)) next.paths.emplace(i, p);

    std::vector<char> pool(aux_.tail.size(), 0);
    for (std::size_t a = 0; a < pool.size(); ++a)
      if (flow_[a] && touched.count(owner_[a])) pool[a] = 1;
    for (const auto& st : path) pool[st.arc] = st.forward ? 1 : 0;

    std::vector<int> absorb(aux_.out.size(), 0);
    for (std::size_t a = 0; a < pool.size(); ++a)
      if (pool[a]) {
        ++absorb[aux_.head[a]];
        --absorb[aux_.tail[a]];
      }

    std::size_t built = 0;
    while (true) {
      int start = -1;
      for (int a : aux_.out[aux_.s])
        if (pool[a] && (start < 0 || a < start)) start = a;
      if (start < 0) break;
      std::vector<int> walk;
      int x = aux_.s;
      int a = start;
      while (true) {
        pool[a] = 0;
        walk.push_back(a);
        x = aux_.head[a];
        if (is_target(x) && absorb[x] > 0) {
          --absorb[x];
          break;
        }
        a = -1;
        for (int b : aux_.out[x])
          if (pool[b] && (a < 0 || b < a)) a = b;
        if (a < 0) defect("path decomposition got stuck");
      }
      if (walk.size() < 3 || aux_.kind[walk[2]] != ArcKind::wv)
        defect("decomposed path does not pass through a root edge");
      ElemId label = aux_.elem[walk[2]];
      VertexId first = aux_.head[walk[2]];
      // Loop erasure of the D part.
      std::vector<VertexId> verts{first};
      std::vector<EdgeId> kept;
      for (std::size_t k = 3; k < walk.size(); ++k) {
        EdgeId e = aux_.d_edge[walk[k]];
        if (e < 0) defect("decomposed path re-enters the auxiliary part");
        VertexId h = d_.head(e);
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
      if (!next.paths.emplace(label, Path::from_edges(d_, first, std::move(kept))).second)
        defect("two decomposed paths carry the same element");
      ++built;
    }
    if (built != touched.size() + 1) defect("path decomposition has the wrong size");
    return next;
  }

  void post_check(const Linkage& next) {
    check_linkage(r_, targets_, next);
    IndexSet after = next.elements(m_.size());
    if (after.size() != elems_.size() + 1) defect("augmentation changed |I| wrongly");
    if (!elems_.is_subset_of(m_.span(after)))
      defect("augmentation does not enlarge the span");
    if (!after.is_subset_of(allowed_)) defect("augmentation used a disallowed element");
    if (targets_.size() == 1) {
      auto before_list = lk_.path_list();
      auto after_list = next.path_list();
      IndexSet lb = last_edges(d_, before_list);
      IndexSet la = last_edges(d_, after_list);
      bool shrink = la.is_subset_of(lb);
      bool grow = lb.is_subset_of(la) && (la - lb).size() == 1;
      if (!shrink && !grow) defect("last-edge exchange property violated");
    }
  }

  TGoodCertificate certificate(const IndexSet& x) {
    auto rep = check_complementarity(r_, lk_, x);
    if (!rep.all()) defect("terminal set fails the complementarity conditions");
    if (!targets_.is_subset_of(x)) defect("terminal set misses a target");
    TGoodCertificate c;
    c.x = x;
    c.conditions = rep.conditions;
    IndexSet sx = r_.s_of(x);
    c.inner_base = elems_ & sx;
    IndexSet in = d_.in_edges(x);
    for (const auto& [i, p] : lk_.paths)
      if (c.inner_base.contains(i)) c.paths.emplace_back(i, p);
    for (const auto& [i, p] : lk_.paths) {
      if (c.inner_base.contains(i)) continue;
      for (EdgeId e : p.edges())
        if (in.contains(e)) {
          c.entry_edges.emplace_back(i, e);
          c.paths.emplace_back(i, segment(d_, p, d_.head(e), p.end(d_)));
          break;
        }
    }
    return c;
  }

  const RootedDigraph& r_;
  const Digraph& d_;
  const Matroid& m_;
  IndexSet targets_;
  const Linkage& lk_;
  EngineOptions opt_;
  IndexSet allowed_;
  IndexSet elems_;
  Aux aux_;
  std::vector<char> flow_;
  std::vector<ElemId> owner_;
  std::vector<char> reached_;
};

}  // namespace

Augmentation augment_once(const RootedDigraph& r, const IndexSet& targets,
                          const Linkage& lk, const EngineOptions& opt) {
  Engine eng(r, targets, lk, opt);
  return eng.run();
}

MaxLinkage max_linkage_from(const RootedDigraph& r, const IndexSet& targets,
                            const Linkage& start, const EngineOptions& opt) {
  MaxLinkage out;
  Linkage cur = start;
  for (std::size_t guard = 0;; ++guard) {
    if (guard > r.matroid().size() + 1) defect("max_linkage did not terminate");
    auto step = augment_once(r, targets, cur, opt);
    if (opt.record_rounds)
      out.rounds.insert(out.rounds.end(), step.rounds.begin(), step.rounds.end());
    if (step.augmented) {
      cur = std::move(step.linkage);
      continue;
    }
    out.linkage = std::move(cur);
    out.elements = out.linkage.elements(r.matroid().size());
    out.rank = static_cast<int>(out.linkage.size());
    out.certificate = std::move(*step.certificate);
    return out;
  }
}

MaxLinkage max_linkage(const RootedDigraph& r, const IndexSet& targets,
                       const EngineOptions& opt) {
  return max_linkage_from(r, targets, Linkage{}, opt);
}

MaxLinkage max_linkage_free(const RootedDigraph& r, const IndexSet& targets,
                            const Linkage& start) {
  const auto& m = r.matroid();
  IndexSet base = start.elements(m.size());
  IndexSet allowed = base | (m.ground() - m.span(base));
  std::vector<ElemId> back;
  std::vector<ElemId> to_free(m.size(), -1);
  std::vector<std::string> names;
  std::vector<IndexSet> pi;
  for (int i : allowed) {
    to_free[i] = static_cast<ElemId>(back.size());
    back.push_back(i);
    names.push_back(m.name(i));
    pi.push_back(r.pi(i));
  }
  RootedDigraph free(r.digraph(), Matroid::free(std::move(names)), std::move(pi));
  Linkage mapped;
  for (const auto& [i, p] : start.paths) mapped.paths.emplace(to_free[i], p);
  auto ml = max_linkage_from(free, targets, mapped);
  MaxLinkage out;
  for (const auto& [i, p] : ml.linkage.paths) out.linkage.paths.emplace(back[i], p);
  out.elements = out.linkage.elements(m.size());
  out.rank = m.rank(out.elements);
  out.certificate = ml.certificate;
  out.certificate.inner_base = m.empty_set();
  for (int i : ml.certificate.inner_base) out.certificate.inner_base.insert(back[i]);
  for (auto& [i, e] : out.certificate.entry_edges) i = back[i];
  for (auto& [i, p] : out.certificate.paths) i = back[i];
  return out;
}

LinkageConditionReport check_linkage_condition(const RootedDigraph& r) {
  LinkageConditionReport rep;
  for (std::size_t v = 0; v < r.digraph().vertex_count(); ++v) {
    auto vid = static_cast<VertexId>(v);
    auto ml = max_linkage(r, r.single(vid));
    bool ok = ml.rank == r.matroid().rank(r.need_at(vid));
    if (!ok && rep.ok) {
      rep.ok = false;
      rep.failing_vertex = vid;
    }
    rep.witnesses.push_back(std::move(ml));
  }
  return rep;
}

Linkage make_strict(const RootedDigraph& r, const IndexSet& targets,
                    const Linkage& lk) {
  const auto& d = r.digraph();
  Linkage out;
  for (const auto& [i, p] : lk.paths) {
    auto vs = p.vertices(d);
    std::size_t from = 0;
    for (std::size_t k = 0; k < vs.size(); ++k)
      if (r.pi(i).contains(vs[k])) from = k;
    std::size_t to = from;
    while (!targets.contains(vs[to])) ++to;
    out.paths.emplace(i, segment(d, p, vs[from], vs[to]));
  }
  return out;
}

Linkage linkage_for(const RootedDigraph& r, const IndexSet& z) {
  if (z.empty()) fail(Errc::empty_set, "linkage for the empty set");
  Linkage start;
  for (int b : r.matroid().base_of(r.s_of(z)))
    start.paths.emplace(b, Path::trivial((r.pi(b) & z).first()));
  auto ml = max_linkage_from(r, z, start);
  return make_strict(r, z, ml.linkage);
}

Linkage reduced_linkage_for(const RootedDigraph& r, const IndexSet& z) {
  Linkage full = linkage_for(r, z);
  Linkage out;
  for (auto& [i, p] : full.paths)
    if (!p.is_trivial()) out.paths.emplace(i, p);
  return out;
}

bool is_target_good(const RootedDigraph& r, const IndexSet& targets,
                    const IndexSet& x) {
  r.digraph().check_vertices(x);
  if (targets.empty() || !targets.is_subset_of(x))
    fail(Errc::precondition, "t-good: target must lie in X");
  QuotientMap map;
  RootedDigraph q = r.quotient_with_map(x, map);
  IndexSet tq = map.to_quotient_vertices(targets, q.digraph().vertex_count());
  int want = r.matroid().rank(r.s_of(x)) +
             static_cast<int>(r.digraph().in_edges(x).size());
  return max_linkage(q, tq).rank == want;
}

bool is_t_good(const RootedDigraph& r, VertexId t, const IndexSet& x) {
  return is_target_good(r, r.single(t), x);
}

IndexSet largest_t_good(const RootedDigraph& r, VertexId t) {
  const auto& d = r.digraph();
  IndexSet tset = r.single(t);
  auto base = max_linkage(r, tset);
  IndexSet out = tset;
  std::unordered_set<std::string> names(d.edge_names().begin(), d.edge_names().end());
  for (std::size_t v = 0; v < d.vertex_count(); ++v) {
    if (static_cast<VertexId>(v) == t) continue;
    // v lies in some minimum cut iff opt+1 extra v->t edges do not raise
    // the optimum.
    std::vector<EdgeSpec> extra;
    for (int k = 0; k <= base.rank; ++k) {
      std::string name = "#" + std::to_string(k);
      while (names.count(name)) name = "#" + name;
      extra.push_back({name, d.vertex_name(static_cast<VertexId>(v)), d.vertex_name(t)});
    }
    RootedDigraph widened(d.with_edges(extra), r.matroid(), r.pi());
    if (max_linkage_from(widened, tset, base.linkage).rank == base.rank)
      out.insert(static_cast<int>(v));
  }
  return out;
}

bool is_tight(const RootedDigraph& r, const IndexSet& x) {
  if (x.empty()) fail(Errc::empty_set, "tightness of the empty set");
  const auto& d = r.digraph();
  int want = r.matroid().rank(r.need(x));
  for (int e : d.in_edges(x)) {
    RootedDigraph cut(d.delete_edge(e), r.matroid(), r.pi());
    if (max_linkage(cut, x).rank >= want) return false;
  }
  return true;
}

bool is_dangerous(const RootedDigraph& r, const IndexSet& x, ElemId i) {
  r.matroid().check_element(i);
  return r.matroid().span(r.s_of(x)).contains(i) && is_tight(r, x);
}

std::optional<IndexSet> find_dangerous_for(const RootedDigraph& r,
                                           const ExtensionStep& step) {
  RootedDigraph r1 = r.extend(step);
  const auto& m = r.matroid();
  for (std::size_t v = 0; v < r.digraph().vertex_count(); ++v) {
    auto vid = static_cast<VertexId>(v);
    if (max_linkage(r1, r1.single(vid)).rank >= m.rank(r.need_at(vid))) continue;
    IndexSet x = largest_t_good(r1, vid);
    if (!r.digraph().in_edges(x).contains(step.edge))
      defect("extracted set is not entered by the extension edge");
    if (!is_dangerous(r, x, step.elem)) defect("extracted set is not dangerous");
    return x;
  }
  return std::nullopt;
}

RootedDigraph checked_quotient(const RootedDigraph& r, const IndexSet& x,
                               QuotientMap* map) {
  if (!is_tight(r, x)) fail(Errc::precondition, "quotient by a set that is not tight");
  QuotientMap local;
  return r.quotient_with_map(x, map ? *map : local);
}

}  // namespace mrd

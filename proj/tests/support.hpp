#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mrd/fixtures.hpp"
#include "mrd/oracle.hpp"

namespace mrd::testing {

inline RootedDigraph make(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges,
                          Matroid m, const std::vector<std::vector<std::string>>& roots) {
  Digraph d(std::move(vertices), edges);
  std::vector<IndexSet> pi;
  for (const auto& r : roots) pi.push_back(d.vertex_set_of(r));
  return RootedDigraph(std::move(d), std::move(m), std::move(pi));
}

// a -e1-> b, Free{x}, pi(x) = {a}
inline RootedDigraph t1() {
  return make({"a", "b"}, {{"e1", "a", "b"}}, Matroid::free({"x"}), {{"a"}});
}
// a -e1-> c <-e2- b, Free{x,y}, pi(x) = {a}, pi(y) = {b}
inline RootedDigraph t2() {
  return make({"a", "b", "c"}, {{"e1", "a", "c"}, {"e2", "b", "c"}}, Matroid::free({"x", "y"}),
              {{"a"}, {"b"}});
}
// a -e1-> b, Free{x,y}, both rooted at a
inline RootedDigraph t3() {
  return make({"a", "b"}, {{"e1", "a", "b"}}, Matroid::free({"x", "y"}), {{"a"}, {"a"}});
}
// a -e1-> b, Free{x,y}, pi(x) = {a}, pi(y) = {a,b}
inline RootedDigraph t4() {
  return make({"a", "b"}, {{"e1", "a", "b"}}, Matroid::free({"x", "y"}), {{"a"}, {"a", "b"}});
}

inline IndexSet vset(const RootedDigraph& r, const std::vector<std::string>& names) {
  return r.digraph().vertex_set_of(names);
}

/// Nonempty subsets of an n-element universe as IndexSets, in bitmask order.
inline std::vector<IndexSet> nonempty_subsets(std::size_t n) {
  std::vector<IndexSet> out;
  for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
    IndexSet x(n);
    for (std::size_t k = 0; k < n; ++k)
      if ((bits >> k) & 1u) x.insert(static_cast<int>(k));
    out.push_back(std::move(x));
  }
  return out;
}

/// Every tiny instance used for exhaustive engine/oracle comparison:
///  - three vertices, any subset of the six ordered pairs, two elements
///    under Free or U(1,2), each rooted at any nonempty vertex set;
///  - two vertices with parallel edges and three elements under four
///    matroids, each rooted at any nonempty vertex set.
inline void for_each_tiny(const std::function<void(const RootedDigraph&)>& visit) {
  {
    std::vector<std::string> vs{"a", "b", "c"};
    std::vector<std::pair<std::string, std::string>> pairs{
        {"a", "b"}, {"b", "a"}, {"a", "c"}, {"c", "a"}, {"b", "c"}, {"c", "b"}};
    std::vector<Matroid> ms{Matroid::free({"x", "y"}), Matroid::uniform({"x", "y"}, 1)};
    auto roots = nonempty_subsets(3);
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
      std::vector<EdgeSpec> edges;
      for (std::size_t k = 0; k < pairs.size(); ++k)
        if ((mask >> k) & 1u)
          edges.push_back({pairs[k].first + pairs[k].second, pairs[k].first, pairs[k].second});
      Digraph d(vs, edges);
      for (const auto& m : ms)
        for (const auto& px : roots)
          for (const auto& py : roots) visit(RootedDigraph(d, m, {px, py}));
    }
  }
  {
    std::vector<std::string> vs{"a", "b"};
    std::vector<std::string> names{"x", "y", "z"};
    std::vector<Matroid> ms{Matroid::free(names), Matroid::uniform(names, 1),
                            Matroid::uniform(names, 2),
                            Matroid::partition(names, {{"x", "y"}, {"z"}}, {1, 1})};
    auto roots = nonempty_subsets(2);
    for (int forward = 0; forward <= 2; ++forward)
      for (int backward = 0; backward <= 1; ++backward) {
        std::vector<EdgeSpec> edges;
        for (int k = 0; k < forward; ++k) edges.push_back({"f" + std::to_string(k), "a", "b"});
        for (int k = 0; k < backward; ++k) edges.push_back({"g" + std::to_string(k), "b", "a"});
        Digraph d(vs, edges);
        for (const auto& m : ms)
          for (const auto& p0 : roots)
            for (const auto& p1 : roots)
              for (const auto& p2 : roots) visit(RootedDigraph(d, m, {p0, p1, p2}));
      }
  }
}

inline bool satisfies_preconditions(const RootedDigraph& r) {
  return r.check_independent() && check_linkage_condition(r).ok;
}

/// Defined (i,e) steps in element order, then edge order.
inline std::vector<ExtensionStep> defined_steps(const RootedDigraph& r) {
  std::vector<ExtensionStep> out;
  for (std::size_t i = 0; i < r.matroid().size(); ++i)
    for (int e : r.digraph().alive_edges()) {
      ExtensionStep s{static_cast<ElemId>(i), e};
      if (r.step_defined(s)) out.push_back(s);
    }
  return out;
}

/// Checks every certificate and augmentation the engine produces on this
/// thread while alive. Nested engine calls made by the checks themselves are
/// not audited.
class CertificateAudit {
 public:
  CertificateAudit()
      : scope_(AuditHooks{
            [this](const RootedDigraph& r, const IndexSet& t, const Linkage& before,
                   const Linkage& after) { on_augment(r, t, before, after); },
            [this](const RootedDigraph& r, const IndexSet& t, const Linkage& lk,
                   const TGoodCertificate& c) { on_certificate(r, t, lk, c); }}) {}

  long certificates = 0;
  long augmentations = 0;
  std::vector<std::string> failures;

 private:
  void on_augment(const RootedDigraph& r, const IndexSet& t, const Linkage& before,
                  const Linkage& after) {
    if (busy_) return;
    busy_ = true;
    ++augmentations;
    std::size_t n = r.matroid().size();
    IndexSet i = before.elements(n), j = after.elements(n);
    if ((j - i).size() != (i - j).size() + 1) failures.push_back("exchange count");
    const auto& m = r.matroid();
    if (!(m.span(i).is_subset_of(m.span(j))) || m.rank(j) != m.rank(i) + 1)
      failures.push_back("span did not grow");
    try {
      check_linkage(r, t, after);
    } catch (const Error& e) {
      failures.push_back(std::string("augmented linkage invalid: ") + e.what());
    }
    busy_ = false;
  }

  void on_certificate(const RootedDigraph& r, const IndexSet& t, const Linkage& lk,
                      const TGoodCertificate& c) {
    if (busy_) return;
    busy_ = true;
    ++certificates;
    try {
      if (!check_complementarity(r, lk, c.x).all()) failures.push_back("complementarity");
      if (!is_target_good(r, t, c.x)) failures.push_back("certificate set not good");
      if (t.size() == 1) {
        if (!is_t_good(r, t.first(), c.x)) failures.push_back("not t-good");
        if (small_enough(r) && !oracle::brute_force_t_good(r, t.first(), c.x))
          failures.push_back("oracle rejects t-good certificate");
      }
    } catch (const Error& e) {
      failures.push_back(std::string("certificate check threw: ") + e.what());
    }
    busy_ = false;
  }

  static bool small_enough(const RootedDigraph& r) {
    oracle::Guard g;
    return r.digraph().vertex_count() <= g.max_vertices &&
           r.digraph().edge_slots() <= g.max_edges && r.matroid().size() <= g.max_elements;
  }

  bool busy_ = false;
  AuditScope scope_;
};

}  // namespace mrd::testing

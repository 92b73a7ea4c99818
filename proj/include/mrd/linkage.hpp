#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "mrd/rooted.hpp"

namespace mrd {

/// Edge-disjoint paths, one per element of an independent set I, each from
/// pi(i) to a target set.
struct Linkage {
  std::map<ElemId, Path> paths;

  std::size_t size() const { return paths.size(); }
  IndexSet elements(std::size_t ground) const;
  std::vector<Path> path_list() const;
  friend bool operator==(const Linkage&, const Linkage&) = default;
};

/// Throws inconsistent_linkage unless lk is an (I, T)-linkage in r with I
/// independent.
void check_linkage(const RootedDigraph& r, const IndexSet& targets,
                   const Linkage& lk);

struct ComplementarityReport {
  std::array<bool, 4> conditions{};
  bool alternate = false;
  bool all() const {
    return conditions[0] && conditions[1] && conditions[2] && conditions[3];
  }
};

/// Four conditions evaluated independently, plus the single-condition
/// replacement of 2-4. Path ends must lie in X.
ComplementarityReport check_complementarity(const RootedDigraph& r,
                                            const Linkage& lk,
                                            const IndexSet& x);

struct TGoodCertificate {
  IndexSet x;
  IndexSet inner_base;  // I cap S(X)
  std::array<bool, 4> conditions{};
  /// First edge entering X of each outer path.
  std::vector<std::pair<ElemId, EdgeId>> entry_edges;
  /// Inner paths, then the tails P_i[head(e_i), end] of the outer ones.
  std::vector<std::pair<ElemId, Path>> paths;
  friend bool operator==(const TGoodCertificate&, const TGoodCertificate&) = default;
};

struct RoundInfo {
  IndexSet unreachable;
  IndexSet f;
  std::vector<std::pair<ElemId, ElemId>> injected;  // (s(i), i)
};

struct Augmentation {
  bool augmented = false;
  Linkage linkage;
  std::optional<TGoodCertificate> certificate;
  std::vector<RoundInfo> rounds;
};

struct EngineOptions {
  bool record_rounds = false;
};

/// One augmentation attempt: either a linkage for a larger span or the dual
/// certificate X satisfying the complementarity conditions with lk.
Augmentation augment_once(const RootedDigraph& r, const IndexSet& targets,
                          const Linkage& lk, const EngineOptions& opt = {});

struct MaxLinkage {
  Linkage linkage;
  IndexSet elements;
  int rank = 0;
  TGoodCertificate certificate;
  std::vector<RoundInfo> rounds;
};

MaxLinkage max_linkage(const RootedDigraph& r, const IndexSet& targets,
                       const EngineOptions& opt = {});
MaxLinkage max_linkage_from(const RootedDigraph& r, const IndexSet& targets,
                            const Linkage& start, const EngineOptions& opt = {});
/// Maximal linkable superset of the elements of `start` under the free
/// matroid on I + (S - span(I)).
MaxLinkage max_linkage_free(const RootedDigraph& r, const IndexSet& targets,
                            const Linkage& start);

struct LinkageConditionReport {
  bool ok = true;
  std::optional<VertexId> failing_vertex;
  std::vector<MaxLinkage> witnesses;  // one per vertex
};
LinkageConditionReport check_linkage_condition(const RootedDigraph& r);

/// Strict linkage for Z whose elements span N(Z) when the linkage condition
/// holds at Z: a base of S(Z) on trivial paths, then augmented.
Linkage linkage_for(const RootedDigraph& r, const IndexSet& z);
/// linkage_for without the trivial paths.
Linkage reduced_linkage_for(const RootedDigraph& r, const IndexSet& z);
/// Trim each path to its last pi(i) vertex and first target vertex.
Linkage make_strict(const RootedDigraph& r, const IndexSet& targets,
                    const Linkage& lk);

bool is_t_good(const RootedDigraph& r, VertexId t, const IndexSet& x);
/// Same notion for a target set T inside X.
bool is_target_good(const RootedDigraph& r, const IndexSet& targets,
                    const IndexSet& x);
IndexSet largest_t_good(const RootedDigraph& r, VertexId t);

bool is_tight(const RootedDigraph& r, const IndexSet& x);
bool is_dangerous(const RootedDigraph& r, const IndexSet& x, ElemId i);
std::optional<IndexSet> find_dangerous_for(const RootedDigraph& r,
                                           const ExtensionStep& step);

/// quotient() after confirming X is tight.
RootedDigraph checked_quotient(const RootedDigraph& r, const IndexSet& x,
                               QuotientMap* map = nullptr);

/// Test instrumentation. While an AuditScope is alive on a thread, every
/// augmentation and certificate produced on that thread is reported.
struct AuditHooks {
  std::function<void(const RootedDigraph&, const IndexSet&, const Linkage&,
                     const Linkage&)>
      on_augment;
  std::function<void(const RootedDigraph&, const IndexSet&, const Linkage&,
                     const TGoodCertificate&)>
      on_certificate;
};

class AuditScope {
 public:
  explicit AuditScope(AuditHooks hooks);
  ~AuditScope();
  AuditScope(const AuditScope&) = delete;
  AuditScope& operator=(const AuditScope&) = delete;

 private:
  AuditHooks hooks_;
  const AuditHooks* prev_;
};

}  // namespace mrd

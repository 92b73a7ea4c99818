#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mrd/error.hpp"
#include "mrd/index_set.hpp"

namespace mrd {

using Rational = boost::multiprecision::cpp_rational;

/// Index of a ground-set element. The ground ordering fixed at construction
/// is the canonical well-order used for every tie-break.
using ElemId = int;

class Matroid;

namespace kinds {
struct Free {
  friend bool operator==(const Free&, const Free&) = default;
};
struct Uniform {
  int rank = 0;
  friend bool operator==(const Uniform&, const Uniform&) = default;
};
struct Partition {
  std::vector<IndexSet> blocks;
  std::vector<int> caps;
  friend bool operator==(const Partition&, const Partition&) = default;
};
/// One column vector per element, exact rationals.
struct Linear {
  std::size_t dimension = 0;
  std::vector<std::vector<Rational>> columns;
  friend bool operator==(const Linear&, const Linear&) = default;
};
struct Explicit {
  std::vector<IndexSet> circuits;
  friend bool operator==(const Explicit&, const Explicit&) = default;
};
struct DirectSum {
  std::vector<Matroid> children;
  std::vector<int> offsets;  // ground index of each child's first element
  friend bool operator==(const DirectSum&, const DirectSum&);
};
/// keep/contract live in the parent's index space; the minor's ground is
/// keep - contract in parent order.
struct Minor {
  std::shared_ptr<const Matroid> parent;
  IndexSet keep;
  IndexSet contract;
  std::vector<int> to_parent;
  IndexSet contract_base;
  friend bool operator==(const Minor&, const Minor&);
};
}  // namespace kinds

/// Finite matroid behind an independence oracle. Immutable after
/// construction; all queries are const and thread-safe.
class Matroid {
 public:
  using Kind = std::variant<kinds::Free, kinds::Uniform, kinds::Partition,
                            kinds::Linear, kinds::Explicit, kinds::DirectSum,
                            kinds::Minor>;

  static constexpr std::size_t kMaxExplicitGround = 10;

  static Matroid free(std::vector<std::string> ground);
  static Matroid uniform(std::vector<std::string> ground, int rank);
  /// Blocks must partition the ground; caps are per-block rank limits.
  static Matroid partition(std::vector<std::string> ground,
                           const std::vector<std::vector<std::string>>& blocks,
                           std::vector<int> caps);
  static Matroid linear(std::vector<std::string> ground,
                        std::vector<std::vector<Rational>> columns);
  /// Circuits are validated against the circuit axioms (ground <= 10).
  static Matroid explicit_circuits(
      std::vector<std::string> ground,
      const std::vector<std::vector<std::string>>& circuits);
  static Matroid direct_sum(std::vector<Matroid> children);
  /// Restrict to `keep`, then contract `contract` (both in this matroid's
  /// index space, contract subset of keep).
  static Matroid minor(const Matroid& parent, const IndexSet& keep,
                       const IndexSet& contract);
  static Matroid restriction(const Matroid& parent, const IndexSet& keep) {
    return minor(parent, keep, IndexSet(parent.size()));
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(ElemId i) const { return names_.at(i); }
  ElemId index_of(const std::string& name) const;
  std::optional<ElemId> find(const std::string& name) const;
  IndexSet set_of(const std::vector<std::string>& names) const;
  IndexSet empty_set() const { return IndexSet(size()); }
  IndexSet ground() const { return IndexSet::full(size()); }
  const Kind& kind() const { return kind_; }
  std::string kind_name() const;

  bool is_independent(const IndexSet& x) const;
  int rank(const IndexSet& x) const;
  int rank() const { return rank(ground()); }
  IndexSet span(const IndexSet& x) const;
  /// Greedy base of x in ground order.
  IndexSet base_of(const IndexSet& x) const;
  bool is_loop(ElemId i) const;
  /// C(i, ind): {i} when i in ind, otherwise the unique circuit in ind + i.
  IndexSet fundamental_circuit(ElemId i, const IndexSet& ind) const;
  /// Smallest j in pool (ground order, j == i allowed) with ind - i + j
  /// independent.
  ElemId exchange_into(const IndexSet& ind, ElemId i,
                       const IndexSet& pool) const;
  /// Partition of the ground by the "share a circuit" relation.
  std::vector<IndexSet> components() const;

  void check_subset(const IndexSet& x) const;
  void check_element(ElemId i) const;

  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.names_ == b.names_ && a.kind_ == b.kind_;
  }

 private:
  Matroid(std::vector<std::string> ground, Kind kind);
  bool independent_unchecked(const IndexSet& x) const;
  int rank_unchecked(const IndexSet& x) const;

  std::vector<std::string> names_;
  std::unordered_map<std::string, ElemId> index_;
  Kind kind_;
};

/// Rank of a set of rational column vectors by exact elimination.
int linear_rank(std::vector<std::vector<Rational>> columns);

/// All circuits by subset enumeration. Exponential; small grounds only.
std::vector<IndexSet> enumerate_circuits(const Matroid& m);

}  // namespace mrd

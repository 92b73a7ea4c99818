#include "mrd/matroid.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mrd {

std::string_view to_string(Errc c) {
  switch (c) {
    case Errc::unknown_element: return "unknown_element";
    case Errc::unknown_vertex: return "unknown_vertex";
    case Errc::unknown_edge: return "unknown_edge";
    case Errc::invalid_matroid: return "invalid_matroid";
    case Errc::invalid_digraph: return "invalid_digraph";
    case Errc::invalid_instance: return "invalid_instance";
    case Errc::empty_set: return "empty_set";
    case Errc::not_independent: return "not_independent";
    case Errc::not_in_span: return "not_in_span";
    case Errc::precondition: return "precondition";
    case Errc::edge_not_leaving_root: return "edge_not_leaving_root";
    case Errc::extension_dependent: return "extension_dependent";
    case Errc::paths_not_joinable: return "paths_not_joinable";
    case Errc::not_on_path: return "not_on_path";
    case Errc::inconsistent_linkage: return "inconsistent_linkage";
    case Errc::schema: return "schema";
    case Errc::guard_exceeded: return "guard_exceeded";
    case Errc::internal_defect: return "internal_defect";
  }
  return "unknown";
}

namespace kinds {
bool operator==(const DirectSum& a, const DirectSum& b) {
  return a.children == b.children && a.offsets == b.offsets;
}
bool operator==(const Minor& a, const Minor& b) {
  return *a.parent == *b.parent && a.keep == b.keep && a.contract == b.contract;
}
}  // namespace kinds

namespace {

std::size_t popcount_in(const IndexSet& x, const IndexSet& block) {
  return (x & block).size();
}

}  // namespace

int linear_rank(std::vector<std::vector<Rational>> cols) {
  if (cols.empty()) return 0;
  const std::size_t dim = cols.front().size();
  int rank = 0;
  // Column-oriented elimination: pivot rows one at a time.
  std::vector<bool> used(cols.size(), false);
  for (std::size_t row = 0; row < dim; ++row) {
    std::size_t pivot = cols.size();
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!used[c] && cols[c][row] != 0) {
        pivot = c;
        break;
      }
    }
    if (pivot == cols.size()) continue;
    used[pivot] = true;
    ++rank;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c == pivot || used[c] || cols[c][row] == 0) continue;
      Rational f = cols[c][row] / cols[pivot][row];
      for (std::size_t r = row; r < dim; ++r) cols[c][r] -= f * cols[pivot][r];
    }
  }
  return rank;
}

Matroid::Matroid(std::vector<std::string> ground, Kind kind)
    : names_(std::move(ground)), kind_(std::move(kind)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], static_cast<ElemId>(i)).second)
      fail(Errc::invalid_matroid, "duplicate element name '" + names_[i] + "'");
  }
}

Matroid Matroid::free(std::vector<std::string> ground) {
  return Matroid(std::move(ground), kinds::Free{});
}

Matroid Matroid::uniform(std::vector<std::string> ground, int rank) {
  if (rank < 0) fail(Errc::invalid_matroid, "uniform rank must be >= 0");
  if (static_cast<std::size_t>(rank) > ground.size())
    fail(Errc::invalid_matroid, "uniform rank exceeds the ground size");
  return Matroid(std::move(ground), kinds::Uniform{rank});
}

Matroid Matroid::partition(std::vector<std::string> ground,
                           const std::vector<std::vector<std::string>>& blocks,
                           std::vector<int> caps) {
  if (blocks.size() != caps.size())
    fail(Errc::invalid_matroid, "partition: one cap per block required");
  Matroid m(std::move(ground), kinds::Free{});
  kinds::Partition p;
  IndexSet covered(m.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (caps[b] < 0) fail(Errc::invalid_matroid, "partition: negative cap");
    IndexSet block = m.set_of(blocks[b]);
    if (block.intersects(covered))
      fail(Errc::invalid_matroid, "partition: blocks overlap");
    covered |= block;
    p.blocks.push_back(std::move(block));
  }
  if (covered != m.ground())
    fail(Errc::invalid_matroid, "partition: blocks must cover the ground");
  p.caps = std::move(caps);
  m.kind_ = std::move(p);
  return m;
}

Matroid Matroid::linear(std::vector<std::string> ground,
                        std::vector<std::vector<Rational>> columns) {
  if (columns.size() != ground.size())
    fail(Errc::invalid_matroid, "linear: one column per element required");
  kinds::Linear l;
  l.dimension = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != l.dimension)
      fail(Errc::invalid_matroid, "linear: columns differ in dimension");
  l.columns = std::move(columns);
  return Matroid(std::move(ground), std::move(l));
}

Matroid Matroid::explicit_circuits(
    std::vector<std::string> ground,
    const std::vector<std::vector<std::string>>& circuits) {
  if (ground.size() > kMaxExplicitGround)
    fail(Errc::invalid_matroid, "explicit: ground larger than " +
                                    std::to_string(kMaxExplicitGround));
  Matroid m(std::move(ground), kinds::Free{});
  kinds::Explicit e;
  for (const auto& c : circuits) {
    IndexSet s = m.set_of(c);
    if (s.empty()) fail(Errc::invalid_matroid, "explicit: empty circuit");
    if (std::find(e.circuits.begin(), e.circuits.end(), s) != e.circuits.end())
      fail(Errc::invalid_matroid, "explicit: duplicate circuit");
    e.circuits.push_back(std::move(s));
  }
  for (std::size_t a = 0; a < e.circuits.size(); ++a)
    for (std::size_t b = 0; b < e.circuits.size(); ++b)
      if (a != b && e.circuits[a].is_subset_of(e.circuits[b]))
        fail(Errc::invalid_matroid, "explicit: nested circuits");
  // Circuit elimination: (C1 u C2) - i contains a circuit.
  for (std::size_t a = 0; a < e.circuits.size(); ++a) {
    for (std::size_t b = a + 1; b < e.circuits.size(); ++b) {
      IndexSet common = e.circuits[a] & e.circuits[b];
      IndexSet uni = e.circuits[a] | e.circuits[b];
      for (int i : common) {
        IndexSet rest = uni.without(i);
        bool found = std::any_of(
            e.circuits.begin(), e.circuits.end(),
            [&](const IndexSet& c) { return c.is_subset_of(rest); });
        if (!found)
          fail(Errc::invalid_matroid,
               "explicit: circuit elimination fails for element '" +
                   m.name(i) + "'");
      }
    }
  }
  m.kind_ = std::move(e);
  return m;
}

Matroid Matroid::direct_sum(std::vector<Matroid> children) {
  std::vector<std::string> ground;
  kinds::DirectSum d;
  for (const auto& c : children) {
    d.offsets.push_back(static_cast<int>(ground.size()));
    ground.insert(ground.end(), c.names().begin(), c.names().end());
  }
  d.children = std::move(children);
  return Matroid(std::move(ground), std::move(d));
}

Matroid Matroid::minor(const Matroid& parent, const IndexSet& keep,
                       const IndexSet& contract) {
  parent.check_subset(keep);
  parent.check_subset(contract);
  if (!contract.is_subset_of(keep))
    fail(Errc::invalid_matroid, "minor: contract set must lie in keep set");
  kinds::Minor mk;
  mk.parent = std::make_shared<const Matroid>(parent);
  mk.keep = keep;
  mk.contract = contract;
  mk.contract_base = parent.base_of(contract);
  std::vector<std::string> ground;
  for (int i : keep - contract) {
    mk.to_parent.push_back(i);
    ground.push_back(parent.name(i));
  }
  return Matroid(std::move(ground), std::move(mk));
}

ElemId Matroid::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    fail(Errc::unknown_element, "unknown element '" + name + "'");
  return it->second;
}

std::optional<ElemId> Matroid::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

IndexSet Matroid::set_of(const std::vector<std::string>& names) const {
  IndexSet s(size());
  for (const auto& n : names) s.insert(index_of(n));
  return s;
}

std::string Matroid::kind_name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kinds::Free>) return "free";
        else if constexpr (std::is_same_v<K, kinds::Uniform>) return "uniform";
        else if constexpr (std::is_same_v<K, kinds::Partition>) return "partition";
        else if constexpr (std::is_same_v<K, kinds::Linear>) return "linear";
        else if constexpr (std::is_same_v<K, kinds::Explicit>) return "explicit";
        else if constexpr (std::is_same_v<K, kinds::DirectSum>) return "direct_sum";
        else return "minor";
      },
      kind_);
}

void Matroid::check_subset(const IndexSet& x) const {
  if (x.universe() != size())
    fail(Errc::unknown_element,
         "element set over a universe of " + std::to_string(x.universe()) +
             " does not match ground of size " + std::to_string(size()));
}

void Matroid::check_element(ElemId i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= size())
    fail(Errc::unknown_element, "element index " + std::to_string(i) +
                                    " outside ground");
}

bool Matroid::independent_unchecked(const IndexSet& x) const {
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kinds::Free>) {
          return true;
        } else if constexpr (std::is_same_v<K, kinds::Uniform>) {
          return static_cast<int>(x.size()) <= k.rank;
        } else if constexpr (std::is_same_v<K, kinds::Partition>) {
          for (std::size_t b = 0; b < k.blocks.size(); ++b)
            if (static_cast<int>(popcount_in(x, k.blocks[b])) > k.caps[b])
              return false;
          return true;
        } else if constexpr (std::is_same_v<K, kinds::Linear>) {
          std::vector<std::vector<Rational>> cols;
          for (int i : x) cols.push_back(k.columns[i]);
          if (cols.size() > k.dimension) return false;
          return linear_rank(std::move(cols)) == static_cast<int>(x.size());
        } else if constexpr (std::is_same_v<K, kinds::Explicit>) {
          for (const auto& c : k.circuits)
            if (c.is_subset_of(x)) return false;
          return true;
        } else if constexpr (std::is_same_v<K, kinds::DirectSum>) {
          for (std::size_t c = 0; c < k.children.size(); ++c) {
            const auto& child = k.children[c];
            IndexSet sub(child.size());
            for (std::size_t j = 0; j < child.size(); ++j)
              if (x.contains(k.offsets[c] + static_cast<int>(j)))
                sub.insert(static_cast<int>(j));
            if (!child.independent_unchecked(sub)) return false;
          }
          return true;
        } else {
          IndexSet in_parent = k.contract_base;
          for (int i : x) in_parent.insert(k.to_parent[i]);
          return k.parent->independent_unchecked(in_parent);
        }
      },
      kind_);
}

int Matroid::rank_unchecked(const IndexSet& x) const {
  if (std::holds_alternative<kinds::Free>(kind_))
    return static_cast<int>(x.size());
  if (auto* u = std::get_if<kinds::Uniform>(&kind_))
    return std::min(static_cast<int>(x.size()), u->rank);
  if (auto* p = std::get_if<kinds::Partition>(&kind_)) {
    int r = 0;
    for (std::size_t b = 0; b < p->blocks.size(); ++b)
      r += std::min(static_cast<int>(popcount_in(x, p->blocks[b])), p->caps[b]);
    return r;
  }
  if (auto* l = std::get_if<kinds::Linear>(&kind_)) {
    std::vector<std::vector<Rational>> cols;
    for (int i : x) cols.push_back(l->columns[i]);
    return linear_rank(std::move(cols));
  }
  IndexSet cur(size());
  int r = 0;
  for (int i : x) {
    cur.insert(i);
    if (independent_unchecked(cur))
      ++r;
    else
      cur.erase(i);
  }
  return r;
}

bool Matroid::is_independent(const IndexSet& x) const {
  check_subset(x);
  return independent_unchecked(x);
}

int Matroid::rank(const IndexSet& x) const {
  check_subset(x);
  return rank_unchecked(x);
}

IndexSet Matroid::base_of(const IndexSet& x) const {
  check_subset(x);
  IndexSet cur(size());
  for (int i : x) {
    cur.insert(i);
    if (!independent_unchecked(cur)) cur.erase(i);
  }
  return cur;
}

IndexSet Matroid::span(const IndexSet& x) const {
  IndexSet base = base_of(x);
  IndexSet out = x;
  for (std::size_t i = 0; i < size(); ++i) {
    int e = static_cast<int>(i);
    if (out.contains(e)) continue;
    if (!independent_unchecked(base.with(e))) out.insert(e);
  }
  return out;
}

bool Matroid::is_loop(ElemId i) const {
  check_element(i);
  IndexSet s(size());
  s.insert(i);
  return !independent_unchecked(s);
}

IndexSet Matroid::fundamental_circuit(ElemId i, const IndexSet& ind) const {
  check_element(i);
  check_subset(ind);
  if (!independent_unchecked(ind))
    fail(Errc::not_independent, "fundamental_circuit: set is not independent");
  if (ind.contains(i)) return IndexSet(size(), {i});
  IndexSet all = ind.with(i);
  if (independent_unchecked(all))
    fail(Errc::not_in_span, "fundamental_circuit: element '" + name(i) +
                                "' is not spanned by the set");
  IndexSet c(size());
  for (int j : all)
    if (independent_unchecked(all.without(j))) c.insert(j);
  return c;
}

ElemId Matroid::exchange_into(const IndexSet& ind, ElemId i,
                              const IndexSet& pool) const {
  check_element(i);
  check_subset(ind);
  check_subset(pool);
  if (!independent_unchecked(ind))
    fail(Errc::not_independent, "exchange_into: set is not independent");
  if (!ind.contains(i))
    fail(Errc::precondition, "exchange_into: element not in the set");
  if (!span(pool).contains(i))
    fail(Errc::not_in_span, "exchange_into: element not spanned by the pool");
  IndexSet rest = ind.without(i);
  for (int j : pool)
    if (j == i || (!rest.contains(j) && independent_unchecked(rest.with(j))))
      return j;
  fail(Errc::internal_defect, "exchange_into: no eligible element");
}

std::vector<IndexSet> Matroid::components() const {
  std::vector<int> parent(size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  IndexSet base = base_of(ground());
  for (std::size_t e = 0; e < size(); ++e) {
    int ei = static_cast<int>(e);
    if (base.contains(ei)) continue;
    for (int j : fundamental_circuit(ei, base)) parent[find(j)] = find(ei);
  }
  std::vector<IndexSet> out;
  std::vector<int> slot(size(), -1);
  for (std::size_t e = 0; e < size(); ++e) {
    int r = find(static_cast<int>(e));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back(size());
    }
    out[slot[r]].insert(static_cast<int>(e));
  }
  return out;
}

std::vector<IndexSet> enumerate_circuits(const Matroid& m) {
  const std::size_t n = m.size();
  if (n > 20) fail(Errc::guard_exceeded, "enumerate_circuits: ground too large");
  std::vector<IndexSet> dependent_minimal;
  // Visit subsets by increasing size so minimality is a subset check.
  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  std::iota(masks.begin(), masks.end(), 0u);
  std::stable_sort(masks.begin(), masks.end(), [](auto a, auto b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (auto mask : masks) {
    IndexSet s(n);
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) s.insert(static_cast<int>(i));
    if (m.is_independent(s)) continue;
    bool minimal = std::none_of(
        dependent_minimal.begin(), dependent_minimal.end(),
        [&](const IndexSet& c) { return c.is_subset_of(s); });
    if (minimal) dependent_minimal.push_back(s);
  }
  return dependent_minimal;
}

}  // namespace mrd

#pragma once

#include <optional>
#include <vector>

#include "mrd/solver.hpp"

namespace mrd::oracle {

/// Size limits for the exhaustive searches. Exceeding them is an error
/// (guard_exceeded), never a silent truncation.
struct Guard {
  std::size_t max_vertices = 8;
  std::size_t max_edges = 16;
  std::size_t max_elements = 6;
  std::size_t max_packing_edges = 10;
  std::size_t max_packing_elements = 4;
};

/// Limits a --guard override may not exceed.
inline constexpr Guard kHardCaps{12, 24, 10, 14, 8};

/// Throws guard_exceeded when g exceeds kHardCaps.
void check_guard(const Guard& g);

struct LinkableResult {
  int rank = 0;
  IndexSet set;
};

/// Maximum rank of an independent T-linkable set, by enumerating path
/// families.
LinkableResult brute_force_max_linkable(const RootedDigraph& r,
                                        const IndexSet& targets,
                                        const Guard& g = {});

bool brute_force_t_good(const RootedDigraph& r, VertexId t, const IndexSet& x,
                        const Guard& g = {});
/// Union of all t-good sets; asserted t-good itself.
IndexSet brute_force_largest_t_good(const RootedDigraph& r, VertexId t,
                                    const Guard& g = {});
bool brute_force_tight(const RootedDigraph& r, const IndexSet& x,
                       const Guard& g = {});
bool brute_force_is_dangerous(const RootedDigraph& r, const IndexSet& x,
                              ElemId i, const Guard& g = {});
/// First i-dangerous set entered by e, in subset order.
std::optional<IndexSet> brute_force_dangerous(const RootedDigraph& r, ElemId i,
                                              EdgeId e, const Guard& g = {});
std::optional<Packing> brute_force_packing(const RootedDigraph& r,
                                           const Guard& g = {});

}  // namespace mrd::oracle

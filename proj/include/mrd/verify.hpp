#pragma once

#include <string>
#include <vector>

#include "mrd/solver.hpp"

namespace mrd {

struct VerifyReport {
  bool edge_disjoint = true;
  bool branching_shape = true;
  bool root_set = true;
  bool independence = true;
  bool maximality = true;
  std::vector<std::string> failures;

  bool ok() const {
    return edge_disjoint && branching_shape && root_set && independence &&
           maximality;
  }
};

/// Checks edge-disjointness, branching shape, root sets, independence of
/// S_B(v) and that S_B(v) spans N(v) at every vertex.
VerifyReport verify_packing(const RootedDigraph& r, const Packing& p);

}  // namespace mrd

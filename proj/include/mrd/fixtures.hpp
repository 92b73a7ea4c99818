#pragma once

#include <cstdint>

#include "mrd/io.hpp"

namespace mrd::fixtures {

/// Truncation of the two-ray counterexample with the free matroid on {0,1}.
/// metadata.interior lists the vertices whose linkages survive truncation.
io::InstanceDoc fig1_truncate(int n);

/// Truncation of the linear counterexample: u_k carries e_k, v_k carries
/// e_k + e_{k+1} and e_k - e_{k+1}, plus an element e_{n+1} rooted at w so
/// that the finite instance satisfies the linkage condition.
io::InstanceDoc fig2_truncate(int n);

/// Triangular grid truncation with k parallel edges standing in for the
/// infinite bundles.
io::InstanceDoc fig3_truncate(int n, int k);

struct RandomBounds {
  int max_vertices = 8;
  int max_edges = 16;
  int max_rank = 4;
  int max_elements = 5;
  int max_attempts = 100000;
};

/// Rejection-sampled until independent and satisfying the linkage
/// condition. metadata.rejections counts the discarded draws.
io::InstanceDoc gen_random(std::uint64_t seed, const RandomBounds& bounds = {});

}  // namespace mrd::fixtures

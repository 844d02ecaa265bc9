#pragma once

// Degree arithmetic for scrolls with a line of multiplicity d-1 and for
// projections of complete intersections.

#include <cstdint>
#include <vector>

#include "cremona/cluster.hpp"

namespace cremona {

struct ScrollState {
  std::int64_t degree = 2;
  std::int64_t line_mult = 1;
  bool operator==(const ScrollState&) const = default;
};

struct ScrollStep {
  ScrollState state;
  /// 3d - 2(d-1) - 3 and 2d - (d-1) - 3 for the state's degree d.
  std::int64_t next_degree = 0;
  std::int64_t next_line_mult = 0;
};

/// (d, d-1) -> (d-1, d-2) -> ... -> (2, 1). Throws InvalidInput for d < 2 and
/// InvariantViolation if a step disagrees with the next state.
std::vector<ScrollStep> scroll_reduction(std::int64_t d);

struct ProjectionPair {
  std::int64_t a = 2;
  std::int64_t b = 2;
  std::int64_t k = 1;
};

/// Compares the degree-ab projection with degree ab-1 through the
/// multiplicity form of the Noether-Fano certificate with max_mult = a.
/// Throws InvalidInput unless 2 <= a <= b and k >= 1.
Certificate ci_projection_certificate(const ProjectionPair& p);

}  // namespace cremona

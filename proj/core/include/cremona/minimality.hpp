#pragma once

// Minimal plane models of standard models and the minimal-degree verdict.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cremona/hirzebruch.hpp"

namespace cremona {

/// A ruled state on F_b with no point of multiplicity >= 2 on C0.
struct ResolvedRuledPair {
  RuledPair base;
  /// Elms that produced base from the model.
  Trace trace;
  /// Multiplicities of the on-C0 points consumed along the way.
  std::vector<std::int64_t> consumed;
};

/// Up-elms at on-C0 points of multiplicity >= 2 until none are left.
/// Throws InvalidInput when the adjoint is not nef.
ResolvedRuledPair resolve_along_c0(const RuledPair& model);

struct CenterSequence {
  std::vector<Center> centers;
  std::vector<std::int64_t> mults;
  std::int64_t total = 0;
};

/// b-1 off-C0 centers of maximal total multiplicity; a cluster point is
/// eligible once its ancestors are used, free slots take general curve
/// points (mult 1). Throws InvalidInput when b = 0.
CenterSequence optimal_center_sequence(const ResolvedRuledPair& r);

struct PlaneModel {
  PlanePair pair;
  std::int64_t degree = 0;
  /// Moves from the resolved state to the plane.
  Trace trace;
  /// The degree is exact; the cluster assumes general position.
  std::vector<std::string> assumptions;
};

/// degree = beta' - total for b >= 1. For b = 0 one up-elm at a point of
/// maximal multiplicity reaches F_1 first.
PlaneModel minimal_plane_model(const ResolvedRuledPair& r);

/// alpha(gamma - b + 1) + beta' - sum(mus). Needs |mus| = 2 gamma + 1 - b.
std::int64_t planar_system_degree(const ResolvedRuledPair& r, std::int64_t gamma,
                                  const std::vector<std::int64_t>& mus);

enum class MinimalityStatus { Minimal, NotMinimal, Line };
enum class MinimalityReason { SubcriticalMult, MinimalPlaneModel, KappaZeroDegree, Witness };

std::string to_string(MinimalityStatus s);
std::string to_string(MinimalityReason r);

struct MinimalityVerdict {
  MinimalityStatus status = MinimalityStatus::Minimal;
  MinimalityReason reason = MinimalityReason::SubcriticalMult;
  std::int64_t minimal_degree = 0;
  /// Replays from the input pair to a plane curve of minimal_degree.
  std::optional<Trace> witness_trace;
  /// Standard model the verdict was read from, when one was needed.
  std::optional<StandardModel> model;
  std::optional<Certificate> certificate;
  bool truncated = false;
};

/// Moves from a pair Cremona equivalent to a line (plane with d - m1 <= 1 or
/// ruled with alpha = 1) down to a plane line.
Trace line_witness(const Pair& pair);

MinimalityVerdict is_minimal_degree(const PlanePair& pair, std::size_t branch_bound = 64);

}  // namespace cremona

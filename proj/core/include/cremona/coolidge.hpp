#pragma once

// Equivalence to a line for rational plane curves: emptiness of |2K + C|
// on the resolution and the half-coefficient surface MMP.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cremona/cluster.hpp"
#include "cremona/lattice.hpp"

namespace cremona {

/// The plane blown up at every cluster point, basis e0, e(<id>)...
struct BlowupModel {
  BlowupSurface surface;
  DivisorClass curve;
  /// Cluster ids in basis order (basis index i+1).
  std::vector<std::string> ids;
  /// prox[i] lists the cluster indices point i is proximate to.
  std::vector<std::vector<std::size_t>> prox;
  /// Level-0 flag per cluster index.
  std::vector<bool> proper;
  /// Smooth curve points blown up by the MMP rather than taken from the cluster.
  std::vector<bool> auxiliary;
};

/// Throws InvalidInput unless the combinatorial genus is 0.
BlowupModel resolve_to_lattice(const PlanePair& pair);

/// A virtual class delta*e0 - sum mu_i e_i on a cluster.
struct VirtualClass {
  std::int64_t delta = 0;
  std::vector<std::int64_t> mu;
  bool operator==(const VirtualClass&) const = default;
};

std::string to_string(const VirtualClass& v);

/// While some point has mu_i < sum of mu_j over the points proximate to it,
/// removes the strict transform of E_i (mu_i += 1, mu_j -= 1).
VirtualClass unloading(VirtualClass v, const std::vector<std::vector<std::size_t>>& prox);

enum class Emptiness { Empty, NonEmpty, Unknown };
std::string to_string(Emptiness e);

struct EmptinessResult {
  Emptiness verdict = Emptiness::Unknown;
  /// Class reached after unloading and reductions.
  VirtualClass reduced;
  /// Each removed fixed component and reduction, in order.
  std::vector<std::string> steps;
  std::vector<std::string> assumptions;
};

/// Decides emptiness of |2K + C| where possible. Throws InvalidInput on
/// non-rational input.
EmptinessResult km_empty_test(const PlanePair& pair);

enum class CandidateKind { ClusterEnd, Line, Conic, SearchFound };
std::string to_string(CandidateKind k);

struct CandidateClass {
  DivisorClass cls;
  CandidateKind kind = CandidateKind::ClusterEnd;
  /// Only admissible candidates are ever contracted.
  bool admissible = false;
  std::int64_t curve_dot = 0;
  std::string label;
};

/// Numerical (-1)-classes on the current surface with C.E <= 1.
std::vector<CandidateClass> find_contractible(const BlowupModel& model, std::int64_t max_degree);

enum class EndState { PlaneConic, Fibre, Section, ConicBundleF1, Stalled };
std::string to_string(EndState e);

struct MmpStep {
  std::string op;  // "contract" or "aux_blowup"
  std::string label;
  DivisorClass cls;
  std::int64_t curve_dot = 0;
};

struct MmpResult {
  EndState end = EndState::Stalled;
  std::vector<MmpStep> trace;
  BlowupModel final_model;
  std::string detail;
};

MmpResult half_mmp(const BlowupModel& model, std::int64_t max_degree, std::size_t aux_cap = 2);

/// Re-runs every step on the lattice, checking E^2 = K.E = -1 and C.E <= 1.
/// Throws InvariantViolation.
void verify_mmp_trace(const BlowupModel& start, const std::vector<MmpStep>& trace);

enum class LineStatus { EquivalentToLine, NotEquivalent, Undetermined };
std::string to_string(LineStatus s);

struct LineVerdict {
  LineStatus status = LineStatus::Undetermined;
  EmptinessResult emptiness;
  MmpResult mmp;
};

LineVerdict line_equivalent(const PlanePair& pair, std::int64_t max_degree = 6);

}  // namespace cremona

#pragma once

// Ruled pairs on Hirzebruch surfaces: elementary transformations, the
// adjoint class and the standard-model reduction of a plane curve.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cremona/cluster.hpp"
#include "cremona/rational.hpp"

namespace cremona {

using Pair = std::variant<PlanePair, RuledPair>;

bool is_plane(const Pair& p);
std::int64_t combinatorial_genus(const Pair& p);
void require_valid(const Pair& p);

/// Synthetic id used when the center is a general point of the curve.
inline constexpr const char* kGenericCenter = "@generic";

/// An elm center: a level-0 cluster point, or a general curve point of the
/// stated multiplicity (0 or 1) on or off C0.
struct Center {
  std::optional<std::string> id;
  bool on_c0 = false;
  std::int64_t mult = 1;

  static Center point(std::string id) { return Center{std::move(id), false, 0}; }
  static Center generic(bool on_c0, std::int64_t mult = 1) { return Center{std::nullopt, on_c0, mult}; }
  /// "<id>" or "@generic/on/1", "@generic/off/0".
  std::string label() const;
  /// Inverse of label(). Throws InvalidInput.
  static Center parse(const std::string& label);
};

enum class MoveOp { Blowup, Elm, Blowdown, Swap };
enum class Direction { None, Up, Down };

std::string to_string(MoveOp op);
std::string to_string(Direction d);
MoveOp parse_move_op(const std::string& s);
Direction parse_direction(const std::string& s);

/// Numerical state after a move; degree is used on the plane, (a, alpha, beta) on F_a.
struct SurfaceState {
  bool plane = false;
  std::int64_t degree = 0;
  std::int64_t a = 0;
  std::int64_t alpha = 0;
  std::int64_t beta = 0;

  static SurfaceState of(const Pair& p);
  bool operator==(const SurfaceState&) const = default;
};

std::string to_string(const SurfaceState& s);

struct Move {
  MoveOp op = MoveOp::Elm;
  std::string center;
  Direction direction = Direction::None;
  SurfaceState after;
  /// Multiplicity of the point created by the move (elm: alpha - m, blowdown: beta - alpha).
  std::int64_t new_point_mult = 0;
  /// Cluster id of the created point, empty when it is not booked (mult <= 1).
  std::string new_point_id;
  std::vector<std::string> assumptions;

  bool operator==(const Move&) const = default;
};

using Trace = std::vector<Move>;

/// (d=d, choice) -> (F_1, (d-m1)C0 + d f). choice must be a level-0 point of
/// maximal multiplicity, or kGenericCenter when every multiplicity is <= 1.
RuledPair blow_up_max_point(const PlanePair& pair, const std::string& choice, Move* record = nullptr);

/// Elementary transformation. Up when the center is on C0 or a = 0.
RuledPair elm(const RuledPair& pair, const Center& center, Move* record = nullptr);

/// Contracts C0 of F_1. Throws InvalidInput unless a = 1.
PlanePair blow_down_to_plane(const RuledPair& pair, Move* record = nullptr);

/// Exchanges the two rulings of F_0. Throws InvalidInput unless a = 0.
RuledPair swap_rulings(const RuledPair& pair, Move* record = nullptr);

struct AdjointData {
  Rational c;
  /// (K + cC).f and (K + cC).C0.
  Rational dot_f;
  Rational dot_c0;
  /// Set when c = 2/alpha, where K + cC is numerically lambda * f.
  std::optional<Rational> lambda;
  bool nef = false;
};

AdjointData adjoint(const RuledPair& pair, const Rational& c);
AdjointData adjoint(const RuledPair& pair);

/// 0 iff 2 beta = alpha (a + 2). Throws InvalidInput when the adjoint is not nef.
int kodaira_dimension(const RuledPair& pair);

/// Applies one recorded move. Throws InvariantViolation when the result
/// disagrees with the recorded state.
Pair apply_move(const Pair& state, const Move& move);
/// Throws InvariantViolation naming the first diverging step.
Pair replay(const Pair& start, const Trace& trace);

enum class ModelKind { Line, TerminalPlane, F0Terminal, FaCanonical };
std::string to_string(ModelKind k);

struct StandardModel {
  ModelKind kind = ModelKind::Line;
  Pair pair;
  std::optional<int> kappa;
  Trace trace;
};

/// Preferred ids come first (in the listed order); the rest go by
/// decreasing multiplicity, then input order.
struct TieBreak {
  std::vector<std::string> prefer;
};

/// Deterministic run of the reduction. Throws InvariantViolation (with the
/// trace prefix) when the input cluster is inconsistent.
StandardModel standard_model(const Pair& pair, const TieBreak& policy = {});

struct ModelSet {
  std::vector<StandardModel> models;
  bool truncated = false;
};

/// Explores every branch point (maximal-point choices, elm center choices).
/// Models are deduplicated by (kind, a, alpha, beta, kappa) and sorted.
ModelSet enumerate_standard_models(const Pair& pair, std::size_t branch_bound = 64);

/// Re-checks the output conditions of a model. Throws InvariantViolation.
void check_standard_model(const StandardModel& m);

}  // namespace cremona

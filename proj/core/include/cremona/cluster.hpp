#pragma once

// Weighted clusters of infinitely near points, log discrepancies and the
// certificates built on them.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cremona/rational.hpp"

namespace cremona {

struct ClusterPoint {
  std::string id;
  std::int64_t mult = 1;
  /// Absent for level-0 points.
  std::optional<std::string> parent;
  /// Contains the parent when there is one; a second entry marks a satellite.
  std::vector<std::string> proximate_to;
  /// Only meaningful on level-0 points of a ruled pair.
  std::optional<bool> on_c0;

  bool is_root() const { return !parent.has_value(); }
  bool lies_on_c0() const { return on_c0.value_or(false); }
  bool operator==(const ClusterPoint&) const = default;
};

/// Forest of infinitely near points, stored parents-first.
class WeightedCluster {
 public:
  WeightedCluster() = default;
  explicit WeightedCluster(std::vector<ClusterPoint> points) : points_(std::move(points)) {}

  const std::vector<ClusterPoint>& points() const { return points_; }
  std::vector<ClusterPoint>& mutable_points() { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const ClusterPoint& operator[](std::size_t i) const { return points_[i]; }

  std::optional<std::size_t> index_of(std::string_view id) const;
  /// Throws InvalidInput for unknown ids.
  const ClusterPoint& at(std::string_view id) const;

  std::vector<std::size_t> roots() const;
  std::vector<std::size_t> children(std::size_t i) const;
  /// Points q with points()[i].id in q.proximate_to.
  std::vector<std::size_t> proximate_points(std::size_t i) const;
  /// The root and all its descendants, in storage order.
  std::vector<std::size_t> subtree(std::size_t root) const;
  /// Index of the level-0 ancestor (the point itself for roots).
  std::size_t root_of(std::size_t i) const;
  std::size_t depth(std::size_t i) const;

  /// 0 for the empty cluster.
  std::int64_t max_mult() const;
  /// Multiplicities sorted in decreasing order.
  std::vector<std::int64_t> sorted_mults() const;
  /// Sum of m(m-1)/2.
  std::int64_t delta_sum() const;
  /// mult(p) minus the multiplicities of the points proximate to p.
  std::int64_t excess(std::size_t i) const;

  /// Id-independent description used to deduplicate search states.
  std::string shape_key() const;

  void append(ClusterPoint p) { points_.push_back(std::move(p)); }
  /// Removes point i, promoting its children to level-0 points and dropping
  /// it from every proximity set.
  void remove_and_promote(std::size_t i, std::optional<bool> promoted_on_c0);

  bool operator==(const WeightedCluster&) const = default;

 private:
  std::vector<ClusterPoint> points_;
};

enum class ClusterContext { Plane, Ruled };

struct Violation {
  std::string id;
  std::string message;
  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate_cluster(const WeightedCluster& cluster, ClusterContext context);

/// A curve of the given degree on P^2 together with its singular cluster.
struct PlanePair {
  std::int64_t degree = 1;
  WeightedCluster cluster;
  bool operator==(const PlanePair&) const = default;
};

/// A curve of class alpha*C0 + beta*f on the Hirzebruch surface F_a.
struct RuledPair {
  std::int64_t a = 0;
  std::int64_t alpha = 1;
  std::int64_t beta = 0;
  WeightedCluster cluster;

  /// C.C0 = beta - a*alpha.
  std::int64_t meets_c0() const { return beta - a * alpha; }
  bool operator==(const RuledPair&) const = default;
};

ValidationReport validate(const PlanePair& pair);
ValidationReport validate(const RuledPair& pair);
/// Throws InvalidInput carrying the report summary when validation fails.
void require_valid(const PlanePair& pair);
void require_valid(const RuledPair& pair);

/// Arithmetic genus of the curve class, before subtracting singularities.
std::int64_t arithmetic_genus(const PlanePair& pair);
std::int64_t arithmetic_genus(const RuledPair& pair);

/// p_a(class) - sum m(m-1)/2. Always an integer.
std::int64_t combinatorial_genus(const PlanePair& pair);
std::int64_t combinatorial_genus(const RuledPair& pair);

enum class Scope { Global, AlongC0 };

struct DiscrepancyReport {
  Rational coefficient;
  /// One entry per cluster point in scope, in storage order.
  std::vector<std::pair<std::string, Rational>> entries;
  /// Least value over entries and saturation points.
  Rational minimum;
  /// Cluster id, or "@smooth" / "@sat(<id>)" for saturation points.
  std::string witness;
  /// True when no valuation is in scope at all (nothing on C0).
  bool vacuous = false;

  const Rational& entry(std::string_view id) const;
};

/// Discrepancies a(E, X, c*C) of the cluster valuations plus the saturation
/// points. Throws InvalidInput unless 0 < c <= 1.
DiscrepancyReport log_discrepancies(const PlanePair& pair, const Rational& c);
DiscrepancyReport log_discrepancies(const RuledPair& pair, const Rational& c,
                                    Scope scope = Scope::Global);

/// Lower-level form: discrepancies of the points flagged in_scope, with the
/// smooth-point saturation value 1 - c included when smooth_points is set.
DiscrepancyReport cluster_discrepancies(const WeightedCluster& cluster, const Rational& c,
                                        const std::vector<bool>& in_scope, bool smooth_points);

/// Ordered Terminal > Canonical > NonCanonical.
enum class SingularityClass { NonCanonical = 0, Canonical = 1, Terminal = 2 };

struct Classification {
  SingularityClass kind = SingularityClass::Terminal;
  std::string witness;
  Rational minimum;
};

Classification classify_singularities(const PlanePair& pair, const Rational& c);
Classification classify_singularities(const RuledPair& pair, const Rational& c,
                                      Scope scope = Scope::Global);

std::string to_string(SingularityClass kind);

enum class CertificateKind { NoetherFano, Jung };

struct Certificate {
  CertificateKind kind = CertificateKind::NoetherFano;
  bool holds = false;
  /// The inequality with the input numbers substituted.
  std::map<std::string, std::string> data;
};

std::string to_string(CertificateKind kind);

/// Multiplicity form: holds iff max_mult * (n + 1) <= d_high. A certificate
/// that holds means the degree-d_high and degree-d_low embeddings are not
/// Cremona equivalent. Throws InvalidInput unless d_high > d_low >= 1, n >= 2.
Certificate noether_fano_certificate(std::int64_t n, std::int64_t d_high, std::int64_t d_low,
                                     std::int64_t max_mult);

/// Plane form: holds iff (P^2, 3/d C) is canonical, so C is not Cremona
/// equivalent to any curve of lower degree. Needs d >= 3.
Certificate noether_fano_certificate(const PlanePair& pair);

/// Holds iff m1 + m2 + m3 <= d (missing multiplicities read as 1).
Certificate jung_test(const PlanePair& pair);

}  // namespace cremona

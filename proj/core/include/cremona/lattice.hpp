#pragma once

// Intersection lattices of blown-up rational surfaces. This is the
// independent ground truth that the combinatorial modules are checked
// against, so it deliberately knows nothing about clusters or pairs.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cremona {

class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t size() const { return coeffs_.size(); }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t operator[](std::size_t i) const { return coeffs_[i]; }
  std::int64_t& operator[](std::size_t i) { return coeffs_[i]; }
  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(std::int64_t k, DivisorClass a);
  bool operator==(const DivisorClass&) const = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// A rational surface presented as a base (P^2 or F_a) blown up finitely many
/// times, with some (-1)-classes contracted. Contractions are kept as a
/// quotient: every class stays addressable in one coordinate system and is
/// projected along the contracted classes before intersecting. Values are
/// immutable; operations return new surfaces.
class BlowupSurface {
 public:
  /// Basis e0, gram (1), K = -3e0.
  static BlowupSurface plane();
  /// Basis C0, f, gram [[-a,1],[1,0]], K = -2C0 - (a+2)f.
  static BlowupSurface hirzebruch(std::int64_t a);

  std::size_t rank() const { return labels_.size(); }
  /// Picard rank of the actual surface: rank() minus the contractions.
  std::size_t effective_rank() const { return rank() - contracted_.size(); }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  const std::vector<std::vector<std::int64_t>>& gram() const { return gram_; }
  const std::vector<DivisorClass>& contracted() const { return contracted_; }

  /// Canonical class of the current surface (projected).
  DivisorClass canonical() const { return project(canonical_); }

  DivisorClass zero() const { return DivisorClass(std::vector<std::int64_t>(rank(), 0)); }
  /// Unit vector for a basis label. Throws InvalidInput for unknown labels.
  DivisorClass basis(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;
  /// Sum of coefficient * basis(label).
  DivisorClass make(std::initializer_list<std::pair<std::string_view, std::int64_t>> terms) const;
  /// Pads a class from an earlier (smaller) stage with zeros.
  DivisorClass extend(const DivisorClass& c) const;

  /// Raw A^T G B, ignoring contractions. Throws InvalidInput on size mismatch.
  std::int64_t raw_intersect(const DivisorClass& a, const DivisorClass& b) const;
  /// X -> X + (X.E)E for each contracted E in order.
  DivisorClass project(const DivisorClass& c) const;
  /// Intersection on the current surface.
  std::int64_t intersect(const DivisorClass& a, const DivisorClass& b) const;

  /// New basis vector with self-intersection -1; K gains +1 on it.
  /// Throws InvalidInput for a duplicate label.
  BlowupSurface blow_up(std::string label) const;
  /// Contracts a class with E^2 = K.E = -1 on the current surface.
  /// Throws InvalidInput otherwise (including a second contraction of the
  /// same class, whose projection vanishes).
  BlowupSurface contract(const DivisorClass& e) const;

  /// (positive, negative, zero) inertia of the projected form.
  struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
  };
  Inertia inertia() const;
  /// Signature (1, effective_rank - 1) with exactly one null direction per
  /// contraction. Throws InvariantViolation otherwise.
  void check_signature() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::int64_t>> gram_;
  DivisorClass canonical_;
  std::vector<DivisorClass> contracted_;
};

std::int64_t intersect(const BlowupSurface& s, const DivisorClass& a, const DivisorClass& b);
BlowupSurface blow_up(const BlowupSurface& s, std::string label);
BlowupSurface contract(const BlowupSurface& s, const DivisorClass& e);

struct ElmCenter {
  bool on_c0 = false;
  std::int64_t mult = 0;
};

struct ElmOutcome {
  std::int64_t a = 0;
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  /// Multiplicity of the curve at the image of the contracted fibre.
  std::int64_t new_point_mult = 0;
  bool operator==(const ElmOutcome&) const = default;
};

/// Elementary transformation of alpha*C0 + beta*f on F_a computed purely in
/// the lattice: blow up the center, contract the strict transform of its
/// fibre, push the curve class forward and read it off in the (C0', f') basis
/// of the target. The target goes up (a+1) when the center is on C0 or a = 0.
/// Throws InvalidInput when mult > alpha or mult < 0 or alpha < 1.
ElmOutcome elm_oracle(std::int64_t a, std::int64_t alpha, std::int64_t beta, ElmCenter center);

}  // namespace cremona

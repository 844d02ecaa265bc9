#include "cremona/lattice.hpp"

#include <algorithm>

#include "cremona/error.hpp"
#include "cremona/rational.hpp"

namespace cremona {

bool DivisorClass::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c == 0; });
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  if (o.size() != size()) throw InvalidInput("divisor class dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  if (o.size() != size()) throw InvalidInput("divisor class dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

DivisorClass operator*(std::int64_t k, DivisorClass a) {
  for (auto& c : a.coeffs_) c *= k;
  return a;
}

BlowupSurface BlowupSurface::plane() {
  BlowupSurface s;
  s.labels_ = {"e0"};
  s.gram_ = {{1}};
  s.canonical_ = DivisorClass({-3});
  return s;
}

BlowupSurface BlowupSurface::hirzebruch(std::int64_t a) {
  if (a < 0) throw InvalidInput("Hirzebruch index must be >= 0");
  BlowupSurface s;
  s.labels_ = {"C0", "f"};
  s.gram_ = {{-a, 1}, {1, 0}};
  s.canonical_ = DivisorClass({-2, -(a + 2)});
  return s;
}

std::size_t BlowupSurface::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw InvalidInput("unknown basis label '" + std::string(label) + "'");
}

DivisorClass BlowupSurface::basis(std::string_view label) const {
  auto c = zero();
  c[index_of(label)] = 1;
  return c;
}

DivisorClass BlowupSurface::make(
    std::initializer_list<std::pair<std::string_view, std::int64_t>> terms) const {
  auto c = zero();
  for (const auto& [label, k] : terms) c[index_of(label)] += k;
  return c;
}

DivisorClass BlowupSurface::extend(const DivisorClass& c) const {
  if (c.size() > rank()) throw InvalidInput("divisor class longer than the surface rank");
  auto v = c.coeffs();
  v.resize(rank(), 0);
  return DivisorClass(std::move(v));
}

std::int64_t BlowupSurface::raw_intersect(const DivisorClass& a, const DivisorClass& b) const {
  if (a.size() != rank() || b.size() != rank()) {
    throw InvalidInput("intersection of classes of size " + std::to_string(a.size()) + " and " +
                       std::to_string(b.size()) + " on a rank-" + std::to_string(rank()) +
                       " surface");
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) total += a[i] * gram_[i][j] * b[j];
  }
  return total;
}

DivisorClass BlowupSurface::project(const DivisorClass& c) const {
  DivisorClass x = c;
  for (const auto& e : contracted_) x += raw_intersect(x, e) * e;
  return x;
}

std::int64_t BlowupSurface::intersect(const DivisorClass& a, const DivisorClass& b) const {
  return raw_intersect(project(a), project(b));
}

BlowupSurface BlowupSurface::blow_up(std::string label) const {
  if (std::find(labels_.begin(), labels_.end(), label) != labels_.end()) {
    throw InvalidInput("blow_up: duplicate label '" + label + "'");
  }
  BlowupSurface s = *this;
  s.labels_.push_back(std::move(label));
  for (auto& row : s.gram_) row.push_back(0);
  s.gram_.emplace_back(s.rank(), 0);
  s.gram_.back().back() = -1;
  s.canonical_ = s.extend(canonical_);
  s.canonical_[s.rank() - 1] = 1;
  for (auto& e : s.contracted_) e = s.extend(e);
  return s;
}

BlowupSurface BlowupSurface::contract(const DivisorClass& e) const {
  const DivisorClass p = project(e);
  const auto self = raw_intersect(p, p);
  const auto k = raw_intersect(project(canonical_), p);
  if (self != -1 || k != -1) {
    throw InvalidInput("contract: class has E^2 = " + std::to_string(self) +
                       ", K.E = " + std::to_string(k) + " (need -1, -1)");
  }
  BlowupSurface s = *this;
  s.contracted_.push_back(p);
  return s;
}

BlowupSurface::Inertia BlowupSurface::inertia() const {
  const std::size_t n = rank();
  std::vector<DivisorClass> b;
  for (std::size_t i = 0; i < n; ++i) {
    auto u = zero();
    u[i] = 1;
    b.push_back(project(u));
  }
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = raw_intersect(b[i], b[j]);
  }

  Inertia out;
  while (!m.empty()) {
    const std::size_t sz = m.size();
    std::size_t piv = sz;
    for (std::size_t i = 0; i < sz; ++i) {
      if (m[i][i] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == sz) {
      // No diagonal pivot: fold a nonzero off-diagonal entry onto the diagonal.
      bool folded = false;
      for (std::size_t i = 0; i < sz && !folded; ++i) {
        for (std::size_t j = 0; j < sz && !folded; ++j) {
          if (i == j || m[i][j] == 0) continue;
          for (std::size_t k = 0; k < sz; ++k) m[i][k] += m[j][k];
          for (std::size_t k = 0; k < sz; ++k) m[k][i] += m[k][j];
          piv = i;
          folded = true;
        }
      }
      if (!folded) {
        out.zero += static_cast<int>(sz);
        break;
      }
    }
    const Rational d = m[piv][piv];
    (d > 0 ? out.positive : out.negative) += 1;
    std::vector<std::vector<Rational>> next;
    for (std::size_t i = 0; i < sz; ++i) {
      if (i == piv) continue;
      std::vector<Rational> row;
      for (std::size_t j = 0; j < sz; ++j) {
        if (j == piv) continue;
        row.push_back(m[i][j] - m[i][piv] * m[piv][j] / d);
      }
      next.push_back(std::move(row));
    }
    m = std::move(next);
  }
  return out;
}

void BlowupSurface::check_signature() const {
  const auto in = inertia();
  const int k = static_cast<int>(contracted_.size());
  if (in.positive != 1 || in.negative != static_cast<int>(rank()) - 1 - k || in.zero != k) {
    throw InvariantViolation("lattice signature (" + std::to_string(in.positive) + "," +
                             std::to_string(in.negative) + "," + std::to_string(in.zero) +
                             ") after " + std::to_string(k) + " contractions on rank " +
                             std::to_string(rank()));
  }
}

std::int64_t intersect(const BlowupSurface& s, const DivisorClass& a, const DivisorClass& b) {
  return s.intersect(a, b);
}

BlowupSurface blow_up(const BlowupSurface& s, std::string label) {
  return s.blow_up(std::move(label));
}

BlowupSurface contract(const BlowupSurface& s, const DivisorClass& e) { return s.contract(e); }

ElmOutcome elm_oracle(std::int64_t a, std::int64_t alpha, std::int64_t beta, ElmCenter center) {
  if (alpha < 1) throw InvalidInput("elm: alpha must be >= 1");
  if (center.mult < 0) throw InvalidInput("elm: negative multiplicity");
  if (center.mult > alpha) {
    throw InvalidInput("elm: center multiplicity " + std::to_string(center.mult) +
                       " > alpha = " + std::to_string(alpha) +
                       " would put the fibre inside the curve");
  }
  const BlowupSurface base = BlowupSurface::hirzebruch(a);
  const BlowupSurface up = base.blow_up("E");
  const auto c0 = up.basis("C0");
  const auto f = up.basis("f");
  const auto e = up.basis("E");
  const DivisorClass curve = alpha * c0 + beta * f - center.mult * e;
  const DivisorClass fibre = f - e;
  const BlowupSurface target = up.contract(fibre);

  // On F_0 the new negative section is the horizontal one through the center.
  const bool goes_up = center.on_c0 || a == 0;
  const DivisorClass new_c0 = goes_up ? c0 - e : target.project(c0);
  const DivisorClass new_f = target.project(e);

  ElmOutcome out;
  out.a = -target.intersect(new_c0, new_c0);
  out.alpha = target.intersect(curve, new_f);
  out.beta = target.intersect(curve, new_c0) + out.a * out.alpha;
  out.new_point_mult = up.intersect(curve, fibre);
  if (target.intersect(new_f, new_f) != 0 || target.intersect(new_c0, new_f) != 1) {
    throw InvariantViolation("elm_oracle: target basis is not a Hirzebruch basis");
  }
  return out;
}

}  // namespace cremona

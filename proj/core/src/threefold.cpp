#include "cremona/threefold.hpp"

#include "cremona/error.hpp"

namespace cremona {

std::vector<ScrollStep> scroll_reduction(std::int64_t d) {
  if (d < 2) throw InvalidInput("scroll_reduction: degree must be >= 2");
  std::vector<ScrollStep> out;
  for (std::int64_t e = d; e >= 2; --e) {
    ScrollStep s;
    s.state = {e, e - 1};
    s.next_degree = 3 * e - 2 * (e - 1) - 3;
    s.next_line_mult = 2 * e - (e - 1) - 3;
    if (s.next_degree != e - 1 || s.next_line_mult != e - 2) {
      throw InvariantViolation("scroll_reduction: step at degree " + std::to_string(e) +
                               " gives (" + std::to_string(s.next_degree) + ", " +
                               std::to_string(s.next_line_mult) + ")");
    }
    out.push_back(s);
  }
  return out;
}

Certificate ci_projection_certificate(const ProjectionPair& p) {
  if (p.a < 2 || p.b < p.a) throw InvalidInput("ci_projection_certificate: needs 2 <= a <= b");
  if (p.k < 1) throw InvalidInput("ci_projection_certificate: needs k >= 1");
  auto cert = noether_fano_certificate(p.k + 1, p.a * p.b, p.a * p.b - 1, p.a);
  cert.data["a"] = std::to_string(p.a);
  cert.data["b"] = std::to_string(p.b);
  cert.data["k"] = std::to_string(p.k);
  return cert;
}

}  // namespace cremona

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace cremona {

using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws InvalidInput when den == 0.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Canonical "p/q" text, always with an explicit denominator ("0/1", "-5/7").
std::string to_string(const Rational& q);

/// Accepts "p/q" or "p". Throws InvalidInput on anything else.
Rational parse_rational(std::string_view text);

}  // namespace cremona

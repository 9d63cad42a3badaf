#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace carrier {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on garbage.
Rational parse_rational(const std::string& text);

inline Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace carrier

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace rootsheaf {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Non-negative remainder for b > 0.
inline Integer mod_floor(const Integer& a, const Integer& b) {
  Integer r = a % b;
  if (r < 0) r += b;
  return r;
}

inline std::int64_t to_i64(const Integer& a) { return a.convert_to<std::int64_t>(); }

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Rational& a) {
  if (boost::multiprecision::denominator(a) == 1) return boost::multiprecision::numerator(a).str();
  return boost::multiprecision::numerator(a).str() + "/" + boost::multiprecision::denominator(a).str();
}

}  // namespace rootsheaf

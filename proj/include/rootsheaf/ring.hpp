#pragma once

// Coefficient rings: QQ, GF(p), and polynomial rings over them in named
// variables. Elements are exact expanded polynomials.

#include "rootsheaf/integer.hpp"
#include "rootsheaf/word.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rootsheaf {

/// QQ when characteristic() == 0, otherwise GF(p).
class Field {
 public:
  Field() = default;
  explicit Field(std::int64_t p);

  std::int64_t characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }

  /// Canonical representative: unchanged over QQ, a residue in [0, p) over GF(p).
  /// Throws InputError when a denominator vanishes mod p.
  Rational reduce(const Rational& a) const;
  Rational inverse(const Rational& a) const;

  std::string to_string() const;
  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::int64_t p_ = 0;
};

/// Exponent vector -> nonzero coefficient.
struct Poly {
  std::map<Word, Rational> terms;

  bool is_zero() const noexcept { return terms.empty(); }
  friend bool operator==(const Poly&, const Poly&) = default;
};

class BaseRing {
 public:
  BaseRing() = default;
  BaseRing(Field field, std::vector<std::string> variables);

  const Field& field() const noexcept { return field_; }
  const std::vector<std::string>& variables() const noexcept { return vars_; }
  std::size_t num_variables() const noexcept { return vars_.size(); }
  bool is_field() const noexcept { return vars_.empty(); }
  std::int64_t characteristic() const noexcept { return field_.characteristic(); }

  Poly zero() const { return {}; }
  Poly one() const { return constant(1); }
  Poly constant(const Rational& c) const;
  Poly variable(std::size_t i) const;

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, const Rational& c) const;
  Poly pow(const Poly& a, std::int64_t e) const;

  bool is_constant(const Poly& a) const;
  /// Units of a polynomial ring over a field are the nonzero constants.
  bool is_unit(const Poly& a) const { return !a.is_zero() && is_constant(a); }
  Rational constant_value(const Poly& a) const;
  Poly inverse_unit(const Poly& a) const;

  /// Leading exponent/coefficient in graded-lex order (first variable largest).
  const Word& leading_exponent(const Poly& a) const;
  const Rational& leading_coefficient(const Poly& a) const;

  /// q with q * b = a when it exists.
  std::optional<Poly> divide(const Poly& a, const Poly& b) const;

  Rational evaluate(const Poly& a, const std::vector<Rational>& point) const;

  /// Ring-element literal: integers, fractions, variables, + - * ^ and parentheses.
  Poly parse(std::string_view text) const;
  std::string format(const Poly& a) const;
  /// "QQ", "GF(5)", "QQ[s,u]".
  std::string to_string() const;

  friend bool operator==(const BaseRing&, const BaseRing&) = default;

 private:
  Poly normalize(std::map<Word, Rational> terms) const;

  Field field_;
  std::vector<std::string> vars_;
};

/// Parse "QQ", "GF(p)", "QQ[s]", "GF(5)[s,u]".
BaseRing parse_base_ring(std::string_view text);

}  // namespace rootsheaf

#pragma once

// Kato charts: a monoid P mapped into the multiplicative monoid of a base
// ring, with the stalk and global quotients by the unit-valued kernel.

#include "rootsheaf/monoid.hpp"
#include "rootsheaf/ring.hpp"

#include <vector>

namespace rootsheaf {

class KatoChart {
 public:
  /// Validates that every relation u = v of P gives equal value monomials;
  /// throws ValidationError with locus "relation <k>" otherwise.
  KatoChart(FpMonoid monoid, BaseRing ring, std::vector<Poly> values);

  const FpMonoid& monoid() const noexcept { return monoid_; }
  const BaseRing& ring() const noexcept { return ring_; }
  const std::vector<Poly>& values() const noexcept { return values_; }

  /// prod f(g_i)^{w_i}
  Poly value(const Word& w) const;

 private:
  FpMonoid monoid_;
  BaseRing ring_;
  std::vector<Poly> values_;
};

struct StalkData {
  SubmonoidGens kernel;  // generated by the generators invertible at the point
  Quotient stalk;        // P / kernel
  bool minimal = false;  // kernel trivial, so P is the stalk itself
};

/// The quotient of P seen at a rational point: a generator becomes a unit
/// of the local ring exactly when its value does not vanish there.
StalkData stalk_df(const KatoChart& chart, const std::vector<Rational>& point);

struct DfQuotient {
  SubmonoidGens kernel;               // closure of the unit-valued generators
  Quotient quotient;                  // P / kernel
  std::vector<Word> section;          // per generator: its class in normal form
  std::vector<Poly> discrepancies;    // per generator: f(g_i) = tau_i * f(section_i)
};

/// Throws ResourceError if a discrepancy between vanishing values needs a
/// kernel witness beyond `search_bound`.
DfQuotient df_quotient(const KatoChart& chart, std::int64_t search_bound = 8);

struct GradingPiece {
  std::vector<Word> classes;  // normal forms p with iota(p) = u
  bool complete = true;       // false when a bounded enumeration was cut off
};

/// Basis of the degree-u part of Z[P] for the natural P^gp-grading.
GradingPiece algebra_grading(const FpMonoid& p, const IntVector& u, std::int64_t search_bound = 8);

}  // namespace rootsheaf

#pragma once

// Finitely presented modules R^g / (relations) over a BaseRing. Submodule
// membership uses a module Groebner basis (position over term, graded-lex
// within a position), which is plain row reduction when R is a field.

#include "rootsheaf/matrix.hpp"

#include <string>
#include <vector>

namespace rootsheaf {

using RingVector = std::vector<Poly>;

class SubmoduleBasis {
 public:
  SubmoduleBasis() = default;
  SubmoduleBasis(const BaseRing& ring, std::size_t rank, const std::vector<RingVector>& generators);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<RingVector>& basis() const noexcept { return basis_; }

  /// Canonical remainder of v modulo the submodule.
  RingVector reduce(RingVector v) const;
  bool contains(const RingVector& v) const;

 private:
  BaseRing ring_;
  std::size_t rank_ = 0;
  std::vector<RingVector> basis_;
};

/// R^gens modulo the span of `relations` (each of length gens).
struct Presentation {
  std::size_t gens = 0;
  std::vector<RingVector> relations;

  static Presentation free(std::size_t n) { return {n, {}}; }
};

/// Both presentations live over `ring`; `m` has target.gens rows and
/// source.gens columns. True iff m maps source relations into target ones.
bool is_well_defined(const BaseRing& ring, const Presentation& source, const Presentation& target,
                     const RingMatrix& m);

/// Whether a and b induce the same map into the target module.
bool equal_modulo(const BaseRing& ring, const Presentation& target, const RingMatrix& a, const RingMatrix& b);

/// Presentation with generators removed along unit pivots, plus the
/// mutually inverse isomorphisms: to_new (new x old) and from_new (old x new).
/// Over a field the result is free.
struct Pruned {
  Presentation module;
  RingMatrix to_new;
  RingMatrix from_new;
};

Pruned prune(const BaseRing& ring, const Presentation& p);

/// Human-readable module summary: "R^2", "0", "R/(s)", "R^2/(...)".
std::string describe(const BaseRing& ring, const Presentation& p);

}  // namespace rootsheaf

#pragma once

// Kummer homomorphisms j : P -> Q (injective, every element of Q has a
// positive multiple in j(P)) and the bookkeeping of Q^gp modulo j(P^gp).

#include "rootsheaf/monoid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rootsheaf {

struct KummerCertificate {
  Verdict is_kummer = Verdict::unknown;
  Verdict injective = Verdict::unknown;
  /// Per Q-generator g: the least m > 0 with m*g in j(P), 0 when none was found.
  std::vector<std::int64_t> multipliers;
  /// Per Q-generator: a word p of P with j(p) ~ multipliers[g] * g.
  std::vector<Word> multiplier_preimages;
  std::string reason;
};

/// Exact when P and Q are integral; otherwise a search over words of degree
/// up to `search_bound` that only ever answers "holds" with a witness and
/// "fails" with a counterexample or a group-level obstruction.
KummerCertificate is_kummer(const MonoidHom& j, std::int64_t search_bound = 8,
                            std::size_t hilbert_budget = 200000);

class DenominatorSystem {
 public:
  /// Requires P and Q integral and j Kummer; throws ValidationError otherwise
  /// (locus "integral" or "kummer").
  explicit DenominatorSystem(MonoidHom j, std::int64_t search_bound = 8);

  const MonoidHom& j() const noexcept { return j_; }
  const FpMonoid& source() const noexcept { return j_.source(); }
  const FpMonoid& target() const noexcept { return j_.target(); }
  const LatticeMap& gp_map() const noexcept { return gp_; }
  const FgAbelianGroup& index_group() const noexcept { return cokernel_.group(); }
  const Integer& index() const noexcept { return index_; }
  const KummerCertificate& certificate() const noexcept { return certificate_; }

  /// Complete transversal of j(P^gp) in Q^gp, in canonical coordinates: the
  /// degree of the first word of Q in each class, sorted by fraction
  /// coordinates when there are any. Slot 0 is the class of 0.
  const std::vector<IntVector>& fundamental_domain() const noexcept { return domain_; }
  std::size_t slot_of(const IntVector& w) const { return slot_of_class_[cokernel_.index_of(w)]; }
  IntVector fold(const IntVector& w) const { return fundamental_domain()[slot_of(w)]; }
  /// The u in P^gp with w = fold(w) + j(u).
  IntVector period(const IntVector& w) const;
  /// Some u with j(u) = w, for w in j(P^gp).
  IntVector preimage(const IntVector& w) const;

  /// The first word q of Q, by degree and then lexicographically (first
  /// generator largest), with iota(q) = w modulo j(P^gp).
  Word lift_degree(const IntVector& w) const;

  /// Whether degrees can be written as rational multiples of P^gp
  /// coordinates: both groups torsion-free.
  bool has_fraction_coordinates() const noexcept;
  /// r in Q^{rank} with w = j(r), i.e. w written in P^gp units ("1/2").
  std::vector<Rational> to_fractions(const IntVector& w) const;
  IntVector from_fractions(const std::vector<Rational>& r) const;
  std::string format_degree(const IntVector& w) const;

 private:
  MonoidHom j_;
  LatticeMap gp_;
  Cokernel cokernel_;
  std::vector<IntVector> domain_;
  std::vector<Word> lifts_;                // per slot
  std::vector<std::size_t> slot_of_class_;  // cokernel index -> slot
  Integer index_;
  KummerCertificate certificate_;
};

}  // namespace rootsheaf

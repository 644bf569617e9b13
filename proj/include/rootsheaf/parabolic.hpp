#pragma once

// Parabolic sheaves in chart form. A sheaf is stored on the fundamental
// domain of Q^gp / j(P^gp): one R-module per slot and, for every slot v and
// Q-generator g, a map E_v -> E_{fold(v + g)}. The pseudo-period maps are
// identities on slots, so all twisting lives in the maps themselves.

#include "rootsheaf/rootalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rootsheaf {

using AlgebraPtr = std::shared_ptr<const GradedRootAlgebra>;

struct WeightArrow {
  bool exists = false;
  Word witness;  // q in Q with v + iota(q) = v'
};

/// Is there an arrow v -> v' in the weight category of Q, i.e. v' - v in iota(Q)?
WeightArrow weight_arrow(const FpMonoid& q, const IntVector& v, const IntVector& v2,
                         std::size_t hilbert_budget = 200000);

class ParabolicSheaf {
 public:
  ParabolicSheaf() = default;
  /// Unvalidated; use make_parabolic for checked construction.
  ParabolicSheaf(AlgebraPtr algebra, std::vector<Presentation> slots, std::vector<std::vector<RingMatrix>> maps);

  const GradedRootAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const noexcept { return algebra_; }
  std::size_t num_slots() const noexcept { return slots_.size(); }
  const Presentation& slot(std::size_t s) const { return slots_[s]; }
  const std::vector<Presentation>& slots() const noexcept { return slots_; }
  /// E_v -> E_{fold(v + iota g)}.
  const RingMatrix& map(std::size_t slot, std::size_t generator) const { return maps_[slot][generator]; }
  const std::vector<std::vector<RingMatrix>>& maps() const noexcept { return maps_; }
  /// Composite along a word of Q, starting at `slot`.
  RingMatrix map_word(std::size_t slot, const Word& q) const;

  bool is_zero() const;

 private:
  AlgebraPtr algebra_;
  std::vector<Presentation> slots_;
  std::vector<std::vector<RingMatrix>> maps_;
};

/// Checks shapes (InputError), then that every map respects slot relations,
/// generator maps commute, Q's relations hold and x^{j(p)} acts as f(p) on
/// every slot. Violations throw ValidationError whose locus names the check
/// and slot ("period a at 1/2") and whose message shows both composites.
ParabolicSheaf make_parabolic(AlgebraPtr algebra, std::vector<Presentation> slots,
                              std::vector<std::vector<RingMatrix>> maps);
void validate(const ParabolicSheaf& e);

/// All slots zero.
ParabolicSheaf zero_sheaf(AlgebraPtr algebra);

/// E[v]_w = E_{v + w}.
ParabolicSheaf twist(const ParabolicSheaf& e, const IntVector& v);

/// One matrix per slot, E_v -> E'_v.
struct ParabolicMorphism {
  std::vector<RingMatrix> slots;
};

bool is_morphism(const ParabolicSheaf& source, const ParabolicSheaf& target, const ParabolicMorphism& f);
ParabolicMorphism compose(const ParabolicSheaf& target, const ParabolicMorphism& g, const ParabolicMorphism& f);
ParabolicMorphism identity_morphism(const ParabolicSheaf& e);
/// Slotwise isomorphism test; requires a field (UnsupportedError otherwise).
bool is_isomorphism(const ParabolicSheaf& source, const ParabolicSheaf& target, const ParabolicMorphism& f);

/// Over a field: an isomorphic sheaf with free slots, and the isomorphism to it.
struct FreeForm {
  ParabolicSheaf sheaf;
  ParabolicMorphism to_free;    // E -> sheaf
  ParabolicMorphism from_free;  // sheaf -> E
};
FreeForm free_form(const ParabolicSheaf& e);

/// Morphisms E -> E'[v] as a vector space, with an explicit basis.
struct HomSpace {
  std::size_t dimension = 0;
  std::vector<ParabolicMorphism> basis;
};
/// Requires a field. Both sheaves must have free slots (see free_form).
HomSpace morphisms(const ParabolicSheaf& e, const ParabolicSheaf& e2);

/// Internal Hom: slot v is Hom(E, E'[v]), connecting maps are post-composition
/// with the maps of E'. Field coefficients only (UnsupportedError otherwise).
ParabolicSheaf parabolic_hom(const ParabolicSheaf& e, const ParabolicSheaf& e2);

/// E (x) E', computed as Phi(Psi(E) (x)_B Psi(E')). Field coefficients only.
ParabolicSheaf parabolic_tensor(const ParabolicSheaf& e, const ParabolicSheaf& e2);

/// Per-slot summary, one line per slot and map, in document syntax.
std::string format_parabolic(const ParabolicSheaf& e, const std::string& name, const std::string& algebra_name);

}  // namespace rootsheaf

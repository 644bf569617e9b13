#pragma once

// The Q^gp-graded algebra B = R[P^gp] (x)_{Z[P]} Z[Q] of a chart P -> R and a
// Kummer map j : P -> Q, described piece by piece.
//
// The degree-w piece is spanned by x^q t^u with iota(q) + j(u) = w, subject
// to x^{q + j(p)} t^u = f(p) x^q t^{u + p}. It is generated by the q that
// are minimal for divisibility by j(P) (finitely many: all of them lie in
// the box c_g < m_g of Kummer multipliers), and the relations come from the
// minimal common multiples of pairs of those generators. Both are computed
// exactly from lattice slices, since P and Q are integral.
//
// Bases are chosen per class of w modulo j(P^gp), so multiplication by t^u
// is the identity matrix and x^g acts by a matrix depending only on classes.

#include "rootsheaf/chart.hpp"
#include "rootsheaf/kummer.hpp"
#include "rootsheaf/module.hpp"

#include <string>
#include <vector>

namespace rootsheaf {

/// The basis element x^q t^u of a piece.
struct PieceGenerator {
  Word q;
  IntVector u;
};

struct GradedPiece {
  IntVector degree;
  std::vector<PieceGenerator> generators;
  Presentation module;  // relations among the generators, coefficients in R
};

class GradedRootAlgebra {
 public:
  /// Checks that chart and denominators share P, and that P/K_A -> Q/K_B
  /// is injective on words of degree <= injectivity_height (ValidationError
  /// with locus "injectivity" otherwise).
  GradedRootAlgebra(KatoChart chart, DenominatorSystem denominators, std::int64_t injectivity_height = 4);

  const KatoChart& chart() const noexcept { return chart_; }
  const DenominatorSystem& denominators() const noexcept { return den_; }
  const BaseRing& ring() const noexcept { return chart_.ring(); }
  const FpMonoid& q() const noexcept { return den_.target(); }
  const FgAbelianGroup& degree_group() const noexcept { return den_.target().group_presentation().group(); }

  /// P free, Q free of the same rank, j diagonal: every piece is free of rank one.
  bool simplicial() const noexcept { return simplicial_; }
  std::size_t num_slots() const noexcept { return slot_pieces_.size(); }
  const IntVector& slot_degree(std::size_t slot) const { return den_.fundamental_domain()[slot]; }
  std::size_t slot_of(const IntVector& w) const { return den_.slot_of(w); }

  /// The piece of degree w (generators carry the t-exponent for this w).
  GradedPiece piece(const IntVector& w) const;
  /// The piece of a fundamental-domain slot.
  const GradedPiece& slot_piece(std::size_t slot) const { return slot_pieces_[slot]; }

  /// Matrix of multiplication by x^g from slot v to slot fold(v + iota g).
  const RingMatrix& action(std::size_t slot, std::size_t generator) const { return actions_[slot][generator]; }
  /// Slot reached from `slot` by multiplying with x^g.
  std::size_t action_target(std::size_t slot, std::size_t generator) const { return targets_[slot][generator]; }
  /// Composite matrix of x^q (q any word of Q) starting at `slot`.
  RingMatrix action_word(std::size_t slot, const Word& q) const;
  std::size_t word_target(std::size_t slot, const Word& q) const;

  /// Simplicial only: c(w, g) with x^g e_w = c(w, g) e_{w + iota g}.
  Poly structure_constant(const IntVector& w, std::size_t generator) const;

  /// Q-generators whose x^g is a unit of B, and the kernel they generate.
  const std::vector<bool>& unit_generators() const noexcept { return unit_generators_; }
  const SubmonoidGens& unit_kernel() const noexcept { return kb_; }

  std::string format_monomial(const Word& q, const IntVector& u) const;
  std::string t_symbol(std::size_t k) const;
  /// Deterministic text description: symbols, degrees, defining relations,
  /// slots with their pieces and the action of every Q-generator.
  std::string dump() const;

 private:
  void build_pieces();
  void find_units();
  void check_injectivity(std::int64_t height) const;
  std::optional<Word> divides_by_image(const Word& small, const Word& big) const;

  KatoChart chart_;
  DenominatorSystem den_;
  bool simplicial_ = false;
  std::vector<GradedPiece> slot_pieces_;
  std::vector<std::vector<RingMatrix>> actions_;
  std::vector<std::vector<std::size_t>> targets_;
  std::vector<bool> unit_generators_;
  SubmonoidGens kb_;
};

struct StackClass {
  bool finite = true;
  bool tame = true;
  bool deligne_mumford = false;
  Integer index;
  std::int64_t characteristic = 0;
};

/// The root stack is finite and tame; it is Deligne-Mumford exactly when
/// the index |Q^gp / j(P^gp)| is prime to the characteristic.
StackClass classify_stack(const Integer& index, std::int64_t characteristic);
StackClass classify_stack(const GradedRootAlgebra& b);

}  // namespace rootsheaf

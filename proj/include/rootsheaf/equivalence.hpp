#pragma once

// Graded B-modules given by homogeneous presentations, and the functors
// Phi (graded module -> parabolic sheaf, degree by degree over the
// fundamental domain) and Psi (parabolic sheaf -> graded module).

#include "rootsheaf/parabolic.hpp"

#include <string>
#include <vector>

namespace rootsheaf {

/// coeff * x^q * t^u
struct BTerm {
  Poly coeff;
  Word q;
  IntVector u;
};
using BElement = std::vector<BTerm>;

struct GradedRelation {
  IntVector degree;
  std::vector<BElement> entries;  // one per generator, possibly empty
};

class GradedPresentation {
 public:
  GradedPresentation() = default;
  /// Throws ValidationError (locus "relation k") unless every term of every
  /// relation has degree = relation degree - generator degree.
  GradedPresentation(AlgebraPtr algebra, std::vector<IntVector> degrees, std::vector<GradedRelation> relations,
                     std::vector<std::string> names = {});

  static GradedPresentation free(AlgebraPtr algebra, std::vector<IntVector> degrees);

  const GradedRootAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const noexcept { return algebra_; }
  std::size_t num_generators() const noexcept { return degrees_.size(); }
  const std::vector<IntVector>& degrees() const noexcept { return degrees_; }
  const std::vector<GradedRelation>& relations() const noexcept { return relations_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  AlgebraPtr algebra_;
  std::vector<IntVector> degrees_;
  std::vector<GradedRelation> relations_;
  std::vector<std::string> names_;
};

/// Degree of a term: iota(q) + j(u).
IntVector term_degree(const GradedRootAlgebra& b, const BTerm& t);

/// Multiplication by a homogeneous element, as a matrix from the piece of
/// `slot` to the piece it lands in.
RingMatrix act(const GradedRootAlgebra& b, const BElement& e, std::size_t slot);

/// N[v]_w = N_{v + w}.
GradedPresentation shift(const GradedPresentation& n, const IntVector& v);
/// Generators are pairs (i, i') in row-major order.
GradedPresentation tensor(const GradedPresentation& n, const GradedPresentation& n2);

/// The degree-v part of N: the direct sum of the pieces B_{v - a_i}, modulo
/// piece relations and the multiples of the relations of N.
struct Strand {
  std::vector<std::size_t> offsets;      // first coordinate of summand i
  std::vector<std::size_t> piece_slots;  // slot of B_{v - a_i}
  Presentation module;
};
Strand strand(const GradedPresentation& n, const IntVector& v);
/// Columns: the multiples b * rho for b running over the basis of B_{v - deg rho}.
RingMatrix relation_multiples(const GradedPresentation& n, std::size_t relation, const Strand& s, const IntVector& v);

struct PhiResult {
  ParabolicSheaf sheaf;
  std::vector<Strand> strands;  // per slot, before pruning
  std::vector<Pruned> pruned;   // strand module -> slot of the sheaf
};
PhiResult phi_detail(const GradedPresentation& n);
ParabolicSheaf phi(const GradedPresentation& n);

/// Generators: the slot generators of E in their slot degrees. Relations:
/// the slot relations and x^g e = sum m(v, g) t^u e' for every generator.
GradedPresentation psi(const ParabolicSheaf& e);

/// A degree-preserving map of presentations sending generator i to
/// sum_l c_l t^{u_l} e'_l; the t-exponents are implied by the degrees.
struct GeneratorImages {
  std::vector<std::vector<std::pair<std::size_t, Poly>>> images;
};
/// The induced morphism Phi(N) -> Phi(N'), slot by slot.
ParabolicMorphism phi_morphism(const PhiResult& source, const PhiResult& target, const GradedPresentation& n,
                               const GradedPresentation& n2, const GeneratorImages& f);

struct RoundTrip {
  bool iso = false;
  std::vector<RingMatrix> witnesses;  // one per slot
  std::string failure;                // first failing slot, when not iso
};
/// E -> Phi(Psi(E)), identity on the chosen generators.
RoundTrip roundtrip_sheaf(const ParabolicSheaf& e);
/// N -> Psi(Phi(N)), compared degree by degree over the fundamental domain.
RoundTrip roundtrip_presentation(const GradedPresentation& n);

/// dim of degree-preserving homs N -> N'[v], solved directly on strands.
/// Field coefficients only.
std::size_t graded_hom_dimension(const GradedPresentation& n, const GradedPresentation& n2, const IntVector& v);

struct MonoidalReport {
  bool tensor_iso = false;
  std::vector<std::size_t> graded_hom;     // per slot
  std::vector<std::size_t> parabolic_hom;  // per slot
  bool hom_agree = false;
  std::string failure;
};
/// Phi(N (x) N') against Phi(N) (x) Phi(N'), and Hom dimensions on both sides.
MonoidalReport monoidal_compat_check(const GradedPresentation& n, const GradedPresentation& n2);

std::string format_element(const GradedRootAlgebra& b, const BElement& e, const std::string& generator);
/// Document syntax: one "gen" line per generator and one "rel" line per relation.
std::string format_graded(const GradedPresentation& n, const std::string& name, const std::string& algebra_name);

}  // namespace rootsheaf

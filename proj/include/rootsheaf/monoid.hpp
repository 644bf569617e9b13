#pragma once

// Finitely presented commutative monoids <g_1..g_n | u_k = v_k>, their
// homomorphisms, and the kernel / quotient / cokernel constructions.

#include "rootsheaf/lattice.hpp"
#include "rootsheaf/rewriting.hpp"
#include "rootsheaf/word.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rootsheaf {

struct Relation {
  Word lhs;
  Word rhs;
};

/// Three-valued answer of a semi-decision.
enum class Verdict { holds, fails, unknown };

std::string to_string(Verdict v);

class FpMonoid {
 public:
  /// The zero monoid (no generators).
  FpMonoid();
  FpMonoid(std::size_t num_generators, std::vector<Relation> relations, CompletionLimits limits = {});
  FpMonoid(std::vector<std::string> generator_names, std::vector<Relation> relations, CompletionLimits limits = {});

  static FpMonoid free(std::size_t n);
  static FpMonoid free(std::vector<std::string> generator_names);

  std::size_t num_generators() const noexcept;
  const std::vector<std::string>& generator_names() const noexcept;
  const std::vector<Relation>& relations() const noexcept;
  const RewriteSystem& rewrite_system() const noexcept;
  const CompletionLimits& limits() const noexcept;

  /// Throws InputError unless w has one non-negative exponent per generator.
  void check_word(const Word& w) const;

  Word normal_form(const Word& w) const;
  bool congruent(const Word& a, const Word& b) const { return normal_form(a) == normal_form(b); }

  /// Z^n modulo the relation lattice; iota(w) is the class of w in M^gp.
  const AbelianPresentation& group_presentation() const noexcept;
  IntVector iota(const Word& w) const { return group_presentation().canonical(w); }

  /// unit_generators()[i] is true iff g_i is invertible. Computed exactly on
  /// first use by localizing at g_i and eliminating the new inverse.
  const std::vector<bool>& unit_generators() const;

  /// Whether a + c ~ b + c implies a ~ b. Cached after the first call.
  bool is_integral(std::size_t hilbert_budget = 200000) const;

  /// "2a+b" style, "0" for the empty word.
  std::string format(const Word& w) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

class MonoidHom {
 public:
  /// Validates every source relation against the target's word problem;
  /// throws ValidationError with locus "relation <k>" otherwise.
  MonoidHom(FpMonoid source, FpMonoid target, std::vector<Word> images);

  static MonoidHom identity(const FpMonoid& m);

  const FpMonoid& source() const noexcept { return source_; }
  const FpMonoid& target() const noexcept { return target_; }
  const std::vector<Word>& images() const noexcept { return images_; }

  /// Image of w, unreduced (sum of generator images).
  Word apply_raw(const Word& w) const;
  /// Image of w in target normal form.
  Word apply(const Word& w) const { return target_.normal_form(apply_raw(w)); }

  /// Target generators x source generators.
  IntMatrix matrix() const;
  /// Induced map on groupifications, in canonical coordinates.
  LatticeMap gp() const;

 private:
  FpMonoid source_;
  FpMonoid target_;
  std::vector<Word> images_;
};

/// g after f.
MonoidHom compose(const MonoidHom& g, const MonoidHom& f);

/// Generators of a submonoid, reduced to normal form, without zeros or
/// repeats, in the order first encountered.
class SubmonoidGens {
 public:
  SubmonoidGens() = default;
  SubmonoidGens(FpMonoid ambient, const std::vector<Word>& generators);

  const FpMonoid& ambient() const noexcept { return ambient_; }
  const std::vector<Word>& generators() const noexcept { return generators_; }

 private:
  FpMonoid ambient_;
  std::vector<Word> generators_;
};

struct Classification {
  bool integral = false;
  bool sharp = false;
  bool torsion_free = false;
  FgAbelianGroup group;
  std::vector<IntVector> iota;  // per generator
  std::vector<bool> units;      // per generator
};

Classification classify(const FpMonoid& m, std::size_t hilbert_budget = 200000);

/// Minimal nonzero words a of the source (as words in N^n_source) with
/// sum a_i images_i ~ 0 in `target`. Every such a is a sum of these.
std::vector<Word> zero_preimage_basis(const FpMonoid& target, const std::vector<Word>& images,
                                      std::size_t hilbert_budget = 200000);

SubmonoidGens kernel(const MonoidHom& f, std::size_t hilbert_budget = 200000);

struct Quotient {
  FpMonoid monoid;
  MonoidHom projection;
};

/// M with s = 0 imposed for every generator s of S.
Quotient quotient(const FpMonoid& m, const SubmonoidGens& s);

/// Smallest kernel containing S, namely the kernel of M -> M/S.
SubmonoidGens kernel_closure(const FpMonoid& m, const SubmonoidGens& s, std::size_t hilbert_budget = 200000);

struct CokernelAnalysis {
  Verdict is_cokernel = Verdict::unknown;
  SubmonoidGens kernel;
  FpMonoid cokernel;                     // source / kernel
  std::optional<MonoidHom> inverse;      // target -> source/kernel when is_cokernel holds
  std::optional<MonoidHom> free_cover;   // N^r -> source, cokernel = target
  std::string reason;
};

/// Decides whether f is the cokernel of its kernel, i.e. whether the induced
/// A/ker(f) -> B is an isomorphism. Preimages of target generators are found
/// exactly over integral targets and by a search of extra degree up to
/// `search_bound` otherwise; an exhausted search yields Verdict::unknown.
CokernelAnalysis cokernel_analyze(const MonoidHom& f, std::int64_t search_bound = 8,
                                  std::size_t hilbert_budget = 200000);

}  // namespace rootsheaf

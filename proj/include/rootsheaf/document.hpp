#pragma once

// The text input language: a single file of named declarations.
//
//   ring R = QQ[s];
//   monoid P { gens a; }
//   monoid Q { gens x; }
//   hom j : P -> Q { a -> 2x; }
//   chart F : P -> R { a -> s; }
//   algebra B { chart F; kummer j; }
//   parabolic E over B { slot 0 : R; slot 1/2 : R/(s); map x at 1/2 = [[s]]; }
//   gradedmodule N over B { gen e at 0; rel x*e; }
//
// Declarations may appear in any order. Syntax errors and unresolved names
// are reported at parse time; objects are built (and validated) on first use.

#include "rootsheaf/equivalence.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rootsheaf {

struct DocumentOptions {
  CompletionLimits limits;
  std::int64_t search_bound = 8;
  std::int64_t piece_height = 4;
};

enum class DeclKind { ring, monoid, hom, chart, algebra, parabolic, graded };
std::string to_string(DeclKind k);

class Document {
 public:
  /// Throws InputError with "line L, column C: ..." on syntax or reference errors.
  static Document parse(const std::string& text, DocumentOptions options = {});

  std::optional<DeclKind> kind_of(const std::string& name) const;
  /// Declaration names in source order.
  std::vector<std::string> names() const;
  /// Name of the algebra a parabolic sheaf or graded module is declared over.
  std::string algebra_of(const std::string& name) const;

  BaseRing ring(const std::string& name) const;
  FpMonoid monoid(const std::string& name) const;
  MonoidHom hom(const std::string& name) const;
  KatoChart chart(const std::string& name) const;
  AlgebraPtr algebra(const std::string& name) const;
  /// Validated with make_parabolic.
  ParabolicSheaf parabolic(const std::string& name) const;
  /// Built without validation, for reporting violations with their locus.
  ParabolicSheaf parabolic_unchecked(const std::string& name) const;
  GradedPresentation graded(const std::string& name) const;

  /// A degree literal ("1/2", "(1/2, 1/3)", "[1, 0]") in the degree group of B.
  IntVector degree(const GradedRootAlgebra& b, const std::string& text) const;

  struct Impl;

 private:
  std::shared_ptr<Impl> impl_;
};

}  // namespace rootsheaf

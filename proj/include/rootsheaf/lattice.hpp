#pragma once

// Integer matrices, Smith normal form, finitely generated abelian groups
// in canonical form, and maps between them.

#include "rootsheaf/integer.hpp"
#include "rootsheaf/word.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rootsheaf {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);
  /// [a | b]
  static IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  IntVector apply(const IntVector& x) const;
  IntMatrix transpose() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Exact determinant (fraction-free elimination). Square matrices only.
Integer determinant(const IntMatrix& m);

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... with
/// the nonzero entries first. U_inv and V_inv are the exact inverses.
struct SmithForm {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  std::size_t rank = 0;

  Integer diagonal(std::size_t i) const { return i < D.rows() && i < D.cols() ? D(i, i) : Integer(0); }
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Z^free_rank + Z/t_1 + ... + Z/t_k with t_i >= 2 and t_i | t_{i+1}.
/// Elements are stored in canonical coordinates: the torsion residues
/// (in [0, t_i)) first, then the free coordinates.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Integer>& torsion() const noexcept { return torsion_; }
  std::size_t dimension() const noexcept { return torsion_.size() + free_rank_; }

  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  bool is_torsion_free() const noexcept { return torsion_.empty(); }
  /// Order when finite.
  std::optional<Integer> order() const;

  IntVector zero() const { return IntVector(dimension()); }
  IntVector normalize(IntVector x) const;
  IntVector add(const IntVector& a, const IntVector& b) const;
  IntVector sub(const IntVector& a, const IntVector& b) const;
  IntVector neg(const IntVector& a) const;
  IntVector scale(const IntVector& a, const Integer& k) const;
  bool is_zero(const IntVector& a) const;

  /// Relation columns (diagonal torsion moduli) as a matrix dimension x #torsion.
  IntMatrix relation_matrix() const;

  std::string to_string() const;
  std::string element_to_string(const IntVector& x) const;

  friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Z^n modulo the span of given relation columns, with the isomorphism to
/// its canonical FgAbelianGroup.
class AbelianPresentation {
 public:
  AbelianPresentation() = default;
  /// `relations` has n rows; each column is a relation vector.
  AbelianPresentation(std::size_t n, const IntMatrix& relations);

  std::size_t ambient_rank() const noexcept { return n_; }
  const FgAbelianGroup& group() const noexcept { return group_; }

  /// Image of x in Z^n under the quotient map, in canonical coordinates.
  IntVector canonical(const IntVector& x) const;
  IntVector canonical(const Word& w) const;
  /// Some preimage in Z^n of a canonical element.
  IntVector lift(const IntVector& g) const;
  /// The matrix of the quotient map Z^n -> group (before torsion reduction).
  const IntMatrix& projection() const noexcept { return projection_; }

 private:
  std::size_t n_ = 0;
  FgAbelianGroup group_;
  IntMatrix projection_;  // dimension x n
  IntMatrix section_;     // n x dimension
};

/// Group homomorphism between canonical groups, given on canonical coordinates.
class LatticeMap {
 public:
  LatticeMap() = default;
  LatticeMap(FgAbelianGroup source, FgAbelianGroup target, IntMatrix matrix);

  const FgAbelianGroup& source() const noexcept { return source_; }
  const FgAbelianGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  IntVector apply(const IntVector& u) const;
  bool is_injective() const;
  /// Some u with apply(u) = w, or nothing if w is not in the image.
  std::optional<IntVector> preimage(const IntVector& w) const;

 private:
  FgAbelianGroup source_;
  FgAbelianGroup target_;
  IntMatrix matrix_;
};

/// target / image(f), with the quotient map and a transversal when finite.
class Cokernel {
 public:
  explicit Cokernel(const LatticeMap& f);

  const FgAbelianGroup& group() const noexcept { return quotient_.group(); }
  std::optional<Integer> order() const { return quotient_.group().order(); }
  /// Class of a target element, in the cokernel's canonical coordinates.
  IntVector coordinates(const IntVector& target_element) const;
  /// Complete duplicate-free list of target elements, one per class, ordered
  /// lexicographically by their cokernel coordinates. Empty when infinite.
  const std::vector<IntVector>& representatives() const noexcept { return representatives_; }
  /// Position of the class of w in representatives().
  std::size_t index_of(const IntVector& target_element) const;

 private:
  FgAbelianGroup target_;
  AbelianPresentation quotient_;
  std::vector<IntVector> representatives_;
};

/// Hilbert basis of {x in N^N : A x = 0} (Contejean-Devie completion).
/// Throws ResourceError when more than `budget` candidates are generated.
std::vector<Word> hilbert_basis(const IntMatrix& a, std::size_t budget = 200000);

/// Minimal nonzero elements of {x in N^N : map(x) = 0 in group}, where `map`
/// has group.dimension() rows and N columns. This is the Hilbert basis of
/// that normal affine monoid.
std::vector<Word> lattice_cone_basis(const IntMatrix& map, const FgAbelianGroup& group,
                                     std::size_t budget = 200000);

/// Solutions of map(x) = target with x in N^N: every solution is
/// m + (sum of recession generators) for some minimal m.
struct SliceSolutions {
  std::vector<Word> minimal;
  std::vector<Word> recession;
};

SliceSolutions lattice_slice(const IntMatrix& map, const FgAbelianGroup& group, const IntVector& target,
                             std::size_t budget = 200000);

}  // namespace rootsheaf

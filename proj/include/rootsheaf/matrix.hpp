#pragma once

// Dense matrices over a BaseRing, and exact linear algebra when the ring is
// a field. Prime fields below 2^31 take a machine-integer fast path.

#include "rootsheaf/ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rootsheaf {

class RingMatrix {
 public:
  RingMatrix() = default;
  RingMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RingMatrix identity(const BaseRing& ring, std::size_t n);
  static RingMatrix scalar(const BaseRing& ring, std::size_t n, const Poly& c);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Poly> column(std::size_t j) const;
  bool is_zero() const;

  friend bool operator==(const RingMatrix&, const RingMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> data_;
};

RingMatrix multiply(const BaseRing& ring, const RingMatrix& a, const RingMatrix& b);
RingMatrix add(const BaseRing& ring, const RingMatrix& a, const RingMatrix& b);
RingMatrix sub(const BaseRing& ring, const RingMatrix& a, const RingMatrix& b);
RingMatrix scale(const BaseRing& ring, const RingMatrix& a, const Poly& c);
RingMatrix transpose(const RingMatrix& a);
std::vector<Poly> apply(const BaseRing& ring, const RingMatrix& a, const std::vector<Poly>& v);
/// Block diagonal diag(a, b).
RingMatrix direct_sum(const RingMatrix& a, const RingMatrix& b);
/// Kronecker product a (x) b.
RingMatrix kronecker(const BaseRing& ring, const RingMatrix& a, const RingMatrix& b);

/// Cofactor expansion; valid over any ring, meant for small matrices.
Poly determinant(const BaseRing& ring, const RingMatrix& m);

/// Inverse over any ring, via the adjugate, when the determinant is a unit.
std::optional<RingMatrix> unit_inverse(const BaseRing& ring, const RingMatrix& m);

/// "[[1, s], [0, 1]]"; "[]" for matrices with no entries, with the shape
/// appended as "[](r x c)" when exactly one side is zero.
std::string format(const BaseRing& ring, const RingMatrix& m);

/// Linear algebra over the coefficient field. The ring must be a field
/// (no variables); entries are constants.
struct RowEchelon {
  RingMatrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon row_reduce(const BaseRing& field, const RingMatrix& m);
std::size_t rank(const BaseRing& field, const RingMatrix& m);
/// Columns form a basis of {x : m x = 0}, one per free column.
RingMatrix nullspace(const BaseRing& field, const RingMatrix& m);
std::optional<std::vector<Poly>> solve(const BaseRing& field, const RingMatrix& a, const std::vector<Poly>& b);
std::optional<RingMatrix> inverse(const BaseRing& field, const RingMatrix& m);

}  // namespace rootsheaf

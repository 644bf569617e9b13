#include "rootsheaf/matrix.hpp"

#include "rootsheaf/errors.hpp"

namespace rootsheaf {

RingMatrix RingMatrix::identity(const BaseRing& ring, std::size_t n) { return scalar(ring, n, ring.one()); }

RingMatrix RingMatrix::scalar(const BaseRing&, std::size_t n, const Poly& c) {
  RingMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

std::vector<Poly> RingMatrix::column(std::size_t j) const {
  std::vector<Poly> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

bool RingMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

RingMatrix multiply(const BaseRing& ring, const RingMatrix& a, const RingMatrix& b) {
  if (a.cols() != b.rows())
    throw InputError("matrix shapes " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + " do not compose");
  RingMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) = ring.add(c(i, j), ring.mul(a(i, k), b(k, j)));
    }
  return c;
}

RingMatrix add(const BaseRing& ring, const RingMatrix& a, const RingMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix shapes differ");
  RingMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = ring.add(a(i, j), b(i, j));
  return c;
}

RingMatrix sub(const BaseRing& ring, const RingMatrix& a, const RingMatrix& b) {
  return add(ring, a, scale(ring, b, ring.constant(-1)));
}

RingMatrix scale(const BaseRing& ring, const RingMatrix& a, const Poly& c) {
  RingMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = ring.mul(a(i, j), c);
  return out;
}

RingMatrix transpose(const RingMatrix& a) {
  RingMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

std::vector<Poly> apply(const BaseRing& ring, const RingMatrix& a, const std::vector<Poly>& v) {
  if (v.size() != a.cols()) throw InputError("vector length does not match matrix");
  std::vector<Poly> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] = ring.add(out[i], ring.mul(a(i, j), v[j]));
  return out;
}

RingMatrix direct_sum(const RingMatrix& a, const RingMatrix& b) {
  RingMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

RingMatrix kronecker(const BaseRing& ring, const RingMatrix& a, const RingMatrix& b) {
  RingMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = ring.mul(a(i, j), b(k, l));
    }
  return m;
}

Poly determinant(const BaseRing& ring, const RingMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return ring.one();
  if (n == 1) return m(0, 0);
  Poly det;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    RingMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    Poly term = ring.mul(m(0, c), determinant(ring, minor));
    det = c % 2 == 0 ? ring.add(det, term) : ring.sub(det, term);
  }
  return det;
}

std::optional<RingMatrix> unit_inverse(const BaseRing& ring, const RingMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const Poly det = determinant(ring, m);
  if (!ring.is_unit(det)) return std::nullopt;
  const Poly inv = ring.inverse_unit(det);
  const std::size_t n = m.rows();
  RingMatrix out(n, n);
  if (n == 1) {
    out(0, 0) = inv;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RingMatrix minor(n - 1, n - 1);
      for (std::size_t a = 0, ra = 0; a < n; ++a) {
        if (a == i) continue;
        for (std::size_t c = 0, rc = 0; c < n; ++c)
          if (c != j) minor(ra, rc++) = m(a, c);
        ++ra;
      }
      Poly cof = ring.mul(determinant(ring, minor), inv);
      out(j, i) = (i + j) % 2 == 0 ? cof : ring.neg(cof);
    }
  return out;
}

std::string format(const BaseRing& ring, const RingMatrix& m) {
  if (m.empty()) {
    if (m.rows() == 0 && m.cols() == 0) return "[]";
    return "[](" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")";
  }
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + ring.format(m(i, j));
    s += "]";
  }
  return s + "]";
}

namespace {

void require_field(const BaseRing& ring) {
  if (!ring.is_field())
    throw UnsupportedError("linear algebra over " + ring.to_string() + " needs a field of coefficients");
}

RowEchelon reduce_modp(const BaseRing& ring, const RingMatrix& m) {
  const std::int64_t p = ring.characteristic();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::int64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      a[i * cols + j] = to_i64(boost::multiprecision::numerator(ring.constant_value(m(i, j))));
  auto inv = [p](std::int64_t x) {
    std::int64_t r = 1, e = p - 2;
    x %= p;
    while (e > 0) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t piv = row;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != row)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[row * cols + j]);
    const std::int64_t f = inv(a[row * cols + c]);
    for (std::size_t j = 0; j < cols; ++j) a[row * cols + j] = a[row * cols + j] * f % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || a[i * cols + c] == 0) continue;
      const std::int64_t g = a[i * cols + c];
      for (std::size_t j = 0; j < cols; ++j) {
        a[i * cols + j] = (a[i * cols + j] - g * a[row * cols + j]) % p;
        if (a[i * cols + j] < 0) a[i * cols + j] += p;
      }
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.reduced = RingMatrix(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (a[i * cols + j] != 0) out.reduced(i, j) = ring.constant(a[i * cols + j]);
  return out;
}

RowEchelon reduce_exact(const BaseRing& ring, const RingMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const Field& k = ring.field();
  std::vector<Rational> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = ring.constant_value(m(i, j));
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t piv = row;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != row)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[row * cols + j]);
    const Rational f = k.inverse(a[row * cols + c]);
    for (std::size_t j = 0; j < cols; ++j) a[row * cols + j] = k.reduce(a[row * cols + j] * f);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || a[i * cols + c] == 0) continue;
      const Rational g = a[i * cols + c];
      for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = k.reduce(a[i * cols + j] - g * a[row * cols + j]);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.reduced = RingMatrix(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.reduced(i, j) = ring.constant(a[i * cols + j]);
  return out;
}

}  // namespace

RowEchelon row_reduce(const BaseRing& ring, const RingMatrix& m) {
  require_field(ring);
  const std::int64_t p = ring.characteristic();
  if (p > 0 && p < (std::int64_t{1} << 31)) return reduce_modp(ring, m);
  return reduce_exact(ring, m);
}

std::size_t rank(const BaseRing& ring, const RingMatrix& m) { return row_reduce(ring, m).pivots.size(); }

RingMatrix nullspace(const BaseRing& ring, const RingMatrix& m) {
  auto e = row_reduce(ring, m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  RingMatrix basis(cols, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], k) = ring.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = ring.neg(e.reduced(r, free_cols[k]));
  }
  return basis;
}

std::optional<std::vector<Poly>> solve(const BaseRing& ring, const RingMatrix& a, const std::vector<Poly>& b) {
  if (b.size() != a.rows()) throw InputError("right-hand side has wrong length");
  RingMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto e = row_reduce(ring, aug);
  std::vector<Poly> x(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == a.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, a.cols());
  }
  return x;
}

std::optional<RingMatrix> inverse(const BaseRing& ring, const RingMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  RingMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = ring.one();
  }
  auto e = row_reduce(ring, aug);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  RingMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

}  // namespace rootsheaf

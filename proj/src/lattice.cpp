#include "rootsheaf/lattice.hpp"

#include "rootsheaf/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace rootsheaf {

// ---------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i].at(j);
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j].at(i);
  return m;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t r = std::max(a.rows(), b.rows());
  IntMatrix m(r, a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntVector IntMatrix::apply(const IntVector& x) const {
  IntVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (x[j] != 0) y[i] += (*this)(i, j) * x[j];
  return y;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << (*this)(i, j);
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

Integer determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("determinant of a non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------- Smith form

namespace {

struct SmithWork {
  IntMatrix D, U, Uinv, V, Vinv;

  // row_i += k * row_t
  void add_row(std::size_t i, std::size_t t, const Integer& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < D.cols(); ++j) D(i, j) += k * D(t, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(i, j) += k * U(t, j);
    for (std::size_t r = 0; r < Uinv.rows(); ++r) Uinv(r, t) -= k * Uinv(r, i);
  }
  void swap_rows(std::size_t i, std::size_t t) {
    if (i == t) return;
    for (std::size_t j = 0; j < D.cols(); ++j) std::swap(D(i, j), D(t, j));
    for (std::size_t j = 0; j < U.cols(); ++j) std::swap(U(i, j), U(t, j));
    for (std::size_t r = 0; r < Uinv.rows(); ++r) std::swap(Uinv(r, i), Uinv(r, t));
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < D.cols(); ++j) D(i, j) = -D(i, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(i, j) = -U(i, j);
    for (std::size_t r = 0; r < Uinv.rows(); ++r) Uinv(r, i) = -Uinv(r, i);
  }
  // col_j += k * col_t
  void add_col(std::size_t j, std::size_t t, const Integer& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < D.rows(); ++i) D(i, j) += k * D(i, t);
    for (std::size_t i = 0; i < V.rows(); ++i) V(i, j) += k * V(i, t);
    for (std::size_t c = 0; c < Vinv.cols(); ++c) Vinv(t, c) -= k * Vinv(j, c);
  }
  void swap_cols(std::size_t j, std::size_t t) {
    if (j == t) return;
    for (std::size_t i = 0; i < D.rows(); ++i) std::swap(D(i, j), D(i, t));
    for (std::size_t i = 0; i < V.rows(); ++i) std::swap(V(i, j), V(i, t));
    for (std::size_t c = 0; c < Vinv.cols(); ++c) std::swap(Vinv(j, c), Vinv(t, c));
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  SmithWork w{m, IntMatrix::identity(r), IntMatrix::identity(r), IntMatrix::identity(c), IntMatrix::identity(c)};
  IntMatrix& D = w.D;

  std::size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    // pivot of least absolute value in the trailing block
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (D(i, j) != 0 && (!found || abs(D(i, j)) < abs(D(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (D(i, t) == 0) continue;
        w.add_row(i, t, -(D(i, t) / D(t, t)));
        if (D(i, t) != 0) {
          w.swap_rows(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (D(t, j) == 0) continue;
        w.add_col(j, t, -(D(t, j) / D(t, t)));
        if (D(t, j) != 0) {
          w.swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // divisibility of the remaining block
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (D(i, j) % D(t, t) != 0) {
            w.add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (D(t, t) < 0) w.negate_row(t);
  }

  SmithForm out;
  out.rank = t;
  out.U = std::move(w.U);
  out.U_inv = std::move(w.Uinv);
  out.V = std::move(w.V);
  out.V_inv = std::move(w.Vinv);
  out.D = std::move(w.D);
  return out;
}

// ---------------------------------------------------------------- groups

FgAbelianGroup::FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw InputError("torsion invariants must be >= 2");
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0) throw InputError("torsion invariants must form a divisibility chain");
  }
}

std::optional<Integer> FgAbelianGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Integer n = 1;
  for (const auto& t : torsion_) n *= t;
  return n;
}

IntVector FgAbelianGroup::normalize(IntVector x) const {
  if (x.size() != dimension()) throw InputError("group element has wrong length");
  for (std::size_t i = 0; i < torsion_.size(); ++i) x[i] = mod_floor(x[i], torsion_[i]);
  return x;
}

IntVector FgAbelianGroup::add(const IntVector& a, const IntVector& b) const {
  IntVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b.at(i);
  return normalize(std::move(r));
}

IntVector FgAbelianGroup::sub(const IntVector& a, const IntVector& b) const {
  IntVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b.at(i);
  return normalize(std::move(r));
}

IntVector FgAbelianGroup::neg(const IntVector& a) const {
  IntVector r(a);
  for (auto& x : r) x = -x;
  return normalize(std::move(r));
}

IntVector FgAbelianGroup::scale(const IntVector& a, const Integer& k) const {
  IntVector r(a);
  for (auto& x : r) x *= k;
  return normalize(std::move(r));
}

bool FgAbelianGroup::is_zero(const IntVector& a) const {
  auto n = normalize(a);
  return std::all_of(n.begin(), n.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix FgAbelianGroup::relation_matrix() const {
  IntMatrix m(dimension(), torsion_.size());
  for (std::size_t i = 0; i < torsion_.size(); ++i) m(i, i) = torsion_[i];
  return m;
}

std::string FgAbelianGroup::to_string() const {
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.emplace_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (const auto& t : torsion_) parts.push_back("Z/" + t.str());
  if (parts.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
  return s;
}

std::string FgAbelianGroup::element_to_string(const IntVector& x) const {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + x[i].str();
  return s + "]";
}

// ---------------------------------------------------------------- presentations

AbelianPresentation::AbelianPresentation(std::size_t n, const IntMatrix& relations) : n_(n) {
  if (relations.rows() != n && relations.cols() != 0) throw InputError("relation matrix has wrong row count");
  IntMatrix rel = relations.cols() == 0 ? IntMatrix(n, 0) : relations;
  SmithForm s = smith_normal_form(rel);

  std::vector<std::size_t> torsion_rows;
  std::vector<Integer> torsion;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.D(i, i) >= 2) {
      torsion_rows.push_back(i);
      torsion.push_back(s.D(i, i));
    }
  }
  std::vector<std::size_t> rows = torsion_rows;
  for (std::size_t i = s.rank; i < n; ++i) rows.push_back(i);

  group_ = FgAbelianGroup(n - s.rank, torsion);
  projection_ = IntMatrix(rows.size(), n);
  section_ = IntMatrix(n, rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) projection_(k, j) = s.U(rows[k], j);
    for (std::size_t i = 0; i < n; ++i) section_(i, k) = s.U_inv(i, rows[k]);
  }
}

IntVector AbelianPresentation::canonical(const IntVector& x) const {
  if (x.size() != n_) throw InputError("vector has wrong length for this group presentation");
  return group_.normalize(projection_.apply(x));
}

IntVector AbelianPresentation::canonical(const Word& w) const {
  IntVector x(w.begin(), w.end());
  return canonical(x);
}

IntVector AbelianPresentation::lift(const IntVector& g) const { return section_.apply(g); }

// ---------------------------------------------------------------- maps

LatticeMap::LatticeMap(FgAbelianGroup source, FgAbelianGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.dimension() || matrix_.cols() != source_.dimension())
    throw InputError("lattice map has inconsistent dimensions");
  // well-defined on torsion of the source
  for (std::size_t i = 0; i < source_.torsion().size(); ++i) {
    IntVector e(source_.dimension());
    e[i] = source_.torsion()[i];
    if (!target_.is_zero(matrix_.apply(e))) throw InputError("lattice map is not well defined on torsion");
  }
}

IntVector LatticeMap::apply(const IntVector& u) const { return target_.normalize(matrix_.apply(u)); }

bool LatticeMap::is_injective() const {
  IntMatrix g = IntMatrix::hconcat(matrix_, target_.relation_matrix());
  SmithForm s = smith_normal_form(g);
  for (std::size_t j = s.rank; j < g.cols(); ++j) {
    IntVector u(source_.dimension());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = s.V(i, j);
    if (!source_.is_zero(u)) return false;
  }
  return true;
}

std::optional<IntVector> LatticeMap::preimage(const IntVector& w) const {
  IntMatrix g = IntMatrix::hconcat(matrix_, target_.relation_matrix());
  SmithForm s = smith_normal_form(g);
  IntVector uw = s.U.apply(w);
  IntVector y(g.cols());
  for (std::size_t i = 0; i < uw.size(); ++i) {
    if (i < s.rank) {
      if (uw[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = uw[i] / s.D(i, i);
    } else if (uw[i] != 0) {
      return std::nullopt;
    }
  }
  IntVector full = s.V.apply(y);
  IntVector u(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(source_.dimension()));
  return source_.normalize(std::move(u));
}

Cokernel::Cokernel(const LatticeMap& f)
    : target_(f.target()),
      quotient_(f.target().dimension(), IntMatrix::hconcat(f.matrix(), f.target().relation_matrix())) {
  const auto& g = quotient_.group();
  if (g.free_rank() > 0) return;
  std::vector<Integer> digits(g.torsion().size());
  for (;;) {
    IntVector y(digits.begin(), digits.end());
    representatives_.push_back(target_.normalize(quotient_.lift(y)));
    // odometer, last digit fastest so the list is lexicographic
    std::size_t k = digits.size();
    while (k > 0) {
      --k;
      if (++digits[k] < g.torsion()[k]) break;
      digits[k] = 0;
      if (k == 0) return;
    }
    if (digits.empty()) return;
  }
}

IntVector Cokernel::coordinates(const IntVector& target_element) const { return quotient_.canonical(target_element); }

std::size_t Cokernel::index_of(const IntVector& target_element) const {
  if (representatives_.empty()) throw InputError("cokernel is infinite; no transversal");
  IntVector c = coordinates(target_element);
  Integer idx = 0;
  for (std::size_t k = 0; k < c.size(); ++k) idx = idx * quotient_.group().torsion()[k] + c[k];
  return static_cast<std::size_t>(to_i64(idx));
}

// ---------------------------------------------------------------- Hilbert bases

namespace {

bool dominated(const Word& y, const std::vector<Word>& basis) {
  for (const auto& b : basis)
    if (word::divides(b, y)) return true;
  return false;
}

std::vector<std::int64_t> image(const std::vector<std::vector<std::int64_t>>& cols, std::size_t m, const Word& x) {
  std::vector<std::int64_t> v(m, 0);
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] != 0)
      for (std::size_t i = 0; i < m; ++i) v[i] += cols[j][i] * x[j];
  return v;
}

std::vector<Word> minimal_nonzero(std::vector<Word> xs) {
  std::sort(xs.begin(), xs.end(), [](const Word& a, const Word& b) {
    auto da = word::degree(a), db = word::degree(b);
    return da != db ? da < db : a > b;
  });
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Word> out;
  for (auto& x : xs) {
    if (word::is_zero(x)) continue;
    if (!dominated(x, out)) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

std::vector<Word> hilbert_basis(const IntMatrix& a, std::size_t budget) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<std::vector<std::int64_t>> cols(n, std::vector<std::int64_t>(m));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) cols[j][i] = to_i64(a(i, j));

  std::vector<Word> basis;
  std::set<Word> frontier;
  for (std::size_t j = 0; j < n; ++j) frontier.insert(word::unit(n, j));
  std::size_t generated = 0;

  while (!frontier.empty()) {
    std::vector<std::pair<Word, std::vector<std::int64_t>>> open;
    for (const auto& x : frontier) {
      auto v = image(cols, m, x);
      bool solved = std::all_of(v.begin(), v.end(), [](std::int64_t e) { return e == 0; });
      if (solved) {
        if (!dominated(x, basis)) basis.push_back(x);
      } else {
        open.emplace_back(x, std::move(v));
      }
    }
    std::set<Word> next;
    for (const auto& [x, v] : open) {
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t dot = 0;
        for (std::size_t i = 0; i < m; ++i) dot += v[i] * cols[j][i];
        if (dot >= 0) continue;
        Word y = x;
        ++y[j];
        if (dominated(y, basis)) continue;
        next.insert(std::move(y));
        if (++generated > budget)
          throw ResourceError("Hilbert basis computation exceeded its budget of " + std::to_string(budget) +
                              " candidates");
      }
    }
    frontier = std::move(next);
  }
  return minimal_nonzero(std::move(basis));
}

std::vector<Word> lattice_cone_basis(const IntMatrix& map, const FgAbelianGroup& group, std::size_t budget) {
  if (map.rows() != group.dimension()) throw InputError("lattice condition has wrong row count");
  const std::size_t n = map.cols();
  const std::size_t k = group.torsion().size();
  const std::size_t rows = group.dimension();
  IntMatrix a(rows, n + 2 * k);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = map(i, j);
  for (std::size_t t = 0; t < k; ++t) {
    a(t, n + 2 * t) = -group.torsion()[t];
    a(t, n + 2 * t + 1) = group.torsion()[t];
  }
  std::vector<Word> projected;
  for (const auto& h : hilbert_basis(a, budget)) projected.emplace_back(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(n));
  return minimal_nonzero(std::move(projected));
}

SliceSolutions lattice_slice(const IntMatrix& map, const FgAbelianGroup& group, const IntVector& target,
                             std::size_t budget) {
  const std::size_t n = map.cols();
  IntMatrix ext(map.rows(), n + 1);
  for (std::size_t i = 0; i < map.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) ext(i, j) = map(i, j);
    ext(i, n) = -target.at(i);
  }
  SliceSolutions out;
  for (const auto& h : lattice_cone_basis(ext, group, budget)) {
    Word x(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(n));
    if (h[n] == 1) out.minimal.push_back(std::move(x));
    else if (h[n] == 0) out.recession.push_back(std::move(x));
  }
  // the zero word solves the slice when the target is zero
  if (group.is_zero(target)) {
    out.minimal.clear();
    out.minimal.push_back(Word(n, 0));
  }
  std::sort(out.minimal.begin(), out.minimal.end());
  std::sort(out.recession.begin(), out.recession.end());
  return out;
}

}  // namespace rootsheaf

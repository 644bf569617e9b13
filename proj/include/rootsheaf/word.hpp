#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rootsheaf {

/// An element of the free commutative monoid N^n: one exponent per generator.
using Word = std::vector<std::int64_t>;

namespace word {

inline Word zero(std::size_t n) { return Word(n, 0); }

inline Word unit(std::size_t n, std::size_t i) {
  Word w(n, 0);
  w[i] = 1;
  return w;
}

inline std::int64_t degree(const Word& w) {
  std::int64_t d = 0;
  for (auto e : w) d += e;
  return d;
}

inline bool is_zero(const Word& w) {
  for (auto e : w)
    if (e != 0) return false;
  return true;
}

inline Word add(const Word& a, const Word& b) {
  Word r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Word scale(const Word& a, std::int64_t k) {
  Word r(a);
  for (auto& e : r) e *= k;
  return r;
}

/// Componentwise a <= b, i.e. a divides b.
inline bool divides(const Word& a, const Word& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// b - a, assuming divides(a, b).
inline Word quotient(const Word& b, const Word& a) {
  Word r(b);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= a[i];
  return r;
}

inline Word lcm(const Word& a, const Word& b) {
  Word r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline bool disjoint_support(const Word& a, const Word& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

inline std::string to_string(const Word& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

/// All words of total degree exactly d in n letters, in lexicographically
/// decreasing order (first letter most significant).
std::vector<Word> of_degree(std::size_t n, std::int64_t d);

/// All words of total degree <= d, ordered by degree then as in of_degree.
std::vector<Word> up_to_degree(std::size_t n, std::int64_t d);

}  // namespace word
}  // namespace rootsheaf

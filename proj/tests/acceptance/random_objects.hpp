#pragma once

// Random simplicial root algebras over prime fields, random parabolic
// sheaves on them and random graded presentations. Sheaves are built from
// representations of the cyclic quiver with period c: invertible chains
// when c != 0 and sums of strings when c = 0, tensored across coordinates
// and then conjugated by a random change of basis in every slot.

#include "rootsheaf/equivalence.hpp"

#include "../support/graded_hom_oracle.hpp"

#include <random>
#include <string>
#include <vector>

namespace acceptance {

using namespace rootsheaf;
using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

struct Setup {
  AlgebraPtr algebra;
  oracle::SimplicialAlgebra simple;
};

inline Setup simplicial(std::int64_t p, const std::vector<std::int64_t>& d, const std::vector<std::int64_t>& c) {
  static const std::vector<std::string> pnames{"a", "b", "c"}, qnames{"x", "y", "z"};
  const std::size_t r = d.size();
  BaseRing ring = parse_base_ring("GF(" + std::to_string(p) + ")");
  std::vector<Poly> values;
  std::vector<Word> images;
  for (std::size_t i = 0; i < r; ++i) {
    values.push_back(ring.constant(c[i]));
    Word w(r, 0);
    w[i] = d[i];
    images.push_back(w);
  }
  std::vector<std::string> pn(pnames.begin(), pnames.begin() + static_cast<std::ptrdiff_t>(r));
  std::vector<std::string> qn(qnames.begin(), qnames.begin() + static_cast<std::ptrdiff_t>(r));
  KatoChart chart(FpMonoid::free(pn), ring, values);
  MonoidHom j(FpMonoid::free(pn), FpMonoid::free(qn), images);
  return {std::make_shared<GradedRootAlgebra>(chart, DenominatorSystem(j)), {p, d, c}};
}

inline std::vector<std::int64_t> to_small(const IntVector& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(static_cast<std::int64_t>(x));
  return out;
}

inline std::vector<std::int64_t> residue(const Setup& s, std::size_t slot) {
  auto w = to_small(s.algebra->slot_degree(slot));
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = oracle::floor_mod(w[i], s.simple.d[i]);
  return w;
}

inline RingMatrix random_matrix(const BaseRing& ring, std::size_t rows, std::size_t cols, Rng& rng) {
  RingMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = ring.constant(uniform(rng, 0, ring.characteristic() - 1));
  return m;
}

inline RingMatrix random_invertible(const BaseRing& ring, std::size_t n, Rng& rng) {
  for (;;) {
    RingMatrix m = random_matrix(ring, n, n, rng);
    if (inverse(ring, m)) return m;
  }
}

/// Representation of the cyclic quiver with d vertices: maps[k] : V_k -> V_{k+1 mod d}.
struct Cyclic {
  std::vector<std::size_t> dims;
  std::vector<RingMatrix> maps;
};

inline Cyclic random_cyclic(const BaseRing& ring, std::int64_t d, std::int64_t c, std::size_t max_dim, Rng& rng) {
  const std::size_t n = static_cast<std::size_t>(d);
  Cyclic out;
  const std::int64_t p = ring.characteristic();
  if (oracle::floor_mod(c, p) != 0) {
    const std::size_t dim = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_dim)));
    out.dims.assign(n, dim);
    RingMatrix around = RingMatrix::identity(ring, dim);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      out.maps.push_back(random_invertible(ring, dim, rng));
      around = multiply(ring, out.maps.back(), around);
    }
    out.maps.push_back(scale(ring, *inverse(ring, around), ring.constant(c)));
    return out;
  }
  // strings: vertex k of a string of length l starting at s sits in slot s + k
  out.dims.assign(n, 0);
  struct Str {
    std::size_t start, length;
  };
  std::vector<Str> strings;
  const std::int64_t count = uniform(rng, 1, 3);
  for (std::int64_t t = 0; t < count; ++t) {
    Str s{static_cast<std::size_t>(uniform(rng, 0, d - 1)), static_cast<std::size_t>(uniform(rng, 1, d))};
    bool fits = true;
    for (std::size_t k = 0; k < s.length; ++k)
      if (out.dims[(s.start + k) % n] + 1 > max_dim) fits = false;
    if (!fits) continue;
    strings.push_back(s);
    for (std::size_t k = 0; k < s.length; ++k) ++out.dims[(s.start + k) % n];
  }
  for (std::size_t k = 0; k < n; ++k) out.maps.emplace_back(out.dims[(k + 1) % n], out.dims[k]);
  std::vector<std::size_t> fill(n, 0);
  for (const auto& s : strings) {
    std::vector<std::size_t> pos;
    for (std::size_t k = 0; k < s.length; ++k) pos.push_back(fill[(s.start + k) % n]++);
    for (std::size_t k = 0; k + 1 < s.length; ++k) {
      const std::size_t v = (s.start + k) % n;
      out.maps[v](pos[k + 1], pos[k]) = ring.one();
    }
  }
  return out;
}

/// Direct sum of external products of cyclic representations, one factor per
/// coordinate, with slot dimensions at most max_dim and a random basis change.
inline ParabolicSheaf random_sheaf(const Setup& s, Rng& rng, std::size_t max_dim = 3) {
  const auto& b = *s.algebra;
  const BaseRing& ring = b.ring();
  const std::size_t r = s.simple.d.size(), slots = b.num_slots();
  for (;;) {
    std::vector<std::size_t> dims(slots, 0);
    std::vector<std::vector<RingMatrix>> maps(slots, std::vector<RingMatrix>(r));
    const std::int64_t blocks = r == 1 ? 1 : uniform(rng, 1, 2);
    bool ok = true;
    for (std::int64_t blk = 0; blk < blocks && ok; ++blk) {
      std::vector<Cyclic> factors;
      for (std::size_t i = 0; i < r; ++i)
        factors.push_back(random_cyclic(ring, s.simple.d[i], s.simple.c[i], r == 1 ? max_dim : 2, rng));
      for (std::size_t slot = 0; slot < slots; ++slot) {
        const auto res = residue(s, slot);
        std::size_t dim = 1;
        for (std::size_t i = 0; i < r; ++i) dim *= factors[i].dims[static_cast<std::size_t>(res[i])];
        for (std::size_t g = 0; g < r; ++g) {
          // x_g acts on factor g, the identity elsewhere
          RingMatrix m = RingMatrix::identity(ring, 1);
          for (std::size_t i = 0; i < r; ++i) {
            const auto& f = factors[i];
            const std::size_t k = static_cast<std::size_t>(res[i]);
            m = kronecker(ring, m, i == g ? f.maps[k] : RingMatrix::identity(ring, f.dims[k]));
          }
          maps[slot][g] = blk == 0 ? m : direct_sum(maps[slot][g], m);
        }
        dims[slot] += dim;
        if (dims[slot] > max_dim) ok = false;
      }
    }
    if (!ok) continue;
    std::vector<RingMatrix> basis, basis_inv;
    for (std::size_t slot = 0; slot < slots; ++slot) {
      basis.push_back(random_invertible(ring, dims[slot], rng));
      basis_inv.push_back(*inverse(ring, basis.back()));
    }
    std::vector<Presentation> mods;
    for (std::size_t slot = 0; slot < slots; ++slot) {
      mods.push_back(Presentation::free(dims[slot]));
      for (std::size_t g = 0; g < r; ++g) {
        const std::size_t t = b.action_target(slot, g);
        maps[slot][g] = multiply(ring, basis[t], multiply(ring, maps[slot][g], basis_inv[slot]));
      }
    }
    return make_parabolic(s.algebra, std::move(mods), std::move(maps));
  }
}

/// The term c x^q t^u of degree `degree`, with 0 <= q < d.
inline BTerm monomial(const Setup& s, const std::vector<std::int64_t>& degree, std::int64_t c) {
  BTerm t;
  t.coeff = s.algebra->ring().constant(c);
  for (std::size_t i = 0; i < degree.size(); ++i) {
    const std::int64_t q = oracle::floor_mod(degree[i], s.simple.d[i]);
    t.q.push_back(q);
    t.u.push_back((degree[i] - q) / s.simple.d[i]);
  }
  return t;
}

/// One or two generators in degrees between -d and 2d, up to two relations.
inline GradedPresentation random_graded(const Setup& s, Rng& rng) {
  const std::size_t r = s.simple.d.size();
  const std::int64_t p = s.simple.p;
  std::vector<std::vector<std::int64_t>> degs;
  const std::int64_t n = uniform(rng, 1, 2);
  for (std::int64_t k = 0; k < n; ++k) {
    std::vector<std::int64_t> a(r);
    for (std::size_t i = 0; i < r; ++i) a[i] = uniform(rng, -s.simple.d[i], 2 * s.simple.d[i] - 1);
    degs.push_back(a);
  }
  std::vector<GradedRelation> rels;
  const std::int64_t m = uniform(rng, 0, 2);
  for (std::int64_t k = 0; k < m; ++k) {
    const std::size_t lead = static_cast<std::size_t>(uniform(rng, 0, n - 1));
    std::vector<std::int64_t> b = degs[lead];
    for (std::size_t i = 0; i < r; ++i) b[i] += uniform(rng, 0, s.simple.d[i]);
    GradedRelation rel;
    for (const auto& x : b) rel.degree.push_back(x);
    for (std::size_t g = 0; g < degs.size(); ++g) {
      BElement e;
      if (g == lead || uniform(rng, 0, 1) == 1) {
        std::vector<std::int64_t> diff(r);
        for (std::size_t i = 0; i < r; ++i) diff[i] = b[i] - degs[g][i];
        BTerm t = monomial(s, diff, uniform(rng, 1, p - 1));
        // sometimes write x^{q+d} t^{u-1} instead, which crosses the period
        for (std::size_t i = 0; i < r; ++i)
          if (uniform(rng, 0, 2) == 0) {
            t.q[i] += s.simple.d[i];
            t.u[i] -= 1;
          }
        e.push_back(std::move(t));
      }
      rel.entries.push_back(std::move(e));
    }
    rels.push_back(std::move(rel));
  }
  std::vector<IntVector> degrees;
  for (const auto& a : degs) degrees.emplace_back(a.begin(), a.end());
  return GradedPresentation(s.algebra, std::move(degrees), std::move(rels));
}

/// The same presentation in the oracle's terms.
inline oracle::GradedModule to_oracle(const Setup& s, const GradedPresentation& n) {
  const BaseRing& ring = s.algebra->ring();
  auto coeff = [&](const Poly& c) {
    const Rational v = ring.constant_value(c);
    const std::int64_t num = static_cast<std::int64_t>(boost::multiprecision::numerator(v));
    const std::int64_t den = static_cast<std::int64_t>(boost::multiprecision::denominator(v));
    return oracle::floor_mod(num, s.simple.p) * oracle::power_mod(den, s.simple.p - 2, s.simple.p) % s.simple.p;
  };
  oracle::GradedModule out;
  for (const auto& a : n.degrees()) out.degrees.push_back(to_small(a));
  for (const auto& rel : n.relations()) {
    oracle::GradedRel o;
    o.degree = to_small(rel.degree);
    for (const auto& e : rel.entries) {
      std::vector<oracle::Term> terms;
      for (const auto& t : e) terms.push_back({coeff(t.coeff), t.q, to_small(t.u)});
      o.entries.push_back(std::move(terms));
    }
    out.relations.push_back(std::move(o));
  }
  return out;
}

}  // namespace acceptance

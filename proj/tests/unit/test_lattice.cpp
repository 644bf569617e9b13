#include "rootsheaf/lattice.hpp"

#include <doctest.h>

#include <random>

using namespace rootsheaf;

namespace {

IntMatrix mat(std::vector<std::vector<long>> rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  return m;
}

void check_smith(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  CHECK(s.U * m * s.V == s.D);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  CHECK(s.U * s.U_inv == IntMatrix::identity(m.rows()));
  CHECK(s.V * s.V_inv == IntMatrix::identity(m.cols()));
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(s.D(i, j) == 0);
  for (std::size_t i = 0; i + 1 < s.rank; ++i) {
    CHECK(s.diagonal(i) > 0);
    CHECK(s.diagonal(i + 1) % s.diagonal(i) == 0);
  }
  for (std::size_t i = s.rank; i < std::min(m.rows(), m.cols()); ++i) CHECK(s.diagonal(i) == 0);
}

}  // namespace

TEST_CASE("smith form of small matrices") {
  auto id = smith_normal_form(IntMatrix::identity(2));
  CHECK(id.D == IntMatrix::identity(2));
  auto d = smith_normal_form(mat({{2, 0}, {0, 3}}));
  CHECK(d.D == mat({{1, 0}, {0, 6}}));
  CHECK(smith_normal_form(mat({{2}})).D == mat({{2}}));
  check_smith(mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  check_smith(mat({{0, 0}, {0, 0}, {0, 0}}));
  check_smith(IntMatrix(0, 3));
}

TEST_CASE("smith form of random matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
    check_smith(m);
    if (m.rows() == m.cols()) {
      auto s = smith_normal_form(m);
      Integer prod = 1;
      for (std::size_t i = 0; i < m.rows(); ++i) prod *= s.diagonal(i);
      CHECK(prod == abs(determinant(m)));
    }
  }
}

TEST_CASE("abelian group canonical form") {
  FgAbelianGroup g(1, {2, 6});
  CHECK(g.to_string() == "Z + Z/2 + Z/6");
  CHECK(!g.order());
  CHECK(FgAbelianGroup(0, {6}).order() == Integer(6));
  CHECK(FgAbelianGroup().to_string() == "0");
  CHECK_THROWS(FgAbelianGroup(0, {2, 3}));
  CHECK(g.normalize({3, -1, 5}) == IntVector{1, 5, 5});
}

TEST_CASE("presentations reach canonical form") {
  // Z^2 / <(2,0),(0,3)> = Z/6
  AbelianPresentation p(2, mat({{2, 0}, {0, 3}}));
  CHECK(p.group() == FgAbelianGroup(0, {6}));
  CHECK(p.group().is_zero(p.canonical(IntVector{2, 3})));
  CHECK(!p.group().is_zero(p.canonical(IntVector{1, 0})));
  CHECK(p.canonical(p.lift(IntVector{5})) == IntVector{5});
  // relation lattice spanned by (1,-1): Z
  AbelianPresentation q(2, mat({{1}, {-1}}));
  CHECK(q.group() == FgAbelianGroup(1, {}));
  CHECK(q.canonical(IntVector{1, 0}) == q.canonical(IntVector{0, 1}));
}

TEST_CASE("cokernels and transversals") {
  LatticeMap f(FgAbelianGroup(2, {}), FgAbelianGroup(2, {}), mat({{2, 0}, {0, 3}}));
  Cokernel c(f);
  CHECK(c.group() == FgAbelianGroup(0, {6}));
  CHECK(c.order() == Integer(6));
  CHECK(c.representatives().size() == 6);
  for (std::size_t i = 0; i < c.representatives().size(); ++i) {
    CHECK(c.index_of(c.representatives()[i]) == i);
    for (std::size_t j = 0; j < i; ++j)
      CHECK(c.coordinates(c.representatives()[i]) != c.coordinates(c.representatives()[j]));
  }

  LatticeMap two(FgAbelianGroup(1, {}), FgAbelianGroup(1, {}), mat({{2}}));
  Cokernel c2(two);
  CHECK(c2.order() == Integer(2));
  CHECK(c2.representatives() == std::vector<IntVector>{{0}, {1}});

  LatticeMap zero(FgAbelianGroup(), FgAbelianGroup(1, {}), IntMatrix(1, 0));
  Cokernel c0(zero);
  CHECK(!c0.order());
  CHECK(c0.representatives().empty());
}

TEST_CASE("preimages") {
  LatticeMap two(FgAbelianGroup(1, {}), FgAbelianGroup(1, {}), mat({{2}}));
  CHECK(two.preimage({4}) == IntVector{2});
  CHECK(!two.preimage({3}));
  CHECK(two.is_injective());

  // image {(x,y) : x + y = 0 mod 3} spanned by (1,2) and (3,0)
  LatticeMap h(FgAbelianGroup(2, {}), FgAbelianGroup(2, {}), mat({{1, 3}, {2, 0}}));
  auto u = h.preimage({1, 2});
  REQUIRE(u);
  CHECK(h.apply(*u) == IntVector{1, 2});
  CHECK(!h.preimage({1, 0}));

  // into torsion: Z -> Z/4, 1 -> 2
  LatticeMap t(FgAbelianGroup(1, {}), FgAbelianGroup(0, {4}), mat({{2}}));
  CHECK(!t.is_injective());
  CHECK(t.preimage({2}));
  CHECK(!t.preimage({1}));
}

TEST_CASE("hilbert bases against brute force") {
  // x + y = 2z
  auto hb = hilbert_basis(mat({{1, 1, -2}}));
  std::sort(hb.begin(), hb.end());
  CHECK(hb == std::vector<Word>{{0, 2, 1}, {1, 1, 1}, {2, 0, 1}});

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix a(1, 3);
    for (std::size_t j = 0; j < 3; ++j) a(0, j) = entry(rng);
    auto basis = hilbert_basis(a);
    // every small solution is a sum of basis elements; basis elements are irreducible
    const int bound = 6;
    std::vector<Word> sols;
    for (int x = 0; x <= bound; ++x)
      for (int y = 0; y <= bound; ++y)
        for (int z = 0; z <= bound; ++z) {
          Integer v = a(0, 0) * x + a(0, 1) * y + a(0, 2) * z;
          if (v == 0 && x + y + z > 0) sols.push_back({x, y, z});
        }
    auto is_sol = [&](const Word& w) { return std::find(sols.begin(), sols.end(), w) != sols.end(); };
    for (const auto& s : sols) {
      bool reducible = false;
      for (const auto& t : sols)
        if (t != s && word::divides(t, s) && is_sol(word::quotient(s, t))) reducible = true;
      bool in_basis = std::find(basis.begin(), basis.end(), s) != basis.end();
      CHECK(in_basis == !reducible);
    }
  }
}

TEST_CASE("slices of a lattice condition") {
  // 2x = 3 in Z/4 has no solution; 2x + y = 3 in Z/4 has minimal y = 3, x = 1 y = 1, ...
  FgAbelianGroup z4(0, {4});
  auto none = lattice_slice(mat({{2}}), z4, {3});
  CHECK(none.minimal.empty());
  auto some = lattice_slice(mat({{2, 1}}), z4, {3});
  CHECK(!some.minimal.empty());
  for (const auto& m : some.minimal) CHECK(mod_floor(Integer(2 * m[0] + m[1]) - 3, 4) == 0);
  auto zero = lattice_slice(mat({{1}}), FgAbelianGroup(1, {}), {0});
  CHECK(zero.minimal == std::vector<Word>{{0}});
}

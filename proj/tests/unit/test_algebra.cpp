#include "rootsheaf/errors.hpp"
#include "rootsheaf/module.hpp"

#include <doctest.h>

#include <random>

using namespace rootsheaf;

TEST_CASE("fields") {
  Field f5(5);
  CHECK(f5.reduce(Rational(7)) == 2);
  CHECK(f5.reduce(Rational(1, 2)) == 3);
  CHECK(f5.inverse(Rational(2)) == 3);
  CHECK_THROWS_AS(Field(6), InputError);
  CHECK_THROWS_AS(f5.reduce(Rational(1, 5)), InputError);
  CHECK(Field(0).inverse(Rational(3)) == Rational(1, 3));
}

TEST_CASE("polynomial arithmetic and parsing") {
  BaseRing r = parse_base_ring("QQ[s,u]");
  CHECK(r.to_string() == "QQ[s,u]");
  Poly a = r.parse("(s + 1)^2 - 2*s");
  CHECK(r.format(a) == "s^2 + 1");
  Poly b = r.parse("1/2*s*u - u^2 + 3");
  CHECK(r.format(b) == "1/2*s*u - u^2 + 3");
  CHECK(r.divide(r.parse("s^2 - 1"), r.parse("s - 1")) == r.parse("s + 1"));
  CHECK(!r.divide(r.parse("s^2 + 1"), r.parse("s - 1")));
  CHECK(r.evaluate(a, {2, 0}) == 5);
  CHECK(r.is_unit(r.parse("3")));
  CHECK(!r.is_unit(r.parse("s")));
  CHECK_THROWS_AS(r.parse("s + "), InputError);
  CHECK_THROWS_AS(r.parse("t"), InputError);

  BaseRing g = parse_base_ring("GF(5)[s]");
  CHECK(g.format(g.parse("7*s + 6")) == "2*s + 1");
  CHECK(g.parse("5*s").is_zero());
  CHECK_THROWS_AS(parse_base_ring("GF(4)"), InputError);
  CHECK_THROWS_AS(parse_base_ring("ZZ"), InputError);
}

TEST_CASE("linear algebra over prime fields and QQ") {
  for (std::int64_t p : {0, 2, 5, 7}) {
    BaseRing k(Field(p), {});
    std::mt19937 rng(static_cast<unsigned>(p + 3));
    std::uniform_int_distribution<int> entry(-3, 3), dim(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
      RingMatrix m(dim(rng), dim(rng));
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = k.constant(entry(rng));
      auto n = nullspace(k, m);
      CHECK(n.cols() + rank(k, m) == m.cols());
      CHECK(multiply(k, m, n).is_zero());
      CHECK(rank(k, n) == n.cols());
      if (m.rows() == m.cols()) {
        auto inv = inverse(k, m);
        CHECK(inv.has_value() == (rank(k, m) == m.rows()));
        if (inv) CHECK(multiply(k, m, *inv) == RingMatrix::identity(k, m.rows()));
      }
      std::vector<Poly> x(m.cols());
      for (auto& e : x) e = k.constant(entry(rng));
      auto b = apply(k, m, x);
      auto y = solve(k, m, b);
      REQUIRE(y);
      CHECK(apply(k, m, *y) == b);
    }
  }
}

TEST_CASE("submodule membership over a polynomial ring") {
  BaseRing r = parse_base_ring("QQ[s,u]");
  // ideal (s^2, s*u - u) in R^1
  SubmoduleBasis i(r, 1, {{r.parse("s^2")}, {r.parse("s*u - u")}});
  CHECK(i.contains({r.parse("u")}));  // u = u*s^2 - (s + 1)*(s*u - u)
  CHECK(!i.contains({r.parse("s")}));
  CHECK(i.contains({r.parse("s^3 + s*u - u")}));

  // R^2 / <(s, 1)> is free of rank 1
  Presentation p{2, {{r.parse("s"), r.one()}}};
  auto pr = prune(r, p);
  CHECK(pr.module.gens == 1);
  CHECK(pr.module.relations.empty());
  CHECK(multiply(r, pr.to_new, pr.from_new) == RingMatrix::identity(r, 1));
  CHECK(equal_modulo(r, p, multiply(r, pr.from_new, pr.to_new), RingMatrix::identity(r, 2)));

  Presentation q{2, {{r.parse("s"), r.zero()}, {r.one(), r.parse("u")}}};
  auto pq = prune(r, q);
  CHECK(describe(r, pq.module) == "R/(s*u)");
}

#include "rootsheaf/errors.hpp"
#include "rootsheaf/rootalg.hpp"

#include <doctest.h>

using namespace rootsheaf;

namespace {

MonoidHom diagonal(const std::vector<std::int64_t>& d) {
  const std::size_t r = d.size();
  std::vector<Word> images;
  for (std::size_t i = 0; i < r; ++i) images.push_back(word::scale(word::unit(r, i), d[i]));
  return MonoidHom(FpMonoid::free(r), FpMonoid::free(r), images);
}

GradedRootAlgebra cyclic(const std::string& ring, const std::string& f, std::int64_t d) {
  BaseRing r = parse_base_ring(ring);
  KatoChart chart(FpMonoid::free(1), r, {r.parse(f)});
  MonoidHom j(FpMonoid::free(1), FpMonoid::free({"x"}), {{d}});
  return GradedRootAlgebra(chart, DenominatorSystem(j));
}

std::vector<Poly> constants(const GradedRootAlgebra& b) {
  std::vector<Poly> c;
  for (std::int64_t k = 0; k < b.denominators().index(); ++k) c.push_back(b.structure_constant({k}, 0));
  return c;
}

// every x^g action respects relations, and x^{m g} acts as f(p) on each piece
void check_laws(const GradedRootAlgebra& b) {
  const BaseRing& r = b.ring();
  const auto& cert = b.denominators().certificate();
  for (std::size_t s = 0; s < b.num_slots(); ++s)
    for (std::size_t g = 0; g < b.q().num_generators(); ++g) {
      const auto& src = b.slot_piece(s).module;
      const auto& dst = b.slot_piece(b.action_target(s, g)).module;
      CHECK(is_well_defined(r, src, dst, b.action(s, g)));
      const Word mg = word::scale(word::unit(b.q().num_generators(), g), cert.multipliers[g]);
      REQUIRE(b.word_target(s, mg) == s);
      const RingMatrix expected = RingMatrix::scalar(r, src.gens, b.chart().value(cert.multiplier_preimages[g]));
      CHECK(equal_modulo(r, src, b.action_word(s, mg), expected));
    }
}

}  // namespace

TEST_CASE("cyclic structure constants") {
  BaseRing r = parse_base_ring("QQ[s]");
  auto b2 = cyclic("QQ[s]", "s", 2);
  CHECK(b2.simplicial());
  CHECK(constants(b2) == std::vector<Poly>{r.one(), r.parse("s")});
  auto b3 = cyclic("QQ[s]", "s", 3);
  CHECK(constants(b3) == std::vector<Poly>{r.one(), r.one(), r.parse("s")});
  // shift invariance along j(P^gp)
  CHECK(b3.structure_constant({5}, 0) == b3.structure_constant({2}, 0));
  CHECK(b3.structure_constant({-1}, 0) == r.parse("s"));
  CHECK_THROWS_AS(b3.structure_constant({0}, 1), InputError);
}

TEST_CASE("pieces carry the t exponent of their degree") {
  auto b = cyclic("QQ[s]", "s", 2);
  auto half = b.piece({1});
  REQUIRE(half.generators.size() == 1);
  CHECK(b.format_monomial(half.generators[0].q, half.generators[0].u) == "x");
  auto minus = b.piece({-1});
  CHECK(b.format_monomial(minus.generators[0].q, minus.generators[0].u) == "x*t^-1");
  auto two = b.piece({4});
  CHECK(b.format_monomial(two.generators[0].q, two.generators[0].u) == "t^2");
  CHECK(b.denominators().format_degree({-1}) == "-1/2");
}

TEST_CASE("period product equals the chart value") {
  for (std::int64_t d = 1; d <= 5; ++d) {
    BaseRing r = parse_base_ring("QQ[s]");
    auto b = cyclic("QQ[s]", "s^2 + 1", d);
    Poly prod = r.one();
    for (std::int64_t k = 0; k < d; ++k) prod = r.mul(prod, b.structure_constant({k}, 0));
    CHECK(prod == r.parse("s^2 + 1"));
    check_laws(b);
  }
}

TEST_CASE("identity denominators") {
  BaseRing r = parse_base_ring("QQ[s]");
  KatoChart chart(FpMonoid::free(2), r, {r.parse("s"), r.one()});
  GradedRootAlgebra b(chart, DenominatorSystem(diagonal({1, 1})));
  CHECK(b.num_slots() == 1);
  CHECK(b.slot_piece(0).generators.size() == 1);
  CHECK(b.unit_generators() == std::vector<bool>{false, true});
  CHECK(b.unit_kernel().generators() == std::vector<Word>{{0, 1}});
}

TEST_CASE("units of the root algebra") {
  CHECK(cyclic("QQ", "2", 2).unit_generators() == std::vector<bool>{true});
  CHECK(cyclic("QQ", "0", 2).unit_generators() == std::vector<bool>{false});
  CHECK(cyclic("QQ[s]", "s", 3).unit_generators() == std::vector<bool>{false});
  CHECK(cyclic("GF(2)", "1", 3).unit_generators() == std::vector<bool>{true});
}

TEST_CASE("small characteristic") {
  auto b = cyclic("GF(2)", "1", 3);
  CHECK(classify_stack(b).deligne_mumford);
  auto c = cyclic("GF(2)", "1", 2);
  CHECK(!classify_stack(c).deligne_mumford);
  check_laws(c);
}

TEST_CASE("Deligne-Mumford grid") {
  for (std::int64_t d = 1; d <= 6; ++d)
    for (std::int64_t p : {2, 3, 5}) {
      auto s = classify_stack(Integer(d), p);
      CHECK(s.finite);
      CHECK(s.tame);
      CHECK(s.deligne_mumford == (d % p != 0));
    }
  CHECK(classify_stack(Integer(4), 0).deligne_mumford);
}

TEST_CASE("non-simplicial denominators") {
  FpMonoid cone({"x", "y", "z"}, {{{1, 1, 0}, {0, 0, 2}}});
  MonoidHom j(FpMonoid::free(2), cone, {{2, 0, 0}, {0, 2, 0}});
  for (const char* ring : {"GF(7)", "QQ[s]"}) {
    BaseRing r = parse_base_ring(ring);
    const bool poly = r.num_variables() > 0;
    KatoChart chart(FpMonoid::free(2), r, {poly ? r.parse("s") : r.constant(3), r.zero()});
    GradedRootAlgebra b(chart, DenominatorSystem(j));
    CHECK(!b.simplicial());
    CHECK(b.num_slots() == 8);
    for (std::size_t s = 0; s < b.num_slots(); ++s) CHECK(!b.slot_piece(s).generators.empty());
    check_laws(b);
    CHECK(b.unit_generators() == std::vector<bool>{!poly, false, false});
    CHECK_THROWS_AS(b.structure_constant({0, 0}, 0), UnsupportedError);
  }
}

TEST_CASE("chart and denominators must share the source") {
  BaseRing r = parse_base_ring("QQ");
  KatoChart chart(FpMonoid::free(2), r, {r.one(), r.one()});
  CHECK_THROWS_AS(GradedRootAlgebra(chart, DenominatorSystem(diagonal({2}))), InputError);
}

TEST_CASE("dump") {
  auto b = cyclic("QQ[s]", "s", 2);
  const std::string text = b.dump();
  CHECK(text.find("relation x^2 = s*t\n") != std::string::npos);
  CHECK(text.find("degree x = 1/2\n") != std::string::npos);
  CHECK(text.find("action x : 1/2 -> 0 = [[s]]\n") != std::string::npos);
}

#include "rootsheaf/commands.hpp"
#include "rootsheaf/errors.hpp"

#include <doctest.h>

using namespace rootsheaf;

namespace {

const char* kCyclic = R"(
# declarations in no particular order
algebra B { kummer j; chart F; }
chart F : P -> R { a -> s; }
hom j : P -> Q { a -> 3x; }
monoid Q { gens x; }
monoid P { gens a; }
ring R = QQ[s];
)";

std::string message_of(const std::string& text) {
  try {
    Document::parse(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("declarations resolve in any order") {
  auto d = Document::parse(kCyclic);
  CHECK(d.names() == std::vector<std::string>{"B", "F", "j", "Q", "P", "R"});
  CHECK(d.kind_of("B") == DeclKind::algebra);
  CHECK(!d.kind_of("E"));
  auto b = d.algebra("B");
  CHECK(b->num_slots() == 3);
  CHECK(d.degree(*b, "2/3") == IntVector{2});
  CHECK(d.degree(*b, "[-1]") == IntVector{-1});
  CHECK_THROWS_AS(d.degree(*b, "1/2"), InputError);
  CHECK_THROWS_AS(d.monoid("B"), InputError);
}

TEST_CASE("syntax and reference errors carry positions") {
  CHECK(message_of("monoid M { gens a b; rel a+ = b; }") ==
        "line 1, column 29: expected a generator name but found '='");
  CHECK(message_of("monoid M { gens a; }\nmonoid M { gens b; }") == "line 2, column 1: duplicate name 'M'");
  CHECK(message_of("hom f : A -> B { }") == "line 1, column 9: no declaration named 'A'");
  CHECK(message_of("ring R = QQ;\nhom f : R -> R { }") == "line 2, column 9: 'R' is a ring, not a monoid");
  CHECK(message_of("monoid M { gens a; } $") == "line 1, column 22: unexpected character '$'");
  CHECK(message_of("widget W { }") == "line 1, column 1: unknown declaration 'widget'");
}

TEST_CASE("monoids and homs") {
  auto d = Document::parse("monoid M { gens a b; rel a+b = 2b; rel 0 = 0; } monoid N { gens c; }"
                           "hom f : M -> N { a -> c; b -> 1*c; } hom g : M -> N { a -> c; }");
  FpMonoid m = d.monoid("M");
  CHECK(m.relations().size() == 2);
  CHECK(m.congruent({1, 1}, {0, 2}));
  CHECK(d.hom("f").images() == std::vector<Word>{{1}, {1}});
  CHECK_THROWS_WITH_AS(d.hom("g"), "line 1, column 106: no image for generator 'b'", InputError);
}

TEST_CASE("graded modules") {
  std::string text = std::string(kCyclic) + R"(
gradedmodule N over B {
  gen e f at 1/3;
  gen g at 0;
  rel x*e - 2*s*x*f;
  rel x^2*g - (s + 1)*x*e + 1/2s*x*f;
}
gradedmodule Bad over B { gen e at 0; rel x*e + e; }
gradedmodule Unknown over B { gen e at 0; rel y*e; }
)";
  auto d = Document::parse(text);
  auto n = d.graded("N");
  CHECK(n.num_generators() == 3);
  CHECK(n.degrees()[2] == IntVector{0});
  REQUIRE(n.relations().size() == 2);
  CHECK(n.relations()[0].degree == IntVector{2});
  CHECK(n.relations()[1].degree == IntVector{2});
  CHECK(format_graded(n, "N", "B") ==
        "gradedmodule N over B {\n  gen e at 1/3;\n  gen f at 1/3;\n  gen g at 0;\n  rel x*e - 2*s*x*f;\n"
        "  rel (-s - 1)*x*e + 1/2*s*x*f + x^2*g;\n}\n");
  CHECK_THROWS_AS(d.graded("Bad"), ValidationError);
  CHECK_THROWS_WITH_AS(d.graded("Unknown"), "line 17, column 47: unknown name 'y'", InputError);
}

TEST_CASE("parabolic sheaves") {
  std::string text = std::string(kCyclic) + R"(
parabolic E over B {
  slot 0 : R^2/([s, 0]);
  slot 1/3 : R^2/([s, 0]);
  slot 2/3 : R^2/([s, 0]);
  map x at 0 = [[1, 0], [0, 1]];
  map x at 1/3 = [[1, 0], [0, 1]];
  map x at 2/3 = [[s, 0], [0, s]];
}
parabolic Shape over B { slot 0 : R; map x at 0 = [[1, 1]]; }
parabolic Twice over B { slot 0 : R; slot [3] : R; }
)";
  auto d = Document::parse(text);
  auto e = d.parabolic("E");
  CHECK(describe(e.algebra().ring(), e.slot(1)) == "R^2/([s, 0])");
  CHECK_THROWS_AS(d.parabolic("Shape"), InputError);
  CHECK_THROWS_WITH_AS(d.parabolic("Twice"), "line 19, column 43: slot given twice", InputError);
  CHECK(d.algebra_of("E") == "B");
}

TEST_CASE("commands report exit codes") {
  std::string text = std::string(kCyclic) + "parabolic Z over B { }";
  CHECK(run_command("check-parabolic", text, {"Z"}).exit_code == 0);
  CHECK(run_command("check-kummer", text, {"j"}).report.find("index = 3\n") != std::string::npos);
  CHECK(run_command("hom", text, {"Z", "Z"}).exit_code == 2);  // polynomial coefficients
  CHECK(run_command("frobnicate", text, {}).exit_code == 2);
  CHECK(run_command("phi", text, {}).exit_code == 2);
  auto tight = run_command("check-monoid", "monoid M { gens a b c; rel a+b = 2c; rel b+c = 2a; }", {"M"},
                           DocumentOptions{CompletionLimits{1, 10}, 8, 4});
  CHECK(tight.exit_code == 3);
  CHECK(run_command("selftest", "", {}).exit_code == 0);
}

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//   acceptance [--seed N] [--golden DIR]

#include "rootsheaf/commands.hpp"
#include "rootsheaf/equivalence.hpp"
#include "rootsheaf/errors.hpp"

#include "../support/congruence_oracle.hpp"
#include "../support/graded_hom_oracle.hpp"
#include "../support/snf_oracle.hpp"
#include "random_objects.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

using namespace rootsheaf;
using namespace acceptance;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

std::vector<std::size_t> slot_dims(const ParabolicSheaf& e) {
  const FreeForm f = free_form(e);
  std::vector<std::size_t> out;
  for (const auto& p : f.sheaf.slots()) out.push_back(p.gens);
  return out;
}

bool free_coordinates(const Setup& s) {
  const auto& q = s.algebra->q();
  for (std::size_t i = 0; i < q.num_generators(); ++i) {
    Word e(q.num_generators(), 0);
    e[i] = 1;
    IntVector want(q.num_generators(), 0);
    want[i] = 1;
    if (q.iota(e) != want) return false;
  }
  return true;
}

Setup random_setup(Rng& rng, const std::vector<std::int64_t>& primes, std::int64_t max_d, std::size_t max_rank) {
  const std::int64_t p = primes[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(primes.size()) - 1))];
  const std::size_t r = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_rank)));
  std::vector<std::int64_t> d, c;
  for (std::size_t i = 0; i < r; ++i) {
    d.push_back(uniform(rng, 1, r == 1 ? max_d : 2));
    c.push_back(uniform(rng, 0, 2) == 0 ? 0 : uniform(rng, 1, p - 1));
  }
  return simplicial(p, d, c);
}

// 1. Normal forms against congruence closure.
Outcome word_problem(Rng& rng) {
  Outcome o;
  std::size_t pairs = 0;
  for (int trial = 0; trial < 200 && o.pass; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
    const std::int64_t k = uniform(rng, 1, 3);
    std::vector<Relation> rels;
    std::vector<std::pair<oracle::Word, oracle::Word>> raw;
    for (std::int64_t r = 0; r < k; ++r) {
      Word u(n), v(n);
      for (auto& e : u) e = uniform(rng, 0, 2);
      for (auto& e : v) e = uniform(rng, 0, 2);
      rels.push_back({u, v});
      raw.emplace_back(u, v);
    }
    FpMonoid m(n, rels);
    const auto words = word::up_to_degree(n, 6);
    std::vector<Word> nf;
    for (const auto& w : words) nf.push_back(m.normal_form(w));
    // Joins found inside any window are genuine, but a chain between two
    // short words may pass through longer ones: widen before declaring a
    // disagreement.
    for (std::int64_t window : {14, 24, 40}) {
      oracle::CongruenceClosure closure(n, raw, window);
      std::string bad;
      for (std::size_t a = 0; a < words.size() && bad.empty(); ++a)
        for (std::size_t b = a + 1; b < words.size(); ++b) {
          const bool joined = closure.congruent(words[a], words[b]);
          if ((nf[a] == nf[b]) == joined) continue;
          if (joined || window == 40) {
            for (const auto& rel : rels) bad += " " + m.format(rel.lhs) + "=" + m.format(rel.rhs);
            bad += ": " + m.format(words[a]) + " vs " + m.format(words[b]);
          } else {
            bad = "widen";
          }
          break;
        }
      if (bad.empty()) break;
      if (bad != "widen") {
        o.fail("presentation" + bad);
        break;
      }
    }
    pairs += words.size() * (words.size() - 1) / 2;
  }
  if (o.pass) o.detail = "200 presentations, " + std::to_string(pairs) + " pairs";
  return o;
}

// 2. The addition map and a kernel closure.
Outcome addition_map(Rng&) {
  Outcome o;
  const auto n1 = FpMonoid::free(1), n2 = FpMonoid::free(2);
  const MonoidHom add(n2, n1, {{1}, {1}});
  if (!kernel(add).generators().empty()) o.fail("kernel of addition is not trivial");
  if (is_kummer(add).injective != Verdict::fails) o.fail("addition reported injective");
  if (cokernel_analyze(add).is_cokernel != Verdict::fails) o.fail("addition reported a cokernel");
  const auto cl = kernel_closure(n1, SubmonoidGens(n1, {{2}, {3}}));
  if (cl.generators() != std::vector<Word>{{1}}) o.fail("kernel closure of <2,3> is not N");
  if (o.pass) o.detail = "trivial kernel, not injective, not a cokernel, closure = N";
  return o;
}

// 3. Indices of diagonal Kummer maps against an independent SNF.
Outcome kummer_indices(Rng&) {
  Outcome o;
  std::size_t systems = 0;
  std::function<void(std::vector<std::int64_t>)> visit = [&](std::vector<std::int64_t> d) {
    if (!d.empty()) {
      ++systems;
      const std::size_t r = d.size();
      std::vector<std::vector<std::int64_t>> diag(r, std::vector<std::int64_t>(r, 0));
      for (std::size_t i = 0; i < r; ++i) diag[i][i] = d[i];
      const auto inv = oracle::invariant_factors(diag);
      const std::int64_t n = std::accumulate(inv.begin(), inv.end(), std::int64_t{1}, std::multiplies<>());
      std::vector<Integer> torsion;
      for (auto t : inv)
        if (t > 1) torsion.push_back(t);
      std::vector<Word> images;
      for (std::size_t i = 0; i < r; ++i) {
        Word w(r, 0);
        w[i] = d[i];
        images.push_back(w);
      }
      DenominatorSystem den(MonoidHom(FpMonoid::free(r), FpMonoid::free(r), images));
      std::string label = "d =";
      for (auto x : d) label += " " + std::to_string(x);
      if (den.index() != n) o.fail(label + ": index " + den.index().str());
      if (den.fundamental_domain().size() != static_cast<std::size_t>(n)) o.fail(label + ": domain size");
      if (den.index_group().torsion() != torsion || den.index_group().free_rank() != 0) o.fail(label + ": group");
      std::set<std::vector<std::int64_t>> residues;
      for (const auto& w : den.fundamental_domain()) {
        std::vector<std::int64_t> res;
        for (std::size_t i = 0; i < r; ++i) res.push_back(oracle::floor_mod(static_cast<std::int64_t>(w[i]), d[i]));
        residues.insert(res);
      }
      if (residues.size() != static_cast<std::size_t>(n)) o.fail(label + ": domain is not a transversal");
    }
    if (d.size() == 3) return;
    for (std::int64_t x = 1; x <= 4; ++x) {
      auto e = d;
      e.push_back(x);
      visit(e);
    }
  };
  visit({});
  if (o.pass) o.detail = std::to_string(systems) + " systems";
  return o;
}

bool in_submonoid(const std::vector<Word>& gens, const Word& q) {
  if (std::all_of(q.begin(), q.end(), [](std::int64_t x) { return x == 0; })) return true;
  for (const auto& g : gens) {
    Word rest = q;
    bool fits = true;
    for (std::size_t i = 0; i < q.size(); ++i) {
      rest[i] -= g[i];
      if (rest[i] < 0) fits = false;
    }
    if (fits && std::any_of(g.begin(), g.end(), [](std::int64_t x) { return x > 0; }) && in_submonoid(gens, rest))
      return true;
  }
  return false;
}

// 4. K_B is the set of q with a multiple m q in j(K_A), m <= index.
Outcome unit_kernels(Rng& rng) {
  Outcome o;
  std::size_t checked = 0;
  for (int trial = 0; trial < 50 && o.pass; ++trial) {
    const std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 3));
    std::vector<std::int64_t> d, c;
    for (std::size_t i = 0; i < r; ++i) {
      d.push_back(uniform(rng, 1, 4));
      c.push_back(uniform(rng, 0, 2) == 0 ? 0 : uniform(rng, 1, 6));
    }
    const Setup s = simplicial(7, d, c);
    const auto& b = *s.algebra;
    const std::int64_t index = static_cast<std::int64_t>(b.denominators().index());
    const auto& kb = b.unit_kernel().generators();
    std::vector<std::int64_t> hi;
    for (auto x : d) hi.push_back(2 * x);
    Word q(r, 0);
    for (;;) {
      // oracle: m q = j(p) with f(p) a unit, i.e. p supported where c != 0
      bool expected = false;
      for (std::int64_t m = 1; m <= index && !expected; ++m) {
        bool ok = true;
        for (std::size_t i = 0; i < r; ++i) {
          if ((m * q[i]) % d[i] != 0) ok = false;
          if (q[i] > 0 && c[i] == 0) ok = false;
        }
        expected = ok;
      }
      const bool listed = in_submonoid(kb, q);
      bool invertible = true;
      for (std::size_t slot = 0; slot < b.num_slots(); ++slot)
        if (!unit_inverse(b.ring(), b.action_word(slot, q))) invertible = false;
      ++checked;
      if (listed != expected || invertible != expected) {
        o.fail("chart " + std::to_string(trial) + ", q = " + b.q().format(q));
        break;
      }
      std::size_t i = 0;
      while (i < r && q[i] == hi[i]) q[i++] = 0;
      if (i == r) break;
      ++q[i];
    }
  }
  if (o.pass) o.detail = "50 charts over GF(7), " + std::to_string(checked) + " elements";
  return o;
}

// 5. Round trips with witnesses.
Outcome round_trips(Rng& rng) {
  Outcome o;
  for (int trial = 0; trial < 100 && o.pass; ++trial) {
    const Setup s = random_setup(rng, {2, 5}, 4, 2);
    if (!free_coordinates(s)) {
      o.fail("unexpected degree coordinates");
      break;
    }
    const ParabolicSheaf e = random_sheaf(s, rng);
    const RoundTrip there = roundtrip_sheaf(e);
    const ParabolicSheaf back = phi(psi(e));
    const ParabolicMorphism w{there.witnesses};
    if (!there.iso || there.witnesses.size() != e.num_slots() || !is_morphism(e, back, w) ||
        !is_isomorphism(e, back, w)) {
      o.fail("sheaf " + std::to_string(trial) + ": E -> Phi Psi E " + there.failure);
      break;
    }
    for (const GradedPresentation& n : {psi(e), random_graded(s, rng)}) {
      const RoundTrip rt = roundtrip_presentation(n);
      if (!rt.iso || rt.witnesses.size() != e.num_slots()) {
        o.fail("sheaf " + std::to_string(trial) + ": Psi Phi " + rt.failure);
        break;
      }
    }
  }
  if (o.pass) o.detail = "100 sheaves, both directions";
  return o;
}

// 6. Internal Hom against graded homs solved on Psi-images.
Outcome hom_oracle(Rng& rng) {
  Outcome o;
  for (int trial = 0; trial < 50 && o.pass; ++trial) {
    const Setup s = random_setup(rng, {2, 5}, 4, 2);
    const ParabolicSheaf e = random_sheaf(s, rng), e2 = random_sheaf(s, rng);
    const oracle::GradedHomSolver solver(s.simple);
    const auto n = to_oracle(s, psi(e)), n2 = to_oracle(s, psi(e2));
    const auto dims = slot_dims(parabolic_hom(e, e2));
    std::vector<std::size_t> want;
    for (std::size_t slot = 0; slot < s.algebra->num_slots(); ++slot)
      want.push_back(solver.hom_dimension(n, n2, to_small(s.algebra->slot_degree(slot))));
    const std::size_t global = solver.hom_dimension(n, n2, std::vector<std::int64_t>(s.simple.d.size(), 0));
    if (dims != want || morphisms(e, e2).dimension != global)
      o.fail("pair " + std::to_string(trial) + ": " + join(dims) + " vs " + join(want));
  }
  if (o.pass) o.detail = "50 pairs, every slot";
  return o;
}

// 7. Tame and DM classification.
Outcome dm_grid(Rng&) {
  Outcome o;
  for (std::int64_t d = 1; d <= 6; ++d)
    for (std::int64_t p : {2, 3, 5}) {
      const bool dm = std::gcd(d, p) == 1;
      const StackClass k = classify_stack(Integer(d), p);
      const StackClass k2 = classify_stack(*simplicial(p, {d}, {1}).algebra);
      for (const auto& x : {k, k2})
        if (!x.tame || !x.finite || x.deligne_mumford != dm || x.index != d)
          o.fail("d = " + std::to_string(d) + ", p = " + std::to_string(p));
    }
  if (o.pass) o.detail = "18 cells";
  return o;
}

// 8. Tensor compatibility and the tensor-Hom adjunction.
Outcome monoidal(Rng& rng) {
  Outcome o;
  for (int trial = 0; trial < 25 && o.pass; ++trial) {
    const Setup s = random_setup(rng, {2, 5}, 4, 2);
    const GradedPresentation n1 = random_graded(s, rng), n2 = random_graded(s, rng), n3 = random_graded(s, rng);
    const MonoidalReport rep = monoidal_compat_check(n1, n2);
    if (!rep.tensor_iso || !rep.hom_agree) {
      o.fail("triple " + std::to_string(trial) + ": " + rep.failure);
      break;
    }
    const ParabolicSheaf e1 = phi(n1), e2 = phi(n2), e3 = phi(n3);
    const std::size_t lhs = morphisms(free_form(parabolic_tensor(e1, e2)).sheaf, e3).dimension;
    const std::size_t rhs = morphisms(e1, free_form(parabolic_hom(e2, e3)).sheaf).dimension;
    const oracle::GradedHomSolver solver(s.simple);
    const std::size_t graded =
        solver.hom_dimension(to_oracle(s, tensor(n1, n2)), to_oracle(s, n3), std::vector<std::int64_t>(s.simple.d.size(), 0));
    if (lhs != rhs || lhs != graded)
      o.fail("triple " + std::to_string(trial) + ": " + std::to_string(lhs) + ", " + std::to_string(rhs) + ", " +
             std::to_string(graded));
  }
  if (o.pass) o.detail = "25 triples";
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Slots and maps of the unit sheaf: x acts by 1 except from the last slot, by s.
std::string unit_body(std::int64_t d) {
  std::string slots, maps;
  for (std::int64_t k = 0; k < d; ++k) {
    const std::int64_t g = std::gcd(k, d);
    const std::string w = k == 0 ? "0" : std::to_string(k / g) + "/" + std::to_string(d / g);
    slots += "  slot " + w + " : R;\n";
    maps += "  map x at " + w + " = [[" + (k + 1 == d ? "s" : "1") + "]];\n";
  }
  return "{\n" + slots + maps + "}\n";
}

std::string root_document(std::int64_t d) {
  const std::string ds = std::to_string(d);
  return "ring R = QQ[s];\nmonoid P { gens a; }\nmonoid Q { gens x; }\nhom j : P -> Q { a -> " + ds +
         "x; }\nchart F : P -> R { a -> s; }\nalgebra B { chart F; kummer j; }\n"
         "gradedmodule O over B { gen e at 0; }\ngradedmodule D over B { gen e at 0; rel x*e; }\n"
         "parabolic U over B " + unit_body(d);
}

// 9. The d-th root of a line bundle with section s.
Outcome worked_example(const std::string& golden) {
  Outcome o;
  struct Case {
    const char* file;
    const char* command;
    std::vector<std::string> args;
  };
  const std::vector<Case> cases{{"build_algebra", "build-algebra", {"B"}}, {"classify_stack", "classify-stack", {"B"}},
                                {"check_kummer", "check-kummer", {"j"}},   {"phi_unit", "phi", {"O"}},
                                {"phi_divisor", "phi", {"D"}},             {"psi_unit", "psi", {"U"}},
                                {"roundtrip_unit", "roundtrip", {"U"}},    {"roundtrip_divisor", "roundtrip", {"D"}}};
  try {
    const std::string doc = read_file(golden + "/square_root.rsd");
    for (const auto& c : cases) {
      const auto res = run_command(c.command, doc, c.args);
      if (res.exit_code != 0 || res.report != read_file(golden + "/" + c.file + ".out")) o.fail(std::string(c.file) + " differs");
    }
    for (std::int64_t d = 2; d <= 4; ++d) {
      const std::string doc = root_document(d), ds = std::to_string(d);
      const auto alg = run_command("build-algebra", doc, {"B"});
      if (alg.report.find("relation x^" + ds + " = s*t\n") == std::string::npos) o.fail("d = " + ds + ": relation");
      const auto unit = run_command("phi", doc, {"O"});
      const auto brace = unit.report.find("{\n");
      if (unit.exit_code != 0 || brace == std::string::npos || unit.report.substr(brace) != unit_body(d))
        o.fail("d = " + ds + ": Phi(B) is not the unit sheaf");
      if (run_command("check-parabolic", doc, {"U"}).exit_code != 0) o.fail("d = " + ds + ": unit sheaf rejected");
      const auto div = run_command("phi", doc, {"D"});
      std::string slots = "slot 0 = R/(s)\n";
      for (std::int64_t k = 1; k < d; ++k)
        slots += "slot " + std::to_string(k / std::gcd(k, d)) + "/" + std::to_string(d / std::gcd(k, d)) + " = 0\n";
      if (div.report.find(slots) == std::string::npos) o.fail("d = " + ds + ": Phi(B/(x))");
    }
  } catch (const std::exception& e) {
    o.fail(e.what());
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " golden reports, d = 2..4";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::uint64_t seed = 20260415;
  std::string golden = ROOTSHEAF_GOLDEN_DIR;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--golden", golden, "Directory of golden reports")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    const char* name;
    double seconds;
    std::function<Outcome(Rng&)> run;
  };
  const std::vector<Criterion> criteria{
      {"word problem against congruence closure", 60, word_problem},
      {"addition map and kernel closure", 1, addition_map},
      {"Kummer indices against Smith form", 5, kummer_indices},
      {"unit kernels of root algebras", 30, unit_kernels},
      {"round trips Phi Psi and Psi Phi", 120, round_trips},
      {"internal Hom against graded homs", 60, hom_oracle},
      {"tame and Deligne-Mumford grid", 1, dm_grid},
      {"tensor compatibility and adjunction", 60, monoidal},
      {"root of a line bundle with section", 1, [&](Rng&) { return worked_example(golden); }},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Rng rng(seed + k);
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run(rng);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > criteria[k].seconds) o.fail("took " + std::to_string(secs) + " s");
    all = all && o.pass;
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (o.pass ? "PASS" : "FAIL") << " " << k + 1 << " " << criteria[k].name << ": " << o.detail
         << " [" << secs << " s]";
    std::cout << line.str() << std::endl;
  }
  return all ? 0 : 1;
}

#include "rootsheaf/commands.hpp"

#include "rootsheaf/errors.hpp"

#include <cctype>
#include <functional>
#include <sstream>
#include <utility>

namespace rootsheaf {

namespace {

class Report {
 public:
  void add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  void witness(std::string text) { witness_ = std::move(text); }
  std::string str() const {
    std::string out;
    for (const auto& [k, v] : lines_) out += k + " = " + v + "\n";
    if (!witness_.empty()) out += "\n" + witness_;
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
  std::string witness_;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep, const std::string& empty) {
  if (parts.empty()) return empty;
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string words(const FpMonoid& m, const std::vector<Word>& ws) {
  std::vector<std::string> parts;
  for (const auto& w : ws) parts.push_back(m.format(w));
  return join(parts, ", ", "0");
}

void need_args(const std::vector<std::string>& args, std::size_t n, const std::string& usage) {
  if (args.size() != n) throw InputError("usage: " + usage);
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return InputError("not a rational number: '" + text + "'"); };
  auto integer = [&](const std::string& s) {
    std::size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (k == s.size()) throw bad();
    for (std::size_t i = k; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw bad();
    return Integer(s[0] == '+' ? s.substr(1) : s);
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(integer(text));
  Integer d = integer(text.substr(slash + 1));
  if (d == 0) throw bad();
  return Rational(integer(text.substr(0, slash)), d);
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part.erase(0, part.find_first_not_of(' '));
    part.erase(part.find_last_not_of(' ') + 1);
    out.push_back(parse_rational(part));
  }
  return out;
}

std::string slot_label(const GradedRootAlgebra& b, std::size_t s) {
  return b.denominators().format_degree(b.slot_degree(s));
}

void describe_slots(Report& r, const ParabolicSheaf& e) {
  const auto& b = e.algebra();
  for (std::size_t s = 0; s < e.num_slots(); ++s) r.add("slot " + slot_label(b, s), describe(b.ring(), e.slot(s)));
}

int check_monoid(const Document& doc, const std::vector<std::string>& args, Report& r) {
  need_args(args, 1, "check-monoid FILE MONOID");
  const FpMonoid m = doc.monoid(args[0]);
  r.add("monoid", args[0]);
  r.add("generators", join(m.generator_names(), ", ", "none"));
  std::vector<std::string> rels;
  for (const auto& rel : m.relations()) rels.push_back(m.format(rel.lhs) + " = " + m.format(rel.rhs));
  r.add("relations", join(rels, "; ", "none"));
  r.add("rules", std::to_string(m.rewrite_system().rules().size()));
  const Classification c = classify(m);
  r.add("integral", c.integral);
  r.add("sharp", c.sharp);
  r.add("torsion_free", c.torsion_free);
  r.add("group", c.group.to_string());
  std::vector<std::string> units;
  for (std::size_t g = 0; g < m.num_generators(); ++g)
    if (c.units[g]) units.push_back(m.generator_names()[g]);
  r.add("units", join(units, ", ", "none"));
  for (std::size_t g = 0; g < m.num_generators(); ++g)
    r.add("iota " + m.generator_names()[g], c.group.element_to_string(c.iota[g]));
  return 0;
}

int check_hom(const Document& doc, const std::vector<std::string>& args, Report& r, const DocumentOptions& o) {
  need_args(args, 1, "check-hom FILE HOM");
  const MonoidHom f = doc.hom(args[0]);
  r.add("hom", args[0]);
  r.add("well_defined", true);
  const SubmonoidGens k = kernel(f);
  r.add("kernel", words(f.source(), k.generators()));
  r.add("kernel_trivial", k.generators().empty());
  r.add("injective", to_string(is_kummer(f, o.search_bound).injective));
  const CokernelAnalysis c = cokernel_analyze(f, o.search_bound);
  r.add("cokernel_of_kernel", to_string(c.is_cokernel));
  if (!c.reason.empty()) r.add("reason", c.reason);
  return 0;
}

int check_kummer(const Document& doc, const std::vector<std::string>& args, Report& r, const DocumentOptions& o) {
  need_args(args, 1, "check-kummer FILE HOM");
  const MonoidHom j = doc.hom(args[0]);
  r.add("hom", args[0]);
  const KummerCertificate cert = is_kummer(j, o.search_bound);
  r.add("kummer", to_string(cert.is_kummer));
  r.add("injective", to_string(cert.injective));
  if (cert.is_kummer == Verdict::holds) {
    std::vector<std::string> mults;
    for (std::size_t g = 0; g < cert.multipliers.size(); ++g)
      mults.push_back(j.target().generator_names()[g] + ":" + std::to_string(cert.multipliers[g]));
    r.add("multipliers", join(mults, ", ", "none"));
    const Classification cp = classify(j.source()), cq = classify(j.target());
    if (cp.integral && cq.integral) {
      const DenominatorSystem den(j, o.search_bound);
      r.add("index", den.index().str());
      r.add("index_group", den.index_group().to_string());
      std::vector<std::string> dom;
      for (const auto& v : den.fundamental_domain()) dom.push_back(den.format_degree(v));
      r.add("fundamental_domain", join(dom, ", ", "none"));
    }
  }
  if (!cert.reason.empty()) r.add("reason", cert.reason);
  switch (cert.is_kummer) {
    case Verdict::holds: return 0;
    case Verdict::fails: return 1;
    default: return 3;
  }
}

int stalk(const Document& doc, const std::vector<std::string>& args, Report& r) {
  need_args(args, 2, "stalk FILE CHART POINT");
  const KatoChart c = doc.chart(args[0]);
  const StalkData s = stalk_df(c, parse_point(args[1]));
  r.add("chart", args[0]);
  r.add("point", args[1]);
  r.add("kernel", words(c.monoid(), s.kernel.generators()));
  r.add("minimal", s.minimal);
  const Classification cl = classify(s.stalk.monoid);
  r.add("stalk_group", cl.group.to_string());
  r.add("stalk_sharp", cl.sharp);
  return 0;
}

int build_algebra(const Document& doc, const std::vector<std::string>& args, Report& r) {
  need_args(args, 1, "build-algebra FILE ALGEBRA");
  const AlgebraPtr b = doc.algebra(args[0]);
  r.add("algebra", args[0]);
  r.add("slots", std::to_string(b->num_slots()));
  std::vector<std::string> units;
  for (std::size_t g = 0; g < b->q().num_generators(); ++g)
    if (b->unit_generators()[g]) units.push_back(b->q().generator_names()[g]);
  r.add("invertible_x", join(units, ", ", "none"));
  r.witness(b->dump());
  return 0;
}

int classify_stack_cmd(const Document& doc, const std::vector<std::string>& args, Report& r) {
  need_args(args, 1, "classify-stack FILE ALGEBRA");
  const StackClass c = classify_stack(*doc.algebra(args[0]));
  r.add("algebra", args[0]);
  r.add("index", c.index.str());
  r.add("characteristic", std::to_string(c.characteristic));
  r.add("finite", c.finite);
  r.add("tame", c.tame);
  r.add("deligne_mumford", c.deligne_mumford);
  return 0;
}

int check_parabolic(const Document& doc, const std::vector<std::string>& args, Report& r) {
  need_args(args, 1, "check-parabolic FILE SHEAF");
  const ParabolicSheaf e = doc.parabolic_unchecked(args[0]);
  r.add("sheaf", args[0]);
  describe_slots(r, e);
  try {
    validate(e);
  } catch (const ValidationError& err) {
    r.add("valid", false);
    r.add("locus", err.locus());
    r.add("reason", err.what());
    return 1;
  }
  r.add("valid", true);
  return 0;
}

int phi_cmd(const Document& doc, const std::vector<std::string>& args, Report& r) {
  need_args(args, 1, "phi FILE MODULE");
  const GradedPresentation n = doc.graded(args[0]);
  const ParabolicSheaf e = phi(n);
  validate(e);
  r.add("module", args[0]);
  describe_slots(r, e);
  r.add("valid", true);
  r.witness(format_parabolic(e, "phi_" + args[0], doc.algebra_of(args[0])));
  return 0;
}

int psi_cmd(const Document& doc, const std::vector<std::string>& args, Report& r) {
  need_args(args, 1, "psi FILE SHEAF");
  const GradedPresentation n = psi(doc.parabolic(args[0]));
  r.add("sheaf", args[0]);
  r.add("generators", std::to_string(n.num_generators()));
  r.add("relations", std::to_string(n.relations().size()));
  r.witness(format_graded(n, "psi_" + args[0], doc.algebra_of(args[0])));
  return 0;
}

int roundtrip_cmd(const Document& doc, const std::vector<std::string>& args, Report& r) {
  need_args(args, 1, "roundtrip FILE NAME");
  RoundTrip rt;
  ParabolicSheaf source;
  if (doc.kind_of(args[0]) == DeclKind::parabolic) {
    source = doc.parabolic(args[0]);
    rt = roundtrip_sheaf(source);
    r.add("direction", "phi(psi(E))");
  } else if (doc.kind_of(args[0]) == DeclKind::graded) {
    const GradedPresentation n = doc.graded(args[0]);
    source = phi(n);
    rt = roundtrip_presentation(n);
    r.add("direction", "psi(phi(N))");
  } else {
    throw InputError("'" + args[0] + "' is not a parabolic sheaf or graded module");
  }
  r.add("object", args[0]);
  r.add("iso", rt.iso);
  if (!rt.iso) r.add("failure", rt.failure);
  std::string w;
  const auto& b = source.algebra();
  for (std::size_t s = 0; s < rt.witnesses.size(); ++s)
    w += "witness " + slot_label(b, s) + " = " + format(b.ring(), rt.witnesses[s]) + "\n";
  r.witness(w);
  return rt.iso ? 0 : 1;
}

std::pair<ParabolicSheaf, ParabolicSheaf> sheaf_pair(const Document& doc, const std::vector<std::string>& args,
                                                     const std::string& usage) {
  need_args(args, 2, usage);
  ParabolicSheaf e = doc.parabolic(args[0]), e2 = doc.parabolic(args[1]);
  if (doc.algebra_of(args[0]) != doc.algebra_of(args[1])) throw InputError("sheaves live over different algebras");
  return {e, e2};
}

int hom_cmd(const Document& doc, const std::vector<std::string>& args, Report& r) {
  auto [e, e2] = sheaf_pair(doc, args, "hom FILE SHEAF SHEAF");
  const ParabolicSheaf h = parabolic_hom(e, e2);
  r.add("source", args[0]);
  r.add("target", args[1]);
  for (std::size_t s = 0; s < h.num_slots(); ++s) r.add("dim " + slot_label(h.algebra(), s), std::to_string(h.slot(s).gens));
  r.witness(format_parabolic(h, "hom_" + args[0] + "_" + args[1], doc.algebra_of(args[0])));
  return 0;
}

int tensor_cmd(const Document& doc, const std::vector<std::string>& args, Report& r) {
  auto [e, e2] = sheaf_pair(doc, args, "tensor FILE SHEAF SHEAF");
  const ParabolicSheaf t = parabolic_tensor(e, e2);
  validate(t);
  r.add("left", args[0]);
  r.add("right", args[1]);
  describe_slots(r, t);
  r.witness(format_parabolic(t, "tensor_" + args[0] + "_" + args[1], doc.algebra_of(args[0])));
  return 0;
}

int selftest(Report& r) {
  const std::string cyclic2 =
      "ring R = QQ[s]; monoid P { gens a; } monoid Q { gens x; } hom j : P -> Q { a -> 2x; }"
      "chart F : P -> R { a -> s; } algebra B { chart F; kummer j; }";
  std::vector<std::pair<std::string, std::function<bool()>>> checks = {
      {"structure_constants",
       [&] {
         auto b = Document::parse(cyclic2).algebra("B");
         return b->ring().format(b->structure_constant({0}, 0)) == "1" &&
                b->ring().format(b->structure_constant({1}, 0)) == "s";
       }},
      {"kummer_index",
       [&] {
         auto d = Document::parse(cyclic2);
         return DenominatorSystem(d.hom("j")).index() == 2;
       }},
      {"addition_map",
       [] {
         auto d = Document::parse("monoid N2 { gens a b; } monoid N { gens c; } hom add : N2 -> N { a -> c; b -> c; }");
         MonoidHom f = d.hom("add");
         return kernel(f).generators().empty() && is_kummer(f).injective == Verdict::fails &&
                cokernel_analyze(f).is_cokernel == Verdict::fails;
       }},
      {"kernel_closure",
       [] {
         FpMonoid n = FpMonoid::free(1);
         return quotient(n, kernel_closure(n, SubmonoidGens(n, {{2}, {3}}))).monoid.normal_form({1}) == Word{0};
       }},
      {"deligne_mumford", [] { return !classify_stack(2, 2).deligne_mumford && classify_stack(3, 2).deligne_mumford; }},
      {"divisor_sheaf",
       [&] {
         auto d = Document::parse(cyclic2 + "gradedmodule N over B { gen e at 0; rel x*e; }");
         ParabolicSheaf e = phi(d.graded("N"));
         const BaseRing& ring = e.algebra().ring();
         return describe(ring, e.slot(0)) == "R/(s)" && describe(ring, e.slot(1)) == "0";
       }},
      {"round_trip",
       [&] {
         auto d = Document::parse(cyclic2 + "gradedmodule N over B { gen e at 0; }");
         return roundtrip_sheaf(phi(d.graded("N"))).iso && roundtrip_presentation(d.graded("N")).iso;
       }},
      {"hom_dimension",
       [] {
         auto d = Document::parse(
             "ring k = GF(2); monoid P { gens a; } monoid Q { gens x; } hom j : P -> Q { a -> 2x; }"
             "chart F : P -> k { a -> 0; } algebra B { chart F; kummer j; }"
             "parabolic E over B { slot 0 : R; } parabolic E2 over B { slot 1/2 : R; }");
         ParabolicSheaf h = parabolic_hom(d.parabolic("E"), d.parabolic("E2"));
         return h.slot(0).gens == 0 && h.slot(1).gens == 1;
       }},
  };
  std::size_t failed = 0;
  for (const auto& [name, check] : checks) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception&) {
      ok = false;
    }
    failed += ok ? 0 : 1;
    r.add("check " + name, std::string(ok ? "pass" : "fail"));
  }
  r.add("checks", std::to_string(checks.size()));
  r.add("failed", std::to_string(failed));
  return failed == 0 ? 0 : 1;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "check-monoid", "check-hom", "check-kummer", "stalk", "build-algebra", "classify-stack", "check-parabolic",
      "phi",          "psi",       "roundtrip",    "hom",   "tensor",        "selftest"};
  return names;
}

CommandResult run_command(const std::string& command, const std::string& document, const std::vector<std::string>& args,
                          const DocumentOptions& options) {
  Report r;
  r.add("command", command);
  int code = 0;
  try {
    if (command == "selftest") {
      code = selftest(r);
    } else {
      const Document doc = Document::parse(document, options);
      if (command == "check-monoid") code = check_monoid(doc, args, r);
      else if (command == "check-hom") code = check_hom(doc, args, r, options);
      else if (command == "check-kummer") code = check_kummer(doc, args, r, options);
      else if (command == "stalk") code = stalk(doc, args, r);
      else if (command == "build-algebra") code = build_algebra(doc, args, r);
      else if (command == "classify-stack") code = classify_stack_cmd(doc, args, r);
      else if (command == "check-parabolic") code = check_parabolic(doc, args, r);
      else if (command == "phi") code = phi_cmd(doc, args, r);
      else if (command == "psi") code = psi_cmd(doc, args, r);
      else if (command == "roundtrip") code = roundtrip_cmd(doc, args, r);
      else if (command == "hom") code = hom_cmd(doc, args, r);
      else if (command == "tensor") code = tensor_cmd(doc, args, r);
      else throw InputError("unknown command '" + command + "'");
    }
  } catch (const InputError& e) {
    Report err;
    err.add("command", command);
    err.add("error", std::string("input"));
    err.add("message", e.what());
    return {2, err.str()};
  } catch (const UnsupportedError& e) {
    Report err;
    err.add("command", command);
    err.add("error", std::string("unsupported"));
    err.add("message", e.what());
    return {2, err.str()};
  } catch (const ValidationError& e) {
    Report err;
    err.add("command", command);
    err.add("error", std::string("validation"));
    err.add("locus", e.locus());
    err.add("message", e.what());
    return {1, err.str()};
  } catch (const ResourceError& e) {
    Report err;
    err.add("command", command);
    err.add("error", std::string("resource"));
    err.add("message", e.what());
    return {3, err.str()};
  } catch (const std::exception& e) {
    Report err;
    err.add("command", command);
    err.add("error", std::string("internal"));
    err.add("message", e.what());
    return {2, err.str()};
  }
  return {code, r.str()};
}

}  // namespace rootsheaf

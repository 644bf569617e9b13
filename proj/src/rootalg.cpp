#include "rootsheaf/rootalg.hpp"

#include "rootsheaf/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace rootsheaf {

namespace {

bool same_presentation(const FpMonoid& a, const FpMonoid& b) {
  if (a.num_generators() != b.num_generators() || a.relations().size() != b.relations().size()) return false;
  for (std::size_t k = 0; k < a.relations().size(); ++k)
    if (a.relations()[k].lhs != b.relations()[k].lhs || a.relations()[k].rhs != b.relations()[k].rhs) return false;
  return true;
}

}  // namespace

GradedRootAlgebra::GradedRootAlgebra(KatoChart chart, DenominatorSystem denominators, std::int64_t injectivity_height)
    : chart_(std::move(chart)), den_(std::move(denominators)) {
  if (!same_presentation(chart_.monoid(), den_.source()))
    throw InputError("chart monoid and denominator source differ");
  const auto& j = den_.j();
  const std::size_t np = den_.source().num_generators(), nq = q().num_generators();
  simplicial_ = den_.source().relations().empty() && q().relations().empty() && np == nq;
  for (std::size_t i = 0; i < np && simplicial_; ++i)
    for (std::size_t g = 0; g < nq; ++g)
      if (g != i && j.images()[i][g] != 0) simplicial_ = false;
  build_pieces();
  find_units();
  check_injectivity(injectivity_height);
}

std::optional<Word> GradedRootAlgebra::divides_by_image(const Word& small, const Word& big) const {
  const auto& qp = q().group_presentation();
  const auto& grp = qp.group();
  auto slice = lattice_slice(qp.projection() * den_.j().matrix(), grp, grp.sub(qp.canonical(big), qp.canonical(small)));
  if (slice.minimal.empty()) return std::nullopt;
  return slice.minimal.front();
}

void GradedRootAlgebra::build_pieces() {
  const auto& qp = q().group_presentation();
  const auto& grp = qp.group();
  const std::size_t nq = q().num_generators();
  const std::size_t slots = den_.fundamental_domain().size();
  const auto& mult = den_.certificate().multipliers;

  // box words, grouped by slot, deduplicated up to congruence
  std::vector<std::vector<Word>> candidates(slots);
  Word c(nq, 0);
  for (;;) {
    Word nf = q().normal_form(c);
    auto& bucket = candidates[slot_of(qp.canonical(nf))];
    if (std::find(bucket.begin(), bucket.end(), nf) == bucket.end()) bucket.push_back(nf);
    std::size_t k = 0;
    while (k < nq && ++c[k] >= mult[k]) c[k++] = 0;
    if (k == nq) break;
  }

  const MonomialOrder order;
  slot_pieces_.resize(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    auto& cand = candidates[s];
    std::sort(cand.begin(), cand.end(), [&](const Word& a, const Word& b) { return order.less(a, b); });
    std::vector<Word> reps;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      bool minimal = true;
      for (std::size_t b = 0; b < cand.size() && minimal; ++b) {
        if (a == b || !divides_by_image(cand[b], cand[a])) continue;
        // ties between mutually divisible words go to the earlier one
        if (!divides_by_image(cand[a], cand[b]) || b < a) minimal = false;
      }
      if (minimal) reps.push_back(cand[a]);
    }
    GradedPiece& piece = slot_pieces_[s];
    piece.degree = slot_degree(s);
    for (const auto& r : reps) piece.generators.push_back({r, den_.preimage(grp.sub(piece.degree, qp.canonical(r)))});
    piece.module.gens = reps.size();
    const auto f = qp.projection() * den_.j().matrix();
    const std::size_t np = den_.source().num_generators();
    IntMatrix pair_map(f.rows(), 2 * np);
    for (std::size_t i = 0; i < f.rows(); ++i)
      for (std::size_t k = 0; k < np; ++k) {
        pair_map(i, k) = f(i, k);
        pair_map(i, np + k) = -f(i, k);
      }
    for (std::size_t a = 0; a < reps.size(); ++a)
      for (std::size_t b = a + 1; b < reps.size(); ++b) {
        // r_a + j(p1) = r_b + j(p2)
        auto slice = lattice_slice(pair_map, grp, grp.sub(qp.canonical(reps[b]), qp.canonical(reps[a])));
        for (const auto& sol : slice.minimal) {
          Word p1(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(np));
          Word p2(sol.begin() + static_cast<std::ptrdiff_t>(np), sol.end());
          RingVector rel(reps.size());
          rel[a] = chart_.value(p1);
          rel[b] = ring().neg(chart_.value(p2));
          piece.module.relations.push_back(std::move(rel));
        }
      }
  }

  actions_.assign(slots, std::vector<RingMatrix>(nq));
  targets_.assign(slots, std::vector<std::size_t>(nq));
  for (std::size_t s = 0; s < slots; ++s)
    for (std::size_t g = 0; g < nq; ++g) {
      const std::size_t t = slot_of(grp.add(slot_degree(s), qp.canonical(word::unit(nq, g))));
      targets_[s][g] = t;
      const auto& src = slot_pieces_[s].generators;
      const auto& dst = slot_pieces_[t].generators;
      RingMatrix m(dst.size(), src.size());
      for (std::size_t i = 0; i < src.size(); ++i) {
        Word moved = word::add(src[i].q, word::unit(nq, g));
        bool found = false;
        for (std::size_t k = 0; k < dst.size() && !found; ++k)
          if (auto p = divides_by_image(dst[k].q, moved)) {
            m(k, i) = chart_.value(*p);
            found = true;
          }
        if (!found) throw ValidationError("kummer", "graded piece has no generator below a product");
      }
      actions_[s][g] = std::move(m);
    }
}

void GradedRootAlgebra::find_units() {
  const std::size_t nq = q().num_generators();
  const BaseRing& r = ring();
  std::vector<Pruned> pruned;
  for (const auto& p : slot_pieces_) pruned.push_back(prune(r, p.module));
  unit_generators_.assign(nq, true);
  for (std::size_t g = 0; g < nq; ++g) {
    for (std::size_t s = 0; s < num_slots() && unit_generators_[g]; ++s) {
      const std::size_t t = targets_[s][g];
      const auto& a = pruned[s];
      const auto& b = pruned[t];
      if (!a.module.relations.empty() || !b.module.relations.empty()) {
        // torsion pieces over a polynomial ring: x^{m g} = f(p) t^p, so x^g
        // is a unit when f(p) is
        const auto& pre = den_.certificate().multiplier_preimages[g];
        unit_generators_[g] = r.is_unit(chart_.value(pre));
        break;
      }
      RingMatrix m = multiply(r, b.to_new, multiply(r, actions_[s][g], a.from_new));
      if (m.rows() != m.cols()) {
        unit_generators_[g] = false;
        break;
      }
      unit_generators_[g] = r.is_unit(determinant(r, m));
    }
  }
  std::vector<Word> gens;
  for (std::size_t g = 0; g < nq; ++g)
    if (unit_generators_[g]) gens.push_back(word::unit(nq, g));
  kb_ = kernel_closure(q(), SubmonoidGens(q(), gens));
}

void GradedRootAlgebra::check_injectivity(std::int64_t height) const {
  const FpMonoid& p = den_.source();
  const std::size_t np = p.num_generators();
  std::vector<Word> unit_valued;
  for (std::size_t i = 0; i < np; ++i)
    if (ring().is_unit(chart_.values()[i])) unit_valued.push_back(word::unit(np, i));
  const Quotient pa = quotient(p, kernel_closure(p, SubmonoidGens(p, unit_valued)));
  const Quotient qb = quotient(q(), kb_);
  std::map<Word, Word> seen;  // image class -> source class
  for (const auto& w : word::up_to_degree(np, height)) {
    Word src = pa.monoid.normal_form(w);
    Word img = qb.monoid.normal_form(den_.j().apply_raw(w));
    auto [it, inserted] = seen.emplace(img, src);
    if (!inserted && it->second != src)
      throw ValidationError("injectivity", "induced map P/K_A -> Q/K_B identifies " + p.format(it->second) + " and " +
                                               p.format(src));
  }
}

GradedPiece GradedRootAlgebra::piece(const IntVector& w) const {
  const auto& grp = degree_group();
  const IntVector deg = grp.normalize(w);
  GradedPiece out = slot_pieces_[slot_of(deg)];
  const IntVector shift = den_.period(deg);
  const auto& pgrp = den_.source().group_presentation().group();
  for (auto& g : out.generators) g.u = pgrp.add(g.u, shift);
  out.degree = deg;
  return out;
}

RingMatrix GradedRootAlgebra::action_word(std::size_t slot, const Word& qw) const {
  q().check_word(qw);
  RingMatrix m = RingMatrix::identity(ring(), slot_pieces_[slot].generators.size());
  std::size_t s = slot;
  for (std::size_t g = 0; g < qw.size(); ++g)
    for (std::int64_t k = 0; k < qw[g]; ++k) {
      m = multiply(ring(), actions_[s][g], m);
      s = targets_[s][g];
    }
  return m;
}

std::size_t GradedRootAlgebra::word_target(std::size_t slot, const Word& qw) const {
  std::size_t s = slot;
  for (std::size_t g = 0; g < qw.size(); ++g)
    for (std::int64_t k = 0; k < qw[g]; ++k) s = targets_[s][g];
  return s;
}

Poly GradedRootAlgebra::structure_constant(const IntVector& w, std::size_t generator) const {
  if (!simplicial_) throw UnsupportedError("structure constants are scalars only for simplicial systems");
  if (generator >= q().num_generators()) throw InputError("generator index out of range");
  return actions_[slot_of(degree_group().normalize(w))][generator](0, 0);
}

std::string GradedRootAlgebra::t_symbol(std::size_t k) const {
  return den_.source().group_presentation().group().dimension() == 1 ? "t" : "t" + std::to_string(k + 1);
}

std::string GradedRootAlgebra::format_monomial(const Word& qw, const IntVector& u) const {
  std::string s;
  auto put = [&s](const std::string& name, const std::string& exp) {
    if (!s.empty()) s += "*";
    s += name;
    if (exp != "1") s += "^" + exp;
  };
  for (std::size_t g = 0; g < qw.size(); ++g)
    if (qw[g] != 0) put(q().generator_names()[g], std::to_string(qw[g]));
  for (std::size_t k = 0; k < u.size(); ++k)
    if (u[k] != 0) put(t_symbol(k), u[k].str());
  return s.empty() ? "1" : s;
}

std::string GradedRootAlgebra::dump() const {
  const BaseRing& r = ring();
  const auto& pp = den_.source().group_presentation();
  const auto& qp = q().group_presentation();
  const std::size_t np = den_.source().num_generators(), nq = q().num_generators();
  const std::size_t rank_p = pp.group().dimension();
  std::string out;
  out += "ring = " + r.to_string() + "\n";
  std::string syms;
  for (std::size_t k = 0; k < rank_p; ++k) {
    const bool torsion = k < pp.group().torsion().size();
    syms += (syms.empty() ? "" : ", ") + t_symbol(k) + (torsion ? "" : "^{+-1}");
  }
  for (std::size_t g = 0; g < nq; ++g) syms += (syms.empty() ? "" : ", ") + q().generator_names()[g];
  out += "symbols = " + syms + "\n";
  for (std::size_t k = 0; k < rank_p; ++k) {
    IntVector e(rank_p);
    e[k] = 1;
    out += "degree " + t_symbol(k) + " = " + den_.format_degree(den_.gp_map().apply(e)) + "\n";
  }
  for (std::size_t g = 0; g < nq; ++g)
    out += "degree " + q().generator_names()[g] + " = " + den_.format_degree(qp.canonical(word::unit(nq, g))) + "\n";
  for (std::size_t i = 0; i < np; ++i) {
    const Word e = word::unit(np, i);
    const Poly fv = chart_.value(e);
    const std::string t = format_monomial(word::zero(nq), pp.canonical(e));
    std::string rhs;
    if (fv.is_zero()) rhs = "0";
    else if (fv == r.one()) rhs = t;
    else if (t == "1") rhs = r.format(fv);
    else rhs = (fv.terms.size() > 1 ? "(" + r.format(fv) + ")" : r.format(fv)) + "*" + t;
    out += "relation " + format_monomial(den_.j().images()[i], IntVector(rank_p)) + " = " + rhs + "\n";
  }
  for (const auto& rel : q().relations())
    out += "relation " + format_monomial(rel.lhs, IntVector(rank_p)) + " = " +
           format_monomial(rel.rhs, IntVector(rank_p)) + "\n";
  for (std::size_t k = 0; k < pp.group().torsion().size(); ++k)
    out += "relation " + t_symbol(k) + "^" + pp.group().torsion()[k].str() + " = 1\n";
  out += "index = " + den_.index().str() + "\n";
  out += "simplicial = " + std::string(simplicial_ ? "true" : "false") + "\n";
  for (std::size_t s = 0; s < num_slots(); ++s) {
    const auto& piece = slot_pieces_[s];
    std::string gens;
    for (const auto& g : piece.generators) gens += (gens.empty() ? "" : ", ") + format_monomial(g.q, g.u);
    out += "piece " + den_.format_degree(piece.degree) + " = <" + gens + ">";
    if (!piece.module.relations.empty()) out += " / " + describe(r, piece.module);
    out += "\n";
  }
  for (std::size_t s = 0; s < num_slots(); ++s)
    for (std::size_t g = 0; g < nq; ++g)
      out += "action " + q().generator_names()[g] + " : " + den_.format_degree(slot_degree(s)) + " -> " +
             den_.format_degree(slot_degree(targets_[s][g])) + " = " + format(r, actions_[s][g]) + "\n";
  return out;
}

StackClass classify_stack(const Integer& index, std::int64_t characteristic) {
  StackClass c;
  c.index = index;
  c.characteristic = characteristic;
  c.deligne_mumford = characteristic == 0 || boost::multiprecision::gcd(index, Integer(characteristic)) == 1;
  return c;
}

StackClass classify_stack(const GradedRootAlgebra& b) {
  return classify_stack(b.denominators().index(), b.ring().characteristic());
}

}  // namespace rootsheaf

#include "rootsheaf/chart.hpp"

#include "rootsheaf/errors.hpp"

#include <algorithm>

namespace rootsheaf {

KatoChart::KatoChart(FpMonoid monoid, BaseRing ring, std::vector<Poly> values)
    : monoid_(std::move(monoid)), ring_(std::move(ring)), values_(std::move(values)) {
  if (values_.size() != monoid_.num_generators())
    throw InputError("chart needs " + std::to_string(monoid_.num_generators()) + " values, got " +
                     std::to_string(values_.size()));
  const auto& rels = monoid_.relations();
  for (std::size_t k = 0; k < rels.size(); ++k) {
    Poly l = value(rels[k].lhs), r = value(rels[k].rhs);
    if (l != r)
      throw ValidationError("relation " + std::to_string(k + 1),
                            "chart values break " + monoid_.format(rels[k].lhs) + " = " + monoid_.format(rels[k].rhs) +
                                ": " + ring_.format(l) + " != " + ring_.format(r));
  }
}

Poly KatoChart::value(const Word& w) const {
  monoid_.check_word(w);
  Poly v = ring_.one();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0) v = ring_.mul(v, ring_.pow(values_[i], w[i]));
  return v;
}

StalkData stalk_df(const KatoChart& chart, const std::vector<Rational>& point) {
  const FpMonoid& p = chart.monoid();
  const std::size_t n = p.num_generators();
  std::vector<Word> invertible;
  for (std::size_t i = 0; i < n; ++i)
    if (chart.ring().evaluate(chart.values()[i], point) != 0) invertible.push_back(word::unit(n, i));
  SubmonoidGens k = kernel_closure(p, SubmonoidGens(p, invertible));
  Quotient q = quotient(p, k);
  bool minimal = k.generators().empty();
  return {std::move(k), std::move(q), minimal};
}

DfQuotient df_quotient(const KatoChart& chart, std::int64_t search_bound) {
  const FpMonoid& p = chart.monoid();
  const BaseRing& ring = chart.ring();
  const std::size_t n = p.num_generators();
  std::vector<Word> unit_valued;
  for (std::size_t i = 0; i < n; ++i)
    if (ring.is_unit(chart.values()[i])) unit_valued.push_back(word::unit(n, i));
  SubmonoidGens k = kernel_closure(p, SubmonoidGens(p, unit_valued));
  Quotient q = quotient(p, k);

  DfQuotient out{k, q, {}, {}};
  const auto& kgens = k.generators();
  const auto combos = word::up_to_degree(kgens.size(), search_bound);
  auto combine = [&](const Word& c) {
    Word w = word::zero(n);
    for (std::size_t j = 0; j < c.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) w[i] += c[j] * kgens[j][i];
    return w;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Word e = word::unit(n, i);
    Word rep = q.monoid.normal_form(e);
    const Poly fe = chart.value(e), fr = chart.value(rep);
    Poly tau;
    if (!fr.is_zero()) {
      auto d = ring.divide(fe, fr);
      if (!d || !ring.is_unit(*d))
        throw ValidationError("generator " + p.generator_names()[i],
                              "values of a generator and its representative differ by a non-unit");
      tau = *d;
    } else {
      // both values vanish: read tau off a witness e + k ~ rep + k'
      bool found = false;
      for (const auto& a : combos) {
        const Word lhs = p.normal_form(word::add(e, combine(a)));
        for (const auto& b : combos) {
          if (p.normal_form(word::add(rep, combine(b))) != lhs) continue;
          tau = ring.mul(chart.value(combine(b)), ring.inverse_unit(chart.value(combine(a))));
          found = true;
          break;
        }
        if (found) break;
      }
      if (!found)
        throw ResourceError("no kernel witness for generator " + p.generator_names()[i] + " within search bound " +
                            std::to_string(search_bound));
    }
    out.section.push_back(std::move(rep));
    out.discrepancies.push_back(std::move(tau));
  }
  return out;
}

GradingPiece algebra_grading(const FpMonoid& p, const IntVector& u, std::int64_t search_bound) {
  const auto& pres = p.group_presentation();
  if (u.size() != pres.group().dimension()) throw InputError("degree has wrong dimension for the group");
  auto slice = lattice_slice(pres.projection(), pres.group(), pres.group().normalize(u));
  GradingPiece out;
  if (slice.minimal.empty()) return out;
  if (p.is_integral()) {
    out.classes.push_back(p.normal_form(slice.minimal.front()));
    return out;
  }
  const auto extras = word::up_to_degree(slice.recession.size(), search_bound);
  for (const auto& m : slice.minimal)
    for (const auto& c : extras) {
      Word w = m;
      for (std::size_t r = 0; r < c.size(); ++r)
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += c[r] * slice.recession[r][i];
      Word nf = p.normal_form(w);
      if (std::find(out.classes.begin(), out.classes.end(), nf) == out.classes.end()) out.classes.push_back(nf);
    }
  out.complete = slice.recession.empty();
  std::sort(out.classes.begin(), out.classes.end(), [](const Word& a, const Word& b) { return MonomialOrder{}.less(a, b); });
  return out;
}

}  // namespace rootsheaf

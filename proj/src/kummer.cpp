#include "rootsheaf/kummer.hpp"

#include "rootsheaf/errors.hpp"
#include "rootsheaf/matrix.hpp"

#include <algorithm>

namespace rootsheaf {

namespace {

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fails || b == Verdict::fails) return Verdict::fails;
  if (a == Verdict::unknown || b == Verdict::unknown) return Verdict::unknown;
  return Verdict::holds;
}

Verdict injectivity(const MonoidHom& j, bool integral, std::int64_t bound, std::string& reason) {
  if (integral) {
    if (j.gp().is_injective()) return Verdict::holds;
    reason = "not injective on groups";
    return Verdict::fails;
  }
  const FpMonoid& p = j.source();
  const auto words = word::up_to_degree(p.num_generators(), bound);
  std::vector<std::pair<Word, Word>> seen;  // (image nf, source nf)
  for (const auto& w : words) {
    Word src = p.normal_form(w), img = j.apply(w);
    for (const auto& [i, s] : seen)
      if (i == img && s != src) {
        reason = "not injective: " + p.format(s) + " and " + p.format(src) + " have the same image";
        return Verdict::fails;
      }
    seen.emplace_back(std::move(img), std::move(src));
  }
  reason = "injectivity not certified for non-integral monoids (no collision up to degree " + std::to_string(bound) +
           ")";
  return Verdict::unknown;
}

}  // namespace

KummerCertificate is_kummer(const MonoidHom& j, std::int64_t search_bound, std::size_t hilbert_budget) {
  const FpMonoid& p = j.source();
  const FpMonoid& q = j.target();
  const bool integral = p.is_integral(hilbert_budget) && q.is_integral(hilbert_budget);
  KummerCertificate cert;
  std::string inj_reason;
  cert.injective = injectivity(j, integral, search_bound, inj_reason);
  Verdict overall = cert.injective;
  std::string reason = cert.injective == Verdict::holds ? "" : inj_reason;

  const auto& qp = q.group_presentation();
  const IntMatrix f = qp.projection() * j.matrix();
  const std::size_t np = p.num_generators(), nq = q.num_generators();
  for (std::size_t g = 0; g < nq; ++g) {
    // (a, m) with j(a) = m * g in Q^gp
    const IntVector ig = qp.canonical(word::unit(nq, g));
    IntMatrix map(f.rows(), np + 1);
    for (std::size_t r = 0; r < f.rows(); ++r) {
      for (std::size_t c = 0; c < np; ++c) map(r, c) = f(r, c);
      map(r, np) = -ig[r];
    }
    std::int64_t best_m = 0;
    Word best_a;
    for (const auto& h : lattice_cone_basis(map, qp.group(), hilbert_budget)) {
      if (h[np] <= 0) continue;
      Word a(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(np));
      if (best_m == 0 || h[np] < best_m || (h[np] == best_m && a < best_a)) {
        best_m = h[np];
        best_a = std::move(a);
      }
    }
    Verdict v;
    if (best_m == 0) {
      v = Verdict::fails;
      if (reason.empty() || overall != Verdict::fails)
        reason = "no positive multiple of " + q.generator_names()[g] + " lies in the image";
    } else if (integral) {
      v = Verdict::holds;
    } else {
      v = Verdict::unknown;
      best_m = 0;
      best_a.clear();
      const auto words = word::up_to_degree(np, search_bound);
      for (std::int64_t m = 1; m <= search_bound && v != Verdict::holds; ++m) {
        const Word target = q.normal_form(word::scale(word::unit(nq, g), m));
        for (const auto& a : words)
          if (j.apply(a) == target) {
            v = Verdict::holds;
            best_m = m;
            best_a = a;
            break;
          }
      }
      if (v == Verdict::unknown && overall != Verdict::fails)
        reason = "no multiple of " + q.generator_names()[g] + " found in the image up to bound " +
                 std::to_string(search_bound);
    }
    overall = combine(overall, v);
    cert.multipliers.push_back(best_m);
    cert.multiplier_preimages.push_back(best_a);
  }
  cert.is_kummer = overall;
  cert.reason = overall == Verdict::holds ? "" : reason;
  return cert;
}

DenominatorSystem::DenominatorSystem(MonoidHom j, std::int64_t search_bound)
    : j_(std::move(j)), gp_(j_.gp()), cokernel_(gp_) {
  if (!source().is_integral() || !target().is_integral())
    throw ValidationError("integral", "denominator systems need integral source and target monoids");
  certificate_ = is_kummer(j_, search_bound);
  if (certificate_.is_kummer != Verdict::holds)
    throw ValidationError("kummer", "homomorphism is not Kummer: " + certificate_.reason);
  auto order = cokernel_.order();
  if (!order) throw ValidationError("kummer", "index of j(P^gp) in Q^gp is infinite");
  index_ = *order;

  // every class meets the box {c_g < multiplier_g}
  const auto& qp = target().group_presentation();
  const std::size_t nq = target().num_generators(), classes = cokernel_.representatives().size();
  std::int64_t max_degree = 0;
  for (auto m : certificate_.multipliers) max_degree += m - 1;
  std::vector<std::optional<Word>> first(classes);
  std::size_t found = 0;
  for (std::int64_t d = 0; d <= max_degree && found < classes; ++d)
    for (const auto& q : word::of_degree(nq, d)) {
      bool in_box = true;
      for (std::size_t g = 0; g < nq; ++g)
        if (q[g] >= certificate_.multipliers[g]) in_box = false;
      if (!in_box) continue;
      auto& slot = first[cokernel_.index_of(qp.canonical(q))];
      if (!slot) {
        slot = q;
        ++found;
      }
    }
  if (found < classes) throw ValidationError("kummer", "a class of Q^gp / j(P^gp) has no word of Q");
  std::vector<std::size_t> order_of(classes);
  for (std::size_t k = 0; k < classes; ++k) order_of[k] = k;
  if (has_fraction_coordinates()) {
    std::vector<std::vector<Rational>> frac;
    for (const auto& q : first) frac.push_back(to_fractions(qp.canonical(*q)));
    std::stable_sort(order_of.begin(), order_of.end(),
                     [&](std::size_t a, std::size_t b) { return frac[a] < frac[b]; });
  } else {
    std::stable_sort(order_of.begin(), order_of.end(),
                     [&](std::size_t a, std::size_t b) { return word::degree(*first[a]) < word::degree(*first[b]); });
  }
  slot_of_class_.assign(classes, 0);
  for (std::size_t s = 0; s < classes; ++s) {
    slot_of_class_[order_of[s]] = s;
    lifts_.push_back(*first[order_of[s]]);
    domain_.push_back(qp.canonical(lifts_.back()));
  }
}

IntVector DenominatorSystem::period(const IntVector& w) const {
  return preimage(target().group_presentation().group().sub(w, fold(w)));
}

IntVector DenominatorSystem::preimage(const IntVector& w) const {
  auto u = gp_.preimage(w);
  if (!u) throw InputError("degree is not in the image of the source group");
  return *u;
}

Word DenominatorSystem::lift_degree(const IntVector& w) const {
  return lifts_[slot_of(target().group_presentation().group().normalize(w))];
}

bool DenominatorSystem::has_fraction_coordinates() const noexcept {
  return gp_.source().is_torsion_free() && gp_.target().is_torsion_free();
}

std::vector<Rational> DenominatorSystem::to_fractions(const IntVector& w) const {
  if (!has_fraction_coordinates()) throw InputError("fraction coordinates need torsion-free groups");
  const BaseRing qq(Field(0), {});
  const auto& m = gp_.matrix();
  RingMatrix a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) a(i, k) = qq.constant(Rational(m(i, k)));
  std::vector<Poly> b;
  for (const auto& x : w) b.push_back(qq.constant(Rational(x)));
  auto sol = solve(qq, a, b);
  if (!sol) throw InputError("degree is not a rational combination of source degrees");
  std::vector<Rational> r;
  for (const auto& x : *sol) r.push_back(qq.constant_value(x));
  return r;
}

IntVector DenominatorSystem::from_fractions(const std::vector<Rational>& r) const {
  if (!has_fraction_coordinates()) throw InputError("fraction coordinates need torsion-free groups");
  const auto& m = gp_.matrix();
  if (r.size() != m.cols())
    throw InputError("degree has " + std::to_string(r.size()) + " coordinates, expected " + std::to_string(m.cols()));
  IntVector w(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational s = 0;
    for (std::size_t k = 0; k < m.cols(); ++k) s += Rational(m(i, k)) * r[k];
    if (boost::multiprecision::denominator(s) != 1)
      throw InputError("degree is not an element of the target group");
    w[i] = boost::multiprecision::numerator(s);
  }
  return w;
}

std::string DenominatorSystem::format_degree(const IntVector& w) const {
  if (!has_fraction_coordinates()) return target().group_presentation().group().element_to_string(w);
  auto r = to_fractions(w);
  if (r.size() == 1) return to_string(r[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? ", " : "") + to_string(r[i]);
  return s + ")";
}

}  // namespace rootsheaf

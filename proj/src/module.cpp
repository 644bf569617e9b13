#include "rootsheaf/module.hpp"

#include "rootsheaf/errors.hpp"
#include "rootsheaf/rewriting.hpp"

#include <algorithm>

namespace rootsheaf {

namespace {

struct Lead {
  std::size_t pos;
  Word exp;
  Rational coeff;
};

bool is_zero_vector(const RingVector& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

Lead lead_of(const BaseRing& ring, const RingVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return {i, ring.leading_exponent(v[i]), ring.leading_coefficient(v[i])};
  throw InputError("zero vector has no leading term");
}

RingVector shift(const BaseRing& ring, const RingVector& v, const Word& mono, const Rational& c) {
  Poly m;
  m.terms.emplace(mono, c);
  m = ring.scale(m, 1);  // normalise the coefficient
  RingVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = ring.mul(v[i], m);
  return out;
}

RingVector minus(const BaseRing& ring, const RingVector& a, const RingVector& b) {
  RingVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.sub(a[i], b[i]);
  return out;
}

// Full reduction: every term of the result is irreducible.
RingVector full_reduce(const BaseRing& ring, RingVector v, const std::vector<RingVector>& basis,
                       const std::vector<Lead>& leads) {
  RingVector rem(v.size());
  while (!is_zero_vector(v)) {
    Lead l = lead_of(ring, v);
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (leads[k].pos != l.pos || !word::divides(leads[k].exp, l.exp)) continue;
      Rational c = l.coeff * ring.field().inverse(leads[k].coeff);
      v = minus(ring, v, shift(ring, basis[k], word::quotient(l.exp, leads[k].exp), c));
      reduced = true;
      break;
    }
    if (!reduced) {
      Poly t;
      t.terms.emplace(l.exp, l.coeff);
      rem[l.pos] = ring.add(rem[l.pos], t);
      v[l.pos] = ring.sub(v[l.pos], t);
    }
  }
  return rem;
}

RingVector make_monic(const BaseRing& ring, const RingVector& v) {
  Lead l = lead_of(ring, v);
  Poly inv = ring.constant(ring.field().inverse(l.coeff));
  RingVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = ring.mul(v[i], inv);
  return out;
}

}  // namespace

SubmoduleBasis::SubmoduleBasis(const BaseRing& ring, std::size_t rank, const std::vector<RingVector>& generators)
    : ring_(ring), rank_(rank) {
  std::vector<RingVector> g;
  std::vector<Lead> leads;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto push = [&](RingVector v) {
    v = make_monic(ring, v);
    leads.push_back(lead_of(ring, v));
    g.push_back(std::move(v));
    const std::size_t id = g.size() - 1;
    for (std::size_t k = 0; k < id; ++k)
      if (leads[k].pos == leads[id].pos) pairs.emplace_back(k, id);
  };
  for (const auto& v : generators) {
    if (v.size() != rank) throw InputError("submodule generator has wrong length");
    RingVector r = full_reduce(ring, v, g, leads);
    if (!is_zero_vector(r)) push(std::move(r));
  }
  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    const Word m = word::lcm(leads[i].exp, leads[j].exp);
    RingVector s = minus(ring, shift(ring, g[i], word::quotient(m, leads[i].exp), 1),
                         shift(ring, g[j], word::quotient(m, leads[j].exp), 1));
    RingVector r = full_reduce(ring, std::move(s), g, leads);
    if (!is_zero_vector(r)) push(std::move(r));
  }
  // minimal, then reduced
  std::vector<bool> keep(g.size(), true);
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size() && keep[a]; ++b) {
      if (a == b || !keep[b] || leads[a].pos != leads[b].pos) continue;
      if (word::divides(leads[b].exp, leads[a].exp) && (leads[a].exp != leads[b].exp || b < a)) keep[a] = false;
    }
  std::vector<RingVector> minimal;
  std::vector<Lead> minimal_leads;
  for (std::size_t a = 0; a < g.size(); ++a)
    if (keep[a]) {
      minimal.push_back(g[a]);
      minimal_leads.push_back(leads[a]);
    }
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<RingVector> others;
    std::vector<Lead> other_leads;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (b != a) {
        others.push_back(minimal[b]);
        other_leads.push_back(minimal_leads[b]);
      }
    // the lead term stays; reduce the tail
    RingVector tail = minimal[a];
    Poly lt;
    lt.terms.emplace(minimal_leads[a].exp, minimal_leads[a].coeff);
    tail[minimal_leads[a].pos] = ring.sub(tail[minimal_leads[a].pos], lt);
    RingVector r = full_reduce(ring, tail, others, other_leads);
    r[minimal_leads[a].pos] = ring.add(r[minimal_leads[a].pos], lt);
    basis_.push_back(std::move(r));
  }
  const MonomialOrder order;
  std::sort(basis_.begin(), basis_.end(), [&](const RingVector& x, const RingVector& y) {
    Lead lx = lead_of(ring, x), ly = lead_of(ring, y);
    if (lx.pos != ly.pos) return lx.pos < ly.pos;
    return order.less(ly.exp, lx.exp);
  });
}

RingVector SubmoduleBasis::reduce(RingVector v) const {
  if (v.size() != rank_) throw InputError("vector has wrong length for submodule");
  std::vector<Lead> leads;
  for (const auto& b : basis_) leads.push_back(lead_of(ring_, b));
  return full_reduce(ring_, std::move(v), basis_, leads);
}

bool SubmoduleBasis::contains(const RingVector& v) const { return is_zero_vector(reduce(v)); }

bool is_well_defined(const BaseRing& ring, const Presentation& source, const Presentation& target,
                     const RingMatrix& m) {
  if (m.rows() != target.gens || m.cols() != source.gens) throw InputError("map shape does not match modules");
  if (source.relations.empty()) return true;
  SubmoduleBasis rel(ring, target.gens, target.relations);
  for (const auto& r : source.relations)
    if (!rel.contains(apply(ring, m, r))) return false;
  return true;
}

bool equal_modulo(const BaseRing& ring, const Presentation& target, const RingMatrix& a, const RingMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("comparing maps of different shapes");
  RingMatrix d = sub(ring, a, b);
  if (d.is_zero()) return true;
  if (target.relations.empty()) return false;
  SubmoduleBasis rel(ring, target.gens, target.relations);
  for (std::size_t j = 0; j < d.cols(); ++j)
    if (!rel.contains(d.column(j))) return false;
  return true;
}

Pruned prune(const BaseRing& ring, const Presentation& p) {
  std::vector<RingVector> rels = p.relations;
  for (const auto& r : rels)
    if (r.size() != p.gens) throw InputError("relation has wrong length for module");
  std::size_t g = p.gens;
  RingMatrix to_new = RingMatrix::identity(ring, g);
  RingMatrix from_new = RingMatrix::identity(ring, g);
  for (;;) {
    std::size_t which = rels.size(), idx = 0;
    for (std::size_t k = 0; k < rels.size() && which == rels.size(); ++k)
      for (std::size_t i = g; i-- > 0;)
        if (ring.is_unit(rels[k][i])) {
          which = k;
          idx = i;
          break;
        }
    if (which == rels.size()) break;
    const RingVector pivot = rels[which];
    const Poly inv = ring.inverse_unit(pivot[idx]);
    rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(which));
    for (auto& r : rels) {
      if (r[idx].is_zero()) continue;
      Poly f = ring.mul(r[idx], inv);
      for (std::size_t i = 0; i < g; ++i) r[i] = ring.sub(r[i], ring.mul(f, pivot[i]));
    }
    // gen_idx = -inv * sum_{k != idx} pivot[k] gen_k
    RingMatrix e(g - 1, g), s(g, g - 1);
    for (std::size_t k = 0, n = 0; k < g; ++k) {
      if (k == idx) continue;
      e(n, k) = ring.one();
      e(n, idx) = ring.neg(ring.mul(inv, pivot[k]));
      s(k, n) = ring.one();
      ++n;
    }
    to_new = multiply(ring, e, to_new);
    from_new = multiply(ring, from_new, s);
    for (auto& r : rels) r.erase(r.begin() + static_cast<std::ptrdiff_t>(idx));
    --g;
  }
  Pruned out;
  out.module.gens = g;
  if (!rels.empty()) {
    SubmoduleBasis gb(ring, g, rels);
    out.module.relations = gb.basis();
  }
  out.to_new = std::move(to_new);
  out.from_new = std::move(from_new);
  return out;
}

std::string describe(const BaseRing& ring, const Presentation& p) {
  if (p.gens == 0) return "0";
  std::string s = p.gens == 1 ? "R" : "R^" + std::to_string(p.gens);
  if (p.relations.empty()) return s;
  s += "/(";
  for (std::size_t k = 0; k < p.relations.size(); ++k) {
    if (k) s += ", ";
    if (p.gens == 1) {
      s += ring.format(p.relations[k][0]);
    } else {
      s += "[";
      for (std::size_t i = 0; i < p.gens; ++i) s += (i ? ", " : "") + ring.format(p.relations[k][i]);
      s += "]";
    }
  }
  return s + ")";
}

}  // namespace rootsheaf

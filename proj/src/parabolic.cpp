#include "rootsheaf/parabolic.hpp"

#include "rootsheaf/equivalence.hpp"
#include "rootsheaf/errors.hpp"

#include <stdexcept>

namespace rootsheaf {

namespace {

std::string slot_name(const GradedRootAlgebra& b, std::size_t s) {
  return b.denominators().format_degree(b.slot_degree(s));
}

void require_field(const BaseRing& ring, const char* what) {
  if (!ring.is_field())
    throw UnsupportedError(std::string(what) + " needs field coefficients, not " + ring.to_string());
}

// Slot s of twist(e, v) is slot sigma(s) of e.
std::vector<std::size_t> twist_slots(const GradedRootAlgebra& b, const IntVector& v) {
  const auto& grp = b.degree_group();
  std::vector<std::size_t> sigma;
  for (std::size_t s = 0; s < b.num_slots(); ++s) sigma.push_back(b.slot_of(grp.add(grp.normalize(v), b.slot_degree(s))));
  return sigma;
}

std::vector<Poly> flatten(const ParabolicMorphism& f) {
  std::vector<Poly> out;
  for (const auto& m : f.slots)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

}  // namespace

WeightArrow weight_arrow(const FpMonoid& q, const IntVector& v, const IntVector& v2, std::size_t hilbert_budget) {
  const auto& qp = q.group_presentation();
  const auto& grp = qp.group();
  auto slice = lattice_slice(qp.projection(), grp, grp.sub(grp.normalize(v2), grp.normalize(v)), hilbert_budget);
  WeightArrow out;
  if (slice.minimal.empty()) return out;
  out.exists = true;
  out.witness = q.normal_form(slice.minimal.front());
  return out;
}

ParabolicSheaf::ParabolicSheaf(AlgebraPtr algebra, std::vector<Presentation> slots,
                               std::vector<std::vector<RingMatrix>> maps)
    : algebra_(std::move(algebra)), slots_(std::move(slots)), maps_(std::move(maps)) {
  if (!algebra_) throw InputError("parabolic sheaf without an algebra");
}

RingMatrix ParabolicSheaf::map_word(std::size_t slot, const Word& q) const {
  const auto& b = algebra();
  RingMatrix m = RingMatrix::identity(b.ring(), slots_[slot].gens);
  std::size_t s = slot;
  for (std::size_t g = 0; g < q.size(); ++g)
    for (std::int64_t k = 0; k < q[g]; ++k) {
      m = multiply(b.ring(), maps_[s][g], m);
      s = b.action_target(s, g);
    }
  return m;
}

bool ParabolicSheaf::is_zero() const {
  for (const auto& p : slots_)
    if (p.gens != 0) return false;
  return true;
}

void validate(const ParabolicSheaf& e) {
  const auto& b = e.algebra();
  const BaseRing& r = b.ring();
  const std::size_t nq = b.q().num_generators();
  if (e.num_slots() != b.num_slots())
    throw InputError("expected " + std::to_string(b.num_slots()) + " slots, got " + std::to_string(e.num_slots()));
  if (e.maps().size() != e.num_slots()) throw InputError("maps must be given for every slot");
  for (std::size_t s = 0; s < e.num_slots(); ++s) {
    if (e.maps()[s].size() != nq) throw InputError("maps must be given for every generator");
    for (const auto& rel : e.slot(s).relations)
      if (rel.size() != e.slot(s).gens) throw InputError("slot " + slot_name(b, s) + " has a relation of wrong length");
    for (std::size_t g = 0; g < nq; ++g) {
      const RingMatrix& m = e.map(s, g);
      const std::size_t t = b.action_target(s, g);
      if (m.rows() != e.slot(t).gens || m.cols() != e.slot(s).gens)
        throw InputError("map " + b.q().generator_names()[g] + " at " + slot_name(b, s) + " should be " +
                         std::to_string(e.slot(t).gens) + "x" + std::to_string(e.slot(s).gens));
    }
  }
  for (std::size_t s = 0; s < e.num_slots(); ++s)
    for (std::size_t g = 0; g < nq; ++g)
      if (!is_well_defined(r, e.slot(s), e.slot(b.action_target(s, g)), e.map(s, g)))
        throw ValidationError("map " + b.q().generator_names()[g] + " at " + slot_name(b, s),
                              "map does not respect the relations of its slots");

  auto compare = [&](std::size_t s, const Word& a, const Word& c, const RingMatrix& ma, const RingMatrix& mc,
                     const std::string& locus, const std::string& left, const std::string& right) {
    const std::size_t t = b.word_target(s, a);
    if (t != b.word_target(s, c)) throw std::logic_error("composites end in different slots");
    if (!equal_modulo(r, e.slot(t), ma, mc))
      throw ValidationError(locus, left + " gives " + format(r, ma) + " but " + right + " gives " + format(r, mc));
  };
  const auto& names = b.q().generator_names();
  for (std::size_t s = 0; s < e.num_slots(); ++s)
    for (std::size_t g = 0; g < nq; ++g)
      for (std::size_t h = g + 1; h < nq; ++h) {
        Word gh = word::add(word::unit(nq, g), word::unit(nq, h));
        RingMatrix a = multiply(r, e.map(b.action_target(s, g), h), e.map(s, g));
        RingMatrix c = multiply(r, e.map(b.action_target(s, h), g), e.map(s, h));
        compare(s, gh, gh, a, c, "commute " + names[g] + "," + names[h] + " at " + slot_name(b, s),
                "path " + names[g] + " then " + names[h], "path " + names[h] + " then " + names[g]);
      }
  const auto& rels = b.q().relations();
  for (std::size_t k = 0; k < rels.size(); ++k)
    for (std::size_t s = 0; s < e.num_slots(); ++s)
      compare(s, rels[k].lhs, rels[k].rhs, e.map_word(s, rels[k].lhs), e.map_word(s, rels[k].rhs),
              "relation " + std::to_string(k + 1) + " at " + slot_name(b, s), "path " + b.q().format(rels[k].lhs),
              "path " + b.q().format(rels[k].rhs));
  const auto& p = b.denominators().source();
  for (std::size_t i = 0; i < p.num_generators(); ++i) {
    const Word image = b.denominators().j().images()[i];
    const Poly f = b.chart().value(word::unit(p.num_generators(), i));
    for (std::size_t s = 0; s < e.num_slots(); ++s) {
      if (b.word_target(s, image) != s) throw std::logic_error("period does not return to its slot");
      compare(s, image, image, e.map_word(s, image), RingMatrix::scalar(r, e.slot(s).gens, f),
              "period " + p.generator_names()[i] + " at " + slot_name(b, s), "path " + b.q().format(image),
              "f(" + p.generator_names()[i] + ") = " + r.format(f));
    }
  }
}

ParabolicSheaf make_parabolic(AlgebraPtr algebra, std::vector<Presentation> slots,
                              std::vector<std::vector<RingMatrix>> maps) {
  ParabolicSheaf e(std::move(algebra), std::move(slots), std::move(maps));
  validate(e);
  return e;
}

ParabolicSheaf zero_sheaf(AlgebraPtr algebra) {
  const std::size_t n = algebra->num_slots(), nq = algebra->q().num_generators();
  return ParabolicSheaf(std::move(algebra), std::vector<Presentation>(n),
                        std::vector<std::vector<RingMatrix>>(n, std::vector<RingMatrix>(nq)));
}

ParabolicSheaf twist(const ParabolicSheaf& e, const IntVector& v) {
  const auto sigma = twist_slots(e.algebra(), v);
  std::vector<Presentation> slots;
  std::vector<std::vector<RingMatrix>> maps;
  for (std::size_t s = 0; s < e.num_slots(); ++s) {
    slots.push_back(e.slot(sigma[s]));
    maps.push_back(e.maps()[sigma[s]]);
  }
  return ParabolicSheaf(e.algebra_ptr(), std::move(slots), std::move(maps));
}

bool is_morphism(const ParabolicSheaf& source, const ParabolicSheaf& target, const ParabolicMorphism& f) {
  const auto& b = source.algebra();
  const BaseRing& r = b.ring();
  if (f.slots.size() != source.num_slots()) return false;
  for (std::size_t s = 0; s < source.num_slots(); ++s) {
    if (f.slots[s].rows() != target.slot(s).gens || f.slots[s].cols() != source.slot(s).gens) return false;
    if (!is_well_defined(r, source.slot(s), target.slot(s), f.slots[s])) return false;
  }
  for (std::size_t s = 0; s < source.num_slots(); ++s)
    for (std::size_t g = 0; g < b.q().num_generators(); ++g) {
      const std::size_t t = b.action_target(s, g);
      if (!equal_modulo(r, target.slot(t), multiply(r, f.slots[t], source.map(s, g)),
                        multiply(r, target.map(s, g), f.slots[s])))
        return false;
    }
  return true;
}

ParabolicMorphism compose(const ParabolicSheaf& target, const ParabolicMorphism& g, const ParabolicMorphism& f) {
  ParabolicMorphism out;
  for (std::size_t s = 0; s < f.slots.size(); ++s)
    out.slots.push_back(multiply(target.algebra().ring(), g.slots[s], f.slots[s]));
  return out;
}

ParabolicMorphism identity_morphism(const ParabolicSheaf& e) {
  ParabolicMorphism out;
  for (const auto& p : e.slots()) out.slots.push_back(RingMatrix::identity(e.algebra().ring(), p.gens));
  return out;
}

FreeForm free_form(const ParabolicSheaf& e) {
  const auto& b = e.algebra();
  const BaseRing& r = b.ring();
  std::vector<Pruned> pr;
  for (const auto& p : e.slots()) pr.push_back(prune(r, p));
  FreeForm out;
  std::vector<Presentation> slots;
  std::vector<std::vector<RingMatrix>> maps(e.num_slots());
  for (std::size_t s = 0; s < e.num_slots(); ++s) {
    slots.push_back(pr[s].module);
    for (std::size_t g = 0; g < b.q().num_generators(); ++g)
      maps[s].push_back(multiply(r, pr[b.action_target(s, g)].to_new, multiply(r, e.map(s, g), pr[s].from_new)));
    out.to_free.slots.push_back(pr[s].to_new);
    out.from_free.slots.push_back(pr[s].from_new);
  }
  out.sheaf = ParabolicSheaf(e.algebra_ptr(), std::move(slots), std::move(maps));
  return out;
}

bool is_isomorphism(const ParabolicSheaf& source, const ParabolicSheaf& target, const ParabolicMorphism& f) {
  const BaseRing& r = source.algebra().ring();
  if (!is_morphism(source, target, f)) return false;
  const FreeForm a = free_form(source), c = free_form(target);
  for (std::size_t s = 0; s < source.num_slots(); ++s) {
    const Presentation& ps = a.sheaf.slot(s);
    const Presentation& pt = c.sheaf.slot(s);
    RingMatrix m = multiply(r, c.to_free.slots[s], multiply(r, f.slots[s], a.from_free.slots[s]));
    auto inv = unit_inverse(r, m);
    // an invertible matrix carrying one relation module onto the other
    if (inv && is_well_defined(r, ps, pt, m) && is_well_defined(r, pt, ps, *inv)) continue;
    // exact for free modules, and pruned presentations over a field are free
    if (r.is_field() || (ps.relations.empty() && pt.relations.empty())) return false;
    throw UnsupportedError("cannot decide whether a map of modules over " + r.to_string() + " is invertible");
  }
  return true;
}

HomSpace morphisms(const ParabolicSheaf& e, const ParabolicSheaf& e2) {
  const auto& b = e.algebra();
  const BaseRing& r = b.ring();
  require_field(r, "Hom of parabolic sheaves");
  for (std::size_t s = 0; s < e.num_slots(); ++s)
    if (!e.slot(s).relations.empty() || !e2.slot(s).relations.empty())
      throw InputError("morphisms expects free slots");
  // unknown X_s is e2_s x e_s, stored row-major after the earlier slots
  std::vector<std::size_t> offset(e.num_slots() + 1, 0);
  for (std::size_t s = 0; s < e.num_slots(); ++s) offset[s + 1] = offset[s] + e2.slot(s).gens * e.slot(s).gens;
  auto var = [&](std::size_t s, std::size_t i, std::size_t j) { return offset[s] + i * e.slot(s).gens + j; };
  std::vector<std::vector<std::pair<std::size_t, Poly>>> rows;
  for (std::size_t s = 0; s < e.num_slots(); ++s)
    for (std::size_t g = 0; g < b.q().num_generators(); ++g) {
      const std::size_t t = b.action_target(s, g);
      const RingMatrix& m = e.map(s, g);
      const RingMatrix& m2 = e2.map(s, g);
      // (X_t m - m2 X_s)_{ij} = 0
      for (std::size_t i = 0; i < e2.slot(t).gens; ++i)
        for (std::size_t j = 0; j < e.slot(s).gens; ++j) {
          std::vector<std::pair<std::size_t, Poly>> row;
          for (std::size_t k = 0; k < e.slot(t).gens; ++k)
            if (!m(k, j).is_zero()) row.emplace_back(var(t, i, k), m(k, j));
          for (std::size_t k = 0; k < e2.slot(s).gens; ++k)
            if (!m2(i, k).is_zero()) row.emplace_back(var(s, k, j), r.neg(m2(i, k)));
          if (!row.empty()) rows.push_back(std::move(row));
        }
    }
  RingMatrix system(rows.size(), offset.back());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i]) system(i, c) = r.add(system(i, c), v);
  const RingMatrix kernel = nullspace(r, system);
  HomSpace out;
  out.dimension = kernel.cols();
  for (std::size_t c = 0; c < kernel.cols(); ++c) {
    ParabolicMorphism f;
    for (std::size_t s = 0; s < e.num_slots(); ++s) {
      RingMatrix x(e2.slot(s).gens, e.slot(s).gens);
      for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) = kernel(var(s, i, j), c);
      f.slots.push_back(std::move(x));
    }
    out.basis.push_back(std::move(f));
  }
  return out;
}

ParabolicSheaf parabolic_hom(const ParabolicSheaf& e, const ParabolicSheaf& e2) {
  const auto& b = e.algebra();
  const BaseRing& r = b.ring();
  require_field(r, "Hom of parabolic sheaves");
  const ParabolicSheaf a = free_form(e).sheaf;
  const ParabolicSheaf c = free_form(e2).sheaf;
  const std::size_t nq = b.q().num_generators();
  std::vector<HomSpace> spaces;
  std::vector<std::vector<std::size_t>> sigma;
  for (std::size_t v = 0; v < b.num_slots(); ++v) {
    spaces.push_back(morphisms(a, twist(c, b.slot_degree(v))));
    sigma.push_back(twist_slots(b, b.slot_degree(v)));
  }
  std::vector<Presentation> slots;
  for (const auto& h : spaces) slots.push_back(Presentation::free(h.dimension));
  std::vector<std::vector<RingMatrix>> maps(b.num_slots());
  for (std::size_t v = 0; v < b.num_slots(); ++v)
    for (std::size_t g = 0; g < nq; ++g) {
      const std::size_t t = b.action_target(v, g);
      RingMatrix basis(0, 0);
      {
        std::vector<std::vector<Poly>> cols;
        for (const auto& f : spaces[t].basis) cols.push_back(flatten(f));
        std::size_t len = 0;
        for (std::size_t s = 0; s < b.num_slots(); ++s) len += c.slot(sigma[t][s]).gens * a.slot(s).gens;
        basis = RingMatrix(len, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
          for (std::size_t i = 0; i < len; ++i) basis(i, j) = cols[j][i];
      }
      RingMatrix m(spaces[t].dimension, spaces[v].dimension);
      for (std::size_t k = 0; k < spaces[v].dimension; ++k) {
        ParabolicMorphism moved;
        for (std::size_t s = 0; s < b.num_slots(); ++s)
          moved.slots.push_back(multiply(r, c.map(sigma[v][s], g), spaces[v].basis[k].slots[s]));
        auto coords = solve(r, basis, flatten(moved));
        if (!coords) throw std::logic_error("post-composition leaves the Hom space");
        for (std::size_t i = 0; i < coords->size(); ++i) m(i, k) = (*coords)[i];
      }
      maps[v].push_back(std::move(m));
    }
  return ParabolicSheaf(e.algebra_ptr(), std::move(slots), std::move(maps));
}

ParabolicSheaf parabolic_tensor(const ParabolicSheaf& e, const ParabolicSheaf& e2) {
  require_field(e.algebra().ring(), "tensor product of parabolic sheaves");
  return phi(tensor(psi(e), psi(e2)));
}

std::string format_parabolic(const ParabolicSheaf& e, const std::string& name, const std::string& algebra_name) {
  const auto& b = e.algebra();
  const BaseRing& r = b.ring();
  std::string out = "parabolic " + name + " over " + algebra_name + " {\n";
  for (std::size_t s = 0; s < e.num_slots(); ++s)
    out += "  slot " + slot_name(b, s) + " : " + describe(r, e.slot(s)) + ";\n";
  for (std::size_t s = 0; s < e.num_slots(); ++s)
    for (std::size_t g = 0; g < b.q().num_generators(); ++g) {
      const RingMatrix& m = e.map(s, g);
      if (m.empty()) continue;
      out += "  map " + b.q().generator_names()[g] + " at " + slot_name(b, s) + " = " + format(r, m) + ";\n";
    }
  return out + "}\n";
}

}  // namespace rootsheaf

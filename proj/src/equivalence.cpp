#include "rootsheaf/equivalence.hpp"

#include "rootsheaf/errors.hpp"

#include <stdexcept>

namespace rootsheaf {

namespace {

std::size_t zero_rep(const GradedRootAlgebra& b, std::size_t slot) {
  const auto& gens = b.slot_piece(slot).generators;
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (word::is_zero(gens[k].q)) return k;
  throw std::logic_error("degree-zero piece lacks the unit monomial");
}

std::size_t zero_slot(const GradedRootAlgebra& b) { return b.slot_of(IntVector(b.degree_group().dimension())); }

void place(RingMatrix& dst, const RingMatrix& src, std::size_t row, std::size_t col, const BaseRing& r) {
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j) dst(row + i, col + j) = r.add(dst(row + i, col + j), src(i, j));
}

// index of the k-th generator of slot s among the generators of psi(e)
std::vector<std::size_t> psi_offsets(const ParabolicSheaf& e) {
  std::vector<std::size_t> off(e.num_slots() + 1, 0);
  for (std::size_t s = 0; s < e.num_slots(); ++s) off[s + 1] = off[s] + e.slot(s).gens;
  return off;
}

// generator i of n goes to the image of 1 * e_i in Phi(n) at the slot of its degree
GeneratorImages canonical_images(const GradedPresentation& n, const PhiResult& a) {
  const auto& b = n.algebra();
  const BaseRing& r = b.ring();
  const auto off = psi_offsets(a.sheaf);
  const std::size_t z = zero_slot(b);
  GeneratorImages out;
  for (std::size_t i = 0; i < n.num_generators(); ++i) {
    const std::size_t s = b.slot_of(n.degrees()[i]);
    const Strand& st = a.strands[s];
    if (st.piece_slots[i] != z) throw std::logic_error("generator summand is not in degree zero");
    RingMatrix raw(st.module.gens, 1);
    raw(st.offsets[i] + zero_rep(b, z), 0) = r.one();
    const RingMatrix c = multiply(r, a.pruned[s].to_new, raw);
    std::vector<std::pair<std::size_t, Poly>> img;
    for (std::size_t l = 0; l < c.rows(); ++l)
      if (!c(l, 0).is_zero()) img.emplace_back(off[s] + l, c(l, 0));
    out.images.push_back(std::move(img));
  }
  return out;
}

std::string first_failure(const ParabolicSheaf& source, const ParabolicSheaf& target, const ParabolicMorphism& f) {
  const auto& b = source.algebra();
  if (!is_morphism(source, target, f)) return "comparison map is not a morphism";
  if (is_isomorphism(source, target, f)) return "";
  const BaseRing& r = b.ring();
  for (std::size_t s = 0; s < source.num_slots(); ++s) {
    Pruned ps = prune(r, source.slot(s)), pt = prune(r, target.slot(s));
    RingMatrix m = multiply(r, pt.to_new, multiply(r, f.slots[s], ps.from_new));
    auto inv = unit_inverse(r, m);
    if (!inv || !is_well_defined(r, ps.module, pt.module, m) || !is_well_defined(r, pt.module, ps.module, *inv))
      return "slot " + b.denominators().format_degree(b.slot_degree(s)) + " is not an isomorphism";
  }
  return "comparison map is not an isomorphism";
}

}  // namespace

IntVector term_degree(const GradedRootAlgebra& b, const BTerm& t) {
  const auto& grp = b.degree_group();
  return grp.add(b.q().group_presentation().canonical(t.q), b.denominators().gp_map().apply(t.u));
}

GradedPresentation::GradedPresentation(AlgebraPtr algebra, std::vector<IntVector> degrees,
                                       std::vector<GradedRelation> relations, std::vector<std::string> names)
    : algebra_(std::move(algebra)), degrees_(std::move(degrees)), relations_(std::move(relations)),
      names_(std::move(names)) {
  if (!algebra_) throw InputError("graded presentation without an algebra");
  const auto& b = *algebra_;
  const auto& grp = b.degree_group();
  const std::size_t nq = b.q().num_generators();
  const std::size_t np = b.denominators().source().group_presentation().group().dimension();
  for (auto& d : degrees_) {
    if (d.size() != grp.dimension()) throw InputError("generator degree has wrong length");
    d = grp.normalize(d);
  }
  if (names_.empty())
    for (std::size_t i = 0; i < degrees_.size(); ++i) names_.push_back("e" + std::to_string(i + 1));
  if (names_.size() != degrees_.size()) throw InputError("one name per generator expected");
  for (std::size_t k = 0; k < relations_.size(); ++k) {
    auto& rel = relations_[k];
    if (rel.entries.size() != degrees_.size()) throw InputError("relation has wrong number of entries");
    if (rel.degree.size() != grp.dimension()) throw InputError("relation degree has wrong length");
    rel.degree = grp.normalize(rel.degree);
    for (std::size_t i = 0; i < rel.entries.size(); ++i) {
      BElement kept;
      for (auto& t : rel.entries[i]) {
        if (t.q.size() != nq || t.u.size() != np) throw InputError("term has wrong shape");
        if (t.coeff.is_zero()) continue;
        if (term_degree(b, t) != grp.sub(rel.degree, degrees_[i]))
          throw ValidationError("relation " + std::to_string(k + 1),
                                "term of degree " + b.denominators().format_degree(term_degree(b, t)) + " on " +
                                    names_[i] + " in a relation of degree " +
                                    b.denominators().format_degree(rel.degree));
        kept.push_back(std::move(t));
      }
      rel.entries[i] = std::move(kept);
    }
  }
}

GradedPresentation GradedPresentation::free(AlgebraPtr algebra, std::vector<IntVector> degrees) {
  return GradedPresentation(std::move(algebra), std::move(degrees), {});
}

RingMatrix act(const GradedRootAlgebra& b, const BElement& e, std::size_t slot) {
  if (e.empty()) throw InputError("acting by an empty element");
  const BaseRing& r = b.ring();
  const std::size_t t = b.word_target(slot, e.front().q);
  RingMatrix m(b.slot_piece(t).generators.size(), b.slot_piece(slot).generators.size());
  for (const auto& term : e) {
    if (b.word_target(slot, term.q) != t) throw InputError("element is not homogeneous");
    m = add(r, m, scale(r, b.action_word(slot, term.q), term.coeff));
  }
  return m;
}

GradedPresentation shift(const GradedPresentation& n, const IntVector& v) {
  const auto& grp = n.algebra().degree_group();
  std::vector<IntVector> degrees;
  for (const auto& d : n.degrees()) degrees.push_back(grp.sub(d, v));
  std::vector<GradedRelation> rels = n.relations();
  for (auto& r : rels) r.degree = grp.sub(r.degree, v);
  return GradedPresentation(n.algebra_ptr(), std::move(degrees), std::move(rels), n.names());
}

GradedPresentation tensor(const GradedPresentation& n, const GradedPresentation& n2) {
  if (n.algebra_ptr() != n2.algebra_ptr()) throw InputError("tensor product over different algebras");
  const auto& grp = n.algebra().degree_group();
  const std::size_t a = n.num_generators(), c = n2.num_generators();
  std::vector<IntVector> degrees;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < c; ++k) {
      degrees.push_back(grp.add(n.degrees()[i], n2.degrees()[k]));
      names.push_back(n.names()[i] + "_" + n2.names()[k]);
    }
  std::vector<GradedRelation> rels;
  for (const auto& rho : n.relations())
    for (std::size_t k = 0; k < c; ++k) {
      GradedRelation r{grp.add(rho.degree, n2.degrees()[k]), std::vector<BElement>(a * c)};
      for (std::size_t i = 0; i < a; ++i) r.entries[i * c + k] = rho.entries[i];
      rels.push_back(std::move(r));
    }
  for (std::size_t i = 0; i < a; ++i)
    for (const auto& rho : n2.relations()) {
      GradedRelation r{grp.add(n.degrees()[i], rho.degree), std::vector<BElement>(a * c)};
      for (std::size_t k = 0; k < c; ++k) r.entries[i * c + k] = rho.entries[k];
      rels.push_back(std::move(r));
    }
  return GradedPresentation(n.algebra_ptr(), std::move(degrees), std::move(rels), std::move(names));
}

Strand strand(const GradedPresentation& n, const IntVector& v) {
  const auto& b = n.algebra();
  const auto& grp = b.degree_group();
  Strand s;
  std::size_t total = 0;
  for (const auto& a : n.degrees()) {
    s.offsets.push_back(total);
    s.piece_slots.push_back(b.slot_of(grp.sub(v, a)));
    total += b.slot_piece(s.piece_slots.back()).generators.size();
  }
  s.module.gens = total;
  for (std::size_t i = 0; i < n.num_generators(); ++i)
    for (const auto& rel : b.slot_piece(s.piece_slots[i]).module.relations) {
      RingVector row(total);
      for (std::size_t k = 0; k < rel.size(); ++k) row[s.offsets[i] + k] = rel[k];
      s.module.relations.push_back(std::move(row));
    }
  for (std::size_t k = 0; k < n.relations().size(); ++k) {
    const RingMatrix m = relation_multiples(n, k, s, v);
    for (std::size_t c = 0; c < m.cols(); ++c) s.module.relations.push_back(m.column(c));
  }
  return s;
}

RingMatrix relation_multiples(const GradedPresentation& n, std::size_t relation, const Strand& s, const IntVector& v) {
  const auto& b = n.algebra();
  const auto& rho = n.relations()[relation];
  const std::size_t tau = b.slot_of(b.degree_group().sub(v, rho.degree));
  RingMatrix m(s.module.gens, b.slot_piece(tau).generators.size());
  for (std::size_t i = 0; i < n.num_generators(); ++i) {
    if (rho.entries[i].empty()) continue;
    if (b.word_target(tau, rho.entries[i].front().q) != s.piece_slots[i])
      throw std::logic_error("relation entry lands in the wrong piece");
    place(m, act(b, rho.entries[i], tau), s.offsets[i], 0, b.ring());
  }
  return m;
}

PhiResult phi_detail(const GradedPresentation& n) {
  const auto& b = n.algebra();
  const BaseRing& r = b.ring();
  const std::size_t nq = b.q().num_generators();
  PhiResult out;
  std::vector<Presentation> slots;
  for (std::size_t s = 0; s < b.num_slots(); ++s) {
    out.strands.push_back(strand(n, b.slot_degree(s)));
    out.pruned.push_back(prune(r, out.strands.back().module));
    slots.push_back(out.pruned.back().module);
  }
  std::vector<std::vector<RingMatrix>> maps(b.num_slots());
  for (std::size_t s = 0; s < b.num_slots(); ++s)
    for (std::size_t g = 0; g < nq; ++g) {
      const std::size_t t = b.action_target(s, g);
      const Strand& from = out.strands[s];
      const Strand& to = out.strands[t];
      RingMatrix raw(to.module.gens, from.module.gens);
      for (std::size_t i = 0; i < n.num_generators(); ++i) {
        if (b.action_target(from.piece_slots[i], g) != to.piece_slots[i])
          throw std::logic_error("strand summands do not line up");
        place(raw, b.action(from.piece_slots[i], g), to.offsets[i], from.offsets[i], r);
      }
      maps[s].push_back(multiply(r, out.pruned[t].to_new, multiply(r, raw, out.pruned[s].from_new)));
    }
  out.sheaf = ParabolicSheaf(n.algebra_ptr(), std::move(slots), std::move(maps));
  return out;
}

ParabolicSheaf phi(const GradedPresentation& n) { return phi_detail(n).sheaf; }

GradedPresentation psi(const ParabolicSheaf& e) {
  const auto& b = e.algebra();
  const BaseRing& r = b.ring();
  const auto& grp = b.degree_group();
  const auto& den = b.denominators();
  const std::size_t nq = b.q().num_generators();
  const std::size_t np = den.source().group_presentation().group().dimension();
  const auto off = psi_offsets(e);
  const std::size_t total = off.back();
  std::vector<IntVector> degrees;
  for (std::size_t s = 0; s < e.num_slots(); ++s)
    for (std::size_t k = 0; k < e.slot(s).gens; ++k) degrees.push_back(b.slot_degree(s));
  std::vector<GradedRelation> rels;
  for (std::size_t s = 0; s < e.num_slots(); ++s)
    for (const auto& row : e.slot(s).relations) {
      GradedRelation rel{b.slot_degree(s), std::vector<BElement>(total)};
      bool nonzero = false;
      for (std::size_t k = 0; k < row.size(); ++k)
        if (!row[k].is_zero()) {
          rel.entries[off[s] + k].push_back({row[k], word::zero(nq), IntVector(np)});
          nonzero = true;
        }
      if (nonzero) rels.push_back(std::move(rel));
    }
  for (std::size_t s = 0; s < e.num_slots(); ++s)
    for (std::size_t g = 0; g < nq; ++g) {
      const std::size_t t = b.action_target(s, g);
      const IntVector deg = grp.add(b.slot_degree(s), b.q().group_presentation().canonical(word::unit(nq, g)));
      const IntVector u = den.period(deg);
      const RingMatrix& m = e.map(s, g);
      for (std::size_t k = 0; k < e.slot(s).gens; ++k) {
        GradedRelation rel{deg, std::vector<BElement>(total)};
        rel.entries[off[s] + k].push_back({r.one(), word::unit(nq, g), IntVector(np)});
        for (std::size_t l = 0; l < e.slot(t).gens; ++l)
          if (!m(l, k).is_zero()) rel.entries[off[t] + l].push_back({r.neg(m(l, k)), word::zero(nq), u});
        rels.push_back(std::move(rel));
      }
    }
  return GradedPresentation(e.algebra_ptr(), std::move(degrees), std::move(rels));
}

ParabolicMorphism phi_morphism(const PhiResult& source, const PhiResult& target, const GradedPresentation& n,
                               const GradedPresentation& n2, const GeneratorImages& f) {
  const auto& b = n.algebra();
  const BaseRing& r = b.ring();
  if (f.images.size() != n.num_generators()) throw InputError("one image per generator expected");
  ParabolicMorphism out;
  for (std::size_t s = 0; s < b.num_slots(); ++s) {
    const Strand& from = source.strands[s];
    const Strand& to = target.strands[s];
    RingMatrix raw(to.module.gens, from.module.gens);
    for (std::size_t i = 0; i < n.num_generators(); ++i)
      for (const auto& [l, c] : f.images[i]) {
        if (l >= n2.num_generators()) throw InputError("image generator out of range");
        if (from.piece_slots[i] != to.piece_slots[l]) throw InputError("generator image has the wrong degree");
        const std::size_t dim = b.slot_piece(from.piece_slots[i]).generators.size();
        place(raw, RingMatrix::scalar(r, dim, c), to.offsets[l], from.offsets[i], r);
      }
    out.slots.push_back(multiply(r, target.pruned[s].to_new, multiply(r, raw, source.pruned[s].from_new)));
  }
  return out;
}

RoundTrip roundtrip_sheaf(const ParabolicSheaf& e) {
  const auto& b = e.algebra();
  const BaseRing& r = b.ring();
  const PhiResult back = phi_detail(psi(e));
  const auto off = psi_offsets(e);
  const std::size_t z = zero_slot(b);
  const std::size_t rep = zero_rep(b, z);
  RoundTrip out;
  ParabolicMorphism unit;
  for (std::size_t s = 0; s < e.num_slots(); ++s) {
    const Strand& st = back.strands[s];
    RingMatrix raw(st.module.gens, e.slot(s).gens);
    for (std::size_t k = 0; k < e.slot(s).gens; ++k) {
      if (st.piece_slots[off[s] + k] != z) throw std::logic_error("slot generator is not in degree zero");
      raw(st.offsets[off[s] + k] + rep, k) = r.one();
    }
    unit.slots.push_back(multiply(r, back.pruned[s].to_new, raw));
  }
  out.failure = first_failure(e, back.sheaf, unit);
  out.iso = out.failure.empty();
  out.witnesses = std::move(unit.slots);
  return out;
}

RoundTrip roundtrip_presentation(const GradedPresentation& n) {
  const PhiResult a = phi_detail(n);
  const GradedPresentation m = psi(a.sheaf);
  const PhiResult c = phi_detail(m);
  ParabolicMorphism w = phi_morphism(a, c, n, m, canonical_images(n, a));
  RoundTrip out;
  out.failure = first_failure(a.sheaf, c.sheaf, w);
  out.iso = out.failure.empty();
  out.witnesses = std::move(w.slots);
  return out;
}

std::size_t graded_hom_dimension(const GradedPresentation& n, const GradedPresentation& n2, const IntVector& v) {
  const auto& b = n.algebra();
  const BaseRing& r = b.ring();
  if (!r.is_field()) throw UnsupportedError("graded Hom needs field coefficients, not " + r.to_string());
  const auto& grp = b.degree_group();
  std::vector<Strand> sources;
  std::vector<std::size_t> off{0};
  std::size_t subtract = 0;
  for (const auto& a : n.degrees()) {
    sources.push_back(strand(n2, grp.add(a, v)));
    off.push_back(off.back() + sources.back().module.gens);
    const auto& rels = sources.back().module.relations;
    RingMatrix rm(sources.back().module.gens, rels.size());
    for (std::size_t c = 0; c < rels.size(); ++c)
      for (std::size_t i = 0; i < rm.rows(); ++i) rm(i, c) = rels[c][i];
    subtract += rank(r, rm);
  }
  const std::size_t ny = off.back();
  std::vector<RingMatrix> blocks;  // [C_rho | -Rel_rho], padded later
  std::vector<std::size_t> extra;
  std::size_t rows = 0, cols = ny, slack = 0;
  for (std::size_t k = 0; k < n.relations().size(); ++k) {
    const auto& rho = n.relations()[k];
    const Strand t = strand(n2, grp.add(rho.degree, v));
    RingMatrix c(t.module.gens, ny + t.module.relations.size());
    for (std::size_t i = 0; i < n.num_generators(); ++i) {
      if (rho.entries[i].empty()) continue;
      const Strand& s = sources[i];
      for (std::size_t l = 0; l < n2.num_generators(); ++l) {
        RingMatrix a = act(b, rho.entries[i], s.piece_slots[l]);
        if (a.rows() != b.slot_piece(t.piece_slots[l]).generators.size())
          throw std::logic_error("relation does not preserve summands");
        place(c, a, t.offsets[l], off[i] + s.offsets[l], r);
      }
    }
    RingMatrix rel(t.module.gens, t.module.relations.size());
    for (std::size_t j = 0; j < t.module.relations.size(); ++j)
      for (std::size_t i = 0; i < t.module.gens; ++i) {
        c(i, ny + j) = r.neg(t.module.relations[j][i]);
        rel(i, j) = t.module.relations[j][i];
      }
    slack += rel.cols() - rank(r, rel);
    rows += c.rows();
    extra.push_back(rel.cols());
    cols += rel.cols();
    blocks.push_back(std::move(c));
  }
  RingMatrix system(rows, cols);
  for (std::size_t k = 0, row = 0, col = ny; k < blocks.size(); ++k) {
    const RingMatrix& c = blocks[k];
    for (std::size_t i = 0; i < c.rows(); ++i) {
      for (std::size_t j = 0; j < ny; ++j) system(row + i, j) = c(i, j);
      for (std::size_t j = 0; j < extra[k]; ++j) system(row + i, col + j) = c(i, ny + j);
    }
    row += c.rows();
    col += extra[k];
  }
  const std::size_t kernel = cols - rank(r, system);
  return kernel - slack - subtract;
}

MonoidalReport monoidal_compat_check(const GradedPresentation& n, const GradedPresentation& n2) {
  const auto& b = n.algebra();
  const BaseRing& r = b.ring();
  if (!r.is_field()) throw UnsupportedError("monoidal check needs field coefficients, not " + r.to_string());
  MonoidalReport out;
  const GradedPresentation t = tensor(n, n2);
  const PhiResult lhs = phi_detail(t);
  const PhiResult a = phi_detail(n), a2 = phi_detail(n2);
  const GradedPresentation m = psi(a.sheaf), m2 = psi(a2.sheaf);
  const GradedPresentation mt = tensor(m, m2);
  const PhiResult rhs = phi_detail(mt);
  const GeneratorImages c = canonical_images(n, a), c2 = canonical_images(n2, a2);
  GeneratorImages images;
  for (std::size_t i = 0; i < n.num_generators(); ++i)
    for (std::size_t k = 0; k < n2.num_generators(); ++k) {
      std::vector<std::pair<std::size_t, Poly>> img;
      for (const auto& [l, x] : c.images[i])
        for (const auto& [l2, y] : c2.images[k]) img.emplace_back(l * m2.num_generators() + l2, r.mul(x, y));
      images.images.push_back(std::move(img));
    }
  const ParabolicMorphism w = phi_morphism(lhs, rhs, t, mt, images);
  out.failure = first_failure(lhs.sheaf, rhs.sheaf, w);
  out.tensor_iso = out.failure.empty();
  const ParabolicSheaf hom = parabolic_hom(a.sheaf, a2.sheaf);
  out.hom_agree = true;
  for (std::size_t s = 0; s < b.num_slots(); ++s) {
    out.graded_hom.push_back(graded_hom_dimension(n, n2, b.slot_degree(s)));
    out.parabolic_hom.push_back(hom.slot(s).gens);
    if (out.graded_hom.back() != out.parabolic_hom.back()) {
      out.hom_agree = false;
      if (out.failure.empty())
        out.failure = "Hom dimensions differ at " + b.denominators().format_degree(b.slot_degree(s));
    }
  }
  return out;
}

std::string format_element(const GradedRootAlgebra& b, const BElement& e, const std::string& generator) {
  const BaseRing& r = b.ring();
  std::string out;
  for (const auto& t : e) {
    std::string mono = b.format_monomial(t.q, t.u);
    std::string body = mono == "1" ? generator : mono + "*" + generator;
    std::string coeff = r.format(t.coeff);
    bool negative = false;
    if (t.coeff.terms.size() == 1 && coeff.front() == '-') {
      negative = true;
      coeff = r.format(r.neg(t.coeff));
    }
    std::string term;
    if (coeff == "1") term = body;
    else if (t.coeff.terms.size() > 1) term = "(" + coeff + ")*" + body;
    else term = coeff + "*" + body;
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

std::string format_graded(const GradedPresentation& n, const std::string& name, const std::string& algebra_name) {
  const auto& b = n.algebra();
  std::string out = "gradedmodule " + name + " over " + algebra_name + " {\n";
  for (std::size_t i = 0; i < n.num_generators(); ++i)
    out += "  gen " + n.names()[i] + " at " + b.denominators().format_degree(n.degrees()[i]) + ";\n";
  for (const auto& rel : n.relations()) {
    std::string text;
    for (std::size_t i = 0; i < rel.entries.size(); ++i) {
      if (rel.entries[i].empty()) continue;
      std::string part = format_element(b, rel.entries[i], n.names()[i]);
      if (text.empty()) text = part;
      else if (part.front() == '-') text += " - " + part.substr(1);
      else text += " + " + part;
    }
    if (!text.empty()) out += "  rel " + text + ";\n";
  }
  return out + "}\n";
}

}  // namespace rootsheaf

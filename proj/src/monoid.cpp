#include "rootsheaf/monoid.hpp"

#include "rootsheaf/errors.hpp"

#include <algorithm>
#include <mutex>

namespace rootsheaf {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "true";
    case Verdict::fails: return "false";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

struct FpMonoid::Impl {
  std::vector<std::string> names;
  std::vector<Relation> relations;
  CompletionLimits limits;
  RewriteSystem rewriting;
  AbelianPresentation group;

  mutable std::once_flag units_once;
  mutable std::vector<bool> units;
  mutable std::mutex integral_mutex;
  mutable std::optional<bool> integral;
};

namespace {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("g" + std::to_string(i + 1));
  return names;
}

IntMatrix relation_lattice(std::size_t n, const std::vector<Relation>& relations) {
  IntMatrix cols(n, relations.size());
  for (std::size_t k = 0; k < relations.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) cols(i, k) = relations[k].lhs[i] - relations[k].rhs[i];
  return cols;
}

bool supported_in(const Word& w, const std::vector<bool>& allowed) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0 && !allowed[i]) return false;
  return true;
}

}  // namespace

FpMonoid::FpMonoid() : FpMonoid(std::size_t{0}, {}) {}

FpMonoid::FpMonoid(std::size_t num_generators, std::vector<Relation> relations, CompletionLimits limits)
    : FpMonoid(default_names(num_generators), std::move(relations), limits) {}

FpMonoid::FpMonoid(std::vector<std::string> generator_names, std::vector<Relation> relations,
                   CompletionLimits limits)
    : impl_(std::make_shared<Impl>()) {
  const std::size_t n = generator_names.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (generator_names[i] == generator_names[j])
        throw InputError("duplicate generator name '" + generator_names[i] + "'");
  std::vector<std::pair<Word, Word>> pairs;
  for (std::size_t k = 0; k < relations.size(); ++k) {
    const auto& r = relations[k];
    if (r.lhs.size() != n || r.rhs.size() != n)
      throw InputError("relation " + std::to_string(k + 1) + " does not have " + std::to_string(n) + " exponents");
    pairs.emplace_back(r.lhs, r.rhs);
  }
  impl_->names = std::move(generator_names);
  impl_->limits = limits;
  impl_->rewriting = RewriteSystem::complete(n, pairs, MonomialOrder{}, limits);
  impl_->group = AbelianPresentation(n, relation_lattice(n, relations));
  impl_->relations = std::move(relations);
}

FpMonoid FpMonoid::free(std::size_t n) { return FpMonoid(n, {}); }

FpMonoid FpMonoid::free(std::vector<std::string> generator_names) { return FpMonoid(std::move(generator_names), {}); }

std::size_t FpMonoid::num_generators() const noexcept { return impl_->names.size(); }
const std::vector<std::string>& FpMonoid::generator_names() const noexcept { return impl_->names; }
const std::vector<Relation>& FpMonoid::relations() const noexcept { return impl_->relations; }
const RewriteSystem& FpMonoid::rewrite_system() const noexcept { return impl_->rewriting; }
const CompletionLimits& FpMonoid::limits() const noexcept { return impl_->limits; }
const AbelianPresentation& FpMonoid::group_presentation() const noexcept { return impl_->group; }

void FpMonoid::check_word(const Word& w) const {
  if (w.size() != num_generators())
    throw InputError("word " + word::to_string(w) + " has length " + std::to_string(w.size()) + ", expected " +
                     std::to_string(num_generators()));
  for (auto e : w)
    if (e < 0) throw InputError("word " + word::to_string(w) + " has a negative exponent");
}

Word FpMonoid::normal_form(const Word& w) const {
  check_word(w);
  return impl_->rewriting.normal_form(w);
}

const std::vector<bool>& FpMonoid::unit_generators() const {
  std::call_once(impl_->units_once, [this] {
    const std::size_t n = num_generators();
    std::vector<bool> units(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (word::is_zero(normal_form(word::unit(n, i)))) {
        units[i] = true;
        continue;
      }
      // adjoin y with g_i + y = 0; g_i is a unit iff y is congruent to a
      // y-free word b with g_i + b ~ 0 already in M
      std::vector<std::pair<Word, Word>> pairs;
      for (const auto& r : relations()) {
        Word l = r.lhs, rr = r.rhs;
        l.push_back(0);
        rr.push_back(0);
        pairs.emplace_back(std::move(l), std::move(rr));
      }
      Word inv = word::unit(n + 1, i);
      inv[n] = 1;
      pairs.emplace_back(inv, word::zero(n + 1));
      auto local = RewriteSystem::complete(n + 1, pairs, MonomialOrder::eliminating(n + 1, n), limits());
      Word b = local.normal_form(word::unit(n + 1, n));
      if (b[n] != 0) continue;
      b.pop_back();
      b[i] += 1;
      units[i] = word::is_zero(normal_form(b));
    }
    impl_->units = std::move(units);
  });
  return impl_->units;
}

bool FpMonoid::is_integral(std::size_t hilbert_budget) const {
  std::lock_guard<std::mutex> lock(impl_->integral_mutex);
  if (impl_->integral) return *impl_->integral;
  bool integral = true;
  if (!relations().empty()) {
    // pairs (u, v) with iota(u) = iota(v); the congruent pairs form a
    // submonoid, so checking the Hilbert basis suffices
    const std::size_t n = num_generators();
    const auto& proj = group_presentation().projection();
    IntMatrix map(proj.rows(), 2 * n);
    for (std::size_t r = 0; r < proj.rows(); ++r)
      for (std::size_t c = 0; c < n; ++c) {
        map(r, c) = proj(r, c);
        map(r, n + c) = -proj(r, c);
      }
    for (const auto& h : lattice_cone_basis(map, group_presentation().group(), hilbert_budget)) {
      Word u(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(n));
      Word v(h.begin() + static_cast<std::ptrdiff_t>(n), h.end());
      if (!congruent(u, v)) {
        integral = false;
        break;
      }
    }
  }
  impl_->integral = integral;
  return integral;
}

std::string FpMonoid::format(const Word& w) const {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (w[i] != 1) s += std::to_string(w[i]);
    s += i < impl_->names.size() ? impl_->names[i] : "?";
  }
  return s.empty() ? "0" : s;
}

MonoidHom::MonoidHom(FpMonoid source, FpMonoid target, std::vector<Word> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.num_generators())
    throw InputError("homomorphism needs " + std::to_string(source_.num_generators()) + " images, got " +
                     std::to_string(images_.size()));
  for (const auto& w : images_) target_.check_word(w);
  const auto& rels = source_.relations();
  for (std::size_t k = 0; k < rels.size(); ++k) {
    if (!target_.congruent(apply_raw(rels[k].lhs), apply_raw(rels[k].rhs)))
      throw ValidationError("relation " + std::to_string(k + 1),
                            "source relation " + source_.format(rels[k].lhs) + " = " + source_.format(rels[k].rhs) +
                                " is not respected: " + target_.format(apply(rels[k].lhs)) +
                                " != " + target_.format(apply(rels[k].rhs)));
  }
}

MonoidHom MonoidHom::identity(const FpMonoid& m) {
  std::vector<Word> images;
  for (std::size_t i = 0; i < m.num_generators(); ++i) images.push_back(word::unit(m.num_generators(), i));
  return MonoidHom(m, m, std::move(images));
}

Word MonoidHom::apply_raw(const Word& w) const {
  source_.check_word(w);
  Word out = word::zero(target_.num_generators());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t t = 0; t < out.size(); ++t) out[t] += w[i] * images_[i][t];
  return out;
}

IntMatrix MonoidHom::matrix() const {
  IntMatrix m(target_.num_generators(), source_.num_generators());
  for (std::size_t i = 0; i < images_.size(); ++i)
    for (std::size_t t = 0; t < images_[i].size(); ++t) m(t, i) = images_[i][t];
  return m;
}

LatticeMap MonoidHom::gp() const {
  const auto& sp = source_.group_presentation();
  const auto& tp = target_.group_presentation();
  const std::size_t dim = sp.group().dimension();
  std::vector<IntVector> section;
  for (std::size_t k = 0; k < dim; ++k) {
    IntVector e(dim);
    e[k] = 1;
    section.push_back(sp.lift(e));
  }
  IntMatrix lift = IntMatrix::from_columns(section, source_.num_generators());
  return LatticeMap(sp.group(), tp.group(), tp.projection() * (matrix() * lift));
}

MonoidHom compose(const MonoidHom& g, const MonoidHom& f) {
  if (g.source().num_generators() != f.target().num_generators())
    throw InputError("composition of homomorphisms with mismatched monoids");
  std::vector<Word> images;
  for (const auto& w : f.images()) images.push_back(g.apply(w));
  return MonoidHom(f.source(), g.target(), std::move(images));
}

SubmonoidGens::SubmonoidGens(FpMonoid ambient, const std::vector<Word>& generators) : ambient_(std::move(ambient)) {
  for (const auto& g : generators) {
    Word nf = ambient_.normal_form(g);
    if (word::is_zero(nf)) continue;
    if (std::find(generators_.begin(), generators_.end(), nf) == generators_.end()) generators_.push_back(nf);
  }
}

Classification classify(const FpMonoid& m, std::size_t hilbert_budget) {
  Classification c;
  const std::size_t n = m.num_generators();
  c.group = m.group_presentation().group();
  for (std::size_t i = 0; i < n; ++i) c.iota.push_back(m.iota(word::unit(n, i)));
  c.units = m.unit_generators();
  c.sharp = true;
  for (std::size_t i = 0; i < n; ++i)
    if (c.units[i] && !word::is_zero(m.normal_form(word::unit(n, i)))) c.sharp = false;
  c.integral = m.is_integral(hilbert_budget);
  c.torsion_free = c.integral && c.group.is_torsion_free();
  return c;
}

std::vector<Word> zero_preimage_basis(const FpMonoid& target, const std::vector<Word>& images,
                                      std::size_t hilbert_budget) {
  const std::size_t nt = target.num_generators();
  const auto& units = target.unit_generators();
  // a word is ~0 iff it only involves units and lies in the lattice of the
  // relations among units
  std::vector<std::size_t> unit_index;
  std::vector<std::int64_t> position(nt, -1);
  for (std::size_t i = 0; i < nt; ++i)
    if (units[i]) {
      position[i] = static_cast<std::int64_t>(unit_index.size());
      unit_index.push_back(i);
    }
  const std::size_t k = unit_index.size();
  std::vector<Relation> unit_relations;
  for (const auto& r : target.relations())
    if (supported_in(r.lhs, units) && supported_in(r.rhs, units)) unit_relations.push_back(r);
  IntMatrix lat(k, unit_relations.size());
  for (std::size_t c = 0; c < unit_relations.size(); ++c)
    for (std::size_t u = 0; u < k; ++u)
      lat(u, c) = unit_relations[c].lhs[unit_index[u]] - unit_relations[c].rhs[unit_index[u]];
  AbelianPresentation unit_group(k, lat);

  std::vector<std::size_t> allowed;
  for (std::size_t i = 0; i < images.size(); ++i)
    if (supported_in(images[i], units)) allowed.push_back(i);
  IntMatrix f(k, allowed.size());
  for (std::size_t c = 0; c < allowed.size(); ++c)
    for (std::size_t t = 0; t < nt; ++t)
      if (position[t] >= 0) f(static_cast<std::size_t>(position[t]), c) = images[allowed[c]][t];

  std::vector<Word> out;
  for (const auto& h : lattice_cone_basis(unit_group.projection() * f, unit_group.group(), hilbert_budget)) {
    Word w(images.size(), 0);
    for (std::size_t c = 0; c < allowed.size(); ++c) w[allowed[c]] = h[c];
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return MonomialOrder{}.less(a, b);
  });
  return out;
}

SubmonoidGens kernel(const MonoidHom& f, std::size_t hilbert_budget) {
  return SubmonoidGens(f.source(), zero_preimage_basis(f.target(), f.images(), hilbert_budget));
}

Quotient quotient(const FpMonoid& m, const SubmonoidGens& s) {
  if (s.ambient().num_generators() != m.num_generators())
    throw InputError("submonoid does not live in the given monoid");
  auto relations = m.relations();
  for (const auto& g : s.generators()) relations.push_back({g, word::zero(m.num_generators())});
  FpMonoid q(m.generator_names(), std::move(relations), m.limits());
  std::vector<Word> images;
  for (std::size_t i = 0; i < m.num_generators(); ++i) images.push_back(word::unit(m.num_generators(), i));
  MonoidHom proj(m, q, std::move(images));
  return {std::move(q), std::move(proj)};
}

SubmonoidGens kernel_closure(const FpMonoid& m, const SubmonoidGens& s, std::size_t hilbert_budget) {
  return kernel(quotient(m, s).projection, hilbert_budget);
}

namespace {

// A source word a with f(a) ~ target generator g, or the reason none exists.
struct PreimageSearch {
  Verdict found = Verdict::unknown;
  Word preimage;
};

PreimageSearch find_preimage(const MonoidHom& f, std::size_t g, bool target_integral, std::int64_t search_bound,
                             std::size_t hilbert_budget) {
  const auto& tp = f.target().group_presentation();
  const std::size_t nt = f.target().num_generators();
  const Word eg = word::unit(nt, g);
  auto slice = lattice_slice(tp.projection() * f.matrix(), tp.group(), tp.canonical(eg), hilbert_budget);
  PreimageSearch out;
  if (slice.minimal.empty()) {
    out.found = Verdict::fails;
    return out;
  }
  const Word target_nf = f.target().normal_form(eg);
  const std::int64_t bound = target_integral ? 0 : search_bound;
  const auto extras = word::up_to_degree(slice.recession.size(), bound);
  for (const auto& m : slice.minimal) {
    for (const auto& c : extras) {
      Word a = m;
      for (std::size_t r = 0; r < c.size(); ++r)
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += c[r] * slice.recession[r][i];
      if (f.apply(a) == target_nf) {
        out.found = Verdict::holds;
        out.preimage = std::move(a);
        return out;
      }
    }
  }
  return out;
}

}  // namespace

CokernelAnalysis cokernel_analyze(const MonoidHom& f, std::int64_t search_bound, std::size_t hilbert_budget) {
  CokernelAnalysis out;
  const FpMonoid& a = f.source();
  const FpMonoid& b = f.target();
  out.kernel = kernel(f, hilbert_budget);
  Quotient q = quotient(a, out.kernel);
  out.cokernel = q.monoid;

  const bool integral = b.is_integral(hilbert_budget);
  std::vector<Word> preimages;
  for (std::size_t g = 0; g < b.num_generators(); ++g) {
    auto search = find_preimage(f, g, integral, search_bound, hilbert_budget);
    if (search.found == Verdict::fails) {
      out.is_cokernel = Verdict::fails;
      out.reason = "target generator " + b.generator_names()[g] + " is not in the image, even in groups";
      return out;
    }
    if (search.found == Verdict::unknown) {
      out.is_cokernel = Verdict::unknown;
      out.reason = "no preimage of target generator " + b.generator_names()[g] + " within search bound " +
                   std::to_string(search_bound);
      return out;
    }
    preimages.push_back(q.monoid.normal_form(search.preimage));
  }

  // an isomorphism's inverse is forced on generators, so any failure below
  // is a definite "no"
  std::optional<MonoidHom> inverse;
  try {
    inverse.emplace(b, q.monoid, preimages);
  } catch (const ValidationError& e) {
    out.is_cokernel = Verdict::fails;
    out.reason = "induced map is not injective: candidate inverse breaks target " + e.locus();
    return out;
  }
  for (std::size_t i = 0; i < a.num_generators(); ++i) {
    const Word ei = word::unit(a.num_generators(), i);
    if (inverse->apply(f.apply(ei)) != q.monoid.normal_form(ei)) {
      out.is_cokernel = Verdict::fails;
      out.reason = "induced map is not injective at source generator " + a.generator_names()[i];
      return out;
    }
  }
  out.is_cokernel = Verdict::holds;
  out.inverse = std::move(inverse);
  out.free_cover.emplace(FpMonoid::free(out.kernel.generators().size()), a, out.kernel.generators());
  return out;
}

}  // namespace rootsheaf

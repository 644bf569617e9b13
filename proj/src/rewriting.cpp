#include "rootsheaf/rewriting.hpp"

#include "rootsheaf/errors.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace rootsheaf {

MonomialOrder MonomialOrder::eliminating(std::size_t n, std::size_t index) {
  std::vector<std::int64_t> w(n, 0);
  w[index] = 1;
  return MonomialOrder({std::move(w)});
}

int MonomialOrder::compare(const Word& a, const Word& b) const {
  for (const auto& w : weights_) {
    std::int64_t sa = 0, sb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sa += w[i] * a[i];
      sb += w[i] * b[i];
    }
    if (sa != sb) return sa < sb ? -1 : 1;
  }
  const auto da = word::degree(a), db = word::degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

namespace {

struct Completion {
  std::size_t n;
  MonomialOrder order;
  CompletionLimits limits;
  std::vector<RewriteRule> rules;
  std::vector<bool> alive;
  std::deque<std::pair<Word, Word>> pending;
  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t pairs_done = 0;

  Word reduce(Word w) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t k = 0; k < rules.size(); ++k) {
        if (!alive[k] || !word::divides(rules[k].lhs, w)) continue;
        for (std::size_t i = 0; i < n; ++i) w[i] += rules[k].rhs[i] - rules[k].lhs[i];
        changed = true;
      }
    }
    return w;
  }

  std::size_t alive_count() const { return static_cast<std::size_t>(std::count(alive.begin(), alive.end(), true)); }

  [[noreturn]] void bail(const std::string& which) const {
    throw ResourceError("rewriting completion exceeded its " + which + " (partial system: " +
                        std::to_string(alive_count()) + " rules, " + std::to_string(pairs.size()) +
                        " unresolved overlaps, " + std::to_string(pairs_done) + " overlaps resolved)");
  }

  void add_equation(Word a, Word b) {
    a = reduce(std::move(a));
    b = reduce(std::move(b));
    if (a == b) return;
    if (order.less(a, b)) std::swap(a, b);
    const std::size_t id = rules.size();
    for (std::size_t k = 0; k < rules.size(); ++k) {
      if (alive[k] && word::divides(a, rules[k].lhs)) {
        alive[k] = false;
        pending.emplace_back(rules[k].lhs, rules[k].rhs);
      }
    }
    rules.push_back({std::move(a), std::move(b)});
    alive.push_back(true);
    if (alive_count() > limits.rule_budget) bail("rule budget of " + std::to_string(limits.rule_budget));
    for (std::size_t k = 0; k < id; ++k)
      if (alive[k]) pairs.emplace_back(k, id);
  }

  void run() {
    for (;;) {
      while (!pending.empty()) {
        auto [a, b] = std::move(pending.front());
        pending.pop_front();
        add_equation(std::move(a), std::move(b));
      }
      if (pairs.empty()) break;
      auto [i, j] = pairs.front();
      pairs.pop_front();
      if (!alive[i] || !alive[j]) continue;
      const auto& ri = rules[i];
      const auto& rj = rules[j];
      if (word::disjoint_support(ri.lhs, rj.lhs)) continue;
      if (++pairs_done > limits.pair_budget) bail("overlap budget of " + std::to_string(limits.pair_budget));
      Word m = word::lcm(ri.lhs, rj.lhs);
      Word a = word::add(word::quotient(m, ri.lhs), ri.rhs);
      Word b = word::add(word::quotient(m, rj.lhs), rj.rhs);
      pending.emplace_back(std::move(a), std::move(b));
    }
  }
};

}  // namespace

RewriteSystem RewriteSystem::complete(std::size_t num_generators, const std::vector<std::pair<Word, Word>>& relations,
                                      MonomialOrder order, CompletionLimits limits) {
  Completion c{num_generators, order, limits, {}, {}, {}, {}};
  for (const auto& [u, v] : relations) {
    if (u.size() != num_generators || v.size() != num_generators)
      throw InputError("relation has wrong length for " + std::to_string(num_generators) + " generators");
    for (std::size_t i = 0; i < num_generators; ++i)
      if (u[i] < 0 || v[i] < 0) throw InputError("relation words must have non-negative exponents");
    c.pending.emplace_back(u, v);
  }
  c.run();

  RewriteSystem out;
  out.n_ = num_generators;
  out.order_ = order;
  for (std::size_t k = 0; k < c.rules.size(); ++k)
    if (c.alive[k]) out.rules_.push_back(c.rules[k]);
  // reduced form: right-hand sides fully normalised
  for (auto& r : out.rules_) r.rhs = out.normal_form(r.rhs);
  std::sort(out.rules_.begin(), out.rules_.end(),
            [&](const RewriteRule& a, const RewriteRule& b) { return order.less(a.lhs, b.lhs); });
  return out;
}

Word RewriteSystem::normal_form(Word w) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rules_) {
      if (!word::divides(r.lhs, w)) continue;
      for (std::size_t i = 0; i < n_; ++i) w[i] += r.rhs[i] - r.lhs[i];
      changed = true;
    }
  }
  return w;
}

}  // namespace rootsheaf

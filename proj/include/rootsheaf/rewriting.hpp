#pragma once

// Oriented rewriting on N^n: the congruence generated by finitely many
// relations u = v is decided by completing the rule set l -> r (l > r in a
// monomial order) until every overlap resolves.

#include "rootsheaf/word.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace rootsheaf {

/// Monomial order: compare by each weight vector in turn, then by total
/// degree, then lexicographically with the first generator largest.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(std::vector<std::vector<std::int64_t>> weights) : weights_(std::move(weights)) {}

  /// Elimination order that makes every word containing generator `index`
  /// larger than every word avoiding it.
  static MonomialOrder eliminating(std::size_t n, std::size_t index);

  int compare(const Word& a, const Word& b) const;
  bool less(const Word& a, const Word& b) const { return compare(a, b) < 0; }

 private:
  std::vector<std::vector<std::int64_t>> weights_;
};

struct RewriteRule {
  Word lhs;
  Word rhs;
};

struct CompletionLimits {
  std::size_t rule_budget = 4000;
  std::size_t pair_budget = 400000;
};

class RewriteSystem {
 public:
  RewriteSystem() = default;

  /// Complete the relations into a reduced confluent system. Throws
  /// ResourceError (with the partial rule count) when a budget is exceeded.
  static RewriteSystem complete(std::size_t num_generators, const std::vector<std::pair<Word, Word>>& relations,
                                MonomialOrder order = {}, CompletionLimits limits = {});

  std::size_t num_generators() const noexcept { return n_; }
  const std::vector<RewriteRule>& rules() const noexcept { return rules_; }
  const MonomialOrder& order() const noexcept { return order_; }

  /// The order-minimal word congruent to w.
  Word normal_form(Word w) const;

 private:
  std::size_t n_ = 0;
  MonomialOrder order_;
  std::vector<RewriteRule> rules_;
};

}  // namespace rootsheaf

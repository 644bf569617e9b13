#pragma once

// Brute-force congruence closure on the words of bounded degree: union-find
// over all words, joined along single relation applications that stay in
// the window. Independent of the rewriting engine.

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using Word = std::vector<std::int64_t>;

class CongruenceClosure {
 public:
  CongruenceClosure(std::size_t n, const std::vector<std::pair<Word, Word>>& relations, std::int64_t max_degree)
      : n_(n) {
    enumerate(Word(n, 0), 0, max_degree);
    parent_.resize(words_.size());
    std::iota(parent_.begin(), parent_.end(), 0);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      const Word& w = words_[k];
      for (const auto& [u, v] : relations) {
        apply(k, w, u, v);
        apply(k, w, v, u);
      }
    }
  }

  bool contains(const Word& w) const { return index_.count(w) != 0; }

  bool congruent(const Word& a, const Word& b) { return find(index_.at(a)) == find(index_.at(b)); }

  const std::vector<Word>& words() const { return words_; }

 private:
  void enumerate(Word w, std::size_t pos, std::int64_t left) {
    if (pos == n_) {
      index_[w] = words_.size();
      words_.push_back(w);
      return;
    }
    for (std::int64_t e = 0; e <= left; ++e) {
      w[pos] = e;
      enumerate(w, pos + 1, left - e);
    }
  }

  void apply(std::size_t k, const Word& w, const Word& from, const Word& to) {
    Word x = w;
    for (std::size_t i = 0; i < n_; ++i) {
      x[i] = w[i] - from[i] + to[i];
      if (w[i] < from[i]) return;
    }
    auto it = index_.find(x);
    if (it != index_.end()) unite(k, it->second);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  std::size_t n_;
  std::vector<Word> words_;
  std::map<Word, std::size_t> index_;
  std::vector<std::size_t> parent_;
};

}  // namespace oracle

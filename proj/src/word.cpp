#include "rootsheaf/word.hpp"

namespace rootsheaf::word {

namespace {

void fill(std::size_t n, std::size_t pos, std::int64_t remaining, Word& cur, std::vector<Word>& out) {
  if (pos + 1 == n) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (std::int64_t e = remaining; e >= 0; --e) {
    cur[pos] = e;
    fill(n, pos + 1, remaining - e, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Word> of_degree(std::size_t n, std::int64_t d) {
  std::vector<Word> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Word cur(n, 0);
  fill(n, 0, d, cur, out);
  return out;
}

std::vector<Word> up_to_degree(std::size_t n, std::int64_t d) {
  std::vector<Word> out;
  for (std::int64_t k = 0; k <= d; ++k) {
    auto level = of_degree(n, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace rootsheaf::word

#include "paraphrase/similarity.h"

namespace paraphrase {

const Token &wildcard() {
  static const Token x = Token::word("X");
  return x;
}

namespace {

// suffix[i][j] = LCS of p[i:] and q[j:], flattened row-major.
std::vector<std::size_t> suffix_table(std::span<const Token> p,
                                      std::span<const Token> q) {
  const std::size_t w = q.size() + 1;
  std::vector<std::size_t> t((p.size() + 1) * w, 0);
  const Token &x = wildcard();
  for (std::size_t i = p.size(); i-- > 0;) {
    for (std::size_t j = q.size(); j-- > 0;) {
      if (p[i] == q[j] && p[i] != x)
        t[i * w + j] = t[(i + 1) * w + j + 1] + 1;
      else
        t[i * w + j] = std::max(t[(i + 1) * w + j], t[i * w + j + 1]);
    }
  }
  return t;
}

}  // namespace

Alignment align(std::span<const Token> p, std::span<const Token> q) {
  const std::size_t w = q.size() + 1;
  auto t = suffix_table(p, q);
  const Token &x = wildcard();
  Alignment a;
  std::size_t i = 0, j = 0;
  while (i < p.size() && j < q.size()) {
    if (p[i] == q[j] && p[i] != x) {
      a.pairs.emplace_back(i, j);
      ++i;
      ++j;
    } else if (t[(i + 1) * w + j] >= t[i * w + j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  return a;
}

std::size_t similarity(std::span<const Token> p, std::span<const Token> q) {
  if (p.empty() || q.empty())
    return 0;
  return suffix_table(p, q)[0];
}

}  // namespace paraphrase

#include "paraphrase/extraction.h"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

#include "paraphrase/error.h"
#include "paraphrase/rules.h"

namespace paraphrase {
namespace {

// Surface-based ordering, so output does not depend on Token's internals.
bool seq_less(const TokenSeq &a, const TokenSeq &b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](const Token &x, const Token &y) { return x.surface() < y.surface(); });
}

}  // namespace

std::vector<Hunk> diff_hunks(std::span<const Token> left,
                             std::span<const Token> right) {
  const std::size_t n = left.size();
  const std::size_t m = right.size();
  const std::size_t w = m + 1;
  std::vector<std::size_t> t((n + 1) * w, 0);
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = m; j-- > 0;)
      t[i * w + j] = left[i] == right[j]
                         ? t[(i + 1) * w + j + 1] + 1
                         : std::max(t[(i + 1) * w + j], t[i * w + j + 1]);

  std::vector<Hunk> hunks;
  std::size_t i = 0, j = 0;
  std::size_t hi = 0, hj = 0;  // start of the open hunk
  auto close = [&] {
    if (i > hi || j > hj)
      hunks.push_back({hi, i, hj, j});
  };
  while (i < n || j < m) {
    if (i < n && j < m && left[i] == right[j]) {
      close();
      ++i;
      ++j;
      hi = i;
      hj = j;
    } else if (j == m || (i < n && t[(i + 1) * w + j] >= t[i * w + j + 1])) {
      ++i;
    } else {
      ++j;
    }
  }
  close();
  return hunks;
}

std::vector<CandidateRule> diff_align(const AlignedPair &pair,
                                      std::size_t max_hunk) {
  std::vector<CandidateRule> out;
  for (const Hunk &h : diff_hunks(pair.left, pair.right)) {
    if (h.left_end - h.left_begin > max_hunk ||
        h.right_end - h.right_begin > max_hunk)
      continue;
    CandidateRule r;
    r.lhs.assign(pair.left.begin() + h.left_begin,
                 pair.left.begin() + h.left_end);
    r.rhs.assign(pair.right.begin() + h.right_begin,
                 pair.right.begin() + h.right_end);
    r.example_pair_ids = {pair.pair_id};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CandidateRule> harvest(std::span<const AlignedPair> pairs,
                                   std::size_t max_hunk) {
  auto key_less = [](const std::pair<TokenSeq, TokenSeq> &a,
                     const std::pair<TokenSeq, TokenSeq> &b) {
    if (seq_less(a.first, b.first))
      return true;
    if (seq_less(b.first, a.first))
      return false;
    return seq_less(a.second, b.second);
  };
  std::map<std::pair<TokenSeq, TokenSeq>, CandidateRule, decltype(key_less)>
      merged(key_less);
  for (const AlignedPair &pair : pairs) {
    for (CandidateRule &c : diff_align(pair, max_hunk)) {
      auto [it, fresh] = merged.try_emplace({c.lhs, c.rhs}, c);
      if (!fresh) {
        it->second.support_count += c.support_count;
        it->second.example_pair_ids.insert(it->second.example_pair_ids.end(),
                                           c.example_pair_ids.begin(),
                                           c.example_pair_ids.end());
      }
    }
  }

  std::vector<CandidateRule> out;
  out.reserve(merged.size());
  for (auto &[key, c] : merged) {
    std::sort(c.example_pair_ids.begin(), c.example_pair_ids.end());
    out.push_back(std::move(c));
  }
  // merged is already in (lhs, rhs) order.
  std::stable_sort(out.begin(), out.end(),
                   [](const CandidateRule &a, const CandidateRule &b) {
                     return a.support_count > b.support_count;
                   });
  return out;
}

std::vector<CandidateRule> filter_by_support(
    std::span<const CandidateRule> candidates, int min_support) {
  if (min_support < 1)
    throw InvalidArgument("min_support must be at least 1");
  std::vector<CandidateRule> out;
  for (const CandidateRule &c : candidates)
    if (c.support_count >= min_support)
      out.push_back(c);
  return out;
}

void write_rules(std::ostream &out, std::span<const CandidateRule> rules,
                 bool bidirectional) {
  for (const CandidateRule &r : rules)
    out << format_rule_line(literal_pattern(r.lhs), literal_pattern(r.rhs),
                            bidirectional, false, r.support_count)
        << '\n';
}

std::vector<AlignedPair> read_pairs(std::istream &in, const Tokenizer &tokenizer,
                                    const std::string &name) {
  std::vector<AlignedPair> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos)
      continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw ParseError(name, lineno, "expected left<TAB>right");
    AlignedPair p;
    p.left = tokenizer.tokenize(std::string_view(line).substr(0, tab)).seq;
    p.right = tokenizer.tokenize(std::string_view(line).substr(tab + 1)).seq;
    if (p.left.empty() || p.right.empty())
      throw ParseError(name, lineno, "both sides of a pair must be non-empty");
    p.pair_id = lineno;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace paraphrase

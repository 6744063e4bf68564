#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "paraphrase/text.h"

namespace paraphrase {

struct AlignedPair {
  TokenSeq left;
  TokenSeq right;
  std::size_t pair_id = 0;
};

struct CandidateRule {
  TokenSeq lhs;
  TokenSeq rhs;
  int support_count = 1;
  std::vector<std::size_t> example_pair_ids;

  friend bool operator==(const CandidateRule &,
                         const CandidateRule &) = default;
};

// A maximal differing region: left[left_begin, left_end) was replaced by
// right[right_begin, right_end). One side may be empty.
struct Hunk {
  std::size_t left_begin = 0;
  std::size_t left_end = 0;
  std::size_t right_begin = 0;
  std::size_t right_end = 0;
};

inline constexpr std::size_t kDefaultMaxHunk = 7;

// Token-level LCS diff with leftmost tie-breaking, as hunks in order.
std::vector<Hunk> diff_hunks(std::span<const Token> left,
                             std::span<const Token> right);

// One candidate per hunk; hunks with either side longer than max_hunk are
// dropped.
std::vector<CandidateRule> diff_align(const AlignedPair &pair,
                                      std::size_t max_hunk = kDefaultMaxHunk);

// Merges candidates from every pair by (lhs, rhs), summing support. Output
// is ordered by support descending, then lhs, then rhs.
std::vector<CandidateRule> harvest(std::span<const AlignedPair> pairs,
                                   std::size_t max_hunk = kDefaultMaxHunk);

std::vector<CandidateRule> filter_by_support(
    std::span<const CandidateRule> candidates, int min_support = 2);

// Rule-file lines with a count=N flag; `bidirectional` adds the bidir flag.
void write_rules(std::ostream &out, std::span<const CandidateRule> rules,
                 bool bidirectional = false);

// left<TAB>right per line; blank lines skipped. pair_id is the line number.
std::vector<AlignedPair> read_pairs(std::istream &in, const Tokenizer &tokenizer,
                                    const std::string &name = "<pairs>");

}  // namespace paraphrase

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "paraphrase/text.h"

namespace paraphrase {

// Occurrence counts of every contiguous window (length 0..max_n) of the
// k-padded corpus sentences, overlapping occurrences included. The empty
// window occurs len(padded) + 1 times per sentence, like any window length
// n occurs len(padded) - n + 1 times.
class NgramIndex {
 public:
  using Counts = std::unordered_map<TokenSeq, std::uint64_t, TokenSeqHash>;

  struct ContextKey {
    TokenSeq left;
    TokenSeq right;
    std::size_t filler_len;
    friend bool operator==(const ContextKey &, const ContextKey &) = default;
  };
  struct ContextKeyHash {
    std::size_t operator()(const ContextKey &key) const noexcept;
  };
  using ContextFillers =
      std::unordered_map<ContextKey, Counts, ContextKeyHash>;

  NgramIndex() = default;

  // Requires k >= 1 and max_n >= 2k + 1; throws InvalidArgument otherwise.
  static NgramIndex build(std::span<const Sentence> corpus, std::size_t k,
                          std::size_t max_n);

  std::size_t k() const { return k_; }
  std::size_t max_n() const { return max_n_; }
  std::uint64_t total_tokens() const { return total_tokens_; }
  const Counts &counts() const { return counts_; }

  // Exact count. Throws QueryTooLong when s.size() > max_n.
  std::uint64_t count(std::span<const Token> s) const;
  bool occurs(std::span<const Token> s) const { return count(s) >= 1; }

  // Number of window positions of length n, i.e. the sum of count() over
  // every sequence of that length.
  std::uint64_t windows_of_length(std::size_t n) const;

  // Observed fillers of length filler_len between left and right, both of
  // length k. Returns nullptr when the context never occurs.
  const Counts *fillers(std::span<const Token> left,
                        std::span<const Token> right,
                        std::size_t filler_len) const;

  // P(filler | left, right) over observed same-length fillers compared with
  // the flat relative frequency of filler. False when the context is unseen.
  bool context_gain(std::span<const Token> left, std::span<const Token> filler,
                    std::span<const Token> right) const;

  // count(s) / windows_of_length(len(s)) >= theta.
  bool relative_frequency_at_least(std::span<const Token> s,
                                   double theta) const;

  void save(std::ostream &out) const;
  void save(const std::string &path) const;
  static NgramIndex load(std::istream &in, const std::string &name = "<index>");
  static NgramIndex load(const std::string &path);

  friend bool operator==(const NgramIndex &a, const NgramIndex &b);

 private:
  void check_length(std::size_t n) const;
  void derive();

  std::size_t k_ = 1;
  std::size_t max_n_ = 3;
  std::uint64_t total_tokens_ = 0;
  Counts counts_;
  ContextFillers context_fillers_;
  std::vector<std::uint64_t> window_totals_;
};

// Serialized form of a token in index files: boundaries as <s> and </s>;
// words that would collide with those, or start with a backslash, get a
// backslash prefix.
std::string serialize_token(const Token &t);
Token deserialize_token(std::string_view text);

}  // namespace paraphrase

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace paraphrase {

// A morpheme-like unit. Word tokens carry a non-empty surface without
// whitespace; BOS and EOS are boundary markers that never come out of a
// tokenizer; a word whose surface is "<s>" is still a word.
class Token {
 public:
  enum class Kind : std::uint8_t { kWord, kBos, kEos };

  // Throws InvalidArgument for an empty surface or one containing whitespace.
  static Token word(std::string surface);
  static Token bos() { return Token(Kind::kBos, "<s>"); }
  static Token eos() { return Token(Kind::kEos, "</s>"); }

  Kind kind() const { return kind_; }
  bool is_word() const { return kind_ == Kind::kWord; }
  bool is_boundary() const { return kind_ != Kind::kWord; }
  const std::string &surface() const { return surface_; }

  friend bool operator==(const Token &, const Token &) = default;
  friend auto operator<=>(const Token &, const Token &) = default;

 private:
  Token(Kind kind, std::string surface)
      : kind_(kind), surface_(std::move(surface)) {}

  Kind kind_;
  std::string surface_;
};

using TokenSeq = std::vector<Token>;

struct TokenHash {
  std::size_t operator()(const Token &t) const noexcept;
};

struct TokenSeqHash {
  std::size_t operator()(const TokenSeq &s) const noexcept;
};

TokenSeq concat(std::span<const Token> a, std::span<const Token> b);
TokenSeq concat(std::span<const Token> a, std::span<const Token> b,
                std::span<const Token> c);

// Builds a word sequence from space separated surfaces. Handy for tests
// and fixtures; does no punctuation splitting.
TokenSeq words(std::string_view text);

// Surfaces joined by single spaces; boundaries print as <s> and </s>.
std::string to_string(std::span<const Token> seq);

struct Sentence {
  TokenSeq seq;
  std::optional<std::string> source_id;

  friend bool operator==(const Sentence &, const Sentence &) = default;
};

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual Sentence tokenize(std::string_view text) const = 0;
};

// Whitespace split, then leading and trailing characters from .,;:?!"()
// are peeled off into their own tokens.
class DefaultTokenizer final : public Tokenizer {
 public:
  Sentence tokenize(std::string_view text) const override;
};

Sentence tokenize(std::string_view text);
std::string detokenize(std::span<const Token> seq);

// BOS x k ++ seq ++ EOS x k. k == 0 throws InvalidArgument.
TokenSeq pad(std::span<const Token> seq, std::size_t k);

// One sentence per line; blank lines are skipped. source_id is
// "<name>:<line>".
std::vector<Sentence> read_corpus(std::istream &in, const Tokenizer &tokenizer,
                                  std::string_view name = "");
std::vector<Sentence> read_corpus_file(const std::string &path,
                                       const Tokenizer &tokenizer);

}  // namespace paraphrase

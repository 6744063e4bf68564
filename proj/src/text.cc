#include "paraphrase/text.h"

#include <fstream>
#include <istream>

#include "paraphrase/error.h"

namespace paraphrase {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool is_split_punct(char c) {
  switch (c) {
    case '.':
    case ',':
    case ';':
    case ':':
    case '?':
    case '!':
    case '"':
    case '(':
    case ')':
      return true;
    default:
      return false;
  }
}

void hash_combine(std::size_t &seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

Token Token::word(std::string surface) {
  if (surface.empty())
    throw InvalidArgument("token surface must not be empty");
  for (char c : surface)
    if (is_space(c))
      throw InvalidArgument("token surface contains whitespace: '" + surface +
                            "'");
  return Token(Kind::kWord, std::move(surface));
}

std::size_t TokenHash::operator()(const Token &t) const noexcept {
  std::size_t seed = std::hash<std::string>{}(t.surface());
  hash_combine(seed, static_cast<std::size_t>(t.kind()));
  return seed;
}

std::size_t TokenSeqHash::operator()(const TokenSeq &s) const noexcept {
  std::size_t seed = s.size();
  TokenHash h;
  for (const Token &t : s)
    hash_combine(seed, h(t));
  return seed;
}

TokenSeq concat(std::span<const Token> a, std::span<const Token> b) {
  TokenSeq out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

TokenSeq concat(std::span<const Token> a, std::span<const Token> b,
                std::span<const Token> c) {
  TokenSeq out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

TokenSeq words(std::string_view text) {
  TokenSeq out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i]))
      ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j]))
      ++j;
    if (j > i)
      out.push_back(Token::word(std::string(text.substr(i, j - i))));
    i = j;
  }
  return out;
}

std::string to_string(std::span<const Token> seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i)
      out += ' ';
    out += seq[i].surface();
  }
  return out;
}

Sentence DefaultTokenizer::tokenize(std::string_view text) const {
  Sentence sentence;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i]))
      ++i;
    std::size_t end = i;
    while (end < text.size() && !is_space(text[end]))
      ++end;
    if (end == i)
      break;

    std::string_view chunk = text.substr(i, end - i);
    i = end;

    std::size_t lead = 0;
    while (lead < chunk.size() && is_split_punct(chunk[lead]))
      ++lead;
    std::size_t trail = chunk.size();
    while (trail > lead && is_split_punct(chunk[trail - 1]))
      --trail;

    for (std::size_t p = 0; p < lead; ++p)
      sentence.seq.push_back(Token::word(std::string(1, chunk[p])));
    if (trail > lead)
      sentence.seq.push_back(
          Token::word(std::string(chunk.substr(lead, trail - lead))));
    for (std::size_t p = trail; p < chunk.size(); ++p)
      sentence.seq.push_back(Token::word(std::string(1, chunk[p])));
  }
  return sentence;
}

Sentence tokenize(std::string_view text) {
  return DefaultTokenizer{}.tokenize(text);
}

std::string detokenize(std::span<const Token> seq) { return to_string(seq); }

TokenSeq pad(std::span<const Token> seq, std::size_t k) {
  if (k == 0)
    throw InvalidArgument("pad width k must be at least 1");
  TokenSeq out;
  out.reserve(seq.size() + 2 * k);
  out.insert(out.end(), k, Token::bos());
  out.insert(out.end(), seq.begin(), seq.end());
  out.insert(out.end(), k, Token::eos());
  return out;
}

std::vector<Sentence> read_corpus(std::istream &in, const Tokenizer &tokenizer,
                                  std::string_view name) {
  std::vector<Sentence> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    Sentence s = tokenizer.tokenize(line);
    if (s.seq.empty())
      continue;
    s.source_id = std::string(name) + ":" + std::to_string(lineno);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sentence> read_corpus_file(const std::string &path,
                                       const Tokenizer &tokenizer) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open corpus file: " + path);
  return read_corpus(in, tokenizer, path);
}

}  // namespace paraphrase

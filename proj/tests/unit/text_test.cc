#include <doctest.h>

#include <sstream>

#include "paraphrase/error.h"
#include "paraphrase/text.h"
#include "support/oracles.h"

using namespace paraphrase;

namespace {

std::vector<std::string> surfaces(const TokenSeq &seq) {
  std::vector<std::string> out;
  for (const Token &t : seq)
    out.push_back(t.surface());
  return out;
}

}  // namespace

TEST_CASE("tokenize splits on whitespace") {
  CHECK(tokenize("").seq.empty());
  CHECK(tokenize("   \t ").seq.empty());
  CHECK(surfaces(tokenize("X is Y").seq) ==
        std::vector<std::string>{"X", "is", "Y"});
  CHECK(surfaces(tokenize("liberty and democracy").seq) ==
        std::vector<std::string>{"liberty", "and", "democracy"});
}

TEST_CASE("tokenize peels leading and trailing punctuation") {
  CHECK(surfaces(tokenize("New York State?").seq) ==
        std::vector<std::string>{"New", "York", "State", "?"});
  CHECK(surfaces(tokenize("(liberty and democracy)").seq) ==
        std::vector<std::string>{"(", "liberty", "and", "democracy", ")"});
  CHECK(surfaces(tokenize("residents, and \"corn\".").seq) ==
        std::vector<std::string>{"residents", ",", "and", "\"", "corn", "\"",
                                 "."});
  // Interior punctuation and other symbols stay inside the token.
  CHECK(surfaces(tokenize("U.S. -kara X-san").seq) ==
        std::vector<std::string>{"U.S", ".", "-kara", "X-san"});
  CHECK(surfaces(tokenize("...").seq) ==
        std::vector<std::string>{".", ".", "."});
}

TEST_CASE("tokenize never emits boundary tokens") {
  for (const char *text : {"<s> </s>", "a <s> b", "</s>"}) {
    for (const Token &t : tokenize(text).seq) {
      CHECK(t.is_word());
      CHECK(t != Token::bos());
      CHECK(t != Token::eos());
    }
  }
}

TEST_CASE("tokenize is pure and detokenize only normalizes whitespace") {
  const std::string text = "  Farming  is\tthe most   common occupation ";
  CHECK(tokenize(text) == tokenize(text));
  CHECK(detokenize(tokenize(text).seq) ==
        "Farming is the most common occupation");
  CHECK(tokenize(detokenize(tokenize(text).seq)) == tokenize(text));
}

TEST_CASE("word tokens reject empty or whitespace surfaces") {
  CHECK_THROWS_AS(Token::word(""), InvalidArgument);
  CHECK_THROWS_AS(Token::word("a b"), InvalidArgument);
  CHECK(Token::word("<s>") != Token::bos());
}

TEST_CASE("pad adds k boundaries on each side") {
  CHECK(pad(TokenSeq{}, 2) ==
        TokenSeq{Token::bos(), Token::bos(), Token::eos(), Token::eos()});
  CHECK(pad(words("a"), 1) ==
        TokenSeq{Token::bos(), Token::word("a"), Token::eos()});
  CHECK(pad(words("a b"), 2) ==
        TokenSeq{Token::bos(), Token::bos(), Token::word("a"),
                 Token::word("b"), Token::eos(), Token::eos()});
  CHECK_THROWS_AS(pad(words("a"), 0), InvalidArgument);
}

TEST_CASE("pad length property") {
  oracle::Generator gen(7, 5);
  for (int i = 0; i < 200; ++i) {
    TokenSeq s = gen.sentence(0, 10);
    std::size_t k = gen.uniform(1, 4);
    CHECK(pad(s, k).size() == s.size() + 2 * k);
  }
}

TEST_CASE("concat is associative with empty identity") {
  TokenSeq a = words("a b"), b = words("c"), c = words("d e");
  CHECK(concat(concat(a, b), c) == concat(a, concat(b, c)));
  CHECK(concat(a, TokenSeq{}) == a);
  CHECK(concat(TokenSeq{}, a) == a);
  CHECK(concat(a, b, c) == words("a b c d e"));
}

TEST_CASE("read_corpus skips blank lines and records source ids") {
  std::istringstream in("one line\n\n  \nsecond line.\n");
  auto corpus = read_corpus(in, DefaultTokenizer{}, "c.txt");
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].source_id == "c.txt:1");
  CHECK(corpus[1].source_id == "c.txt:4");
  CHECK(surfaces(corpus[1].seq) ==
        std::vector<std::string>{"second", "line", "."});
}

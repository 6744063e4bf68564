#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "paraphrase/criteria.h"
#include "paraphrase/error.h"
#include "paraphrase/similarity.h"
#include "support/oracles.h"

using namespace paraphrase;

namespace {

std::vector<Sentence> corpus_of(std::initializer_list<const char *> lines) {
  std::vector<Sentence> out;
  for (const char *l : lines)
    out.push_back(Sentence{words(l), std::nullopt});
  return out;
}

std::vector<TokenSeq> bodies(const std::vector<Sentence> &c) {
  std::vector<TokenSeq> out;
  for (const Sentence &s : c)
    out.push_back(s.seq);
  return out;
}

RuleSet rule_set(const std::string &text) {
  std::istringstream in(text);
  return RuleSet(parse_rules(in));
}

// All candidates at pos for `body` under k.
std::vector<Candidate> candidates_at(const RuleSet &rules, const TokenSeq &body,
                                     std::size_t pos, std::size_t k) {
  TokenSeq padded = pad(body, k);
  std::vector<Candidate> out;
  for (Match &m : rules.matches_at(body, pos))
    out.push_back(make_candidate(padded, k, std::move(m)));
  return out;
}

Candidate one_candidate(const RuleSet &rules, const TokenSeq &body,
                        std::size_t pos, std::size_t k) {
  auto cs = candidates_at(rules, body, pos, k);
  REQUIRE(cs.size() == 1);
  return cs.front();
}

}  // namespace

TEST_CASE("candidates carry k-gram context from the padded sequence") {
  RuleSet rules = rule_set("-kara\t\t\n");
  Candidate c = one_candidate(
      rules, words("kokonoka -kara -no kankoku houmon -dewa"), 1, 2);
  CHECK(c.s1 == TokenSeq{Token::bos(), Token::word("kokonoka")});
  CHECK(c.s2 == words("-no kankoku"));
  CHECK(c.reduction == 1);
  CHECK(c.rewritten_window() ==
        TokenSeq{Token::bos(), Token::word("kokonoka"), Token::word("-no"),
                 Token::word("kankoku")});
}

TEST_CASE("length criterion ranks by reduction") {
  RuleSet rules = rule_set("a\ta\na\t\t\na b\t\t\n");
  NgramIndex index = NgramIndex::build({}, 1, 5);
  LengthCriterion length(index);
  auto cs = candidates_at(rules, words("a b c"), 0, 1);
  REQUIRE(cs.size() == 3);
  length.rank(cs);
  CHECK(cs[0].reduction == 2);
  CHECK(cs[1].reduction == 1);
  CHECK(cs[2].reduction == 0);
}

TEST_CASE("ranking breaks ties by span length then rule id") {
  RuleSet rules = rule_set("b\tc\na\tb\na b\tc d\n");
  NgramIndex index = NgramIndex::build({}, 1, 5);
  auto cs = candidates_at(rules, words("a b"), 0, 1);
  REQUIRE(cs.size() == 2);
  LengthCriterion(index).rank(cs);
  CHECK(cs[0].match.rule_id == 2);  // longer span, same reduction
  CHECK(cs[1].match.rule_id == 1);
}

TEST_CASE("ranking does not depend on input order") {
  RuleSet rules =
      rule_set("$X\t\t\n$X w1\t$X\nw0\tw1\n\tw2\nw0 $X\tw1\nw0\tw2 w2\n");
  NgramIndex index = NgramIndex::build({}, 1, 9);
  LengthCriterion length(index);
  oracle::Generator gen(21, 3);
  std::mt19937 shuffle_rng(4);
  for (int i = 0; i < 100; ++i) {
    TokenSeq body = gen.sentence(1, 6);
    auto cs = candidates_at(rules, body, 0, 1);
    auto sorted = cs;
    length.rank(sorted);
    for (int s = 0; s < 5; ++s) {
      std::shuffle(cs.begin(), cs.end(), shuffle_rng);
      auto again = cs;
      length.rank(again);
      REQUIRE(again.size() == sorted.size());
      for (std::size_t j = 0; j < again.size(); ++j)
        CHECK(again[j].match == sorted[j].match);
    }
  }
}

TEST_CASE("length criterion accepts when the compressed window occurs") {
  auto corpus = corpus_of({"kokonoka -no kankoku houmon -de"});
  NgramIndex index = NgramIndex::build(corpus, 2, 7);
  LengthCriterion length(index);
  RuleSet rules = rule_set("-kara\t\t\n");
  Candidate c = one_candidate(
      rules, words("kokonoka -kara -no kankoku houmon -dewa"), 1, 2);
  CHECK(oracle::brute_count(bodies(corpus), 2, c.rewritten_window()) >= 1);
  CHECK(length.accept(c));

  NgramIndex empty = NgramIndex::build({}, 2, 7);
  CHECK_FALSE(LengthCriterion(empty).accept(c));
}

TEST_CASE("frequency criterion prefers the more frequent window") {
  auto corpus = corpus_of({"shijiritsu no kaifuku", "shijiritsu no kaifuku",
                           "shijiritsu no kaifuku", "shijiritsu kaifuku"});
  NgramIndex index = NgramIndex::build(corpus, 2, 7);
  FrequencyCriterion freq(index);
  RuleSet rules = rule_set("\tno\n");
  Candidate c = one_candidate(rules, words("shijiritsu kaifuku"), 1, 2);
  CHECK(oracle::brute_count(bodies(corpus), 2, c.rewritten_window()) == 3);
  CHECK(oracle::brute_count(bodies(corpus), 2, c.original_window()) == 1);
  CHECK(freq.accept(c));
  CHECK(freq.explain(c) == "reduction=-1 before=1 after=3");

  // At the sentence start the plain form is the only one seen.
  CHECK_FALSE(freq.accept(one_candidate(rules, words("shijiritsu kaifuku"), 0, 2)));
}

TEST_CASE("frequency criterion needs a strict increase") {
  NgramIndex index = NgramIndex::build(corpus_of({"a x b", "a y b"}), 1, 4);
  FrequencyCriterion freq(index);
  RuleSet rules = rule_set("x\ty\n");
  CHECK_FALSE(freq.accept(one_candidate(rules, words("a x b"), 1, 1)));

  NgramIndex empty = NgramIndex::build({}, 1, 4);
  CHECK_FALSE(FrequencyCriterion(empty).accept(
      one_candidate(rules, words("a x b"), 1, 1)));
}

TEST_CASE("grammaticality checks") {
  RuleSet rules = rule_set("x\tf\n");
  NgramIndex empty = NgramIndex::build({}, 1, 3);
  Candidate c0 = one_candidate(rules, words("a x b"), 1, 1);
  CHECK_FALSE(OccursCheck(empty).accept(c0));
  CHECK_FALSE(ThresholdCheck(empty, 0.1).accept(c0));
  CHECK_FALSE(ContextGainCheck(empty).accept(c0));

  // "a f b" once among 3 sentences; 'f' appears only inside (a, b).
  auto corpus = corpus_of({"a f b", "a g b", "p q r"});
  NgramIndex index = NgramIndex::build(corpus, 1, 3);
  Candidate c = one_candidate(rules, words("a x b"), 1, 1);
  CHECK(OccursCheck(index).accept(c));
  // 9 trigram windows; "a f b" is 1 of them.
  CHECK(index.windows_of_length(3) == 9);
  CHECK(ThresholdCheck(index, 1.0 / 9).accept(c));
  CHECK_FALSE(ThresholdCheck(index, 0.12).accept(c));
  CHECK(ContextGainCheck(index).accept(c));
}

TEST_CASE("grammar checks compose with ranking criteria") {
  auto corpus = corpus_of({"a f b", "a f b", "f f f f f f f f f f f f"});
  NgramIndex index = NgramIndex::build(corpus, 1, 3);
  RuleSet rules = rule_set("x\tf\n");
  Candidate c = one_candidate(rules, words("a x b"), 1, 1);
  auto plain = make_criterion("length", "none", index);
  auto with_gain = make_criterion("length", "context-gain", index);
  CHECK(plain->accept(c));
  CHECK(with_gain->accept(c));
  auto strict = make_criterion("frequency", "threshold:0.5", index);
  CHECK(strict->name() == "frequency+threshold:0.5");
  CHECK_FALSE(strict->accept(c));
  CHECK(strict->reads_original_window());
}

TEST_CASE("make_criterion rejects unknown names") {
  NgramIndex index = NgramIndex::build({}, 1, 3);
  CHECK_THROWS_AS(make_criterion("shortest", "none", index), ConfigError);
  CHECK_THROWS_AS(make_criterion("length", "sometimes", index), ConfigError);
  CHECK_THROWS_AS(make_criterion("length", "threshold:x", index), ConfigError);
  CHECK_THROWS_AS(make_criterion("length", "threshold:2", index), ConfigError);
}

TEST_CASE("similarity basics") {
  CHECK(similarity(words("a b c d"), words("a b c d")) == 4);
  CHECK(similarity(words("a b"), words("c d")) == 0);
  CHECK(similarity(TokenSeq{}, words("a")) == 0);
  CHECK(similarity(words("X is Y"), words("X is Y")) == 2);
  CHECK(similarity(words("a X c"), words("a b c")) == 2);
}

TEST_CASE("similarity matches the LCS oracle and its bounds") {
  oracle::Generator gen(17, 4);
  const Token x = Token::word("X");
  for (int i = 0; i < 300; ++i) {
    TokenSeq p = gen.sentence(0, 9), q = gen.sentence(0, 9);
    std::size_t s = similarity(p, q);
    CHECK(s == oracle::lcs(p, q));
    CHECK(s == similarity(q, p));
    CHECK(s <= std::min(p.size(), q.size()));
    CHECK(align(p, q).score() == s);
    if (gen.uniform(0, 1) && !p.empty())
      p[gen.uniform(0, p.size() - 1)] = x;
    CHECK(similarity(p, q) == oracle::lcs(p, q, &x));
  }
}

TEST_CASE("similarity of the final question and support sentence") {
  TokenSeq question = tokenize(
      "X is the most general occupation among the residents of central and "
      "northern New York State ?").seq;
  TokenSeq data = tokenize(
      "Farming is the most general occupation among these residents of New "
      "York State").seq;
  // Oracle: memoized LCS over the 17 x 14 pair.
  std::size_t expected = oracle::lcs(question, data, &wildcard());
  CHECK(expected == 11);
  CHECK(similarity(question, data) == expected);
  auto a = align(question, data);
  REQUIRE(!a.pairs.empty());
  CHECK(a.pairs.front() == std::pair<std::size_t, std::size_t>{1, 1});
}

#include <doctest.h>

#include <sstream>

#include "paraphrase/engine.h"
#include "paraphrase/error.h"
#include "support/oracles.h"

using namespace paraphrase;

namespace {

const std::string kData = PARAPHRASE_TEST_DATA;

std::vector<Sentence> load(const std::string &file) {
  return read_corpus_file(kData + "/" + file, DefaultTokenizer());
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

struct Run {
  std::vector<Sentence> corpus;
  NgramIndex index;
  RuleSet rules;
  std::unique_ptr<Criterion> criterion;

  Run(const std::string &corpus_file, const std::string &rules_file,
      const std::string &name, std::size_t k = 2)
      : corpus(load(corpus_file)),
        index(NgramIndex::build(corpus, k, 2 * k + 2)),
        rules(load_rules(kData + "/" + rules_file)),
        criterion(make_criterion(name, "none", index)) {}

  std::vector<RewriteTrace> over(const std::string &file,
                                 EngineOptions opts = {}) {
    std::vector<RewriteTrace> out;
    for (const Sentence &s : load(file))
      out.push_back(greedy_transform(s, rules, *criterion, index, index.k(), opts));
    return out;
  }
};

// Recomputes every accepted window with a plain scan of the corpus.
void audit(const RewriteTrace &t, const std::vector<TokenSeq> &corpus,
           std::size_t k, bool frequency) {
  for (const RewriteStep &s : t.steps) {
    auto after = oracle::brute_count(corpus, k, concat(s.s1, s.replacement, s.s2));
    if (frequency) {
      auto before = oracle::brute_count(corpus, k, concat(s.s1, s.matched, s.s2));
      CHECK(after > before);
    } else {
      CHECK(after >= 1);
    }
  }
}

}  // namespace

TEST_CASE("no matching rule leaves the sentence unchanged") {
  NgramIndex index = NgramIndex::build({}, 2, 6);
  RuleSet rules = rule_set("zzz\t\t\n");
  auto crit = make_criterion("length", "none", index);
  Sentence s{words("a b c"), std::nullopt};
  auto t = greedy_transform(s, rules, *crit, index, 2);
  CHECK(t.steps.empty());
  CHECK(t.output == s.seq);
}

TEST_CASE("compression by deletion") {
  Run run("newspaper_toy.txt", "compress_rules.tsv", "length");
  auto traces = run.over("compress_input.txt");
  std::vector<std::string> out;
  for (auto &t : traces)
    out.push_back(detokenize(t.output));
  CHECK(out == std::vector<std::string>{
                   "kokonoka -no kankoku houmon -dewa",
                   "rekishi -no naka -de",
                   "juuoku doru no tuika sochi",
                   "jiyuu minshushugi",
                   "X-san wo kouho to-shite youritsu wo kimeta",
               });
  for (auto &t : traces) {
    CHECK(t.output.size() <= t.input.seq.size());
    CHECK(!t.steps.empty());
    audit(t, bodies(run.corpus), 2, false);
  }
}

TEST_CASE("polishing by frequency") {
  Run run("newspaper_toy.txt", "polish_rules.tsv", "frequency");
  auto traces = run.over("polish_input.txt");
  REQUIRE(traces.size() == 2);
  CHECK(detokenize(traces[0].output) == "kazoku ya yuujin-ra to sugosu");
  CHECK(detokenize(traces[1].output) == "shijiritsu no kaifuku");
  for (auto &t : traces) {
    CHECK(t.steps.size() == 1);
    audit(t, bodies(run.corpus), 2, true);
  }
}

TEST_CASE("spoken-style insertion needs the cascade") {
  Run spoken("spoken_toy.txt", "spoken_rules.tsv", "frequency");
  auto cascaded = spoken.over("spoken_input.txt", EngineOptions{true});
  REQUIRE(cascaded.size() == 3);
  CHECK(detokenize(cascaded[0].output) ==
        "sono teigi -wo riyou suru toiu-koto -ga ma kangaerareru");
  CHECK(detokenize(cascaded[1].output) ==
        "dougi hyougen -wo tyushutsu suru toiu koto -wo kokoromiru .");
  CHECK(detokenize(cascaded[2].output) ==
        "hindo -de souto -shita kekka toiu -no -wo hyou -ni shimesu .");
  for (auto &t : cascaded) {
    CHECK(t.steps.size() == 1);
    audit(t, bodies(spoken.corpus), 2, true);
  }

  // Only "ma" is ever tested without the cascade.
  auto top_only = spoken.over("spoken_input.txt");
  CHECK(top_only[0].steps.size() == 1);
  CHECK(top_only[1].steps.empty());
  CHECK(top_only[2].steps.empty());

  Run written("written_toy.txt", "spoken_rules.tsv", "frequency");
  for (auto &t : written.over("spoken_input.txt", EngineOptions{true}))
    CHECK(t.steps.empty());
}

TEST_CASE("insertions terminate even when always accepted") {
  // Every window containing "f" is more frequent than its absence.
  std::vector<Sentence> corpus;
  for (int i = 0; i < 4; ++i)
    corpus.push_back(Sentence{words("f f f f f f f f"), std::nullopt});
  NgramIndex index = NgramIndex::build(corpus, 1, 4);
  RuleSet rules = rule_set("\tf\n");
  auto crit = make_criterion("length", "none", index);
  auto t = greedy_transform(Sentence{words("f f"), std::nullopt}, rules, *crit,
                            index, 1);
  CHECK(t.output.size() <= 2 + 3);
  CHECK(replay(t.input.seq, t.steps) == t.output);
}

TEST_CASE("trace replay and determinism on random data") {
  oracle::Generator gen(99, 5);
  std::vector<Sentence> corpus;
  for (int i = 0; i < 200; ++i)
    corpus.push_back(Sentence{gen.sentence(2, 10), std::nullopt});
  auto plain = bodies(corpus);
  RuleSet rules = rule_set(
      "w0\t\t\nw1 w2\t\t\nw3 $A\t$A\n$A w4 $B\t$A $B\nw2\tw3\n\tw1\n");
  NgramIndex index = NgramIndex::build(
      corpus, 1, 2 + std::max(rules.max_lhs_length(), rules.max_rhs_length()));
  for (std::string name : {"length", "frequency"}) {
    auto crit = make_criterion(name, "none", index);
    check_index_capacity(rules, *crit, index, 1);
    for (int i = 0; i < 100; ++i) {
      Sentence s{gen.sentence(1, 12), std::nullopt};
      auto t = greedy_transform(s, rules, *crit, index, 1);
      auto again = greedy_transform(s, rules, *crit, index, 1);
      CHECK(t.output == again.output);
      CHECK(t.steps.size() == again.steps.size());
      CHECK(replay(s.seq, t.steps) == t.output);
      audit(t, plain, 1, name == "frequency");
    }
  }
}

TEST_CASE("deletion-only rules never lengthen") {
  oracle::Generator gen(5, 4);
  std::vector<Sentence> corpus;
  for (int i = 0; i < 100; ++i)
    corpus.push_back(Sentence{gen.sentence(1, 8), std::nullopt});
  RuleSet rules = rule_set("w0\t\t\nw1 w1\t\t\nw2 $A w3\t$A\n");
  NgramIndex index = NgramIndex::build(corpus, 2, 4 + rules.max_rhs_length());
  auto crit = make_criterion("length", "none", index);
  for (int i = 0; i < 200; ++i) {
    Sentence s{gen.sentence(1, 10), std::nullopt};
    auto t = greedy_transform(s, rules, *crit, index, 2);
    CHECK(t.output.size() <= s.seq.size());
  }
}

TEST_CASE("replay rejects a step that does not fit") {
  RewriteStep step;
  step.position = 1;
  step.matched = words("q");
  step.replacement = {};
  CHECK_THROWS_AS(replay(words("a b"), {step}), InvariantViolation);
}

TEST_CASE("index configuration is checked") {
  NgramIndex index = NgramIndex::build({}, 2, 5);
  RuleSet rules = rule_set("a b c\tx\n");
  auto length = make_criterion("length", "none", index);
  auto freq = make_criterion("frequency", "none", index);
  Sentence s{words("a b c"), std::nullopt};
  CHECK_THROWS_AS(greedy_transform(s, rules, *length, index, 1), ConfigError);
  CHECK_THROWS_AS(check_index_capacity(rules, *length, index, 1), ConfigError);
  CHECK_NOTHROW(check_index_capacity(rules, *length, index, 2));
  CHECK_THROWS_AS(check_index_capacity(rules, *freq, index, 2), ConfigError);
}

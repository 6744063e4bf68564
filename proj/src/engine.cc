#include "paraphrase/engine.h"

#include <algorithm>

#include "paraphrase/error.h"

namespace paraphrase {

void check_index_capacity(const RuleSet &rules, const Criterion &criterion,
                          const NgramIndex &index, std::size_t k) {
  if (k != index.k())
    throw ConfigError("context width k=" + std::to_string(k) +
                      " does not match index k=" + std::to_string(index.k()));
  std::size_t longest = rules.max_rhs_length();
  if (criterion.reads_original_window())
    longest = std::max(longest, rules.max_lhs_length());
  if (2 * k + longest > index.max_n())
    throw ConfigError("index max_n=" + std::to_string(index.max_n()) +
                      " is too small for these rules; need at least " +
                      std::to_string(2 * k + longest) +
                      " (rebuild with --max-n or --rules)");
}

RewriteTrace greedy_transform(const Sentence &sentence, const RuleSet &rules,
                              const Criterion &criterion,
                              const NgramIndex &index, std::size_t k,
                              const EngineOptions &options) {
  if (k != index.k())
    throw ConfigError("context width k=" + std::to_string(k) +
                      " does not match index k=" + std::to_string(index.k()));

  RewriteTrace trace;
  trace.input = sentence;
  TokenSeq seq = sentence.seq;
  std::size_t pos = 0;
  bool after_rewrite = false;

  while (pos <= seq.size()) {
    std::vector<Match> matches = rules.matches_at(seq, pos);
    if (after_rewrite)
      std::erase_if(matches, [](const Match &m) { return m.matched_len == 0; });

    std::vector<Candidate> candidates;
    if (!matches.empty()) {
      TokenSeq padded = pad(seq, k);
      candidates.reserve(matches.size());
      for (Match &m : matches)
        candidates.push_back(make_candidate(padded, k, std::move(m)));
      criterion.rank(candidates);
    }

    const Candidate *chosen = nullptr;
    for (const Candidate &c : candidates) {
      if (criterion.accept(c)) {
        chosen = &c;
        break;
      }
      if (!options.cascade)
        break;
    }

    if (!chosen) {
      ++pos;
      after_rewrite = false;
      continue;
    }

    RewriteStep step;
    step.position = pos;
    step.rule_id = chosen->match.rule_id;
    step.matched = chosen->match.span;
    step.replacement = chosen->match.replacement;
    step.s1 = chosen->s1;
    step.s2 = chosen->s2;
    step.reduction = chosen->reduction;
    step.score_info = criterion.explain(*chosen);
    seq = apply_match(seq, chosen->match);
    pos += step.replacement.size();
    after_rewrite = true;
    trace.steps.push_back(std::move(step));
  }

  trace.output = std::move(seq);
  return trace;
}

TokenSeq replay(const TokenSeq &input, const std::vector<RewriteStep> &steps) {
  TokenSeq seq = input;
  for (const RewriteStep &s : steps) {
    Match m;
    m.rule_id = s.rule_id;
    m.start = s.position;
    m.matched_len = s.matched.size();
    m.span = s.matched;
    m.replacement = s.replacement;
    seq = apply_match(seq, m);
  }
  return seq;
}

}  // namespace paraphrase

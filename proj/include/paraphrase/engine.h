#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "paraphrase/criteria.h"
#include "paraphrase/ngram_index.h"
#include "paraphrase/rules.h"
#include "paraphrase/text.h"

namespace paraphrase {

struct RewriteStep {
  // Body position of the rewrite in the sequence as it was at that step.
  std::size_t position = 0;
  int rule_id = 0;
  TokenSeq matched;
  TokenSeq replacement;
  TokenSeq s1;
  TokenSeq s2;
  long reduction = 0;
  std::string score_info;
};

struct RewriteTrace {
  Sentence input;
  std::vector<RewriteStep> steps;
  TokenSeq output;
};

struct EngineOptions {
  // Try ranked candidates until one is accepted instead of testing only the
  // top one.
  bool cascade = false;
};

// Throws ConfigError when the index was built with a different k, or its
// max_n cannot hold every window the criterion needs to count.
void check_index_capacity(const RuleSet &rules, const Criterion &criterion,
                          const NgramIndex &index, std::size_t k);

// Left-to-right rewrite pass. At each position the matches are ranked by the
// criterion and the top one is tested; an accepted rewrite resumes the scan
// right after its replacement, otherwise the scan moves one token on. An
// insertion (empty lhs) never fires at the position where the previous
// rewrite ended, so the pass terminates.
RewriteTrace greedy_transform(const Sentence &sentence, const RuleSet &rules,
                              const Criterion &criterion,
                              const NgramIndex &index, std::size_t k,
                              const EngineOptions &options = {});

// Applies recorded steps to `input`. Throws InvariantViolation if a step
// does not fit.
TokenSeq replay(const TokenSeq &input, const std::vector<RewriteStep> &steps);

}  // namespace paraphrase

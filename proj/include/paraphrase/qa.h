#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "paraphrase/rules.h"
#include "paraphrase/text.h"

namespace paraphrase {

enum class Side { kQuestion, kData };

const char *side_name(Side side);

struct QaIteration {
  std::size_t similarity = 0;
  Side side = Side::kQuestion;
  int rule_id = 0;
  std::size_t position = 0;
  // The rewritten side before and after this iteration.
  TokenSeq before;
  TokenSeq after;
};

struct HillClimb {
  TokenSeq question;
  TokenSeq data;
  std::size_t initial_similarity = 0;
  std::size_t final_similarity = 0;
  std::vector<QaIteration> iterations;
};

struct QaOptions {
  std::size_t top_n = 3;
};

struct QaResult {
  bool found = false;
  TokenSeq question;  // normalized and rewritten
  TokenSeq answer;
  Sentence support;
  std::size_t final_similarity = 0;
  std::vector<QaIteration> iterations;
  // Index of the supporting sentence in the input documents.
  std::size_t document = 0;
};

// One left-to-right pass applying, at each position, the lowest-id matching
// qrule. Throws NormalizationError if the result has no wildcard token.
TokenSeq normalize_question(const TokenSeq &question, const RuleSet &qrules);

// Repeatedly applies the single rewrite of either sentence that raises
// similarity the most, until none raises it. Question-side rewrites that
// would drop the wildcard are not considered. Ties go to the data side,
// then the smaller rule id, then the leftmost position.
HillClimb hill_climb(const TokenSeq &question, const TokenSeq &data,
                     const RuleSet &rules);

// Tokens of `data` aligned opposite the first wildcard of `question`; empty
// when the question has no wildcard or the gap is empty.
TokenSeq extract_answer(const TokenSeq &question, const TokenSeq &data);

// Normalizes the question, keeps the top_n documents by similarity (> 0),
// hill-climbs each, and reads the answer off the best final pair.
QaResult qa_answer(const Sentence &question,
                   std::span<const Sentence> documents, const RuleSet &qrules,
                   const RuleSet &rules, const QaOptions &options = {});

}  // namespace paraphrase

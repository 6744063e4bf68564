#include "paraphrase/qa.h"

#include <algorithm>
#include <numeric>

#include "paraphrase/error.h"
#include "paraphrase/similarity.h"

namespace paraphrase {
namespace {

bool has_wildcard(const TokenSeq &seq) {
  return std::find(seq.begin(), seq.end(), wildcard()) != seq.end();
}

struct Move {
  std::size_t similarity;
  Side side;
  int rule_id;
  std::size_t position;
  TokenSeq result;
};

// True if a should be preferred over b at equal similarity.
bool tie_break(const Move &a, const Move &b) {
  if (a.side != b.side)
    return a.side == Side::kData;
  if (a.rule_id != b.rule_id)
    return a.rule_id < b.rule_id;
  return a.position < b.position;
}

}  // namespace

const char *side_name(Side side) {
  return side == Side::kQuestion ? "question" : "data";
}

TokenSeq normalize_question(const TokenSeq &question, const RuleSet &qrules) {
  TokenSeq seq = question;
  std::size_t pos = 0;
  bool after_rewrite = false;
  while (pos <= seq.size()) {
    std::vector<Match> matches = qrules.matches_at(seq, pos);
    if (after_rewrite)
      std::erase_if(matches, [](const Match &m) { return m.matched_len == 0; });
    if (matches.empty()) {
      ++pos;
      after_rewrite = false;
      continue;
    }
    // matches_at orders by rule id; prefer the longest span of that rule.
    auto best = matches.begin();
    for (auto it = matches.begin(); it != matches.end(); ++it)
      if (it->rule_id == best->rule_id && it->matched_len > best->matched_len)
        best = it;
    seq = apply_match(seq, *best);
    pos += best->replacement.size();
    after_rewrite = true;
  }
  if (!has_wildcard(seq))
    throw NormalizationError("question normalization produced no wildcard " +
                             wildcard().surface() + ": '" + to_string(seq) +
                             "'");
  return seq;
}

HillClimb hill_climb(const TokenSeq &question, const TokenSeq &data,
                     const RuleSet &rules) {
  HillClimb h;
  h.question = question;
  h.data = data;
  h.initial_similarity = similarity(question, data);
  std::size_t current = h.initial_similarity;

  for (;;) {
    std::optional<Move> best;
    auto consider = [&](Side side) {
      const TokenSeq &seq = side == Side::kQuestion ? h.question : h.data;
      for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
        for (const Match &m : rules.matches_at(seq, pos)) {
          TokenSeq next = apply_match(seq, m);
          if (side == Side::kQuestion && !has_wildcard(next))
            continue;
          std::size_t sim = side == Side::kQuestion
                                ? similarity(next, h.data)
                                : similarity(h.question, next);
          if (sim <= current)
            continue;
          Move mv{sim, side, m.rule_id, pos, std::move(next)};
          if (!best || sim > best->similarity ||
              (sim == best->similarity && tie_break(mv, *best)))
            best = std::move(mv);
        }
      }
    };
    consider(Side::kQuestion);
    consider(Side::kData);
    if (!best)
      break;

    current = best->similarity;
    TokenSeq &target = best->side == Side::kQuestion ? h.question : h.data;
    QaIteration it{best->similarity, best->side, best->rule_id,
                   best->position, target, best->result};
    target = std::move(best->result);
    h.iterations.push_back(std::move(it));
  }
  h.final_similarity = current;
  return h;
}

TokenSeq extract_answer(const TokenSeq &question, const TokenSeq &data) {
  auto wpos = std::find(question.begin(), question.end(), wildcard());
  if (wpos == question.end())
    return {};
  const std::size_t w = static_cast<std::size_t>(wpos - question.begin());

  std::size_t lo = 0;
  std::size_t hi = data.size();
  for (const auto &[qi, di] : align(question, data).pairs) {
    if (qi < w) {
      lo = di + 1;
    } else {
      hi = di;
      break;
    }
  }
  if (lo >= hi)
    return {};
  return TokenSeq(data.begin() + lo, data.begin() + hi);
}

QaResult qa_answer(const Sentence &question,
                   std::span<const Sentence> documents, const RuleSet &qrules,
                   const RuleSet &rules, const QaOptions &options) {
  QaResult result;
  result.question = normalize_question(question.seq, qrules);

  std::vector<std::size_t> scores(documents.size());
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    scores[i] = similarity(result.question, documents[i].seq);
    if (scores[i] > 0)
      order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  if (order.size() > options.top_n)
    order.resize(options.top_n);

  std::optional<HillClimb> best;
  std::size_t best_doc = 0;
  TokenSeq best_answer;
  for (std::size_t doc : order) {
    HillClimb h = hill_climb(result.question, documents[doc].seq, rules);
    TokenSeq answer = extract_answer(h.question, h.data);
    if (answer.empty())
      continue;
    if (!best || h.final_similarity > best->final_similarity) {
      best = std::move(h);
      best_doc = doc;
      best_answer = std::move(answer);
    }
  }
  if (!best)
    return result;

  result.found = true;
  result.question = best->question;
  result.answer = std::move(best_answer);
  result.support = Sentence{best->data, documents[best_doc].source_id};
  result.final_similarity = best->final_similarity;
  result.iterations = std::move(best->iterations);
  result.document = best_doc;
  return result;
}

}  // namespace paraphrase

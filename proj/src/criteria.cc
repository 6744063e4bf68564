#include "paraphrase/criteria.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <tuple>

#include "paraphrase/error.h"

namespace paraphrase {

Candidate make_candidate(std::span<const Token> padded, std::size_t k,
                         Match match) {
  std::size_t begin = match.start;  // == padded index of s1
  std::size_t after = match.start + k + match.matched_len;
  if (after + k > padded.size())
    throw InvariantViolation("match extends past the padded sequence");
  Candidate c;
  c.s1.assign(padded.begin() + begin, padded.begin() + begin + k);
  c.s2.assign(padded.begin() + after, padded.begin() + after + k);
  c.reduction = match.reduction();
  c.match = std::move(match);
  return c;
}

bool reduction_order(const Candidate &a, const Candidate &b) {
  if (a.reduction != b.reduction)
    return a.reduction > b.reduction;
  if (a.match.matched_len != b.match.matched_len)
    return a.match.matched_len > b.match.matched_len;
  if (a.match.rule_id != b.match.rule_id)
    return a.match.rule_id < b.match.rule_id;
  if (a.match.replacement != b.match.replacement)
    return a.match.replacement < b.match.replacement;
  return a.match.bindings < b.match.bindings;
}

void Criterion::rank(std::vector<Candidate> &candidates) const {
  std::sort(candidates.begin(), candidates.end(), reduction_order);
}

std::string Criterion::explain(const Candidate &c) const {
  return "reduction=" + std::to_string(c.reduction);
}

bool LengthCriterion::accept(const Candidate &c) const {
  return index_.occurs(c.rewritten_window());
}

std::string LengthCriterion::explain(const Candidate &c) const {
  return "reduction=" + std::to_string(c.reduction) +
         " after=" + std::to_string(index_.count(c.rewritten_window()));
}

bool FrequencyCriterion::accept(const Candidate &c) const {
  return index_.count(c.rewritten_window()) >
         index_.count(c.original_window());
}

std::string FrequencyCriterion::explain(const Candidate &c) const {
  return "reduction=" + std::to_string(c.reduction) +
         " before=" + std::to_string(index_.count(c.original_window())) +
         " after=" + std::to_string(index_.count(c.rewritten_window()));
}

bool OccursCheck::accept(const Candidate &c) const {
  return index_.occurs(c.rewritten_window());
}

std::string ThresholdCheck::name() const {
  std::ostringstream os;
  os << "threshold:" << theta_;
  return os.str();
}

bool ThresholdCheck::accept(const Candidate &c) const {
  return index_.relative_frequency_at_least(c.rewritten_window(), theta_);
}

bool ContextGainCheck::accept(const Candidate &c) const {
  return index_.context_gain(c.s1, c.match.replacement, c.s2);
}

AllOf::AllOf(std::vector<std::unique_ptr<Criterion>> members)
    : members_(std::move(members)) {
  if (members_.empty())
    throw InvalidArgument("AllOf needs at least one criterion");
}

std::string AllOf::name() const {
  std::string out;
  for (const auto &m : members_) {
    if (!out.empty())
      out += '+';
    out += m->name();
  }
  return out;
}

void AllOf::rank(std::vector<Candidate> &candidates) const {
  members_.front()->rank(candidates);
}

bool AllOf::accept(const Candidate &c) const {
  return std::all_of(members_.begin(), members_.end(),
                     [&](const auto &m) { return m->accept(c); });
}

std::string AllOf::explain(const Candidate &c) const {
  std::string out = members_.front()->explain(c);
  for (std::size_t i = 1; i < members_.size(); ++i)
    out += ' ' + members_[i]->name() + '=' +
           (members_[i]->accept(c) ? "pass" : "fail");
  return out;
}

bool AllOf::reads_original_window() const {
  return std::any_of(members_.begin(), members_.end(), [](const auto &m) {
    return m->reads_original_window();
  });
}

std::unique_ptr<Criterion> make_criterion(std::string_view name,
                                          std::string_view grammar,
                                          const NgramIndex &index) {
  std::unique_ptr<Criterion> base;
  if (name == "length")
    base = std::make_unique<LengthCriterion>(index);
  else if (name == "frequency")
    base = std::make_unique<FrequencyCriterion>(index);
  else
    throw ConfigError("unknown criterion '" + std::string(name) +
                      "' (expected length or frequency)");

  std::unique_ptr<Criterion> check;
  if (grammar.empty() || grammar == "none") {
    return base;
  } else if (grammar == "occurs") {
    check = std::make_unique<OccursCheck>(index);
  } else if (grammar == "context-gain") {
    check = std::make_unique<ContextGainCheck>(index);
  } else if (grammar.starts_with("threshold:")) {
    std::string text(grammar.substr(10));
    char *end = nullptr;
    double theta = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() ||
        !std::isfinite(theta) || theta < 0.0 || theta > 1.0)
      throw ConfigError("bad threshold '" + text +
                        "' (expected a number in [0, 1])");
    check = std::make_unique<ThresholdCheck>(index, theta);
  } else {
    throw ConfigError("unknown grammar check '" + std::string(grammar) +
                      "' (expected none, occurs, threshold:θ or context-gain)");
  }
  std::vector<std::unique_ptr<Criterion>> members;
  members.push_back(std::move(base));
  members.push_back(std::move(check));
  return std::make_unique<AllOf>(std::move(members));
}

}  // namespace paraphrase

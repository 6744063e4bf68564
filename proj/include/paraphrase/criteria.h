#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paraphrase/ngram_index.h"
#include "paraphrase/rules.h"
#include "paraphrase/text.h"

namespace paraphrase {

// A match seen in its k-token context: s1 comes right before the matched
// span and s2 right after, both taken from the padded sequence.
struct Candidate {
  Match match;
  TokenSeq s1;
  TokenSeq s2;
  long reduction = 0;

  TokenSeq rewritten_window() const {
    return concat(s1, match.replacement, s2);
  }
  TokenSeq original_window() const { return concat(s1, match.span, s2); }
};

// `padded` is pad(body, k); match positions refer to body.
Candidate make_candidate(std::span<const Token> padded, std::size_t k,
                         Match match);

// Reduction descending, then longer matched span, then smaller rule id;
// replacement and bindings settle what is left so the order is total.
bool reduction_order(const Candidate &a, const Candidate &b);

class Criterion {
 public:
  virtual ~Criterion() = default;

  virtual std::string name() const = 0;
  virtual void rank(std::vector<Candidate> &candidates) const;
  virtual bool accept(const Candidate &candidate) const = 0;
  // Trace score column, e.g. "reduction=1 after=3".
  virtual std::string explain(const Candidate &candidate) const;
  // Whether accept() counts the original window s1.A.s2 as well.
  virtual bool reads_original_window() const { return false; }
};

// Shorter output wins; a rewrite is accepted when s1.B.s2 occurs.
class LengthCriterion final : public Criterion {
 public:
  explicit LengthCriterion(const NgramIndex &index) : index_(index) {}
  std::string name() const override { return "length"; }
  bool accept(const Candidate &c) const override;
  std::string explain(const Candidate &c) const override;

 private:
  const NgramIndex &index_;
};

// Same ranking as LengthCriterion; accepted when count(s1.B.s2) is strictly
// greater than count(s1.A.s2).
class FrequencyCriterion final : public Criterion {
 public:
  explicit FrequencyCriterion(const NgramIndex &index) : index_(index) {}
  std::string name() const override { return "frequency"; }
  bool accept(const Candidate &c) const override;
  std::string explain(const Candidate &c) const override;
  bool reads_original_window() const override { return true; }

 private:
  const NgramIndex &index_;
};

class OccursCheck final : public Criterion {
 public:
  explicit OccursCheck(const NgramIndex &index) : index_(index) {}
  std::string name() const override { return "occurs"; }
  bool accept(const Candidate &c) const override;

 private:
  const NgramIndex &index_;
};

class ThresholdCheck final : public Criterion {
 public:
  ThresholdCheck(const NgramIndex &index, double theta)
      : index_(index), theta_(theta) {}
  std::string name() const override;
  bool accept(const Candidate &c) const override;
  double theta() const { return theta_; }

 private:
  const NgramIndex &index_;
  double theta_;
};

class ContextGainCheck final : public Criterion {
 public:
  explicit ContextGainCheck(const NgramIndex &index) : index_(index) {}
  std::string name() const override { return "context-gain"; }
  bool accept(const Candidate &c) const override;

 private:
  const NgramIndex &index_;
};

// Ranks with the first member and accepts when every member accepts.
class AllOf final : public Criterion {
 public:
  explicit AllOf(std::vector<std::unique_ptr<Criterion>> members);
  std::string name() const override;
  void rank(std::vector<Candidate> &candidates) const override;
  bool accept(const Candidate &c) const override;
  std::string explain(const Candidate &c) const override;
  bool reads_original_window() const override;

 private:
  std::vector<std::unique_ptr<Criterion>> members_;
};

// name: "length" | "frequency"; grammar: "none" | "occurs" | "threshold:θ" |
// "context-gain". Throws ConfigError on anything else.
std::unique_ptr<Criterion> make_criterion(std::string_view name,
                                          std::string_view grammar,
                                          const NgramIndex &index);

}  // namespace paraphrase

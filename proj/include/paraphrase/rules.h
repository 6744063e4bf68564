#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "paraphrase/text.h"

namespace paraphrase {

inline constexpr std::size_t kDefaultVmax = 5;

// Pattern variable, written $A..$Z in rule files.
struct Var {
  char name;
  friend bool operator==(const Var &, const Var &) = default;
  friend auto operator<=>(const Var &, const Var &) = default;
};

using PatternElem = std::variant<Token, Var>;

struct Pattern {
  std::vector<PatternElem> elems;

  bool empty() const { return elems.empty(); }
  std::size_t literal_length() const;
  std::size_t variable_count() const;
  bool has_variables() const { return variable_count() > 0; }
  // Longest span the pattern can cover when every variable binds vmax tokens.
  std::size_t max_length(std::size_t vmax) const;
  // Number of leading literals before the first variable.
  std::size_t literal_prefix_length() const;
  bool mentions(char var) const;

  friend bool operator==(const Pattern &, const Pattern &) = default;
};

// Parses "these $X residents". A leading backslash escapes a literal that
// would otherwise read as a variable ("\$X" is the word "$X").
Pattern parse_pattern(std::string_view text);
std::string format_pattern(const Pattern &pattern);
Pattern literal_pattern(std::span<const Token> seq);

struct RewriteRule {
  Pattern lhs;
  Pattern rhs;
  bool bidirectional = false;
  int support_count = 1;
  bool validated = false;
  int rule_id = 0;
  // 1-based line in the rule file, 0 for rules built in code.
  std::size_t source_line = 0;

  // Only meaningful for variable-free rules.
  long reduction() const {
    return static_cast<long>(lhs.literal_length()) -
           static_cast<long>(rhs.literal_length());
  }
};

// Throws ValidationError when the rule breaks a structural invariant.
void validate_rule(const RewriteRule &rule);

using Bindings = std::map<char, TokenSeq>;

struct Match {
  int rule_id = 0;
  std::size_t start = 0;
  std::size_t matched_len = 0;
  Bindings bindings;
  // The matched tokens seq[start, start + matched_len).
  TokenSeq span;
  TokenSeq replacement;

  long reduction() const {
    return static_cast<long>(matched_len) -
           static_cast<long>(replacement.size());
  }

  friend bool operator==(const Match &, const Match &) = default;
};

TokenSeq substitute(const Pattern &pattern, const Bindings &bindings);

// Directed rule set with a token trie over each lhs's literal prefix.
// Immutable after construction.
class RuleSet {
 public:
  RuleSet() : RuleSet(std::vector<RewriteRule>{}) {}
  explicit RuleSet(std::vector<RewriteRule> rules,
                   std::size_t vmax = kDefaultVmax);

  const std::vector<RewriteRule> &rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  std::size_t vmax() const { return vmax_; }

  // Throws InvalidArgument for an unknown id.
  const RewriteRule &rule(int rule_id) const;

  // Every match whose lhs starts at pos, ordered by rule id and then by
  // enumeration order. pos may equal seq.size().
  std::vector<Match> matches_at(std::span<const Token> seq,
                                std::size_t pos) const;

  RuleSet filtered(const std::function<bool(const RewriteRule &)> &keep) const;

  // Longest window a rule side can produce, variables at vmax.
  std::size_t max_rhs_length() const;
  std::size_t max_lhs_length() const;

 private:
  struct Node {
    std::unordered_map<Token, std::size_t, TokenHash> children;
    std::vector<std::size_t> rules;
  };

  void extend(const RewriteRule &rule, std::size_t elem, std::size_t cur,
              std::span<const Token> seq, std::size_t start,
              Bindings &bindings, std::vector<Match> &out) const;

  std::vector<RewriteRule> rules_;
  std::size_t vmax_;
  std::vector<Node> trie_;
  std::unordered_map<int, std::size_t> by_id_;
};

// Rule file: one rule per line, LHS<TAB>RHS[<TAB>flags], flags from
// {bidir, validated, count=N}. Bidirectional lines expand into a forward
// and a reverse rule; rule ids count directed rules in file order.
std::vector<RewriteRule> parse_rules(std::istream &in,
                                     const std::string &name = "<rules>");
std::vector<RewriteRule> load_rules(const std::string &path);

std::string format_rule_line(const Pattern &lhs, const Pattern &rhs,
                             bool bidirectional, bool validated,
                             int support_count);

TokenSeq apply_match(std::span<const Token> seq, const Match &match);

}  // namespace paraphrase

#include "paraphrase/rules.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>

#include "paraphrase/error.h"

namespace paraphrase {
namespace {

bool is_var_text(std::string_view t) {
  return t.size() == 2 && t[0] == '$' && t[1] >= 'A' && t[1] <= 'Z';
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  for (;;) {
    std::size_t end = s.find(sep, begin);
    if (end == std::string_view::npos) {
      out.push_back(s.substr(begin));
      return out;
    }
    out.push_back(s.substr(begin, end - begin));
    begin = end + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

RewriteRule reversed(const RewriteRule &rule) {
  RewriteRule r = rule;
  std::swap(r.lhs, r.rhs);
  return r;
}

}  // namespace

std::size_t Pattern::literal_length() const {
  return static_cast<std::size_t>(std::count_if(
      elems.begin(), elems.end(),
      [](const PatternElem &e) { return std::holds_alternative<Token>(e); }));
}

std::size_t Pattern::variable_count() const {
  return elems.size() - literal_length();
}

std::size_t Pattern::max_length(std::size_t vmax) const {
  return literal_length() + variable_count() * vmax;
}

std::size_t Pattern::literal_prefix_length() const {
  std::size_t n = 0;
  while (n < elems.size() && std::holds_alternative<Token>(elems[n]))
    ++n;
  return n;
}

bool Pattern::mentions(char var) const {
  for (const PatternElem &e : elems)
    if (const Var *v = std::get_if<Var>(&e); v && v->name == var)
      return true;
  return false;
}

Pattern parse_pattern(std::string_view text) {
  Pattern p;
  for (const Token &t : words(text)) {
    const std::string &s = t.surface();
    if (is_var_text(s)) {
      p.elems.emplace_back(Var{s[1]});
    } else if (s[0] == '$') {
      throw InvalidArgument("malformed variable '" + s +
                            "' (expected $A..$Z)");
    } else if (s[0] == '\\') {
      if (s.size() == 1)
        throw InvalidArgument("dangling escape in pattern");
      p.elems.emplace_back(Token::word(s.substr(1)));
    } else {
      p.elems.emplace_back(t);
    }
  }
  return p;
}

std::string format_pattern(const Pattern &pattern) {
  std::string out;
  for (const PatternElem &e : pattern.elems) {
    if (!out.empty())
      out += ' ';
    if (const Var *v = std::get_if<Var>(&e)) {
      out += '$';
      out += v->name;
    } else {
      const std::string &s = std::get<Token>(e).surface();
      if (s[0] == '$' || s[0] == '\\')
        out += '\\';
      out += s;
    }
  }
  return out;
}

Pattern literal_pattern(std::span<const Token> seq) {
  Pattern p;
  for (const Token &t : seq)
    p.elems.emplace_back(t);
  return p;
}

void validate_rule(const RewriteRule &rule) {
  if (rule.lhs.empty() && rule.rhs.empty())
    throw ValidationError("rule has empty lhs and rhs");
  if (rule.support_count < 1)
    throw ValidationError("support count must be at least 1");
  for (const Pattern *p : {&rule.lhs, &rule.rhs}) {
    std::set<char> seen;
    for (const PatternElem &e : p->elems) {
      if (const Var *v = std::get_if<Var>(&e)) {
        if (!seen.insert(v->name).second)
          throw ValidationError(std::string("variable $") + v->name +
                                " repeated within one pattern");
      } else if (std::get<Token>(e).is_boundary()) {
        throw ValidationError("rule patterns cannot contain boundary tokens");
      }
    }
  }
  for (const PatternElem &e : rule.rhs.elems)
    if (const Var *v = std::get_if<Var>(&e); v && !rule.lhs.mentions(v->name))
      throw ValidationError(std::string("free variable $") + v->name +
                            " on the right-hand side");
}

TokenSeq substitute(const Pattern &pattern, const Bindings &bindings) {
  TokenSeq out;
  for (const PatternElem &e : pattern.elems) {
    if (const Var *v = std::get_if<Var>(&e)) {
      auto it = bindings.find(v->name);
      if (it == bindings.end())
        throw InvariantViolation(std::string("unbound variable $") + v->name);
      out.insert(out.end(), it->second.begin(), it->second.end());
    } else {
      out.push_back(std::get<Token>(e));
    }
  }
  return out;
}

RuleSet::RuleSet(std::vector<RewriteRule> rules, std::size_t vmax)
    : rules_(std::move(rules)), vmax_(vmax) {
  if (vmax_ == 0)
    throw InvalidArgument("Vmax must be at least 1");
  trie_.emplace_back();
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const RewriteRule &r = rules_[i];
    validate_rule(r);
    if (!by_id_.emplace(r.rule_id, i).second)
      throw ValidationError("duplicate rule id " + std::to_string(r.rule_id));

    std::size_t node = 0;
    std::size_t prefix = r.lhs.literal_prefix_length();
    for (std::size_t d = 0; d < prefix; ++d) {
      const Token &t = std::get<Token>(r.lhs.elems[d]);
      auto it = trie_[node].children.find(t);
      if (it == trie_[node].children.end()) {
        trie_.emplace_back();
        it = trie_[node].children.emplace(t, trie_.size() - 1).first;
      }
      node = it->second;
    }
    trie_[node].rules.push_back(i);
  }
}

const RewriteRule &RuleSet::rule(int rule_id) const {
  auto it = by_id_.find(rule_id);
  if (it == by_id_.end())
    throw InvalidArgument("unknown rule id " + std::to_string(rule_id));
  return rules_[it->second];
}

void RuleSet::extend(const RewriteRule &rule, std::size_t elem,
                     std::size_t cur, std::span<const Token> seq,
                     std::size_t start, Bindings &bindings,
                     std::vector<Match> &out) const {
  const auto &elems = rule.lhs.elems;
  if (elem == elems.size()) {
    Match m;
    m.rule_id = rule.rule_id;
    m.start = start;
    m.matched_len = cur - start;
    m.bindings = bindings;
    m.span.assign(seq.begin() + start, seq.begin() + cur);
    m.replacement = substitute(rule.rhs, bindings);
    out.push_back(std::move(m));
    return;
  }
  if (const Token *lit = std::get_if<Token>(&elems[elem])) {
    if (cur < seq.size() && seq[cur] == *lit)
      extend(rule, elem + 1, cur + 1, seq, start, bindings, out);
    return;
  }
  char name = std::get<Var>(elems[elem]).name;
  for (std::size_t len = 1; len <= vmax_ && cur + len <= seq.size(); ++len) {
    bindings[name].assign(seq.begin() + cur, seq.begin() + cur + len);
    extend(rule, elem + 1, cur + len, seq, start, bindings, out);
  }
  bindings.erase(name);
}

std::vector<Match> RuleSet::matches_at(std::span<const Token> seq,
                                       std::size_t pos) const {
  if (pos > seq.size())
    throw InvalidArgument("match position " + std::to_string(pos) +
                          " beyond sequence of length " +
                          std::to_string(seq.size()));
  std::vector<Match> out;
  Bindings bindings;
  std::size_t node = 0;
  std::size_t depth = 0;
  for (;;) {
    for (std::size_t idx : trie_[node].rules)
      extend(rules_[idx], depth, pos + depth, seq, pos, bindings, out);
    if (pos + depth >= seq.size())
      break;
    auto it = trie_[node].children.find(seq[pos + depth]);
    if (it == trie_[node].children.end())
      break;
    node = it->second;
    ++depth;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Match &a, const Match &b) {
                     return a.rule_id < b.rule_id;
                   });
  return out;
}

RuleSet RuleSet::filtered(
    const std::function<bool(const RewriteRule &)> &keep) const {
  std::vector<RewriteRule> kept;
  for (const RewriteRule &r : rules_)
    if (keep(r))
      kept.push_back(r);
  return RuleSet(std::move(kept), vmax_);
}

std::size_t RuleSet::max_rhs_length() const {
  std::size_t n = 0;
  for (const RewriteRule &r : rules_)
    n = std::max(n, r.rhs.max_length(vmax_));
  return n;
}

std::size_t RuleSet::max_lhs_length() const {
  std::size_t n = 0;
  for (const RewriteRule &r : rules_)
    n = std::max(n, r.lhs.max_length(vmax_));
  return n;
}

std::vector<RewriteRule> parse_rules(std::istream &in,
                                     const std::string &name) {
  std::vector<RewriteRule> out;
  std::string line;
  std::size_t lineno = 0;
  int next_id = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line[0] == '#')
      continue;
    if (trim(line).empty())
      continue;

    auto fields = split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3)
      throw ParseError(name, lineno,
                       "expected LHS<TAB>RHS<TAB>flags, found " +
                           std::to_string(fields.size()) + " field(s)");

    RewriteRule rule;
    rule.source_line = lineno;
    try {
      rule.lhs = parse_pattern(fields[0]);
      rule.rhs = parse_pattern(fields[1]);
    } catch (const InvalidArgument &e) {
      throw ParseError(name, lineno, e.what());
    }

    if (fields.size() == 3) {
      for (std::string_view flag : split(fields[2], ',')) {
        flag = trim(flag);
        if (flag.empty())
          continue;
        if (flag == "bidir") {
          rule.bidirectional = true;
        } else if (flag == "validated") {
          rule.validated = true;
        } else if (flag.starts_with("count=")) {
          std::string_view num = flag.substr(6);
          int value = 0;
          auto [ptr, ec] =
              std::from_chars(num.data(), num.data() + num.size(), value);
          if (ec != std::errc() || ptr != num.data() + num.size() ||
              value < 1)
            throw ParseError(name, lineno,
                             "bad count flag '" + std::string(flag) + "'");
          rule.support_count = value;
        } else {
          throw ParseError(name, lineno,
                           "unknown flag '" + std::string(flag) + "'");
        }
      }
    }

    std::vector<RewriteRule> directed{rule};
    if (rule.bidirectional)
      directed.push_back(reversed(rule));
    for (RewriteRule &r : directed) {
      try {
        validate_rule(r);
      } catch (const ValidationError &e) {
        throw ValidationError(name + ":" + std::to_string(lineno) + ": " +
                              e.what());
      }
      r.rule_id = next_id++;
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<RewriteRule> load_rules(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open rule file: " + path);
  return parse_rules(in, path);
}

std::string format_rule_line(const Pattern &lhs, const Pattern &rhs,
                             bool bidirectional, bool validated,
                             int support_count) {
  std::string flags;
  auto add = [&](const std::string &f) {
    if (!flags.empty())
      flags += ',';
    flags += f;
  };
  if (bidirectional)
    add("bidir");
  if (validated)
    add("validated");
  add("count=" + std::to_string(support_count));
  return format_pattern(lhs) + '\t' + format_pattern(rhs) + '\t' + flags;
}

TokenSeq apply_match(std::span<const Token> seq, const Match &match) {
  if (match.start + match.matched_len > seq.size() ||
      match.span.size() != match.matched_len ||
      !std::equal(match.span.begin(), match.span.end(),
                  seq.begin() + match.start))
    throw InvariantViolation("stale match for rule " +
                             std::to_string(match.rule_id) + " at position " +
                             std::to_string(match.start));
  TokenSeq out;
  out.reserve(seq.size() - match.matched_len + match.replacement.size());
  out.insert(out.end(), seq.begin(), seq.begin() + match.start);
  out.insert(out.end(), match.replacement.begin(), match.replacement.end());
  out.insert(out.end(), seq.begin() + match.start + match.matched_len,
             seq.end());
  return out;
}

}  // namespace paraphrase

#include "paraphrase/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "paraphrase/criteria.h"
#include "paraphrase/engine.h"
#include "paraphrase/error.h"
#include "paraphrase/ngram_index.h"
#include "paraphrase/qa.h"
#include "paraphrase/text.h"

namespace paraphrase::cli {
namespace {

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.back()))
    s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && ws(s[b]))
    ++b;
  return s.substr(b);
}

std::ofstream open_output(const std::string &path) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error("cannot write file: " + path);
  return f;
}

// Values from --config fill options that were not given on the command line.
void apply_config(CLI::App &sub, const std::string &path) {
  for (const auto &[key, value] : read_config_file(path)) {
    CLI::Option *opt = sub.get_option_no_throw("--" + key);
    if (!opt)
      opt = sub.get_option_no_throw(key);
    if (!opt || key == "config")
      throw ConfigError(path + ": unknown config key '" + key + "' for " +
                        sub.get_name());
    if (opt->count() > 0)
      continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

RuleSet load_rule_set(const std::string &path, const Config &cfg) {
  RuleSet all(load_rules(path), cfg.vmax);
  if (!cfg.validated_only && cfg.min_count <= 1)
    return all;
  return all.filtered([&](const RewriteRule &r) {
    return (!cfg.validated_only || r.validated) &&
           r.support_count >= cfg.min_count;
  });
}

std::string trace_step(const RewriteStep &s) {
  return "step\t" + std::to_string(s.position) + '\t' +
         std::to_string(s.rule_id) + '\t' + to_string(s.matched) + '\t' +
         to_string(s.replacement) + '\t' + s.score_info + '\n';
}

int do_build_index(const Config &cfg, std::ostream &err) {
  if (cfg.corpus_path.empty())
    throw ConfigError("build-index: missing corpus file");
  if (cfg.output_path.empty())
    throw ConfigError("build-index: missing -o output path");
  if (cfg.k < 1)
    throw ConfigError("k must be at least 1");
  std::size_t max_n = cfg.max_n;
  if (max_n == 0) {
    std::size_t longest = cfg.vmax;
    if (!cfg.rules_path.empty()) {
      RuleSet rules(load_rules(cfg.rules_path), cfg.vmax);
      longest = std::max<std::size_t>(
          1, std::max(rules.max_lhs_length(), rules.max_rhs_length()));
    }
    max_n = 2 * cfg.k + longest;
  }
  if (max_n < 2 * cfg.k + 1)
    throw ConfigError("max_n must be at least 2k+1");
  DefaultTokenizer tokenizer;
  auto corpus = read_corpus_file(cfg.corpus_path, tokenizer);
  NgramIndex index = NgramIndex::build(corpus, cfg.k, max_n);
  index.save(cfg.output_path);
  err << "indexed " << corpus.size() << " sentences, " << index.total_tokens()
      << " tokens, k=" << index.k() << " max_n=" << index.max_n() << '\n';
  return kOk;
}

int do_rewrite(const Config &cfg, const std::string &default_criterion,
               std::istream &in, std::ostream &out) {
  if (cfg.rules_path.empty() || cfg.index_path.empty())
    throw ConfigError("missing <rules> or <index> argument");
  if (cfg.jobs < 1)
    throw ConfigError("--jobs must be at least 1");
  RuleSet rules = load_rule_set(cfg.rules_path, cfg);
  NgramIndex index = NgramIndex::load(cfg.index_path);
  auto criterion = make_criterion(
      cfg.criterion.empty() ? default_criterion : cfg.criterion, cfg.grammar,
      index);
  check_index_capacity(rules, *criterion, index, cfg.k);

  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    lines.push_back(std::move(line));
  }

  EngineOptions options;
  options.cascade = cfg.cascade;
  DefaultTokenizer tokenizer;
  std::vector<std::string> outputs(lines.size());
  std::vector<std::string> traces(lines.size());
  std::vector<std::string> failures(lines.size());

  auto work = [&](std::size_t i) {
    try {
      Sentence s = tokenizer.tokenize(lines[i]);
      s.source_id = "stdin:" + std::to_string(i + 1);
      RewriteTrace t =
          greedy_transform(s, rules, *criterion, index, cfg.k, options);
      outputs[i] = detokenize(t.output);
      std::string tr = "sentence\t" + std::to_string(i + 1) + '\t' +
                       to_string(s.seq) + '\n';
      for (const RewriteStep &step : t.steps)
        tr += trace_step(step);
      traces[i] = std::move(tr);
    } catch (const std::exception &e) {
      failures[i] = "line " + std::to_string(i + 1) + ": " + e.what();
    }
  };

  std::size_t workers = std::min(cfg.jobs, std::max<std::size_t>(1, lines.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < lines.size(); ++i)
      work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < lines.size();)
          work(i);
      });
    for (auto &t : pool)
      t.join();
  }

  for (const std::string &f : failures)
    if (!f.empty())
      throw Error(f);

  for (const std::string &o : outputs)
    out << o << '\n';
  if (!cfg.trace_path.empty()) {
    std::ofstream tf = open_output(cfg.trace_path);
    for (const std::string &t : traces)
      tf << t;
  }
  return kOk;
}

int do_qa(const Config &cfg, std::ostream &out, std::ostream &err) {
  if (cfg.rules_path.empty() || cfg.qrules_path.empty() ||
      cfg.data_path.empty() || cfg.question.empty())
    throw ConfigError("qa: --rules, --qrules, --data and --question are required");
  if (cfg.top_n < 1)
    throw ConfigError("--top-n must be at least 1");
  RuleSet rules = load_rule_set(cfg.rules_path, cfg);
  RuleSet qrules(load_rules(cfg.qrules_path), cfg.vmax);
  DefaultTokenizer tokenizer;
  auto docs = read_corpus_file(cfg.data_path, tokenizer);
  Sentence question = tokenizer.tokenize(cfg.question);

  QaOptions options;
  options.top_n = cfg.top_n;
  QaResult r = qa_answer(question, docs, qrules, rules, options);

  if (!cfg.trace_path.empty()) {
    std::ofstream tf = open_output(cfg.trace_path);
    tf << "question\t" << to_string(r.question) << '\n';
    for (const QaIteration &it : r.iterations)
      tf << "step\t" << it.position << '\t' << it.rule_id << '\t'
         << to_string(it.before) << '\t' << to_string(it.after) << "\tsim="
         << it.similarity << " side=" << side_name(it.side) << '\n';
  }

  if (!r.found) {
    err << "no answer found\n";
    return kNoAnswer;
  }
  out << "answer\t" << detokenize(r.answer) << '\n';
  out << "support\t" << detokenize(r.support.seq) << '\n';
  out << "similarity\t" << r.final_similarity << '\n';
  return kOk;
}

int do_extract(const Config &cfg, std::ostream &out) {
  if (cfg.pairs_path.empty())
    throw ConfigError("extract-rules: missing --pairs");
  if (cfg.min_support < 1)
    throw ConfigError("--min-support must be at least 1");
  std::ifstream in(cfg.pairs_path);
  if (!in)
    throw Error("cannot open pairs file: " + cfg.pairs_path);
  DefaultTokenizer tokenizer;
  auto pairs = read_pairs(in, tokenizer, cfg.pairs_path);
  auto candidates = harvest(pairs, cfg.max_hunk);
  auto kept = filter_by_support(candidates, cfg.min_support);
  if (cfg.output_path.empty()) {
    write_rules(out, kept, cfg.bidir);
  } else {
    std::ofstream f = open_output(cfg.output_path);
    write_rules(f, kept, cfg.bidir);
  }
  return kOk;
}

void add_rewrite_options(CLI::App &sub, Config &cfg) {
  sub.add_option("rules", cfg.rules_path, "Rule file");
  sub.add_option("index", cfg.index_path, "N-gram index file");
  sub.add_option("--criterion", cfg.criterion, "length or frequency");
  sub.add_option("--grammar", cfg.grammar,
                 "none, occurs, threshold:THETA or context-gain");
  sub.add_option("--k", cfg.k, "Context width (must match the index)");
  sub.add_option("--vmax", cfg.vmax, "Longest span a rule variable binds");
  sub.add_flag("--cascade", cfg.cascade,
               "Try ranked candidates until one is accepted");
  sub.add_flag("--validated-only", cfg.validated_only,
               "Use only rules flagged validated");
  sub.add_option("--min-count", cfg.min_count,
                 "Use only rules with count >= N");
  sub.add_option("--trace", cfg.trace_path, "Write the rewrite trace here");
  sub.add_option("--jobs", cfg.jobs, "Worker threads for batch input");
  sub.add_option("--config", cfg.config_path, "key=value defaults file");
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open config file: " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#')
      continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError(path, lineno, "expected key=value");
    out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

int run(const std::vector<std::string> &args, std::istream &in,
        std::ostream &out, std::ostream &err) {
  Config cfg;
  CLI::App app{"Corpus-driven paraphrasing: compression, polishing, "
               "written-to-spoken rewriting, question answering and rule "
               "extraction.",
               "paraphrase"};
  app.require_subcommand(1);

  CLI::App *extract = app.add_subcommand(
      "extract-rules", "Mine rewrite rules from paired sentences");
  extract->add_option("--pairs", cfg.pairs_path, "left<TAB>right pairs file");
  extract->add_option("--min-support", cfg.min_support,
                      "Keep rules seen at least N times");
  extract->add_option("--max-hunk", cfg.max_hunk,
                      "Drop diff regions longer than N tokens");
  extract->add_flag("--bidir", cfg.bidir, "Mark extracted rules bidirectional");
  extract->add_option("-o,--output", cfg.output_path, "Output rule file");
  extract->add_option("--config", cfg.config_path, "key=value defaults file");

  CLI::App *build = app.add_subcommand("build-index",
                                       "Count corpus n-grams into an index");
  build->add_option("corpus", cfg.corpus_path, "Corpus, one sentence per line");
  build->add_option("-k,--k", cfg.k, "Context width");
  build->add_option("--max-n", cfg.max_n, "Longest counted window");
  build->add_option("--rules", cfg.rules_path,
                    "Derive max_n from the longest rule side");
  build->add_option("--vmax", cfg.vmax, "Longest span a rule variable binds");
  build->add_option("-o,--output", cfg.output_path, "Output index file");
  build->add_option("--config", cfg.config_path, "key=value defaults file");

  CLI::App *compress =
      app.add_subcommand("compress", "Shorten sentences read from stdin");
  add_rewrite_options(*compress, cfg);
  CLI::App *polish = app.add_subcommand(
      "polish", "Rewrite stdin sentences toward more frequent corpus forms");
  add_rewrite_options(*polish, cfg);
  CLI::App *spoken = app.add_subcommand(
      "spoken", "Polish against a spoken-language index");
  add_rewrite_options(*spoken, cfg);

  CLI::App *qa = app.add_subcommand("qa", "Answer a question from data");
  qa->add_option("--rules", cfg.rules_path, "Paraphrase rule file");
  qa->add_option("--qrules", cfg.qrules_path, "Question normalization rules");
  qa->add_option("--data", cfg.data_path, "Data sentences, one per line");
  qa->add_option("--question", cfg.question, "Question text");
  qa->add_option("--top-n", cfg.top_n, "Candidate sentences to rewrite");
  qa->add_option("--vmax", cfg.vmax, "Longest span a rule variable binds");
  qa->add_flag("--validated-only", cfg.validated_only,
               "Use only rules flagged validated");
  qa->add_option("--min-count", cfg.min_count,
                 "Use only rules with count >= N");
  qa->add_option("--trace", cfg.trace_path, "Write the hill-climb trace here");
  qa->add_option("--config", cfg.config_path, "key=value defaults file");

  if (args.size() <= 1) {
    err << app.help();
    return kUsage;
  }

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    err << "run with --help for usage\n";
    return kUsage;
  }

  CLI::App *sub = app.get_subcommands().front();
  try {
    if (!cfg.config_path.empty())
      apply_config(*sub, cfg.config_path);
    if (cfg.k < 1)
      throw ConfigError("k must be at least 1");
    if (cfg.vmax < 1)
      throw ConfigError("--vmax must be at least 1");

    if (sub == extract)
      return do_extract(cfg, out);
    if (sub == build)
      return do_build_index(cfg, err);
    if (sub == compress)
      return do_rewrite(cfg, "length", in, out);
    if (sub == polish || sub == spoken)
      return do_rewrite(cfg, "frequency", in, out);
    if (sub == qa)
      return do_qa(cfg, out, err);
  } catch (const CLI::ParseError &e) {
    err << "error: bad config value: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
        std::ostream &err) {
  return run(std::vector<std::string>(argv, argv + argc), in, out, err);
}

}  // namespace paraphrase::cli

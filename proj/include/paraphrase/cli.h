#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "paraphrase/extraction.h"
#include "paraphrase/rules.h"

namespace paraphrase::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNoAnswer = 1;
inline constexpr int kUsage = 2;

struct Config {
  std::size_t k = 2;
  std::size_t vmax = kDefaultVmax;
  int min_support = 2;
  std::size_t max_hunk = kDefaultMaxHunk;
  std::size_t top_n = 3;
  std::string criterion;  // empty: the subcommand's default
  std::string grammar = "none";
  bool cascade = false;
  bool validated_only = false;
  int min_count = 1;
  bool bidir = false;
  std::size_t jobs = 1;
  std::size_t max_n = 0;  // 0: derived from the rules

  std::string rules_path;
  std::string qrules_path;
  std::string index_path;
  std::string corpus_path;
  std::string pairs_path;
  std::string data_path;
  std::string output_path;
  std::string trace_path;
  std::string config_path;
  std::string question;
};

// Reads key=value lines (# comments, blank lines ignored).
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string &path);

// Entry point of the paraphrase tool. Sentences for compress/polish/spoken
// come from `in`; results go to `out`; diagnostics to `err`.
int run(const std::vector<std::string> &args, std::istream &in,
        std::ostream &out, std::ostream &err);
int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
        std::ostream &err);

}  // namespace paraphrase::cli

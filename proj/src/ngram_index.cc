#include "paraphrase/ngram_index.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "paraphrase/error.h"

namespace paraphrase {
namespace {

constexpr std::string_view kMagic = "NGRAM-INDEX";
constexpr std::string_view kVersion = "v1";

std::uint64_t parse_u64(std::string_view text, const std::string &what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw FormatError("bad " + what + ": '" + std::string(text) + "'");
  return v;
}

std::string_view header_value(std::string_view field, std::string_view key) {
  std::string prefix = std::string(key) + "=";
  if (!field.starts_with(prefix))
    throw FormatError("index header: expected " + prefix + "..., found '" +
                      std::string(field) + "'");
  return field.substr(prefix.size());
}

}  // namespace

std::string serialize_token(const Token &t) {
  if (t.kind() == Token::Kind::kBos)
    return "<s>";
  if (t.kind() == Token::Kind::kEos)
    return "</s>";
  const std::string &s = t.surface();
  if (s == "<s>" || s == "</s>" || s[0] == '\\')
    return "\\" + s;
  return s;
}

Token deserialize_token(std::string_view text) {
  if (text == "<s>")
    return Token::bos();
  if (text == "</s>")
    return Token::eos();
  if (!text.empty() && text[0] == '\\')
    text.remove_prefix(1);
  if (text.empty())
    throw FormatError("empty token in index file");
  return Token::word(std::string(text));
}

std::size_t NgramIndex::ContextKeyHash::operator()(
    const ContextKey &key) const noexcept {
  TokenSeqHash h;
  return h(key.left) * 31 + h(key.right) * 17 + key.filler_len;
}

NgramIndex NgramIndex::build(std::span<const Sentence> corpus, std::size_t k,
                             std::size_t max_n) {
  if (k < 1)
    throw InvalidArgument("index context width k must be at least 1");
  if (max_n < 2 * k + 1)
    throw InvalidArgument("index max_n must be at least 2k+1 (k=" +
                          std::to_string(k) +
                          ", max_n=" + std::to_string(max_n) + ")");
  NgramIndex index;
  index.k_ = k;
  index.max_n_ = max_n;
  for (const Sentence &s : corpus) {
    for (const Token &t : s.seq)
      if (t.is_boundary())
        throw InvalidArgument("corpus sentence contains a boundary token");
    index.total_tokens_ += s.seq.size();
    TokenSeq padded = pad(s.seq, k);
    for (std::size_t i = 0; i <= padded.size(); ++i) {
      std::size_t longest = std::min(max_n, padded.size() - i);
      for (std::size_t n = 0; n <= longest; ++n)
        ++index.counts_[TokenSeq(padded.begin() + i, padded.begin() + i + n)];
    }
  }
  index.derive();
  return index;
}

// Rebuilds the context-filler table and per-length totals from counts_.
void NgramIndex::derive() {
  context_fillers_.clear();
  window_totals_.assign(max_n_ + 1, 0);
  for (const auto &[seq, c] : counts_) {
    window_totals_[seq.size()] += c;
    if (seq.size() < 2 * k_)
      continue;
    ContextKey key{TokenSeq(seq.begin(), seq.begin() + k_),
                   TokenSeq(seq.end() - k_, seq.end()), seq.size() - 2 * k_};
    context_fillers_[key][TokenSeq(seq.begin() + k_, seq.end() - k_)] = c;
  }
}

void NgramIndex::check_length(std::size_t n) const {
  if (n > max_n_)
    throw QueryTooLong(n, max_n_);
}

std::uint64_t NgramIndex::count(std::span<const Token> s) const {
  check_length(s.size());
  auto it = counts_.find(TokenSeq(s.begin(), s.end()));
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t NgramIndex::windows_of_length(std::size_t n) const {
  check_length(n);
  return n < window_totals_.size() ? window_totals_[n] : 0;
}

const NgramIndex::Counts *NgramIndex::fillers(std::span<const Token> left,
                                              std::span<const Token> right,
                                              std::size_t filler_len) const {
  if (left.size() != k_ || right.size() != k_)
    throw InvalidArgument("context sides must have length k=" +
                          std::to_string(k_));
  check_length(2 * k_ + filler_len);
  ContextKey key{TokenSeq(left.begin(), left.end()),
                 TokenSeq(right.begin(), right.end()), filler_len};
  auto it = context_fillers_.find(key);
  return it == context_fillers_.end() ? nullptr : &it->second;
}

bool NgramIndex::context_gain(std::span<const Token> left,
                              std::span<const Token> filler,
                              std::span<const Token> right) const {
  const Counts *observed = fillers(left, right, filler.size());
  if (!observed)
    return false;
  unsigned __int128 ctx_total = 0;
  for (const auto &[f, c] : *observed)
    ctx_total += c;
  if (ctx_total == 0)
    return false;
  unsigned __int128 ctx = count(concat(left, filler, right));
  unsigned __int128 flat = count(filler);
  unsigned __int128 flat_total = windows_of_length(filler.size());
  if (flat_total == 0)
    return ctx > 0;
  // ctx / ctx_total > flat / flat_total
  return ctx * flat_total > flat * ctx_total;
}

bool NgramIndex::relative_frequency_at_least(std::span<const Token> s,
                                             double theta) const {
  std::uint64_t total = windows_of_length(s.size());
  if (total == 0)
    return theta <= 0.0;
  return static_cast<long double>(count(s)) >=
         static_cast<long double>(theta) * static_cast<long double>(total);
}

void NgramIndex::save(std::ostream &out) const {
  std::vector<std::pair<std::vector<std::string>, std::uint64_t>> entries;
  entries.reserve(counts_.size());
  for (const auto &[seq, c] : counts_) {
    std::vector<std::string> toks;
    toks.reserve(seq.size());
    for (const Token &t : seq)
      toks.push_back(serialize_token(t));
    entries.emplace_back(std::move(toks), c);
  }
  std::sort(entries.begin(), entries.end());

  out << kMagic << ' ' << kVersion << " k=" << k_ << " max_n=" << max_n_
      << " tokens=" << total_tokens_ << '\n';
  for (const auto &[toks, c] : entries) {
    out << c << '\t';
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (i)
        out << ' ';
      out << toks[i];
    }
    out << '\n';
  }
}

void NgramIndex::save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write index file: " + path);
  save(out);
  if (!out)
    throw Error("error writing index file: " + path);
}

NgramIndex NgramIndex::load(std::istream &in, const std::string &name) {
  std::string line;
  if (!std::getline(in, line))
    throw FormatError(name + ": missing index header");

  std::istringstream header(line);
  std::string magic, version, kf, nf, tf, extra;
  header >> magic >> version >> kf >> nf >> tf;
  if (magic != kMagic)
    throw FormatError(name + ": not an n-gram index file");
  if (version != kVersion)
    throw FormatError(name + ": unsupported index version '" + version + "'");
  if (tf.empty() || (header >> extra))
    throw FormatError(name + ": malformed index header");

  NgramIndex index;
  try {
    index.k_ = parse_u64(header_value(kf, "k"), "k");
    index.max_n_ = parse_u64(header_value(nf, "max_n"), "max_n");
    index.total_tokens_ = parse_u64(header_value(tf, "tokens"), "tokens");
  } catch (const FormatError &e) {
    throw FormatError(name + ": " + e.what());
  }
  if (index.k_ < 1 || index.max_n_ < 2 * index.k_ + 1)
    throw FormatError(name + ": inconsistent k/max_n in header");

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto where = [&] { return name + ":" + std::to_string(lineno) + ": "; };
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw FormatError(where() + "expected count<TAB>tokens");
    std::uint64_t c = 0;
    try {
      c = parse_u64(std::string_view(line).substr(0, tab), "count");
    } catch (const FormatError &e) {
      throw FormatError(where() + e.what());
    }
    TokenSeq seq;
    std::string_view rest = std::string_view(line).substr(tab + 1);
    while (!rest.empty()) {
      std::size_t sp = rest.find(' ');
      std::string_view tok = rest.substr(0, sp);
      try {
        seq.push_back(deserialize_token(tok));
      } catch (const Error &e) {
        throw FormatError(where() + e.what());
      }
      if (sp == std::string_view::npos)
        break;
      rest.remove_prefix(sp + 1);
    }
    if (seq.size() > index.max_n_)
      throw FormatError(where() + "entry longer than max_n");
    if (c == 0)
      throw FormatError(where() + "zero count entry");
    if (!index.counts_.emplace(std::move(seq), c).second)
      throw FormatError(where() + "duplicate entry");
  }
  index.derive();
  return index;
}

NgramIndex NgramIndex::load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open index file: " + path);
  return load(in, path);
}

bool operator==(const NgramIndex &a, const NgramIndex &b) {
  return a.k_ == b.k_ && a.max_n_ == b.max_n_ &&
         a.total_tokens_ == b.total_tokens_ && a.counts_ == b.counts_;
}

}  // namespace paraphrase

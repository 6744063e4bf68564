#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "paraphrase/text.h"

namespace paraphrase {

// The token that stands for the interrogative pronoun in a normalized
// question. It never aligns with anything.
const Token &wildcard();

struct Alignment {
  // (index in p, index in q) pairs, increasing in both coordinates.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t score() const { return pairs.size(); }
};

// Longest common token subsequence between p and q, where wildcard tokens
// in p are never matched. Ties resolve toward the leftmost alignment.
Alignment align(std::span<const Token> p, std::span<const Token> q);

std::size_t similarity(std::span<const Token> p, std::span<const Token> q);

}  // namespace paraphrase

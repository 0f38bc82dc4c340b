#pragma once

#include <random>
#include <string>

#include "pfk/parser.hpp"
#include "pfk/presentation.hpp"
#include "pfk/word.hpp"

namespace pfk::test {

inline Presentation group(const std::string& text) { return presentation_of(parse(text)); }

inline Word word(const Presentation& p, const std::string& text) { return parse_word(text, p); }

// Freely reduced word from up to `max_len` uniform letters.
inline Word random_word(std::mt19937_64& rng, std::size_t rank, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> gen(0, rank - 1);
  std::bernoulli_distribution inv(0.5);
  std::vector<Letter> raw;
  for (std::size_t k = len(rng); k > 0; --k) raw.push_back(letter(gen(rng), inv(rng) ? -1 : 1));
  return Word::reduce(raw, rank);
}

// Reduced word of exactly `n` letters, no cancellation.
inline Word random_reduced(std::mt19937_64& rng, std::size_t rank, std::size_t n) {
  std::uniform_int_distribution<std::size_t> gen(0, rank - 1);
  std::bernoulli_distribution inv(0.5);
  std::vector<Letter> raw;
  while (raw.size() < n) {
    const Letter x = letter(gen(rng), inv(rng) ? -1 : 1);
    if (!raw.empty() && raw.back() == -x) continue;
    raw.push_back(x);
  }
  return Word::reduce(raw, rank);
}

}  // namespace pfk::test

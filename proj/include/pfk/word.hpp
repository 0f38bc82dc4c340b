#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pfk {

/// A signed generator: +(i + 1) stands for x_i, -(i + 1) for x_i^-1.
using Letter = int;

constexpr Letter letter(std::size_t generator, int sign = 1) {
  return sign > 0 ? static_cast<Letter>(generator + 1)
                  : -static_cast<Letter>(generator + 1);
}
constexpr std::size_t generator_of(Letter l) {
  return static_cast<std::size_t>(l > 0 ? l - 1 : -l - 1);
}
constexpr int sign_of(Letter l) { return l > 0 ? 1 : -1; }

/// An element of the free group on `rank` generators, always stored freely
/// reduced. The identity is the empty word.
class Word {
 public:
  Word() = default;
  explicit Word(std::size_t rank) : rank_(rank) {}

  /// Freely reduces `raw`. Throws InvalidArgument when a letter refers to a
  /// generator outside the alphabet.
  static Word reduce(std::span<const Letter> raw, std::size_t rank);
  static Word reduce(std::initializer_list<Letter> raw, std::size_t rank) {
    return reduce(std::span<const Letter>(raw.begin(), raw.size()), rank);
  }
  static Word generator(std::size_t index, std::size_t rank);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  bool involves(std::size_t generator) const;

  /// Shortlex order: shorter words first, then letter by letter.
  std::strong_ordering operator<=>(const Word& other) const;
  bool operator==(const Word& other) const = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Letter> letters_;
};

Word multiply(const Word& a, const Word& b);
Word invert(const Word& a);
Word power(const Word& a, std::int64_t k);
/// [a, b] = a^-1 b^-1 a b.
Word commutator(const Word& a, const Word& b);

inline Word operator*(const Word& a, const Word& b) { return multiply(a, b); }

struct CyclicReduction {
  Word conjugator;
  Word core;
};

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
CyclicReduction cyclically_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);

struct PowerDecomposition {
  Word root;
  std::int64_t exponent = 1;
};

/// Largest k with w = root^k. Throws InvalidArgument on the identity.
PowerDecomposition proper_power_decomposition(const Word& w);

/// Signed occurrence count of every generator.
std::vector<std::int64_t> exponent_vector(const Word& w);

/// Applies the homomorphism x_i -> images[i]; all images share one alphabet.
Word substitute(const Word& w, std::span<const Word> images,
                std::size_t target_rank);

/// Relabels generators: x_i -> x_{mapping[i]} in an alphabet of `target_rank`.
Word relabel(const Word& w, std::span<const std::size_t> mapping,
             std::size_t target_rank);

/// Text form using the given generator names, e.g. "a^2 b^-1 a".
std::string format_word(const Word& w, std::span<const std::string> names);

}  // namespace pfk

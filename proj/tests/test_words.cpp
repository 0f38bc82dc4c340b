#include <gtest/gtest.h>

#include "pfk/error.hpp"
#include "support.hpp"

using namespace pfk;
using test::word;

namespace {

const Presentation F3({"x", "y", "z"}, {});
const Presentation AS({"a", "s"}, {});

// Exponent of the largest k with the cyclic core equal to (its prefix)^k,
// by trying every divisor period directly.
std::int64_t brute_power(const Word& w) {
  const Word core = cyclically_reduce(w).core;
  const auto& c = core.letters();
  const std::size_t L = c.size();
  for (std::size_t k = L; k >= 2; --k) {
    if (L % k) continue;
    const std::size_t period = L / k;
    bool ok = true;
    for (std::size_t i = period; i < L && ok; ++i) ok = c[i] == c[i - period];
    if (ok) return static_cast<std::int64_t>(k);
  }
  return 1;
}

}  // namespace

TEST(Reduce, Examples) {
  EXPECT_EQ(Word::reduce({1, 2, -2, 1}, 3), word(F3, "x x"));
  EXPECT_TRUE(Word::reduce({}, 3).is_identity());
  EXPECT_TRUE(Word::reduce({1, -1}, 3).is_identity());
  EXPECT_THROW(Word::reduce({4}, 3), InvalidArgument);
  EXPECT_THROW(Word::reduce({0}, 3), InvalidArgument);
}

TEST(Multiply, Examples) {
  EXPECT_TRUE(multiply(word(F3, "x"), word(F3, "x^-1")).is_identity());
  EXPECT_EQ(invert(word(F3, "x y")), word(F3, "y^-1 x^-1"));
  EXPECT_EQ(multiply(word(F3, "x y"), word(F3, "y^-1 z")), word(F3, "x z"));
  EXPECT_EQ(commutator(word(F3, "x"), word(F3, "y")), word(F3, "x^-1 y^-1 x y"));
  EXPECT_EQ(power(word(F3, "x y"), -2), word(F3, "y^-1 x^-1 y^-1 x^-1"));
  EXPECT_THROW(multiply(word(F3, "x"), AS.generator(0)), InvalidArgument);
}

TEST(CyclicallyReduce, Examples) {
  const auto r = cyclically_reduce(word(AS, "a s a^-1"));
  EXPECT_EQ(r.conjugator, word(AS, "a"));
  EXPECT_EQ(r.core, word(AS, "s"));

  // Already cyclically reduced: first and last letters are both a.
  const Word k = word(AS, "a s^-1 a^-1 s a");
  EXPECT_TRUE(is_cyclically_reduced(k));
  EXPECT_EQ(cyclically_reduce(k).core, k);

  const auto e = cyclically_reduce(AS.identity());
  EXPECT_TRUE(e.conjugator.is_identity());
  EXPECT_TRUE(e.core.is_identity());
}

TEST(ProperPower, Examples) {
  const auto d = proper_power_decomposition(word(F3, "(x y)^3"));
  EXPECT_EQ(d.root, word(F3, "x y"));
  EXPECT_EQ(d.exponent, 3);
  EXPECT_EQ(proper_power_decomposition(word(F3, "x^5")).exponent, 5);
  EXPECT_EQ(proper_power_decomposition(word(F3, "x^5")).root, word(F3, "x"));
  EXPECT_EQ(proper_power_decomposition(word(AS, "a^2 s^-1 a^-1 s")).exponent, 1);
  EXPECT_EQ(brute_power(word(AS, "a^2 s^-1 a^-1 s")), 1);
  EXPECT_EQ(proper_power_decomposition(word(F3, "z (x y)^4 z^-1")).exponent, 4);
  EXPECT_THROW(proper_power_decomposition(F3.identity()), InvalidArgument);
}

TEST(ExponentVector, Examples) {
  EXPECT_EQ(exponent_vector(word(F3, "x^2 y^2 z^3")), (std::vector<std::int64_t>{2, 2, 3}));
  EXPECT_EQ(exponent_vector(word(F3, "[x, y]")), (std::vector<std::int64_t>{0, 0, 0}));
  EXPECT_EQ(exponent_vector(F3.identity()), (std::vector<std::int64_t>{0, 0, 0}));
}

TEST(Format, UsesPowers) {
  EXPECT_EQ(F3.format(word(F3, "x x y^-1 y^-1 z")), "x^2 y^-2 z");
  EXPECT_EQ(F3.format(F3.identity()), "1");
}

TEST(WordProperties, ReductionAndInverse) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Word a = test::random_word(rng, 3, 20);
    EXPECT_EQ(Word::reduce(a.letters(), 3), a);
    EXPECT_TRUE(multiply(a, invert(a)).is_identity());
    EXPECT_TRUE(multiply(invert(a), a).is_identity());
  }
}

TEST(WordProperties, ExponentVectorIsHomomorphism) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const Word a = test::random_word(rng, 3, 15), b = test::random_word(rng, 3, 15);
    auto ea = exponent_vector(a);
    const auto eb = exponent_vector(b);
    for (std::size_t k = 0; k < 3; ++k) ea[k] += eb[k];
    EXPECT_EQ(exponent_vector(a * b), ea);
  }
}

TEST(WordProperties, CyclicReductionReconstructs) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const Word w = test::random_word(rng, 3, 20);
    const auto r = cyclically_reduce(w);
    EXPECT_LE(r.core.size(), w.size());
    EXPECT_TRUE(is_cyclically_reduced(r.core));
    EXPECT_EQ(r.conjugator * r.core * invert(r.conjugator), w);
  }
}

TEST(WordProperties, PowerDecompositionMatchesBruteForce) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> kd(1, 5);
  for (int i = 0; i < 500; ++i) {
    const Word v = test::random_word(rng, 2, 8);
    if (v.is_identity()) continue;
    const int k = kd(rng);
    const Word w = power(v, k);
    const auto d = proper_power_decomposition(w);
    EXPECT_EQ(d.exponent, brute_power(w));
    EXPECT_EQ(d.exponent % k, 0);
    EXPECT_EQ(cyclically_reduce(power(d.root, d.exponent)).core, cyclically_reduce(w).core);
  }
}

#include <gtest/gtest.h>

#include "pfk/error.hpp"
#include "pfk/families.hpp"
#include "pfk/fox.hpp"
#include "support.hpp"

using namespace pfk;
using test::word;

namespace {

const Presentation XY({"x", "y"}, {});

GroupRingElt sum(const Presentation& p, std::vector<std::pair<std::string, std::int64_t>> terms) {
  GroupRingElt e(p.rank());
  for (const auto& [w, c] : terms) e.add_term(word(p, w), c);
  return e;
}

// d(uv) = du + u dv, splitting in halves.
GroupRingElt split_derivative(const Word& w, std::size_t s) {
  const std::size_t n = w.rank();
  if (w.size() == 0) return GroupRingElt(n);
  if (w.size() == 1) {
    GroupRingElt e(n);
    if (generator_of(w[0]) == s) e.add_term(sign_of(w[0]) > 0 ? Word(n) : w, sign_of(w[0]));
    return e;
  }
  const std::size_t mid = w.size() / 2;
  const std::vector<Letter> a(w.letters().begin(), w.letters().begin() + static_cast<long>(mid));
  const std::vector<Letter> b(w.letters().begin() + static_cast<long>(mid), w.letters().end());
  const Word u = Word::reduce(a, n), v = Word::reduce(b, n);
  return gr_add(split_derivative(u, s), gr_mul(GroupRingElt::of(u), split_derivative(v, s)));
}

TruncSeries magnus_of(const GroupRingElt& e, int d) {
  TruncSeries s(e.rank(), d, Ring::integers());
  for (const auto& [w, c] : e.terms()) s = series_add(s, series_scale(magnus_embed(w, d, Ring::integers()), c));
  return s;
}

}  // namespace

TEST(GroupRing, Arithmetic) {
  const GroupRingElt a = sum(XY, {{"x", 1}, {"y", 2}});
  const GroupRingElt b = sum(XY, {{"x^-1", 1}, {"1", -1}});
  EXPECT_EQ(gr_mul(a, b), sum(XY, {{"1", 1}, {"x", -1}, {"y x^-1", 2}, {"y", -2}}));
  EXPECT_EQ(augmentation(a), 3);
  EXPECT_EQ(augmentation(b), 0);
  EXPECT_TRUE(gr_sub(a, a).is_zero());
  EXPECT_EQ(gr_scale(a, 0), GroupRingElt(2));
  const GroupRingElt m = gr_scale(a, 3);
  EXPECT_EQ(GroupRingElt(2, Ring::mod(3)), [&] {
    GroupRingElt r(2, Ring::mod(3));
    for (const auto& [w, c] : m.terms()) r.add_term(w, c);
    return r;
  }());
}

TEST(FoxDerivative, Examples) {
  EXPECT_EQ(fox_derivative(word(XY, "x"), 0), sum(XY, {{"1", 1}}));
  EXPECT_TRUE(fox_derivative(word(XY, "x"), 1).is_zero());
  EXPECT_EQ(fox_derivative(word(XY, "[x, y]"), 0), sum(XY, {{"x^-1", -1}, {"x^-1 y^-1", 1}}));
  EXPECT_EQ(fox_derivative(word(XY, "[x, y]"), 1),
            sum(XY, {{"x^-1 y^-1", -1}, {"x^-1 y^-1 x", 1}}));
  EXPECT_EQ(fox_derivative(word(XY, "x^-1"), 0), sum(XY, {{"x^-1", -1}}));
  EXPECT_THROW(fox_derivative(word(XY, "x"), 2), InvalidArgument);
}

TEST(FoxDerivative, MatchesSplitProductRule) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    const Word w = test::random_word(rng, 3, 25);
    for (std::size_t s = 0; s < 3; ++s) EXPECT_EQ(fox_derivative(w, s), split_derivative(w, s));
  }
}

TEST(FundamentalIdentity, Examples) {
  EXPECT_TRUE(fundamental_identity_check(word(XY, "x")));
  EXPECT_TRUE(fundamental_identity_check(word(XY, "[x, y]")));
  EXPECT_TRUE(fundamental_identity_check(XY.identity()));
  std::mt19937_64 rng(42);
  EXPECT_TRUE(fundamental_identity_check(test::random_reduced(rng, 3, 30)));
}

TEST(FundamentalIdentity, HoldsUnderMagnus) {
  // M(w) - 1 = sum_s M(dw/ds) X_s, computed without the group ring identity.
  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    const Word w = test::random_word(rng, 2, 12);
    const int d = 4;
    TruncSeries rhs(2, d, Ring::integers());
    for (std::size_t s = 0; s < 2; ++s)
      rhs = series_add(rhs, series_mul(magnus_of(fox_derivative(w, s), d),
                                       TruncSeries::variable(s, 2, d, Ring::integers())));
    EXPECT_EQ(series_sub(magnus_embed(w, d, Ring::integers()), TruncSeries::one(2, d, Ring::integers())),
              rhs);
  }
}

TEST(FoxDerivative, AugmentationIsExponentSum) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 500; ++i) {
    const Word w = test::random_word(rng, 3, 30);
    const auto e = exponent_vector(w);
    for (std::size_t s = 0; s < 3; ++s) EXPECT_EQ(augmentation(fox_derivative(w, s)), e[s]);
  }
}

TEST(Jacobian, Examples) {
  for (int k = 1; k <= 5; ++k) {
    const Presentation p = test::group("< x | x^" + std::to_string(k) + " >");
    const auto j = jacobian(p);
    ASSERT_EQ(j.size(), 1u);
    ASSERT_EQ(j[0].size(), 1u);
    GroupRingElt expected(1);
    for (int i = 0; i < k; ++i) expected.add_term(power(p.generator(0), i), 1);
    EXPECT_EQ(j[0][0], expected);
  }
  EXPECT_TRUE(jacobian(free_group(3)).empty());

  const Presentation g = test::group("< a, b, c | a^2 b^2 c^3 >");
  const auto row = jacobian(g)[0];
  EXPECT_EQ(row[0], sum(g, {{"1", 1}, {"a", 1}}));
  EXPECT_EQ(row[1], sum(g, {{"a^2", 1}, {"a^2 b", 1}}));
  EXPECT_EQ(row[2], sum(g, {{"a^2 b^2", 1}, {"a^2 b^2 c", 1}, {"a^2 b^2 c^2", 1}}));
}

TEST(EvaluateInQuotient, Examples) {
  const Presentation g = test::group("< a, b, c | a^2 b^2 c^3 >");
  const QuotAlgebra qa = QuotAlgebra::build(g, 2, 4);
  const Word r = g.relators()[0];
  const GroupRingElt r_minus_1 = gr_sub(GroupRingElt::of(r), GroupRingElt::one(3));
  EXPECT_TRUE(evaluate_in_quotient(r_minus_1, qa).is_zero());

  GroupRingElt chain = gr_scale(r_minus_1, -1);
  for (std::size_t s = 0; s < 3; ++s)
    chain = gr_add(chain, gr_mul(fox_derivative(r, s),
                                 gr_sub(GroupRingElt::of(g.generator(s)), GroupRingElt::one(3))));
  EXPECT_TRUE(chain.is_zero());
  EXPECT_TRUE(evaluate_in_quotient(chain, qa).is_zero());

  const QuotAlgebra free = QuotAlgebra::build(free_group(2), 2, 3);
  EXPECT_FALSE(evaluate_in_quotient(GroupRingElt::of(free_group(2).generator(0)), free).is_zero());
}

TEST(Swan, Examples) {
  const SwanReport k = swan_boundary_data(families::k_family(1, 2), 2, 4);
  EXPECT_TRUE(k.verified);
  EXPECT_TRUE(k.coset.is_zero());

  const Presentation u({"a"}, {}), v({"b"}, {});
  const SwanReport same = swan_boundary_data(Amalgam{u, v, u.generator(0), v.generator(0)});
  EXPECT_TRUE(same.verified);

  const SwanReport b = swan_boundary_data(families::baumslag_solitar(1, 2), 3, 3);
  EXPECT_TRUE(b.verified);
  EXPECT_EQ(b.realized.rank(), 2u);

  const SwanReport h = swan_boundary_data(families::baumslag_solitar(2, 3), 2, 4);
  EXPECT_TRUE(h.verified);
}

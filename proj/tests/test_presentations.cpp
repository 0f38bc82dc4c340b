#include <gtest/gtest.h>

#include "pfk/abelian.hpp"
#include "pfk/error.hpp"
#include "pfk/families.hpp"
#include "support.hpp"

using namespace pfk;
using test::word;

namespace {

std::vector<std::string> relator_strings(const Presentation& p) {
  std::vector<std::string> out;
  for (const auto& r : p.relators()) out.push_back(p.format(r));
  return out;
}

}  // namespace

TEST(Parse, OneRelator) {
  const GroupInput in = parse("< a, b, c | a^2 b^2 c^3 >");
  ASSERT_TRUE(std::holds_alternative<Presentation>(in));
  const auto& p = std::get<Presentation>(in);
  EXPECT_EQ(p.generators(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(relator_strings(p), (std::vector<std::string>{"a^2 b^2 c^3"}));
}

TEST(Parse, FreeRankOne) {
  const auto p = std::get<Presentation>(parse("< x | >"));
  EXPECT_EQ(p.rank(), 1u);
  EXPECT_TRUE(p.is_free());
  EXPECT_EQ(std::get<Presentation>(parse("< x >")), p);
}

TEST(Parse, HnnShape) {
  const GroupInput in = parse("hnn < x, y | > t : t x t^-1 = y");
  ASSERT_TRUE(std::holds_alternative<Hnn>(in));
  const auto& h = std::get<Hnn>(in);
  EXPECT_EQ(h.U.rank(), 2u);
  EXPECT_EQ(h.u, h.U.generator(0));
  EXPECT_EQ(h.v, h.U.generator(1));
  EXPECT_EQ(h.stable_letter, "t");
}

TEST(Parse, EquationsAndSyntax) {
  const auto p = std::get<Presentation>(parse("# comment\n< x, y | y x y' = x^2, [x, y]^2 >"));
  EXPECT_EQ(relator_strings(p),
            (std::vector<std::string>{"y x y^-1 x^-2", "x^-1 y^-1 x y x^-1 y^-1 x y"}));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse("< a, b | a c >"), ParseError);
  EXPECT_THROW(parse("< a, a >"), Error);
  EXPECT_THROW(parse("< a | a^ >"), ParseError);
  EXPECT_THROW(parse("amalgam < a > : a = a"), ParseError);
  try {
    parse("< a, b |\n  a b q >");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(Parse, RoundTrip) {
  const char* inputs[] = {
      "< a, b, c | a^2 b^2 c^3 >",
      "amalgam < a, s > < t > : a [s, a] = t^2",
      "hnn < x > t : t x^2 t^-1 = x^3",
      "graph { u = < a, b >; w = < c >; edge u w : a^2 b^2 = c^3; loop u r : a = b; }",
  };
  for (const char* text : inputs) {
    const GroupInput in = parse(text);
    const GroupInput again = parse(format(in));
    EXPECT_EQ(format(again), format(in)) << text;
    EXPECT_EQ(presentation_of(again), presentation_of(in)) << text;
  }
}

TEST(FreeProduct, Shapes) {
  const Presentation f2 = free_group(2), f3 = free_group(3, "y");
  const Presentation ops[] = {f2, f3};
  const Combination c = free_product(ops);
  EXPECT_EQ(c.presentation.rank(), 5u);
  EXPECT_TRUE(c.presentation.is_free());

  const Presentation g = test::group("< a, b, c | a^2 b^2 c^3 >");
  const Presentation z({"z"}, {});
  const Presentation ops2[] = {g, z};
  const Combination c2 = free_product(ops2);
  EXPECT_EQ(c2.presentation.rank(), 4u);
  EXPECT_EQ(c2.presentation.relators().size(), 1u);

  const Presentation one[] = {g};
  EXPECT_EQ(free_product(one).presentation, g);
}

TEST(FreeProduct, RenamesCollisions) {
  const Presentation a({"x", "y"}, {}), b({"x"}, {});
  const Presentation ops[] = {a, b};
  const Combination c = free_product(ops);
  EXPECT_EQ(c.presentation.generators(), (std::vector<std::string>{"x_1", "y", "x_2"}));
  EXPECT_EQ(c.translate(1, b.generator(0)), c.presentation.generator(2));
}

TEST(Realize, Examples) {
  const Presentation k12 = realize(families::k_family(1, 2));
  EXPECT_EQ(k12.generators(), (std::vector<std::string>{"a", "s", "t"}));
  EXPECT_EQ(relator_strings(k12), (std::vector<std::string>{"a s^-1 a^-1 s a t^-2"}));

  const Presentation b12 = realize(families::baumslag_solitar(1, 2));
  EXPECT_EQ(relator_strings(b12), (std::vector<std::string>{"y x y^-1 x^-2"}));

  const Presentation f2({"a", "b"}, {});
  const Presentation h = realize(Hnn{f2, f2.generator(0), f2.generator(1), "t"});
  EXPECT_EQ(relator_strings(h), (std::vector<std::string>{"t a t^-1 b^-1"}));
}

TEST(Realize, CountsAndValidation) {
  const Presentation u = test::group("< a, b | [a, b]^2 >");
  const Presentation v = test::group("< c, d | c^3 >");
  const Presentation amal = realize(Amalgam{u, v, word(u, "a"), word(v, "d")});
  EXPECT_EQ(amal.rank(), 4u);
  EXPECT_EQ(amal.relators().size(), 3u);
  const Presentation hnn = realize(Hnn{u, word(u, "a"), word(u, "b"), "t"});
  EXPECT_EQ(hnn.rank(), 3u);
  EXPECT_EQ(hnn.relators().size(), 2u);
  EXPECT_THROW(realize(Hnn{u, u.identity(), word(u, "b"), "t"}), InvalidArgument);
  EXPECT_THROW(realize(Amalgam{u, v, word(u, "a"), v.identity()}), InvalidArgument);
  EXPECT_THROW(realize(Amalgam{u, v, word(u, "a"), Word::generator(0, 3)}), InvalidArgument);
}

TEST(GraphFundamental, Examples) {
  const auto single = std::get<GraphOfGroups>(parse("graph { u = < a, b >; }"));
  const GraphFundamental s = graph_fundamental(single);
  EXPECT_EQ(s.presentation, single.vertices[0]);
  EXPECT_TRUE(s.decomposition.empty());

  const auto tree = std::get<GraphOfGroups>(
      parse("graph { u = < a, s >; w = < t >; edge u w : a [s, a] = t^2; }"));
  const GraphFundamental t = graph_fundamental(tree);
  ASSERT_EQ(t.decomposition.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<Amalgam>(t.decomposition[0]));
  EXPECT_EQ(abelianization(t.presentation), abelianization(realize(families::k_family(1, 2))));

  const auto loop = std::get<GraphOfGroups>(parse("graph { u = < x >; loop u t : x^2 = x^3; }"));
  const GraphFundamental l = graph_fundamental(loop);
  ASSERT_EQ(l.decomposition.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<Hnn>(l.decomposition[0]));
  EXPECT_EQ(relator_strings(l.presentation), (std::vector<std::string>{"t x^2 t^-1 x^-3"}));
}

TEST(GraphFundamental, TreeOfFreeGroupsMatchesRankFormula) {
  const auto g = std::get<GraphOfGroups>(parse(
      "graph { p = < a, b >; q = < c, d >; r = < e >;"
      " edge p q : [a, b] a = c; edge q r : d^2 c = e^3; }"));
  const GraphFundamental f = graph_fundamental(g);
  const AbelianInvariants ab = abelianization(f.presentation);
  EXPECT_TRUE(ab.torsion_free());
  EXPECT_EQ(static_cast<std::int64_t>(ab.free_rank), rank_formula_expected(g));
}

TEST(Families, Examples) {
  const Presentation n = realize(families::n_family(2, 2, 3));
  EXPECT_EQ(n.generators(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(relator_strings(n), (std::vector<std::string>{"a^2 b^2 c^3"}));

  const Presentation b = realize(families::baumslag_solitar(2, 3));
  EXPECT_EQ(relator_strings(b), (std::vector<std::string>{"y x^2 y^-1 x^-3"}));

  const Presentation s = families::orientable_surface(2);
  EXPECT_EQ(s.rank(), 4u);
  EXPECT_EQ(relator_strings(s),
            (std::vector<std::string>{"x1^-1 y1^-1 x1 y1 x2^-1 y2^-1 x2 y2"}));

  EXPECT_EQ(families::h_family(1, 1).generators(), (std::vector<std::string>{"a", "s", "t"}));
}

TEST(Families, Validation) {
  const std::int64_t bad_k[] = {2, 4};
  EXPECT_THROW(families::builtin("K", bad_k), InvalidArgument);
  const std::int64_t bad_n[] = {2, 4, 6};
  EXPECT_THROW(families::builtin("N", bad_n), InvalidArgument);
  const std::int64_t one[] = {1};
  EXPECT_THROW(families::builtin("nope", one), InvalidArgument);
  EXPECT_THROW(families::builtin("B", one), InvalidArgument);
  const std::int64_t ok[] = {2, 3};
  EXPECT_TRUE(std::holds_alternative<Hnn>(families::builtin("B", ok)));
}

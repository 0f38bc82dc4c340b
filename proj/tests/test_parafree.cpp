#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pfk/abelian.hpp"
#include "pfk/error.hpp"
#include "pfk/families.hpp"
#include "pfk/parafree.hpp"
#include "pfk/parser.hpp"
#include "support.hpp"

using namespace pfk;
using test::word;
namespace fs = std::filesystem;

namespace {

using K = VerdictKind;

struct Entry {
  std::string name;
  GroupInput input;
  std::string expected;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Entry> corpus() {
  std::vector<Entry> out;
  for (const auto& e : fs::directory_iterator(PFK_CORPUS_DIR))
    if (e.path().extension() == ".gsp") {
      std::istringstream exp(slurp(fs::path(e.path()).replace_extension(".expect")));
      std::string kind;
      exp >> kind;
      out.push_back({e.path().stem().string(), parse(slurp(e.path())), kind});
    }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.name < b.name; });
  return out;
}

Verdict free_verdict(std::size_t n) { return check_presentation(free_group(n)); }

void expect_certificate_consistent(const Certificate& c) {
  for (const auto& child : c.children) expect_certificate_consistent(child);
  switch (c.kind) {
    case Certificate::Kind::Amalgam:
      ASSERT_EQ(c.children.size(), 2u);
      EXPECT_EQ(c.r_ab + 1, c.children[0].r_ab + c.children[1].r_ab);
      break;
    case Certificate::Kind::Hnn:
      ASSERT_EQ(c.children.size(), 1u);
      EXPECT_EQ(c.r_ab, c.children[0].r_ab);
      break;
    case Certificate::Kind::FreeProduct: {
      std::size_t sum = 0;
      for (const auto& child : c.children) sum += child.r_ab;
      EXPECT_EQ(c.r_ab, sum);
      break;
    }
    default:
      break;
  }
}

}  // namespace

TEST(Amalgam, FamiliesAreParafree) {
  for (const auto& a : {families::k_family(1, 2), families::k_family(2, 3), families::n_family(2, 2, 3),
                        families::n_family(2, 3, 5)}) {
    const Verdict v = check_amalgam(a);
    EXPECT_TRUE(v.is(K::Parafree)) << v.route;
    EXPECT_EQ(v.r_ab(), 2u);
    EXPECT_EQ(v.route, "amalgam");
  }
}

TEST(Amalgam, PowerPairFails) {
  const Presentation u({"a", "b"}, {}), v({"c", "d"}, {});
  const Verdict r = check_amalgam(Amalgam{u, v, word(u, "a^2"), word(v, "c^2")});
  EXPECT_TRUE(r.is(K::NotParafree));
  EXPECT_TRUE(r.has_failed("amalgam.3"));
  EXPECT_FALSE(r.certificate);
}

TEST(Amalgam, OperandConditionPropagates) {
  const Presentation u({"a"}, {word(Presentation({"a"}, {}), "a^2")}), v({"c"}, {});
  const Verdict r = check_amalgam(Amalgam{u, v, word(u, "a"), word(v, "c")});
  EXPECT_TRUE(r.has_failed("amalgam.1"));
}

TEST(Hnn, BaumslagSolitar) {
  const Verdict b23 = check_hnn(families::baumslag_solitar(2, 3));
  EXPECT_TRUE(b23.is(K::NotParafree));
  EXPECT_TRUE(b23.has_failed("hnn.3"));

  const Verdict b24 = check_hnn(families::baumslag_solitar(2, 4));
  EXPECT_TRUE(b24.has_failed("hnn.2"));
  EXPECT_TRUE(b24.has_failed("hnn.3"));

  const Verdict b12 = check_hnn(families::baumslag_solitar(1, 2), {{2, 3}, 4});
  EXPECT_TRUE(b12.is(K::Inconclusive));
  ASSERT_EQ(b12.unresolved().size(), 1u);
  EXPECT_EQ(b12.unresolved()[0], "hnn.4");
}

TEST(Hnn, RankTwoDeterminant) {
  const Presentation f2({"a", "b"}, {});
  const Hnn bad{f2, word(f2, "a^2 b^4"), word(f2, "a b^2"), "t"};
  const Verdict r = check_hnn(bad);
  EXPECT_EQ(r.route, "hnn-rank2");
  EXPECT_TRUE(r.has_failed("hnn.4"));

  const Hnn good{f2, word(f2, "a"), word(f2, "b"), "t"};
  const Verdict g = check_hnn(good);
  EXPECT_TRUE(g.is(K::Parafree));
  EXPECT_EQ(g.r_ab(), 2u);

  EXPECT_THROW(check_hnn_rank2(families::baumslag_solitar(1, 2), free_verdict(1)), InvalidArgument);
}

TEST(Hnn, GAndHFamilies) {
  for (const auto& p : {families::g_family(1, 1), families::g_family(2, 3), families::h_family(1, 1),
                        families::h_family(2, 3)}) {
    const Verdict v = check_presentation(p);
    EXPECT_TRUE(v.is(K::Parafree)) << p.label() << " " << v.route;
    EXPECT_EQ(v.r_ab(), 2u);
  }
}

TEST(FreeProduct, RankAdds) {
  const Verdict ops[] = {free_verdict(2), free_verdict(3)};
  const Verdict v = check_free_product(ops);
  EXPECT_TRUE(v.is(K::Parafree));
  EXPECT_EQ(v.r_ab(), 5u);

  const Verdict n = check_presentation(
      test::group("< a, b, c, z | a^2 b^2 c^3 >"));
  EXPECT_TRUE(n.is(K::Parafree));
  EXPECT_EQ(n.r_ab(), 3u);

  const Verdict bad[] = {free_verdict(2), check_hnn(families::baumslag_solitar(2, 3))};
  EXPECT_TRUE(check_free_product(bad).is(K::NotParafree));
}

TEST(Graph, Examples) {
  const Presentation u({"a", "b"}, {}), w({"c"}, {}), x({"x"}, {});
  GraphOfGroups tree{{"u", "w"}, {u, w}, {{0, 1, word(u, "a^2 b^2"), word(w, "c^3"), ""}}};
  const Verdict t = check_graph(tree);
  EXPECT_TRUE(t.is(K::Parafree));
  EXPECT_EQ(t.r_ab(), 2u);

  GraphOfGroups bs{{"x"}, {x}, {{0, 0, word(x, "x^2"), word(x, "x^3"), "y"}}};
  const Verdict b = check_graph(bs);
  EXPECT_TRUE(b.is(K::NotParafree));

  GraphOfGroups torsion{{"x"}, {x}, {{0, 0, word(x, "x^2"), word(x, "x^-2"), "y"}}};
  EXPECT_TRUE(check_graph(torsion).is(K::NotParafree));
}

TEST(Redundancy, Commutator) {
  const Presentation st({"s", "t"}, {});
  const RedundancyReport r = redundancy_condition(word(st, "[s, t]"), 1);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].generator, 0u);
  EXPECT_EQ(r.records[0].mu, -1);
  EXPECT_EQ(r.records[0].nu, 0);
  EXPECT_TRUE(r.records[0].satisfied);
  EXPECT_EQ(r.satisfied, std::vector<std::size_t>{0});
  EXPECT_EQ(r.rewritten.size(), 2u);
}

TEST(Redundancy, Failures) {
  const Presentation st({"s", "t"}, {});
  EXPECT_THROW(redundancy_condition(word(st, "s t"), 1), InvalidArgument);
  // each extreme height carries two occurrences of s
  const RedundancyReport r = redundancy_condition(word(st, "s^2 t s^-2 t^-1"), 1);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_FALSE(r.records[0].satisfied);
}

TEST(BaumslagCleary, Example) {
  const Presentation ast({"a", "s", "t"}, {});
  const Verdict v = check_baumslag_cleary(1, 1, word(ast, "[s, t]"), ast.identity(), 1);
  EXPECT_TRUE(v.is(K::Parafree)) << v.route;
  EXPECT_EQ(v.r_ab(), 2u);
  EXPECT_THROW(check_baumslag_cleary(1, 1, word(ast, "s t"), ast.identity(), 1), InvalidArgument);
  EXPECT_THROW(check_baumslag_cleary(1, 1, word(ast, "[s, t]"), ast.identity(), 2), InvalidArgument);
  EXPECT_THROW(check_baumslag_cleary(1, 1, word(free_group(2), "[x1, x2]"), ast.identity(), 1),
               InvalidArgument);
}

TEST(Screens, Examples) {
  const auto s1 = not_parafree_screens(families::nonorientable_surface(1));
  ASSERT_TRUE(s1);
  EXPECT_TRUE(s1->has_failed("screen.torsion"));
  const auto sig = not_parafree_screens(families::orientable_surface(2));
  ASSERT_TRUE(sig);
  EXPECT_TRUE(sig->has_failed("screen.rank"));
  EXPECT_FALSE(not_parafree_screens(free_group(3)));
  EXPECT_FALSE(not_parafree_screens(realize(families::k_family(1, 2))));
}

TEST(Presentation, TietzeAndFree) {
  const Verdict v = check_presentation(test::group("< a, b, c | a b c^2 >"));
  EXPECT_TRUE(v.is(K::Parafree));
  EXPECT_EQ(v.r_ab(), 2u);
  EXPECT_EQ(check_presentation(free_group(4)).r_ab(), 4u);
  EXPECT_TRUE(check_presentation(test::group("< a, b | a^2, b^2 >")).is(K::NotParafree));
}

TEST(Corpus, VerdictsMatchSidecars) {
  for (const auto& e : corpus()) EXPECT_EQ(to_string(check(e.input).kind), e.expected) << e.name;
}

TEST(Corpus, CertificateBookkeeping) {
  for (const auto& e : corpus()) {
    const Verdict v = check(e.input);
    if (!v.is(K::Parafree)) {
      EXPECT_FALSE(v.certificate) << e.name;
      continue;
    }
    ASSERT_TRUE(v.certificate) << e.name;
    const AbelianInvariants ab = abelianization(presentation_of(e.input));
    EXPECT_TRUE(ab.torsion_free()) << e.name;
    EXPECT_EQ(v.certificate->r_ab, ab.free_rank) << e.name;
    expect_certificate_consistent(*v.certificate);
  }
}

TEST(Corpus, NotParafreeEvidenceRevalidates) {
  for (const auto& e : corpus()) {
    const Verdict v = check(e.input);
    if (!v.is(K::NotParafree)) continue;
    EXPECT_FALSE(v.failed().empty()) << e.name;
    const Presentation p = presentation_of(e.input);
    const AbelianInvariants ab = abelianization(p);
    if (v.has_failed("screen.torsion")) EXPECT_FALSE(ab.torsion_free()) << e.name;
    if (v.has_failed("screen.rank")) {
      EXPECT_EQ(ab.free_rank, p.rank()) << e.name;
      EXPECT_FALSE(p.relators().empty()) << e.name;
    }
  }
}

TEST(Hnn, RankTwoRouteAgreesWithDispatch) {
  std::mt19937_64 rng(71);
  const Presentation f2({"a", "b"}, {});
  const Verdict base = free_verdict(2);
  for (int i = 0; i < 60; ++i) {
    const Word u = test::random_reduced(rng, 2, 1 + i % 5), v = test::random_reduced(rng, 2, 1 + i % 4);
    if (u == v) continue;
    const Hnn h{f2, u, v, "t"};
    const Verdict a = check_hnn(h, base), b = check_hnn_rank2(h, base);
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_EQ(a.failed(), b.failed());
  }
}

TEST(Hnn, WitnessIsMonotoneInDegree) {
  const Hnn hs[] = {families::baumslag_solitar(1, 2), families::baumslag_solitar(1, 3)};
  for (const auto& h : hs) {
    bool seen = false;
    for (int d = 1; d <= 5; ++d) {
      const bool now = check_hnn(h, {{2, 3}, d}).is(K::Parafree);
      EXPECT_TRUE(!seen || now) << d;
      seen = seen || now;
    }
  }
}

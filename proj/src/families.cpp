#include "pfk/families.hpp"

#include <numeric>
#include <string>

#include "pfk/error.hpp"

namespace pfk::families {

namespace {

std::string params(std::initializer_list<std::int64_t> xs) {
  std::string s = "(";
  bool first = true;
  for (auto x : xs) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(x);
  }
  return s + ")";
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

Presentation orientable_surface(std::int64_t genus) {
  require(genus >= 0, "surface genus must be non-negative");
  std::vector<std::string> names;
  for (std::int64_t k = 1; k <= genus; ++k) {
    names.push_back("x" + std::to_string(k));
    names.push_back("y" + std::to_string(k));
  }
  const std::size_t rank = names.size();
  std::vector<Word> relators;
  if (genus > 0) {
    Word r(rank);
    for (std::size_t k = 0; k < static_cast<std::size_t>(genus); ++k)
      r = r * commutator(Word::generator(2 * k, rank),
                         Word::generator(2 * k + 1, rank));
    relators.push_back(std::move(r));
  }
  return Presentation(std::move(names), std::move(relators),
                      "Sigma_" + std::to_string(genus));
}

Presentation nonorientable_surface(std::int64_t genus) {
  require(genus >= 1, "non-orientable genus must be at least 1");
  std::vector<std::string> names;
  for (std::int64_t k = 0; k <= genus; ++k) names.push_back("x" + std::to_string(k));
  const std::size_t rank = names.size();
  std::vector<Letter> raw;
  for (std::size_t k = 0; k < rank; ++k) {
    raw.push_back(letter(k));
    raw.push_back(letter(k));
  }
  return Presentation(std::move(names), {Word::reduce(raw, rank)},
                      "S_" + std::to_string(genus));
}

Presentation free(std::int64_t rank) {
  require(rank >= 0, "free rank must be non-negative");
  return free_group(static_cast<std::size_t>(rank));
}

Hnn baumslag_solitar(std::int64_t n, std::int64_t m) {
  require(n != 0 && m != 0, "Baumslag-Solitar exponents must be non-zero");
  Presentation U({"x"}, {}, "Z");
  const Word x = U.generator(0);
  return Hnn{std::move(U), power(x, n), power(x, m), "y"};
}

Presentation g_family(std::int64_t i, std::int64_t j) {
  require(i >= 1 && j >= 1, "G_{i,j} needs positive i, j");
  const std::size_t rank = 3;
  const Word a = Word::generator(0, rank), b = Word::generator(1, rank),
             c = Word::generator(2, rank);
  const Word rhs = commutator(power(c, i), a) * commutator(power(c, j), b);
  return Presentation({"a", "b", "c"}, {a * invert(rhs)}, "G" + params({i, j}));
}

Presentation h_family(std::int64_t i, std::int64_t j) {
  require(i >= 1 && j >= 1, "H_{i,j} needs positive i, j");
  const std::size_t rank = 3;
  const Word a = Word::generator(0, rank), s = Word::generator(1, rank),
             t = Word::generator(2, rank);
  const Word rhs = commutator(power(a, i), power(t, j)) * commutator(s, t);
  return Presentation({"a", "s", "t"}, {a * invert(rhs)}, "H" + params({i, j}));
}

Amalgam k_family(std::int64_t i, std::int64_t j) {
  require(i != 0 && j != 0 && std::gcd(i, j) == 1,
          "K_{i,j} needs coprime non-zero i, j");
  Presentation U({"a", "s"}, {}, "F2");
  Presentation V({"t"}, {}, "Z");
  const Word a = U.generator(0), s = U.generator(1);
  Word u = power(a, i) * commutator(s, a);
  Word v = power(V.generator(0), j);
  return Amalgam{std::move(U), std::move(V), std::move(u), std::move(v)};
}

Amalgam n_family(std::int64_t p, std::int64_t q, std::int64_t r) {
  require(p != 0 && q != 0 && r != 0, "N_{p,q,r} needs non-zero exponents");
  require(std::gcd(std::gcd(p, q), r) == 1, "N_{p,q,r} needs gcd(p, q, r) = 1");
  Presentation U({"a", "b"}, {}, "F2");
  Presentation V({"c"}, {}, "Z");
  Word u = power(U.generator(0), p) * power(U.generator(1), q);
  Word v = power(V.generator(0), -r);
  return Amalgam{std::move(U), std::move(V), std::move(u), std::move(v)};
}

GroupInput builtin(std::string_view name, std::span<const std::int64_t> ps) {
  auto arity = [&](std::size_t k) {
    require(ps.size() == k, std::string(name) + " takes " + std::to_string(k) +
                                " parameter(s)");
  };
  if (name == "free") {
    arity(1);
    return free(ps[0]);
  }
  if (name == "surface") {
    arity(1);
    return orientable_surface(ps[0]);
  }
  if (name == "nonorientable") {
    arity(1);
    return nonorientable_surface(ps[0]);
  }
  if (name == "B") {
    arity(2);
    return baumslag_solitar(ps[0], ps[1]);
  }
  if (name == "G") {
    arity(2);
    return g_family(ps[0], ps[1]);
  }
  if (name == "H") {
    arity(2);
    return h_family(ps[0], ps[1]);
  }
  if (name == "K") {
    arity(2);
    return k_family(ps[0], ps[1]);
  }
  if (name == "N") {
    arity(3);
    return n_family(ps[0], ps[1], ps[2]);
  }
  throw InvalidArgument("unknown family '" + std::string(name) + "'");
}

}  // namespace pfk::families

#include "pfk/pquot.hpp"

#include <numeric>

#include "pfk/abelian.hpp"
#include "pfk/error.hpp"

namespace pfk {

PQuotElt::PQuotElt(TruncSeries s) : s_(std::move(s)) {
  if (s_.ring().is_integers()) throw InvalidArgument("p-quotient elements live over F_p");
  if (s_.constant() != 1) throw InvalidArgument("p-quotient elements have constant term 1");
}

PQuotElt PQuotElt::one(std::size_t alphabet, std::uint64_t p, int degree) {
  return PQuotElt(TruncSeries::one(alphabet, degree, Ring::mod(p)));
}

PQuotElt PQuotElt::gen(std::size_t i, std::size_t alphabet, std::uint64_t p, int degree) {
  const Ring r = Ring::mod(p);
  return PQuotElt(series_add(TruncSeries::one(alphabet, degree, r),
                             TruncSeries::variable(i, alphabet, degree, r)));
}

PQuotElt PQuotElt::of_word(const Word& w, std::uint64_t p, int degree) {
  return PQuotElt(magnus_embed(w, degree, Ring::mod(p)));
}

PQuotElt pq_mul(const PQuotElt& a, const PQuotElt& b) {
  return PQuotElt(series_mul(a.series(), b.series()));
}

PQuotElt pq_inv(const PQuotElt& a) { return PQuotElt(invert_unit(a.series())); }

PQuotElt pq_pow(const PQuotElt& a, std::int64_t e) {
  PQuotElt base = e < 0 ? pq_inv(a) : a;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  PQuotElt result = PQuotElt::one(a.alphabet(), a.prime(), a.degree());
  while (k) {
    if (k & 1) result = pq_mul(result, base);
    k >>= 1;
    if (k) base = pq_mul(base, base);
  }
  return result;
}

PQuotElt pq_comm(const PQuotElt& a, const PQuotElt& b) {
  return pq_mul(pq_mul(pq_inv(a), pq_inv(b)), pq_mul(a, b));
}

namespace {

// Least p^e >= D + 1.
std::int64_t unit_exponent(std::uint64_t p, int degree) {
  std::int64_t pe = static_cast<std::int64_t>(p);
  while (pe < degree + 1) pe *= static_cast<std::int64_t>(p);
  return pe;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  // extended Euclid; a and m coprime
  std::int64_t g = m, x = 0, r = ((a % m) + m) % m, y = 1;
  while (r) {
    const std::int64_t t = g / r;
    g -= t * r;
    std::swap(g, r);
    x -= t * y;
    std::swap(x, y);
  }
  return ((x % m) + m) % m;
}

std::optional<int> difference_degree(const PQuotElt& a, const PQuotElt& b) {
  return series_sub(a.series(), b.series()).lowest_degree();
}

}  // namespace

PQuotElt nth_root(const PQuotElt& a, std::int64_t n) {
  const auto p = static_cast<std::int64_t>(a.prime());
  if (n == 0 || std::gcd(n, p) != 1)
    throw InvalidArgument("root order " + std::to_string(n) + " is not prime to " +
                          std::to_string(p));
  const std::int64_t pe = unit_exponent(a.prime(), a.degree());
  return pq_pow(a, inverse_mod(n, pe));
}

PQuotElt evaluate_word(const Word& w, std::span<const PQuotElt> values) {
  if (values.size() != w.rank()) throw InvalidArgument("one value per generator is required");
  if (values.empty()) throw InvalidArgument("no values to evaluate at");
  std::vector<std::optional<PQuotElt>> inverse(values.size());
  PQuotElt result = PQuotElt::one(values[0].alphabet(), values[0].prime(), values[0].degree());
  for (Letter x : w.letters()) {
    const std::size_t g = generator_of(x);
    if (sign_of(x) > 0) {
      result = pq_mul(result, values[g]);
    } else {
      if (!inverse[g]) inverse[g] = pq_inv(values[g]);
      result = pq_mul(result, *inverse[g]);
    }
  }
  return result;
}

SolveResult solve_word_equation(const Word& omega, std::span<const PQuotElt> constants,
                                std::optional<PQuotElt> seed) {
  if (omega.rank() != constants.size() + 1)
    throw InvalidArgument("need one constant for each of x2..xn");
  if (constants.empty()) throw InvalidArgument("the equation needs at least one constant");
  const PQuotElt& c0 = constants[0];
  for (const auto& c : constants)
    if (c.prime() != c0.prime() || c.degree() != c0.degree() || c.alphabet() != c0.alphabet())
      throw InvalidArgument("constants over different quotients");
  const auto p = static_cast<std::int64_t>(c0.prime());
  const std::int64_t a = exponent_vector(omega)[0];
  if (((a % p) + p) % p == 0)
    throw InvalidArgument("exponent sum of x1 is divisible by " + std::to_string(p));
  // m * a = -1 mod p
  const std::int64_t m = (p - 1) * inverse_mod(a, p) % p;

  std::vector<PQuotElt> values(constants.begin(), constants.end());
  values.insert(values.begin(), PQuotElt::one(c0.alphabet(), c0.prime(), c0.degree()));
  PQuotElt y = seed ? *seed : values[0];
  SolveResult out{values[0], m, 0, {}};
  const int cap = 4 * c0.degree();
  for (;;) {
    values[0] = pq_pow(y, m);
    PQuotElt next = pq_mul(y, evaluate_word(omega, values));
    const auto diff = difference_degree(next, y);
    if (!diff) break;
    if (++out.iterations > cap)
      throw Error("word equation iteration did not settle within " + std::to_string(cap) +
                  " steps");
    out.agreement.push_back(*diff);
    y = std::move(next);
  }
  out.solution = pq_pow(y, m);
  return out;
}

bool one_relator_free_completion(const Presentation& p, std::uint64_t q) {
  if (p.relators().size() != 1)
    throw InvalidArgument("expected exactly one relator, got " +
                          std::to_string(p.relators().size()));
  if (!is_prime(q)) throw InvalidArgument(std::to_string(q) + " is not prime");
  const auto qq = static_cast<std::int64_t>(q);
  for (auto e : exponent_vector(p.relators()[0]))
    if (e % qq != 0) return true;
  return false;
}

std::size_t frattini_rank(const Presentation& p, std::uint64_t q) {
  return p_ab_dimension(p, q);
}

}  // namespace pfk

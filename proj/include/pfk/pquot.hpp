#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pfk/magnus.hpp"
#include "pfk/presentation.hpp"

namespace pfk {

/// Element of 1 + m inside F_p<X_1..X_n>/m^{D+1}.
class PQuotElt {
 public:
  /// Throws unless s is over F_p with constant term 1.
  explicit PQuotElt(TruncSeries s);

  static PQuotElt one(std::size_t alphabet, std::uint64_t p, int degree);
  /// 1 + X_i
  static PQuotElt gen(std::size_t i, std::size_t alphabet, std::uint64_t p, int degree);
  static PQuotElt of_word(const Word& w, std::uint64_t p, int degree);

  const TruncSeries& series() const noexcept { return s_; }
  std::uint64_t prime() const noexcept { return s_.ring().p; }
  int degree() const noexcept { return s_.degree(); }
  std::size_t alphabet() const noexcept { return s_.alphabet(); }

  bool operator==(const PQuotElt&) const = default;

 private:
  TruncSeries s_;
};

PQuotElt pq_mul(const PQuotElt& a, const PQuotElt& b);
PQuotElt pq_inv(const PQuotElt& a);
PQuotElt pq_pow(const PQuotElt& a, std::int64_t e);
/// a^-1 b^-1 a b
PQuotElt pq_comm(const PQuotElt& a, const PQuotElt& b);

/// The unique b with b^n = a; throws InvalidArgument when p divides n.
PQuotElt nth_root(const PQuotElt& a, std::int64_t n);

/// w(values[0], values[1], ...).
PQuotElt evaluate_word(const Word& w, std::span<const PQuotElt> values);

struct SolveResult {
  PQuotElt solution;
  std::int64_t m = 1;  // the substitution x = y^m
  int iterations = 0;
  /// Lowest degree at which consecutive iterates differ, per step.
  std::vector<int> agreement;
};

/// Solves omega(x, c_2, ..., c_n) = 1 for x by iterating
/// y <- y * omega(y^m, c) with p | m * omega_{x_1} + 1, then x = y^m.
/// Throws InvalidArgument when p divides omega_{x_1}, Error when the
/// iteration does not settle within 4 D steps.
SolveResult solve_word_equation(const Word& omega, std::span<const PQuotElt> constants,
                                std::optional<PQuotElt> seed = std::nullopt);

/// Whether some exponent sum of the single relator is prime to q.
bool one_relator_free_completion(const Presentation& p, std::uint64_t q);

/// dim_{F_q} G / G^q [G, G].
std::size_t frattini_rank(const Presentation& p, std::uint64_t q);

}  // namespace pfk

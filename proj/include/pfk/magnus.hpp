#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pfk/presentation.hpp"

namespace pfk {

/// Coefficient ring: the integers (p == 0) or F_p.
struct Ring {
  std::uint64_t p = 0;

  static Ring integers() { return {0}; }
  static Ring mod(std::uint64_t p);  // throws unless p is prime

  bool is_integers() const noexcept { return p == 0; }
  bool operator==(const Ring&) const = default;
  std::string to_string() const;  // "Z" or "F<p>"
};

using Monomial = std::vector<std::size_t>;

/// Position of a monomial in the degree-lexicographic enumeration of all
/// monomials over n letters (the empty monomial is 0).
std::uint64_t monomial_index(const Monomial& m, std::size_t n);
Monomial monomial_at(std::uint64_t index, std::size_t n);
/// Number of monomials of degree <= d over n letters; throws SizeLimit on
/// overflow.
std::uint64_t monomial_count(std::size_t n, int d);

/// Element of Z<<X_1..X_n>> or F_p<<X_1..X_n>> modulo degree > D.
class TruncSeries {
 public:
  TruncSeries(std::size_t alphabet, int degree, Ring ring);

  static TruncSeries one(std::size_t alphabet, int degree, Ring ring);
  static TruncSeries variable(std::size_t i, std::size_t alphabet, int degree, Ring ring);

  std::size_t alphabet() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  Ring ring() const noexcept { return ring_; }

  /// Non-zero coefficients keyed by monomial_index; ordered deg-lex.
  const std::map<std::uint64_t, std::int64_t>& terms() const noexcept { return terms_; }
  std::int64_t coefficient(const Monomial& m) const;
  std::int64_t constant() const;
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Lowest degree carrying a non-zero coefficient.
  std::optional<int> lowest_degree() const;

  /// Adds c to the coefficient at `index`, dropping terms beyond the degree.
  void add_term(std::uint64_t index, std::int64_t c);

  bool operator==(const TruncSeries&) const = default;

  /// "1 + X1 - X1*X2", variables named by `names` (default X1, X2, ...).
  std::string format(std::span<const std::string> names = {}) const;

 private:
  std::size_t n_;
  int degree_;
  Ring ring_;
  std::map<std::uint64_t, std::int64_t> terms_;
};

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_scale(const TruncSeries& a, std::int64_t c);
TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);
/// Throws InvalidArgument unless the constant term is a unit.
TruncSeries invert_unit(const TruncSeries& s);

/// x_i -> 1 + X_i, extended multiplicatively.
TruncSeries magnus_embed(const Word& w, int degree, Ring ring);

/// Lowest degree of M(w) - 1 over Z, or nullopt when it exceeds D.
std::optional<int> lcs_depth(const Word& w, int degree);

/// Two-sided ideal generated by M(r) - 1 in F_q<X>/m^{D+1}, as an echelon
/// basis of vectors indexed by monomial_index.
class QuotAlgebra {
 public:
  /// Largest total monomial count accepted by build().
  static constexpr std::uint64_t kMaxDimension = 5461;

  static QuotAlgebra build(const Presentation& p, std::uint64_t q, int degree);

  std::size_t alphabet() const noexcept { return n_; }
  std::uint64_t prime() const noexcept { return q_; }
  int degree() const noexcept { return degree_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::size_t ideal_dimension() const noexcept { return basis_.size(); }
  /// Pivot (lowest non-zero index) of every basis vector, ascending.
  std::vector<std::uint64_t> leading_indices() const;

  /// Reduces s (over F_q, same alphabet and degree) to its normal form.
  TruncSeries reduce(const TruncSeries& s) const;
  bool contains(const TruncSeries& s) const { return reduce(s).is_zero(); }

  /// Degree-k parts of the basis vectors whose pivot has degree k, as
  /// coefficient vectors over the n^k monomials of that degree.
  std::vector<std::vector<std::uint32_t>> leading_slice(int k) const;

 private:
  QuotAlgebra() = default;

  using Vec = std::vector<std::uint32_t>;
  using Sparse = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  // Reduces v in place. With `full` false, stops at the first index that is
  // not a pivot and returns it; otherwise reduces everything and returns the
  // lowest surviving index.
  std::optional<std::uint64_t> reduce_dense(Vec& v, bool full) const;
  Vec expand(const Sparse& s) const;
  Vec dense(const TruncSeries& s) const;
  Vec shift_left(const Vec& v, std::size_t i) const;   // X_i * v
  Vec shift_right(const Vec& v, std::size_t i) const;  // v * X_i

  std::size_t n_ = 0;
  std::uint64_t q_ = 2;
  int degree_ = 0;
  std::size_t dim_ = 0;
  std::vector<int> deg_;            // degree of each index
  std::vector<std::uint64_t> val_;  // position inside its degree block
  std::vector<std::uint64_t> offset_;
  std::vector<std::uint64_t> pow_;
  std::map<std::uint64_t, Sparse> basis_;  // pivot -> vector with 1 at pivot
};

bool reduces_to_identity(const Word& w, const QuotAlgebra& qa);

struct Witness {
  std::uint64_t q;
  int degree;
};
struct Unwitnessed {
  int max_degree;
};
using NontrivialityResult = std::variant<Witness, Unwitnessed>;

/// Least D <= Dmax at which w survives in the unit group of
/// F_q<X>/(I + m^{D+1}). Unwitnessed proves nothing.
NontrivialityResult nilpotent_nontriviality_witness(const Presentation& p, const Word& w,
                                                    std::uint64_t q, int max_degree);

}  // namespace pfk

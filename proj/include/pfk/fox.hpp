#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pfk/magnus.hpp"
#include "pfk/presentation.hpp"

namespace pfk {

/// Element of Z[F] or F_p[F]: a finite sum of reduced words.
class GroupRingElt {
 public:
  GroupRingElt(std::size_t rank, Ring ring = Ring::integers()) : rank_(rank), ring_(ring) {}

  static GroupRingElt one(std::size_t rank, Ring ring = Ring::integers());
  static GroupRingElt of(const Word& w, std::int64_t c = 1, Ring ring = Ring::integers());

  std::size_t rank() const noexcept { return rank_; }
  Ring ring() const noexcept { return ring_; }
  const std::map<Word, std::int64_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::int64_t coefficient(const Word& w) const;

  void add_term(const Word& w, std::int64_t c);

  bool operator==(const GroupRingElt&) const = default;

  /// Terms in shortlex order, e.g. "1 - x^-1 + 2 x y".
  std::string format(std::span<const std::string> names) const;

 private:
  std::size_t rank_;
  Ring ring_;
  std::map<Word, std::int64_t> terms_;
};

GroupRingElt gr_add(const GroupRingElt& a, const GroupRingElt& b);
GroupRingElt gr_sub(const GroupRingElt& a, const GroupRingElt& b);
GroupRingElt gr_scale(const GroupRingElt& a, std::int64_t c);
GroupRingElt gr_mul(const GroupRingElt& a, const GroupRingElt& b);
/// Sum of the coefficients.
std::int64_t augmentation(const GroupRingElt& e);

/// d w / d x_s.
GroupRingElt fox_derivative(const Word& w, std::size_t s, Ring ring = Ring::integers());

/// Whether w - 1 == sum_s (d w / d x_s)(x_s - 1) in Z[F].
bool fundamental_identity_check(const Word& w);

/// Rows are relators, columns generators.
std::vector<std::vector<GroupRingElt>> jacobian(const Presentation& p,
                                                Ring ring = Ring::integers());

/// sum c_w (M(w) mod q) reduced against the ideal basis. Integer coefficients
/// are reduced mod q.
TruncSeries evaluate_in_quotient(const GroupRingElt& e, const QuotAlgebra& qa);

struct SwanReport {
  Presentation realized;
  /// (first, second) components of the boundary element, over `realized`.
  std::pair<GroupRingElt, GroupRingElt> element;
  /// beta of the element; zero in the group ring of the realized group.
  GroupRingElt beta;
  std::uint64_t q = 2;
  int degree = 4;
  TruncSeries coset;
  bool verified = false;
};

/// Amalgam: (1 - u, v - 1) with beta(x, y) = x + y.
/// Hnn: (v - 1 - t(u - 1), v - 1) with beta(x, y) = x + y(t - 1).
/// The beta image is reduced in the quotient algebra of the realized group.
SwanReport swan_boundary_data(const SplittingSpec& spec, std::uint64_t q = 2, int degree = 4);

}  // namespace pfk

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pfk/presentation.hpp"

namespace pfk {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMat identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool operator==(const IntMat&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> a_;
};

IntMat operator*(const IntMat& a, const IntMat& b);

struct SnfResult {
  /// Non-zero diagonal entries d1 | d2 | ... | dr, all positive (1s kept).
  std::vector<BigInt> invariant_factors;
  /// Rank of the cokernel Z^cols / (row lattice).
  std::size_t cokernel_free_rank = 0;
  /// When requested: left * m * right is the diagonal matrix.
  std::optional<IntMat> left;
  std::optional<IntMat> right;

  /// The factors d > 1, i.e. the torsion of the cokernel.
  std::vector<BigInt> torsion() const;
};

/// Smith normal form by repeated minimal-absolute-value pivoting.
SnfResult snf(const IntMat& m, bool with_transforms = false);

/// Rows are the exponent vectors of the relators.
IntMat exponent_matrix(const Presentation& p);

struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // entries >= 2, divisibility chain

  bool torsion_free() const { return torsion.empty(); }
  bool operator==(const AbelianInvariants&) const = default;
  /// "Z^r x Z/d1 x ...", or "1" for the trivial group.
  std::string to_string() const;
};

/// Coordinates of an element of G_ab = Z^r + (+) Z/d_i.
struct AbelianImage {
  std::vector<BigInt> free_part;
  std::vector<BigInt> torsion_part;  // residues in [0, d_i)
  std::vector<BigInt> torsion_moduli;

  bool is_zero() const;
};

/// G -> G_ab for a fixed presentation, with SNF coordinates.
class Abelianizer {
 public:
  explicit Abelianizer(const Presentation& p);

  const AbelianInvariants& invariants() const noexcept { return invariants_; }
  AbelianImage image(const Word& w) const;
  AbelianImage image(const std::vector<std::int64_t>& exponents) const;

 private:
  std::size_t rank_ = 0;
  IntMat right_;
  std::vector<BigInt> diagonal_;  // all non-zero diagonal entries
  AbelianInvariants invariants_;
};

AbelianInvariants abelianization(const Presentation& p);
AbelianImage image_in_ab(const Word& w, const Presentation& p);

struct ProperPowerInAb {
  enum class Status { No, Yes, TrivialImage };
  Status status = Status::No;
  /// Yes: the smallest prime k with image = k * y. No: the gcd witness
  /// of the free part (1 when torsion-free).
  BigInt k = 0;
};

/// Whether the image of w in G_ab is k * y for some k >= 2 and y in G_ab.
/// The zero class is reported as TrivialImage.
ProperPowerInAb is_proper_power_in_ab(const Word& w, const Presentation& p);
ProperPowerInAb is_proper_power_in_ab(const AbelianImage& image);

bool is_prime(std::uint64_t n);

/// Rank over F_q of an integer matrix reduced mod q.
std::size_t rank_mod(const std::vector<std::vector<std::int64_t>>& rows,
                     std::size_t cols, std::uint64_t q);

/// G -> G / G^q [G, G] = F_q^d, with coordinates given by the free columns
/// of the reduced row echelon form of the exponent matrix mod q.
class ModAbelianizer {
 public:
  ModAbelianizer(const Presentation& p, std::uint64_t q);

  std::size_t dimension() const noexcept { return free_columns_.size(); }
  std::uint64_t prime() const noexcept { return q_; }
  std::vector<std::uint32_t> image(const std::vector<std::int64_t>& exponents) const;
  std::vector<std::uint32_t> image(const Word& w) const;
  /// Image of the i-th generator.
  std::vector<std::uint32_t> generator_image(std::size_t i) const;

 private:
  std::uint64_t q_;
  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> rref_;  // rows with leading 1
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_columns_;
};

/// dim over F_q of G / G^q [G, G]. Throws InvalidArgument if q is not prime.
std::size_t p_ab_dimension(const Presentation& p, std::uint64_t q);

/// sum_v r_ab(G_v) - sum_e r_ab(G_e) - chi(graph) with chi = |V| - |E| - 1
/// and r_ab = 1 for every (cyclic, non-trivial) edge group.
std::int64_t rank_formula_expected(const GraphOfGroups& g);

}  // namespace pfk

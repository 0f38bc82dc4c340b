#include "pfk/abelian.hpp"

#include <algorithm>
#include <sstream>

#include "pfk/error.hpp"

namespace pfk {

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat operator*(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix shape mismatch");
  IntMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::vector<BigInt> SnfResult::torsion() const {
  std::vector<BigInt> out;
  for (const auto& d : invariant_factors)
    if (d > 1) out.push_back(d);
  return out;
}

namespace {

class SnfWorker {
 public:
  SnfWorker(const IntMat& m, bool track)
      : a_(m), track_(track) {
    if (track_) {
      left_ = IntMat::identity(m.rows());
      right_ = IntMat::identity(m.cols());
    }
  }

  SnfResult run() {
    const std::size_t rows = a_.rows(), cols = a_.cols();
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
      if (!pivot_from_block(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (a_(i, t) == 0) continue;
          add_row(i, t, -BigInt(a_(i, t) / a_(t, t)));
          if (a_(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a_(t, j) == 0) continue;
          add_col(j, t, -BigInt(a_(t, j) / a_(t, t)));
          if (a_(t, j) != 0) clean = false;
        }
        if (!clean) {
          pivot_from_cross(t);
          continue;
        }
        const auto bad = find_non_multiple(t);
        if (!bad) break;
        add_row(t, *bad, 1);
      }
      if (a_(t, t) < 0) negate_row(t);
    }
    SnfResult out;
    for (std::size_t i = 0; i < t; ++i) out.invariant_factors.push_back(a_(i, i));
    out.cokernel_free_rank = cols - t;
    if (track_) {
      out.left = std::move(left_);
      out.right = std::move(right_);
    }
    return out;
  }

 private:
  static BigInt abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

  bool pivot_from_block(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    BigInt best_abs;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (a_(i, j) == 0) continue;
        BigInt v = abs(a_(i, j));
        if (!best || v < best_abs) {
          best = {i, j};
          best_abs = std::move(v);
        }
      }
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  void pivot_from_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    BigInt best = abs(a_(t, t));
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      if (a_(i, t) != 0 && (best == 0 || abs(a_(i, t)) < best)) {
        best = abs(a_(i, t));
        bi = i;
        bj = t;
      }
    for (std::size_t j = t + 1; j < a_.cols(); ++j)
      if (a_(t, j) != 0 && (best == 0 || abs(a_(t, j)) < best)) {
        best = abs(a_(t, j));
        bi = t;
        bj = j;
      }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  std::optional<std::size_t> find_non_multiple(std::size_t t) const {
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      for (std::size_t j = t + 1; j < a_.cols(); ++j)
        if (a_(i, j) % a_(t, t) != 0) return i;
    return std::nullopt;
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < a_.cols(); ++j) std::swap(a_(i, j), a_(k, j));
    if (track_)
      for (std::size_t j = 0; j < left_.cols(); ++j) std::swap(left_(i, j), left_(k, j));
  }

  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < a_.rows(); ++i) std::swap(a_(i, j), a_(i, k));
    if (track_)
      for (std::size_t i = 0; i < right_.rows(); ++i) std::swap(right_(i, j), right_(i, k));
  }

  // row_i += c * row_k
  void add_row(std::size_t i, std::size_t k, const BigInt& c) {
    for (std::size_t j = 0; j < a_.cols(); ++j)
      if (a_(k, j) != 0) a_(i, j) += c * a_(k, j);
    if (track_)
      for (std::size_t j = 0; j < left_.cols(); ++j)
        if (left_(k, j) != 0) left_(i, j) += c * left_(k, j);
  }

  // col_j += c * col_k
  void add_col(std::size_t j, std::size_t k, const BigInt& c) {
    for (std::size_t i = 0; i < a_.rows(); ++i)
      if (a_(i, k) != 0) a_(i, j) += c * a_(i, k);
    if (track_)
      for (std::size_t i = 0; i < right_.rows(); ++i)
        if (right_(i, k) != 0) right_(i, j) += c * right_(i, k);
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(i, j) = -a_(i, j);
    if (track_)
      for (std::size_t j = 0; j < left_.cols(); ++j) left_(i, j) = -left_(i, j);
  }

  IntMat a_;
  bool track_;
  IntMat left_;
  IntMat right_;
};

}  // namespace

SnfResult snf(const IntMat& m, bool with_transforms) {
  return SnfWorker(m, with_transforms).run();
}

IntMat exponent_matrix(const Presentation& p) {
  IntMat m(p.relators().size(), p.rank());
  for (std::size_t r = 0; r < p.relators().size(); ++r) {
    const auto e = exponent_vector(p.relators()[r]);
    for (std::size_t c = 0; c < e.size(); ++c) m(r, c) = e[c];
  }
  return m;
}

std::string AbelianInvariants::to_string() const {
  std::ostringstream out;
  bool first = true;
  if (free_rank == 1) {
    out << "Z";
    first = false;
  } else if (free_rank > 1) {
    out << "Z^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) out << " x ";
    first = false;
    out << "Z/" << d;
  }
  return first ? "1" : out.str();
}

bool AbelianImage::is_zero() const {
  return std::all_of(free_part.begin(), free_part.end(), [](const BigInt& x) { return x == 0; }) &&
         std::all_of(torsion_part.begin(), torsion_part.end(), [](const BigInt& x) { return x == 0; });
}

Abelianizer::Abelianizer(const Presentation& p) : rank_(p.rank()) {
  SnfResult s = snf(exponent_matrix(p), true);
  right_ = std::move(*s.right);
  diagonal_ = s.invariant_factors;
  invariants_.free_rank = s.cokernel_free_rank;
  invariants_.torsion = s.torsion();
}

AbelianImage Abelianizer::image(const Word& w) const {
  if (w.rank() != rank_) throw InvalidArgument("word over the wrong alphabet");
  return image(exponent_vector(w));
}

AbelianImage Abelianizer::image(const std::vector<std::int64_t>& e) const {
  if (e.size() != rank_) throw InvalidArgument("exponent vector of the wrong length");
  std::vector<BigInt> c(rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    if (e[i] == 0) continue;
    for (std::size_t j = 0; j < rank_; ++j) c[j] += e[i] * right_(i, j);
  }
  AbelianImage out;
  for (std::size_t j = 0; j < rank_; ++j) {
    if (j < diagonal_.size()) {
      const BigInt& d = diagonal_[j];
      if (d == 1) continue;
      BigInt r = c[j] % d;
      if (r < 0) r += d;
      out.torsion_part.push_back(r);
      out.torsion_moduli.push_back(d);
    } else {
      out.free_part.push_back(c[j]);
    }
  }
  return out;
}

AbelianInvariants abelianization(const Presentation& p) {
  const SnfResult s = snf(exponent_matrix(p));
  return {s.cokernel_free_rank, s.torsion()};
}

AbelianImage image_in_ab(const Word& w, const Presentation& p) {
  return Abelianizer(p).image(w);
}

namespace {

BigInt gcd_big(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// k * y = image is solvable in the torsion part.
bool torsion_divisible(const AbelianImage& im, const BigInt& k) {
  for (std::size_t i = 0; i < im.torsion_part.size(); ++i)
    if (im.torsion_part[i] % gcd_big(k, im.torsion_moduli[i]) != 0) return false;
  return true;
}

}  // namespace

ProperPowerInAb is_proper_power_in_ab(const AbelianImage& im) {
  using S = ProperPowerInAb::Status;
  if (im.is_zero()) return {S::TrivialImage, 0};
  BigInt g = 0;
  for (const auto& x : im.free_part) g = gcd_big(g, x);
  if (g != 0) {
    BigInt rest = g;
    for (BigInt k = 2; k * k <= rest || rest > 1; ++k) {
      if (k * k > rest) k = rest;
      if (rest % k != 0) continue;
      while (rest % k == 0) rest /= k;
      if (torsion_divisible(im, k)) return {S::Yes, k};
    }
    return {S::No, g};
  }
  // Free part vanishes: a torsion class is divisible by every k coprime to
  // its order, so some prime always works.
  for (BigInt k = 2;; ++k) {
    bool prime = true;
    for (BigInt f = 2; f * f <= k; ++f)
      if (k % f == 0) prime = false;
    if (prime && torsion_divisible(im, k)) return {S::Yes, k};
  }
}

ProperPowerInAb is_proper_power_in_ab(const Word& w, const Presentation& p) {
  return is_proper_power_in_ab(image_in_ab(w, p));
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

namespace {

void require_prime(std::uint64_t q) {
  if (!is_prime(q)) throw InvalidArgument(std::to_string(q) + " is not prime");
}

std::uint32_t mod(std::int64_t x, std::uint64_t q) {
  const auto m = static_cast<std::int64_t>(q);
  std::int64_t r = x % m;
  return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t q) {
  std::uint64_t result = 1, base = a % q, e = q - 2;
  while (e) {
    if (e & 1) result = result * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return result;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<std::uint32_t>>& rows,
                              std::size_t cols, std::uint64_t q) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t k = r;
    while (k < rows.size() && rows[k][c] == 0) ++k;
    if (k == rows.size()) continue;
    std::swap(rows[r], rows[k]);
    const std::uint64_t inv = inverse_mod(rows[r][c], q);
    for (auto& x : rows[r]) x = static_cast<std::uint32_t>(x * inv % q);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint64_t f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j)
        rows[i][j] = static_cast<std::uint32_t>((rows[i][j] + (q - f) * rows[r][j]) % q);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

std::size_t rank_mod(const std::vector<std::vector<std::int64_t>>& rows,
                     std::size_t cols, std::uint64_t q) {
  require_prime(q);
  std::vector<std::vector<std::uint32_t>> m;
  m.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<std::uint32_t> r(cols);
    for (std::size_t j = 0; j < cols; ++j) r[j] = mod(row[j], q);
    m.push_back(std::move(r));
  }
  return rref(m, cols, q).size();
}

ModAbelianizer::ModAbelianizer(const Presentation& p, std::uint64_t q)
    : q_(q), n_(p.rank()) {
  require_prime(q);
  for (const auto& r : p.relators()) {
    const auto e = exponent_vector(r);
    std::vector<std::uint32_t> row(n_);
    for (std::size_t j = 0; j < n_; ++j) row[j] = mod(e[j], q);
    rref_.push_back(std::move(row));
  }
  pivots_ = rref(rref_, n_, q);
  std::vector<bool> is_pivot(n_, false);
  for (auto c : pivots_) is_pivot[c] = true;
  for (std::size_t c = 0; c < n_; ++c)
    if (!is_pivot[c]) free_columns_.push_back(c);
}

std::vector<std::uint32_t> ModAbelianizer::image(const std::vector<std::int64_t>& e) const {
  if (e.size() != n_) throw InvalidArgument("exponent vector of the wrong length");
  std::vector<std::uint64_t> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = mod(e[j], q_);
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    const std::uint64_t f = x[pivots_[k]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) x[j] = (x[j] + (q_ - f) * rref_[k][j]) % q_;
  }
  std::vector<std::uint32_t> out;
  out.reserve(free_columns_.size());
  for (auto c : free_columns_) out.push_back(static_cast<std::uint32_t>(x[c]));
  return out;
}

std::vector<std::uint32_t> ModAbelianizer::image(const Word& w) const {
  return image(exponent_vector(w));
}

std::vector<std::uint32_t> ModAbelianizer::generator_image(std::size_t i) const {
  std::vector<std::int64_t> e(n_, 0);
  e.at(i) = 1;
  return image(e);
}

std::size_t p_ab_dimension(const Presentation& p, std::uint64_t q) {
  return ModAbelianizer(p, q).dimension();
}

std::int64_t rank_formula_expected(const GraphOfGroups& g) {
  std::int64_t sum = 0;
  for (const auto& v : g.vertices)
    sum += static_cast<std::int64_t>(abelianization(v).free_rank);
  const auto V = static_cast<std::int64_t>(g.vertices.size());
  const auto E = static_cast<std::int64_t>(g.edges.size());
  const std::int64_t chi = V - E - 1;
  return sum - E - chi;
}

}  // namespace pfk

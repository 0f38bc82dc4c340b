#include "pfk/magnus.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "pfk/abelian.hpp"
#include "pfk/error.hpp"

namespace pfk {

Ring Ring::mod(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  if (p >= (1ULL << 31)) throw InvalidArgument("prime too large");
  return {p};
}

std::string Ring::to_string() const {
  return is_integers() ? "Z" : "F" + std::to_string(p);
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw SizeLimit("monomial index overflow");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw SizeLimit("monomial index overflow");
  return r;
}

// Offsets of the degree blocks and the powers n^k, for k = 0..d+1.
struct Layout {
  std::vector<std::uint64_t> offset;
  std::vector<std::uint64_t> pow;

  Layout(std::size_t n, int d) {
    offset.push_back(0);
    pow.push_back(1);
    for (int k = 0; k <= d; ++k) {
      offset.push_back(checked_add(offset.back(), pow.back()));
      pow.push_back(checked_mul(pow.back(), n));
    }
  }

  int degree_of(std::uint64_t index) const {
    int k = 0;
    while (k + 1 < static_cast<int>(offset.size()) && offset[k + 1] <= index) ++k;
    return k;
  }
};

std::int64_t reduce_coeff(std::int64_t c, const Ring& r) {
  if (r.is_integers()) return c;
  const auto p = static_cast<std::int64_t>(r.p);
  c %= p;
  return c < 0 ? c + p : c;
}

std::int64_t add_coeff(std::int64_t a, std::int64_t b, const Ring& r) {
  if (!r.is_integers()) return reduce_coeff(a + b, r);
  std::int64_t s;
  if (__builtin_add_overflow(a, b, &s)) throw SizeLimit("integer coefficient overflow");
  return s;
}

std::int64_t mul_coeff(std::int64_t a, std::int64_t b, const Ring& r) {
  if (!r.is_integers()) {
    return static_cast<std::int64_t>(static_cast<unsigned __int128>(a) * b % r.p);
  }
  std::int64_t s;
  if (__builtin_mul_overflow(a, b, &s)) throw SizeLimit("integer coefficient overflow");
  return s;
}

void require_compatible(const TruncSeries& a, const TruncSeries& b) {
  if (a.alphabet() != b.alphabet() || a.degree() != b.degree() || !(a.ring() == b.ring()))
    throw InvalidArgument("series over different alphabets, degrees or rings");
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

}  // namespace

std::uint64_t monomial_index(const Monomial& m, std::size_t n) {
  const Layout l(n, static_cast<int>(m.size()));
  std::uint64_t v = 0;
  for (auto i : m) {
    if (i >= n) throw InvalidArgument("monomial letter out of range");
    v = checked_add(checked_mul(v, n), i);
  }
  return checked_add(l.offset[m.size()], v);
}

Monomial monomial_at(std::uint64_t index, std::size_t n) {
  if (index == 0) return {};
  if (n == 0) throw InvalidArgument("monomial index out of range");
  int k = 0;
  std::uint64_t offset = 0, block = 1;
  while (index >= offset + block) {
    offset = checked_add(offset, block);
    block = checked_mul(block, n);
    ++k;
  }
  std::uint64_t v = index - offset;
  Monomial m(static_cast<std::size_t>(k));
  for (int j = k - 1; j >= 0; --j) {
    m[static_cast<std::size_t>(j)] = static_cast<std::size_t>(v % n);
    v /= n;
  }
  return m;
}

std::uint64_t monomial_count(std::size_t n, int d) {
  if (d < 0) return 0;
  return Layout(n, d).offset[static_cast<std::size_t>(d) + 1];
}

TruncSeries::TruncSeries(std::size_t alphabet, int degree, Ring ring)
    : n_(alphabet), degree_(degree), ring_(ring) {
  if (degree < 0) throw InvalidArgument("truncation degree must be non-negative");
  monomial_count(alphabet, degree);
}

TruncSeries TruncSeries::one(std::size_t alphabet, int degree, Ring ring) {
  TruncSeries s(alphabet, degree, ring);
  s.add_term(0, 1);
  return s;
}

TruncSeries TruncSeries::variable(std::size_t i, std::size_t alphabet, int degree, Ring ring) {
  if (i >= alphabet) throw InvalidArgument("variable index out of range");
  TruncSeries s(alphabet, degree, ring);
  s.add_term(1 + i, 1);
  return s;
}

std::int64_t TruncSeries::coefficient(const Monomial& m) const {
  if (static_cast<int>(m.size()) > degree_) return 0;
  const auto it = terms_.find(monomial_index(m, n_));
  return it == terms_.end() ? 0 : it->second;
}

std::int64_t TruncSeries::constant() const {
  const auto it = terms_.find(0);
  return it == terms_.end() ? 0 : it->second;
}

std::optional<int> TruncSeries::lowest_degree() const {
  if (terms_.empty()) return std::nullopt;
  return Layout(n_, degree_).degree_of(terms_.begin()->first);
}

void TruncSeries::add_term(std::uint64_t index, std::int64_t c) {
  if (index >= monomial_count(n_, degree_)) return;
  c = reduce_coeff(c, ring_);
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(index, c);
  if (!fresh) {
    it->second = add_coeff(it->second, c, ring_);
    if (it->second == 0) terms_.erase(it);
  }
}

std::string TruncSeries::format(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [index, c] : terms_) {
    const Monomial m = monomial_at(index, n_);
    std::int64_t shown = c;
    if (first) {
      if (shown < 0) out << "-";
    } else {
      out << (shown < 0 ? " - " : " + ");
    }
    first = false;
    const std::int64_t mag = shown < 0 ? -shown : shown;
    if (m.empty()) {
      out << mag;
      continue;
    }
    if (mag != 1) out << mag << "*";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out << "*";
      if (m[j] < names.size())
        out << names[m[j]];
      else
        out << "X" << (m[j] + 1);
    }
  }
  return out.str();
}

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b) {
  require_compatible(a, b);
  TruncSeries r = a;
  for (const auto& [i, c] : b.terms()) r.add_term(i, c);
  return r;
}

TruncSeries series_scale(const TruncSeries& a, std::int64_t c) {
  TruncSeries r(a.alphabet(), a.degree(), a.ring());
  for (const auto& [i, x] : a.terms()) r.add_term(i, mul_coeff(x, reduce_coeff(c, a.ring()), a.ring()));
  return r;
}

TruncSeries series_sub(const TruncSeries& a, const TruncSeries& b) {
  return series_add(a, series_scale(b, -1));
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
  require_compatible(a, b);
  const std::size_t n = a.alphabet();
  const int D = a.degree();
  const Layout l(n, D);
  struct Term {
    int deg;
    std::uint64_t val;
    std::int64_t c;
  };
  auto decode = [&](const TruncSeries& s) {
    std::vector<Term> out;
    out.reserve(s.terms().size());
    for (const auto& [i, c] : s.terms()) {
      const int d = l.degree_of(i);
      out.push_back({d, i - l.offset[static_cast<std::size_t>(d)], c});
    }
    return out;
  };
  const auto ta = decode(a), tb = decode(b);
  TruncSeries r(n, D, a.ring());
  for (const auto& x : ta)
    for (const auto& y : tb) {
      const int d = x.deg + y.deg;
      if (d > D) break;  // tb is sorted by degree
      const std::uint64_t idx =
          l.offset[static_cast<std::size_t>(d)] + x.val * l.pow[static_cast<std::size_t>(y.deg)] + y.val;
      r.add_term(idx, mul_coeff(x.c, y.c, a.ring()));
    }
  return r;
}

TruncSeries invert_unit(const TruncSeries& s) {
  const std::int64_t c0 = s.constant();
  std::int64_t inv;
  if (s.ring().is_integers()) {
    if (c0 != 1 && c0 != -1) throw InvalidArgument("constant term is not a unit");
    inv = c0;
  } else {
    if (c0 == 0) throw InvalidArgument("constant term is not a unit");
    inv = static_cast<std::int64_t>(inverse_mod(static_cast<std::uint64_t>(c0), s.ring().p));
  }
  // s = c0 (1 + a), s^-1 = c0^-1 (1 - a + a^2 - ...)
  TruncSeries a = series_scale(s, inv);
  a.add_term(0, -1);
  const TruncSeries neg_a = series_scale(a, -1);
  TruncSeries sum = TruncSeries::one(s.alphabet(), s.degree(), s.ring());
  TruncSeries power = sum;
  for (int k = 1; k <= s.degree(); ++k) {
    power = series_mul(power, neg_a);
    if (power.is_zero()) break;
    sum = series_add(sum, power);
  }
  return series_scale(sum, inv);
}

TruncSeries magnus_embed(const Word& w, int degree, Ring ring) {
  const std::size_t n = w.rank();
  TruncSeries result = TruncSeries::one(n, degree, ring);
  std::vector<std::optional<TruncSeries>> inverse(n);
  for (Letter x : w.letters()) {
    const std::size_t g = generator_of(x);
    if (sign_of(x) > 0) {
      result = series_add(result, series_mul(result, TruncSeries::variable(g, n, degree, ring)));
    } else {
      if (!inverse[g]) {
        TruncSeries geo(n, degree, ring);
        Monomial m;
        for (int k = 0; k <= degree; ++k) {
          geo.add_term(monomial_index(m, n), k % 2 == 0 ? 1 : -1);
          m.push_back(g);
        }
        inverse[g] = std::move(geo);
      }
      result = series_mul(result, *inverse[g]);
    }
  }
  return result;
}

std::optional<int> lcs_depth(const Word& w, int degree) {
  if (w.is_identity()) throw InvalidArgument("depth of the identity is undefined");
  TruncSeries s = magnus_embed(w, degree, Ring::integers());
  s.add_term(0, -1);
  return s.lowest_degree();
}

// ---------------------------------------------------------------------------

QuotAlgebra QuotAlgebra::build(const Presentation& p, std::uint64_t q, int degree) {
  if (!is_prime(q)) throw InvalidArgument(std::to_string(q) + " is not prime");
  if (degree < 1) throw InvalidArgument("quotient algebra degree must be at least 1");
  const std::size_t n = p.rank();
  std::uint64_t dim;
  try {
    dim = monomial_count(n, degree);
  } catch (const SizeLimit&) {
    dim = ~0ULL;
  }
  if (dim > kMaxDimension)
    throw SizeLimit("quotient algebra over " + std::to_string(n) + " letters at degree " +
                    std::to_string(degree) + " needs " +
                    (dim == ~0ULL ? std::string("too many") : std::to_string(dim)) +
                    " monomials (limit " + std::to_string(kMaxDimension) + ")");
  QuotAlgebra qa;
  qa.n_ = n;
  qa.q_ = q;
  qa.degree_ = degree;
  qa.dim_ = static_cast<std::size_t>(dim);
  const Layout l(n, degree);
  qa.offset_ = l.offset;
  qa.pow_ = l.pow;
  qa.deg_.resize(qa.dim_);
  qa.val_.resize(qa.dim_);
  for (std::size_t i = 0; i < qa.dim_; ++i) {
    qa.deg_[i] = l.degree_of(i);
    qa.val_[i] = i - l.offset[static_cast<std::size_t>(qa.deg_[i])];
  }

  const Ring ring = Ring::mod(q);
  // (pivot, side, letter): side 0 multiplies on the left, 1 on the right.
  std::deque<std::tuple<std::uint64_t, int, std::size_t>> pending;
  auto accept = [&](Vec v) {
    const auto pivot = qa.reduce_dense(v, false);
    if (!pivot) return;
    const std::uint64_t inv = inverse_mod(v[*pivot], q);
    Sparse s;
    for (std::size_t i = *pivot; i < qa.dim_; ++i)
      if (v[i]) s.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(v[i] * inv % q));
    qa.basis_.emplace(*pivot, std::move(s));
    for (std::size_t g = 0; g < n; ++g) {
      pending.emplace_back(*pivot, 0, g);
      pending.emplace_back(*pivot, 1, g);
    }
  };
  for (const auto& r : p.relators()) {
    TruncSeries m = magnus_embed(r, degree, ring);
    m.add_term(0, -1);
    accept(qa.dense(m));
  }
  while (!pending.empty()) {
    const auto [pivot, side, g] = pending.front();
    pending.pop_front();
    const Vec v = qa.expand(qa.basis_.at(pivot));
    accept(side == 0 ? qa.shift_left(v, g) : qa.shift_right(v, g));
  }
  return qa;
}

QuotAlgebra::Vec QuotAlgebra::expand(const Sparse& s) const {
  Vec v(dim_, 0);
  for (const auto& [i, c] : s) v[i] = c;
  return v;
}

QuotAlgebra::Vec QuotAlgebra::dense(const TruncSeries& s) const {
  if (s.alphabet() != n_ || s.degree() != degree_ || s.ring().p != q_)
    throw InvalidArgument("series does not match the quotient algebra");
  Vec v(dim_, 0);
  for (const auto& [i, c] : s.terms()) v[i] = static_cast<std::uint32_t>(c);
  return v;
}

QuotAlgebra::Vec QuotAlgebra::shift_left(const Vec& v, std::size_t g) const {
  Vec out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!v[i]) continue;
    const auto d = static_cast<std::size_t>(deg_[i]);
    if (static_cast<int>(d) >= degree_) break;
    out[offset_[d + 1] + g * pow_[d] + val_[i]] = v[i];
  }
  return out;
}

QuotAlgebra::Vec QuotAlgebra::shift_right(const Vec& v, std::size_t g) const {
  Vec out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!v[i]) continue;
    const auto d = static_cast<std::size_t>(deg_[i]);
    if (static_cast<int>(d) >= degree_) break;
    out[offset_[d + 1] + val_[i] * n_ + g] = v[i];
  }
  return out;
}

std::optional<std::uint64_t> QuotAlgebra::reduce_dense(Vec& v, bool full) const {
  std::optional<std::uint64_t> lowest;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!v[i]) continue;
    const auto it = basis_.find(i);
    if (it == basis_.end()) {
      if (!full) return i;
      if (!lowest) lowest = i;
      continue;
    }
    const std::uint64_t f = q_ - v[i];
    for (const auto& [j, c] : it->second) v[j] = static_cast<std::uint32_t>((v[j] + f * c) % q_);
  }
  return lowest;
}

std::vector<std::uint64_t> QuotAlgebra::leading_indices() const {
  std::vector<std::uint64_t> out;
  for (const auto& [pivot, _] : basis_) out.push_back(pivot);
  return out;
}

TruncSeries QuotAlgebra::reduce(const TruncSeries& s) const {
  Vec v = dense(s);
  reduce_dense(v, true);
  TruncSeries out(n_, degree_, s.ring());
  for (std::size_t i = 0; i < dim_; ++i)
    if (v[i]) out.add_term(i, v[i]);
  return out;
}

std::vector<std::vector<std::uint32_t>> QuotAlgebra::leading_slice(int k) const {
  std::vector<std::vector<std::uint32_t>> out;
  if (k < 0 || k > degree_) return out;
  const auto kk = static_cast<std::size_t>(k);
  for (const auto& [pivot, s] : basis_) {
    if (deg_[pivot] != k) continue;
    std::vector<std::uint32_t> row(pow_[kk], 0);
    for (const auto& [i, c] : s)
      if (deg_[i] == k) row[val_[i]] = c;
    out.push_back(std::move(row));
  }
  return out;
}

bool reduces_to_identity(const Word& w, const QuotAlgebra& qa) {
  if (w.rank() != qa.alphabet()) throw InvalidArgument("word over the wrong alphabet");
  TruncSeries m = magnus_embed(w, qa.degree(), Ring::mod(qa.prime()));
  m.add_term(0, -1);
  return qa.contains(m);
}

NontrivialityResult nilpotent_nontriviality_witness(const Presentation& p, const Word& w,
                                                    std::uint64_t q, int max_degree) {
  if (w.is_identity()) throw InvalidArgument("the identity word has no witness");
  for (int d = 1; d <= max_degree; ++d)
    if (!reduces_to_identity(w, QuotAlgebra::build(p, q, d))) return Witness{q, d};
  return Unwitnessed{max_degree};
}

}  // namespace pfk

#include "pfk/word.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "pfk/error.hpp"

namespace pfk {

namespace {

void check_same_rank(const Word& a, const Word& b) {
  if (a.rank() != b.rank())
    throw InvalidArgument("words over different alphabets (" +
                          std::to_string(a.rank()) + " vs " +
                          std::to_string(b.rank()) + " generators)");
}

// Appends `l` to an already reduced letter sequence, cancelling if needed.
void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == -l)
    out.pop_back();
  else
    out.push_back(l);
}

}  // namespace

Word Word::reduce(std::span<const Letter> raw, std::size_t rank) {
  Word w(rank);
  w.letters_.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0 || generator_of(l) >= rank)
      throw InvalidArgument("letter " + std::to_string(l) +
                            " outside alphabet of size " +
                            std::to_string(rank));
    push_reduced(w.letters_, l);
  }
  return w;
}

Word Word::generator(std::size_t index, std::size_t rank) {
  const Letter l = letter(index);
  return reduce(std::span<const Letter>(&l, 1), rank);
}

bool Word::involves(std::size_t generator) const {
  return std::any_of(letters_.begin(), letters_.end(), [&](Letter l) {
    return generator_of(l) == generator;
  });
}

std::strong_ordering Word::operator<=>(const Word& other) const {
  if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
  if (auto c = rank_ <=> other.rank_; c != 0) return c;
  return std::lexicographical_compare_three_way(
      letters_.begin(), letters_.end(), other.letters_.begin(),
      other.letters_.end());
}

Word multiply(const Word& a, const Word& b) {
  check_same_rank(a, b);
  std::vector<Letter> raw;
  raw.reserve(a.size() + b.size());
  raw.insert(raw.end(), a.letters().begin(), a.letters().end());
  raw.insert(raw.end(), b.letters().begin(), b.letters().end());
  return Word::reduce(raw, a.rank());
}

Word invert(const Word& a) {
  std::vector<Letter> raw(a.letters().rbegin(), a.letters().rend());
  for (Letter& l : raw) l = -l;
  return Word::reduce(raw, a.rank());
}

Word power(const Word& a, std::int64_t k) {
  const Word base = k < 0 ? invert(a) : a;
  const std::int64_t n = k < 0 ? -k : k;
  // Conjugate the cyclic core power so the result is built without a
  // quadratic number of cancellations.
  const auto [conj, core] = cyclically_reduce(base);
  std::vector<Letter> raw;
  raw.reserve(static_cast<std::size_t>(n) * core.size());
  for (std::int64_t i = 0; i < n; ++i)
    raw.insert(raw.end(), core.letters().begin(), core.letters().end());
  return conj * Word::reduce(raw, a.rank()) * invert(conj);
}

Word commutator(const Word& a, const Word& b) {
  return invert(a) * invert(b) * a * b;
}

bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || w.letters().front() != -w.letters().back();
}

CyclicReduction cyclically_reduce(const Word& w) {
  const auto& ls = w.letters();
  std::size_t lo = 0;
  std::size_t hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  return {Word::reduce(std::span(ls).subspan(0, lo), w.rank()),
          Word::reduce(std::span(ls).subspan(lo, hi - lo), w.rank())};
}

PowerDecomposition proper_power_decomposition(const Word& w) {
  if (w.is_identity())
    throw InvalidArgument("proper power decomposition of the identity");
  const auto [conj, core] = cyclically_reduce(w);
  const auto& s = core.letters();
  const std::size_t n = s.size();
  // Knuth-Morris-Pratt failure function; n - fail[n-1] is the minimal period.
  std::vector<std::size_t> fail(n, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && s[i] != s[k]) k = fail[k - 1];
    if (s[i] == s[k]) ++k;
    fail[i] = k;
  }
  const std::size_t period = n - fail[n - 1];
  if (n % period != 0) return {w, 1};
  const Word root_core =
      Word::reduce(std::span(s).subspan(0, period), w.rank());
  return {conj * root_core * invert(conj),
          static_cast<std::int64_t>(n / period)};
}

std::vector<std::int64_t> exponent_vector(const Word& w) {
  std::vector<std::int64_t> v(w.rank(), 0);
  for (Letter l : w.letters()) v[generator_of(l)] += sign_of(l);
  return v;
}

Word substitute(const Word& w, std::span<const Word> images,
                std::size_t target_rank) {
  if (images.size() != w.rank())
    throw InvalidArgument("substitution needs one image per generator");
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    const Word& img = images[generator_of(l)];
    if (img.rank() != target_rank)
      throw InvalidArgument("substitution image over the wrong alphabet");
    if (sign_of(l) > 0) {
      for (Letter m : img.letters()) push_reduced(out, m);
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it)
        push_reduced(out, -*it);
    }
  }
  return Word::reduce(out, target_rank);
}

Word relabel(const Word& w, std::span<const std::size_t> mapping,
             std::size_t target_rank) {
  if (mapping.size() != w.rank())
    throw InvalidArgument("relabel needs one target per generator");
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter l : w.letters())
    out.push_back(letter(mapping[generator_of(l)], sign_of(l)));
  return Word::reduce(out, target_rank);
}

std::string format_word(const Word& w, std::span<const std::string> names) {
  if (w.is_identity()) return "1";
  std::ostringstream out;
  const auto& ls = w.letters();
  bool first = true;
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const auto run = static_cast<long>(j - i);
    const std::size_t g = generator_of(ls[i]);
    if (!first) out << ' ';
    first = false;
    out << (g < names.size() ? names[g] : "x" + std::to_string(g));
    const long e = sign_of(ls[i]) * run;
    if (e != 1) out << '^' << e;
    i = j;
  }
  return out.str();
}

}  // namespace pfk

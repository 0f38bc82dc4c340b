#include "pfk/fox.hpp"

#include <sstream>

#include "pfk/error.hpp"

namespace pfk {

namespace {

std::int64_t normalize(std::int64_t c, const Ring& r) {
  if (r.is_integers()) return c;
  const auto p = static_cast<std::int64_t>(r.p);
  c %= p;
  return c < 0 ? c + p : c;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t s;
  if (__builtin_add_overflow(a, b, &s)) throw SizeLimit("integer coefficient overflow");
  return s;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t s;
  if (__builtin_mul_overflow(a, b, &s)) throw SizeLimit("integer coefficient overflow");
  return s;
}

void require_compatible(const GroupRingElt& a, const GroupRingElt& b) {
  if (a.rank() != b.rank() || !(a.ring() == b.ring()))
    throw InvalidArgument("group ring elements over different alphabets or rings");
}

}  // namespace

GroupRingElt GroupRingElt::one(std::size_t rank, Ring ring) {
  return of(Word(rank), 1, ring);
}

GroupRingElt GroupRingElt::of(const Word& w, std::int64_t c, Ring ring) {
  GroupRingElt e(w.rank(), ring);
  e.add_term(w, c);
  return e;
}

std::int64_t GroupRingElt::coefficient(const Word& w) const {
  const auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

void GroupRingElt::add_term(const Word& w, std::int64_t c) {
  if (w.rank() != rank_) throw InvalidArgument("word over the wrong alphabet");
  c = normalize(c, ring_);
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(w, c);
  if (fresh) return;
  it->second = ring_.is_integers() ? checked_add(it->second, c) : normalize(it->second + c, ring_);
  if (it->second == 0) terms_.erase(it);
}

std::string GroupRingElt::format(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    first = false;
    const std::int64_t mag = c < 0 ? -c : c;
    if (w.is_identity()) {
      out << mag;
    } else {
      if (mag != 1) out << mag << " ";
      out << format_word(w, names);
    }
  }
  return out.str();
}

GroupRingElt gr_add(const GroupRingElt& a, const GroupRingElt& b) {
  require_compatible(a, b);
  GroupRingElt r = a;
  for (const auto& [w, c] : b.terms()) r.add_term(w, c);
  return r;
}

GroupRingElt gr_scale(const GroupRingElt& a, std::int64_t c) {
  GroupRingElt r(a.rank(), a.ring());
  for (const auto& [w, x] : a.terms())
    r.add_term(w, a.ring().is_integers() ? checked_mul(x, c)
                                         : normalize(x, a.ring()) * normalize(c, a.ring()) %
                                               static_cast<std::int64_t>(a.ring().p));
  return r;
}

GroupRingElt gr_sub(const GroupRingElt& a, const GroupRingElt& b) {
  return gr_add(a, gr_scale(b, -1));
}

GroupRingElt gr_mul(const GroupRingElt& a, const GroupRingElt& b) {
  require_compatible(a, b);
  GroupRingElt r(a.rank(), a.ring());
  for (const auto& [u, x] : a.terms())
    for (const auto& [v, y] : b.terms())
      r.add_term(u * v, a.ring().is_integers()
                            ? checked_mul(x, y)
                            : x * y % static_cast<std::int64_t>(a.ring().p));
  return r;
}

std::int64_t augmentation(const GroupRingElt& e) {
  std::int64_t s = 0;
  for (const auto& [w, c] : e.terms())
    s = e.ring().is_integers() ? checked_add(s, c) : normalize(s + c, e.ring());
  return s;
}

GroupRingElt fox_derivative(const Word& w, std::size_t s, Ring ring) {
  if (s >= w.rank()) throw InvalidArgument("generator index out of range");
  GroupRingElt out(w.rank(), ring);
  std::vector<Letter> prefix;
  for (Letter x : w.letters()) {
    if (sign_of(x) > 0) {
      if (generator_of(x) == s) out.add_term(Word::reduce(prefix, w.rank()), 1);
      prefix.push_back(x);
    } else {
      prefix.push_back(x);
      if (generator_of(x) == s) out.add_term(Word::reduce(prefix, w.rank()), -1);
    }
  }
  return out;
}

bool fundamental_identity_check(const Word& w) {
  const std::size_t n = w.rank();
  GroupRingElt rhs(n);
  for (std::size_t s = 0; s < n; ++s) {
    GroupRingElt xs = GroupRingElt::of(Word::generator(s, n));
    xs.add_term(Word(n), -1);
    rhs = gr_add(rhs, gr_mul(fox_derivative(w, s), xs));
  }
  GroupRingElt lhs = GroupRingElt::of(w);
  lhs.add_term(Word(n), -1);
  return lhs == rhs;
}

std::vector<std::vector<GroupRingElt>> jacobian(const Presentation& p, Ring ring) {
  std::vector<std::vector<GroupRingElt>> rows;
  for (const auto& r : p.relators()) {
    std::vector<GroupRingElt> row;
    for (std::size_t s = 0; s < p.rank(); ++s) row.push_back(fox_derivative(r, s, ring));
    rows.push_back(std::move(row));
  }
  return rows;
}

TruncSeries evaluate_in_quotient(const GroupRingElt& e, const QuotAlgebra& qa) {
  if (e.rank() != qa.alphabet()) throw InvalidArgument("element over the wrong alphabet");
  if (!e.ring().is_integers() && e.ring().p != qa.prime())
    throw InvalidArgument("element over a different prime field");
  const Ring ring = Ring::mod(qa.prime());
  TruncSeries sum(qa.alphabet(), qa.degree(), ring);
  for (const auto& [w, c] : e.terms())
    sum = series_add(sum, series_scale(magnus_embed(w, qa.degree(), ring), c));
  return qa.reduce(sum);
}

SwanReport swan_boundary_data(const SplittingSpec& spec, std::uint64_t q, int degree) {
  const Ring ring = Ring::mod(q);
  const Realization real = realize_detail(spec);
  const Presentation& g = real.presentation();
  const std::size_t n = g.rank();
  const Word one(n);
  auto minus_one = [&](const Word& w) {
    GroupRingElt e = GroupRingElt::of(w, 1, ring);
    e.add_term(one, -1);
    return e;
  };

  GroupRingElt first(n, ring), second(n, ring), beta(n, ring);
  if (const auto* a = std::get_if<Amalgam>(&spec)) {
    const Word u = real.combination.translate(0, a->u);
    const Word v = real.combination.translate(1, a->v);
    first = gr_scale(minus_one(u), -1);
    second = minus_one(v);
    beta = gr_add(first, second);
  } else {
    const auto& h = std::get<Hnn>(spec);
    const Word u = real.combination.translate(0, h.u);
    const Word v = real.combination.translate(0, h.v);
    const GroupRingElt t = GroupRingElt::of(Word::generator(*real.stable_letter, n), 1, ring);
    first = gr_sub(minus_one(v), gr_mul(t, minus_one(u)));
    second = minus_one(v);
    GroupRingElt t_minus_one = t;
    t_minus_one.add_term(one, -1);
    beta = gr_add(first, gr_mul(second, t_minus_one));
  }
  const QuotAlgebra qa = QuotAlgebra::build(g, q, degree);
  TruncSeries coset = evaluate_in_quotient(beta, qa);
  const bool ok = coset.is_zero();
  return SwanReport{g, {std::move(first), std::move(second)}, std::move(beta), q, degree,
                    std::move(coset), ok};
}

}  // namespace pfk

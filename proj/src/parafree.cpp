#include "pfk/parafree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "pfk/abelian.hpp"
#include "pfk/error.hpp"
#include "pfk/magnus.hpp"

namespace pfk {

using Status = Condition::Status;

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Parafree: return "parafree";
    case VerdictKind::NotParafree: return "not-parafree";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(Condition::Status s) {
  switch (s) {
    case Status::Satisfied: return "satisfied";
    case Status::Failed: return "failed";
    case Status::Unresolved: return "unresolved";
  }
  return "?";
}

std::string to_string(Certificate::Kind k) {
  switch (k) {
    case Certificate::Kind::Free: return "free";
    case Certificate::Kind::Amalgam: return "amalgam";
    case Certificate::Kind::Hnn: return "hnn";
    case Certificate::Kind::FreeProduct: return "free-product";
    case Certificate::Kind::BaumslagCleary: return "baumslag-cleary";
    case Certificate::Kind::Graph: return "graph";
  }
  return "?";
}

std::optional<std::size_t> Verdict::r_ab() const {
  if (!certificate) return std::nullopt;
  return certificate->r_ab;
}

std::vector<std::string> Verdict::failed() const {
  std::vector<std::string> out;
  for (const auto& c : conditions)
    if (c.status == Status::Failed) out.push_back(c.id);
  return out;
}

std::vector<std::string> Verdict::unresolved() const {
  std::vector<std::string> out;
  for (const auto& c : conditions)
    if (c.status == Status::Unresolved) out.push_back(c.id);
  return out;
}

bool Verdict::has_failed(std::string_view id) const {
  return std::any_of(conditions.begin(), conditions.end(), [&](const Condition& c) {
    return c.id == id && c.status == Status::Failed;
  });
}

namespace {

std::string str(const BigInt& x) { return x.str(); }

std::string vec_str(const std::vector<BigInt>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + str(v[i]);
  return s + ")";
}

std::string image_str(const AbelianImage& im) {
  std::string s = vec_str(im.free_part);
  for (std::size_t i = 0; i < im.torsion_part.size(); ++i)
    s += " + " + str(im.torsion_part[i]) + " mod " + str(im.torsion_moduli[i]);
  return s;
}

std::string name_of(const Presentation& p) {
  return p.label().empty() ? "<" + std::to_string(p.rank()) + " generators>" : p.label();
}

Verdict free_verdict(const Presentation& p) {
  Certificate c{Certificate::Kind::Free, name_of(p), p.rank(), {"no relators"}, {}};
  return Verdict{VerdictKind::Parafree, std::move(c), {}, "free"};
}

// Any failed condition refutes, all satisfied certifies.
Verdict decide(std::vector<Condition> conds, std::string route, Certificate cert) {
  Verdict v;
  v.route = std::move(route);
  const bool failed = std::any_of(conds.begin(), conds.end(),
                                  [](const Condition& c) { return c.status == Status::Failed; });
  const bool open = std::any_of(conds.begin(), conds.end(),
                                [](const Condition& c) { return c.status == Status::Unresolved; });
  v.conditions = std::move(conds);
  if (failed)
    v.kind = VerdictKind::NotParafree;
  else if (open)
    v.kind = VerdictKind::Inconclusive;
  else {
    v.kind = VerdictKind::Parafree;
    v.certificate = std::move(cert);
  }
  return v;
}

// A Parafree verdict must agree with the abelianization of the group it
// describes.
Verdict verified(Verdict v, const Presentation& realized) {
  if (!v.is(VerdictKind::Parafree)) return v;
  const AbelianInvariants ab = abelianization(realized);
  if (!ab.torsion_free() || ab.free_rank != v.certificate->r_ab)
    throw Error("certificate rank " + std::to_string(v.certificate->r_ab) +
                " disagrees with abelianization " + ab.to_string());
  return v;
}

Condition operand_condition(const std::string& id, std::span<const Verdict* const> operands) {
  Condition c{id, Status::Satisfied, ""};
  std::string sep;
  for (std::size_t i = 0; i < operands.size(); ++i) {
    const Verdict& v = *operands[i];
    c.evidence += sep + "operand " + std::to_string(i + 1) + ": " + to_string(v.kind);
    if (v.r_ab()) c.evidence += " (r_ab " + std::to_string(*v.r_ab()) + ")";
    sep = "; ";
    if (v.is(VerdictKind::NotParafree))
      c.status = Status::Failed;
    else if (v.is(VerdictKind::Inconclusive) && c.status != Status::Failed)
      c.status = Status::Unresolved;
  }
  return c;
}

Condition ab_power_condition(const std::string& id, const AbelianImage& im) {
  const ProperPowerInAb r = is_proper_power_in_ab(im);
  switch (r.status) {
    case ProperPowerInAb::Status::TrivialImage:
      return {id, Status::Failed, "image is zero, hence a proper power"};
    case ProperPowerInAb::Status::Yes:
      return {id, Status::Failed, "image " + image_str(im) + " is " + str(r.k) + " times a class"};
    case ProperPowerInAb::Status::No:
      break;
  }
  return {id, Status::Satisfied,
          "image " + image_str(im) + " is not a proper multiple (gcd " + str(r.k) + ")"};
}

enum class Power { Yes, No, Unknown };

std::pair<Power, std::string> proper_power_in(const Presentation& U, const Word& u,
                                              const std::string& what) {
  const PowerDecomposition d = proper_power_decomposition(u);
  if (d.exponent > 1)
    return {Power::Yes, what + " = (" + U.format(d.root) + ")^" + std::to_string(d.exponent)};
  if (U.is_free()) return {Power::No, what + " is not a proper power in the free factor"};
  const AbelianImage im = Abelianizer(U).image(u);
  BigInt g = 0;
  for (const auto& x : im.free_part) g = gcd(g, x < 0 ? BigInt(-x) : x);
  if (g == 1) return {Power::No, what + " has primitive abelian image " + image_str(im)};
  return {Power::Unknown, what + ": factor is not free and the abelian image " + image_str(im) +
                              " is not primitive"};
}

Condition power_pair_condition(const std::string& id, const Presentation& U, const Word& u,
                               const Presentation& V, const Word& v) {
  const auto [pu, eu] = proper_power_in(U, u, "u");
  const auto [pv, ev] = proper_power_in(V, v, "v");
  const std::string evidence = eu + "; " + ev;
  if (pu == Power::No || pv == Power::No) return {id, Status::Satisfied, evidence};
  if (pu == Power::Yes && pv == Power::Yes) return {id, Status::Failed, evidence};
  return {id, Status::Unresolved, evidence};
}

}  // namespace

// ---------------------------------------------------------------------------

Verdict check_amalgam(const Amalgam& a, const Verdict& vu, const Verdict& vv) {
  validate(SplittingSpec{a});
  const Realization real = realize_detail(SplittingSpec{a});
  std::vector<Condition> conds;
  const Verdict* ops[] = {&vu, &vv};
  conds.push_back(operand_condition("amalgam.1", ops));

  const Word uv = real.combination.translate(0, a.u) * invert(real.combination.translate(1, a.v));
  const Presentation ops_p[] = {a.U, a.V};
  const Combination fp = free_product(ops_p);
  conds.push_back(ab_power_condition("amalgam.2", Abelianizer(fp.presentation).image(uv)));
  conds.push_back(power_pair_condition("amalgam.3", a.U, a.u, a.V, a.v));

  Certificate cert{Certificate::Kind::Amalgam, name_of(real.presentation()), 0, {}, {}};
  if (vu.certificate && vv.certificate) {
    cert.r_ab = vu.certificate->r_ab + vv.certificate->r_ab - 1;
    cert.children = {*vu.certificate, *vv.certificate};
  }
  cert.evidence.push_back("u = " + a.U.format(a.u) + ", v = " + a.V.format(a.v));
  return verified(decide(std::move(conds), "amalgam", std::move(cert)), real.presentation());
}

Verdict check_amalgam(const Amalgam& a, const CheckOptions& options) {
  return check_amalgam(a, check_presentation(a.U, options), check_presentation(a.V, options));
}

namespace {

// Conditions 1-3 of the HNN theorem.
std::vector<Condition> hnn_common(const Hnn& h, const Verdict& vu) {
  std::vector<Condition> conds;
  const Verdict* ops[] = {&vu};
  conds.push_back(operand_condition("hnn.1", ops));
  conds.push_back(ab_power_condition("hnn.2", Abelianizer(h.U).image(h.u * invert(h.v))));
  conds.push_back(power_pair_condition("hnn.3", h.U, h.u, h.U, h.v));
  return conds;
}

Certificate hnn_certificate(const Hnn& h, const Verdict& vu, const Presentation& realized) {
  Certificate cert{Certificate::Kind::Hnn, name_of(realized), 0, {}, {}};
  if (vu.certificate) {
    cert.r_ab = vu.certificate->r_ab;
    cert.children = {*vu.certificate};
  }
  cert.evidence.push_back("u = " + h.U.format(h.u) + ", v = " + h.U.format(h.v));
  return cert;
}

bool rank2_applies(const Presentation& U) {
  const AbelianInvariants ab = abelianization(U);
  return ab.torsion_free() && ab.free_rank == 2;
}

Condition rank2_condition(const Hnn& h) {
  const Abelianizer ab(h.U);
  const auto iu = ab.image(h.u).free_part, iv = ab.image(h.v).free_part;
  const BigInt det = iu[0] * iv[1] - iu[1] * iv[0];
  const std::string ev = "images " + vec_str(iu) + " and " + vec_str(iv) + ", determinant " + str(det);
  return {"hnn.4", det != 0 ? Status::Satisfied : Status::Failed, ev};
}

Condition witness_condition(const Hnn& h, const CheckOptions& options) {
  const Realization real = realize_detail(SplittingSpec{h});
  const Presentation& g = real.presentation();
  const Word u = real.combination.translate(0, h.u);
  std::string primes;
  for (auto q : options.primes) primes += (primes.empty() ? "" : ",") + std::to_string(q);
  int reached = 0;
  for (int d = 1; d <= options.max_degree; ++d) {
    bool any_built = false;
    for (auto q : options.primes) {
      try {
        const QuotAlgebra qa = QuotAlgebra::build(g, q, d);
        any_built = true;
        if (!reduces_to_identity(u, qa))
          return {"hnn.4", Status::Satisfied,
                  "u survives in F_" + std::to_string(q) + "<X>/(I + m^" + std::to_string(d + 1) +
                      ") at degree " + std::to_string(d)};
      } catch (const SizeLimit&) {
      }
    }
    if (!any_built) break;
    reached = d;
  }
  return {"hnn.4", Status::Unresolved,
          "u unwitnessed for primes {" + primes + "} up to degree " + std::to_string(reached) +
              (reached < options.max_degree ? " (quotient algebra size limit)" : "")};
}

}  // namespace

Verdict check_hnn_rank2(const Hnn& h, const Verdict& vu) {
  validate(SplittingSpec{h});
  if (!rank2_applies(h.U)) throw InvalidArgument("the rank-2 test needs U_ab = Z^2");
  const Presentation realized = realize(SplittingSpec{h});
  std::vector<Condition> conds = hnn_common(h, vu);
  conds.push_back(rank2_condition(h));
  return verified(decide(std::move(conds), "hnn-rank2", hnn_certificate(h, vu, realized)),
                  realized);
}

Verdict check_hnn(const Hnn& h, const Verdict& vu, const CheckOptions& options) {
  validate(SplittingSpec{h});
  if (rank2_applies(h.U)) return check_hnn_rank2(h, vu);
  const Presentation realized = realize(SplittingSpec{h});
  std::vector<Condition> conds = hnn_common(h, vu);
  conds.push_back(witness_condition(h, options));
  return verified(decide(std::move(conds), "hnn", hnn_certificate(h, vu, realized)), realized);
}

Verdict check_hnn(const Hnn& h, const CheckOptions& options) {
  return check_hnn(h, check_presentation(h.U, options), options);
}

Verdict check_free_product(std::span<const Verdict> operands) {
  std::vector<const Verdict*> ops;
  for (const auto& v : operands) ops.push_back(&v);
  std::vector<Condition> conds{operand_condition("free-product.factors", ops)};
  Certificate cert{Certificate::Kind::FreeProduct, "free product", 0, {}, {}};
  for (const auto& v : operands)
    if (v.certificate) {
      cert.r_ab += v.certificate->r_ab;
      cert.children.push_back(*v.certificate);
    }
  return decide(std::move(conds), "free-product", std::move(cert));
}

Verdict check_graph(const GraphOfGroups& g, const CheckOptions& options) {
  const GraphFundamental gf = graph_fundamental(g);
  std::vector<Verdict> vertex;
  for (const auto& p : g.vertices) vertex.push_back(check_presentation(p, options));

  Verdict current = vertex[0];
  std::vector<Condition> conds;
  std::vector<std::size_t> tree_target;
  // Replay the tree edges in the order graph_fundamental used.
  std::vector<bool> placed(g.vertices.size(), false);
  placed[0] = true;
  for (std::size_t k = 0; k < gf.decomposition.size(); ++k) {
    const std::size_t ei = gf.step_edge[k];
    const auto& e = g.edges[ei];
    Verdict step;
    if (const auto* a = std::get_if<Amalgam>(&gf.decomposition[k])) {
      const std::size_t y = placed[e.target] ? e.source : e.target;
      placed[y] = true;
      step = check_amalgam(*a, current, vertex[y]);
    } else {
      step = check_hnn(std::get<Hnn>(gf.decomposition[k]), current, options);
    }
    Condition c{"graph.step" + std::to_string(k + 1), Status::Satisfied,
                "edge " + std::to_string(ei + 1) + " via " + step.route + ": " +
                    to_string(step.kind)};
    if (step.is(VerdictKind::NotParafree)) {
      c.status = Status::Failed;
      c.evidence += " (" + [&] {
        std::string s;
        for (const auto& f : step.failed()) s += (s.empty() ? "" : ", ") + f;
        return s;
      }() + ")";
    } else if (step.is(VerdictKind::Inconclusive)) {
      c.status = Status::Unresolved;
    }
    conds.push_back(std::move(c));
    current = std::move(step);
  }

  // Rank formula, checked independently of the steps.
  const AbelianInvariants ab = abelianization(gf.presentation);
  const bool vertices_parafree = std::all_of(vertex.begin(), vertex.end(), [](const Verdict& v) {
    return v.is(VerdictKind::Parafree);
  });
  Condition rank{"graph.2", Status::Satisfied, ""};
  if (!ab.torsion_free()) {
    rank = {"graph.2", Status::Failed, "abelianization " + ab.to_string() + " has torsion"};
  } else if (vertices_parafree) {
    std::int64_t expected = 0;
    for (const auto& v : vertex) expected += static_cast<std::int64_t>(*v.r_ab());
    expected -= static_cast<std::int64_t>(g.edges.size());
    expected -= static_cast<std::int64_t>(g.vertices.size()) -
                static_cast<std::int64_t>(g.edges.size()) - 1;
    const auto got = static_cast<std::int64_t>(ab.free_rank);
    rank.evidence = "rank formula " + std::to_string(expected) + ", abelianization " + ab.to_string();
    if (got != expected) rank.status = Status::Failed;
  } else {
    rank = {"graph.2", Status::Unresolved,
            "vertex groups not all certified; abelianization " + ab.to_string()};
  }
  conds.push_back(std::move(rank));

  Certificate cert{Certificate::Kind::Graph, "graph of groups", 0, {}, {}};
  if (current.certificate) {
    cert.r_ab = current.certificate->r_ab;
    cert.children = {*current.certificate};
  }
  cert.evidence.push_back(std::to_string(g.vertices.size()) + " vertices, " +
                          std::to_string(g.edges.size()) + " edges");
  if (gf.decomposition.empty() && vertex[0].certificate) cert.r_ab = vertex[0].certificate->r_ab;
  Verdict out = decide(std::move(conds), "graph: decomposition steps + rank formula", std::move(cert));
  if (gf.decomposition.empty() && !vertex[0].is(VerdictKind::Parafree)) {
    out.kind = vertex[0].kind;
    out.certificate.reset();
    for (const auto& c : vertex[0].conditions) out.conditions.push_back(c);
  }
  return verified(std::move(out), gf.presentation);
}

// ---------------------------------------------------------------------------

RedundancyReport redundancy_condition(const Word& w, std::size_t t) {
  if (t >= w.rank()) throw InvalidArgument("stable generator out of range");
  for (auto e : exponent_vector(w))
    if (e != 0) throw InvalidArgument("the redundancy condition needs w in [F, F]");
  RedundancyReport out;
  std::int64_t h = 0;
  for (Letter x : w.letters()) {
    const std::size_t g = generator_of(x);
    if (g == t)
      h += sign_of(x);
    else
      out.rewritten.emplace_back(g, h, sign_of(x));
  }
  std::map<std::size_t, std::map<std::int64_t, std::size_t>> heights;
  for (const auto& [g, j, s] : out.rewritten) ++heights[g][j];
  for (const auto& [g, counts] : heights) {
    RedundancyRecord r;
    r.generator = g;
    r.mu = counts.begin()->first;
    r.nu = counts.rbegin()->first;
    r.count_mu = counts.begin()->second;
    r.count_nu = counts.rbegin()->second;
    r.satisfied = r.mu != r.nu && r.count_mu == 1 && r.count_nu == 1;
    if (r.satisfied) out.satisfied.push_back(g);
    out.records.push_back(r);
  }
  return out;
}

Verdict check_baumslag_cleary(std::size_t p, std::size_t n, const Word& w, const Word& v,
                              std::size_t i_prime) {
  if (p < 1 || n < 1) throw InvalidArgument("need p >= 1 and n >= 1");
  const std::size_t rank = p + n + 1;
  if (w.rank() != rank || v.rank() != rank)
    throw InvalidArgument("w and v must be words over a_1..a_p, s_1..s_n, t");
  if (i_prime < 1 || i_prime > n) throw InvalidArgument("i' out of range");
  if (w.is_identity() || !is_cyclically_reduced(w))
    throw InvalidArgument("w must be a non-trivial cyclically reduced word");
  for (std::size_t a = 0; a < p; ++a)
    if (w.involves(a)) throw InvalidArgument("w must lie in E = <s_1..s_n, t>");
  for (auto e : exponent_vector(w))
    if (e != 0) throw InvalidArgument("w must lie in [E, E]");
  for (auto e : exponent_vector(v))
    if (e != 0) throw InvalidArgument("v must lie in [F, F]");
  const std::size_t s = p + i_prime - 1;
  if (v.involves(s)) throw InvalidArgument("v must not involve s_" + std::to_string(i_prime));

  std::vector<std::string> names;
  for (std::size_t i = 1; i <= p; ++i) names.push_back("a" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) names.push_back("s" + std::to_string(i));
  names.push_back("t");
  const Presentation g(names, {Word::generator(0, rank) * invert(v * w)}, "one-relator");

  const RedundancyReport red = redundancy_condition(w, p + n);
  const auto rec = std::find_if(red.records.begin(), red.records.end(),
                                [&](const RedundancyRecord& r) { return r.generator == s; });
  Condition c{"bc.redundancy", Status::Failed, ""};
  if (rec == red.records.end()) {
    c.evidence = "s_" + std::to_string(i_prime) + " does not occur in w";
  } else {
    c.evidence = "mu = " + std::to_string(rec->mu) + " (x" + std::to_string(rec->count_mu) +
                 "), nu = " + std::to_string(rec->nu) + " (x" + std::to_string(rec->count_nu) + ")";
    if (rec->satisfied) c.status = Status::Satisfied;
  }
  Verdict out;
  out.route = "baumslag-cleary";
  if (c.status == Status::Satisfied) {
    out.kind = VerdictKind::Parafree;
    out.certificate = Certificate{Certificate::Kind::BaumslagCleary, g.format(g.relators()[0]),
                                  p + n, {"redundancy on s_" + std::to_string(i_prime)}, {}};
  } else {
    // The criterion is sufficient only.
    out.kind = VerdictKind::Inconclusive;
  }
  out.conditions.push_back(std::move(c));
  return verified(std::move(out), g);
}

std::optional<Verdict> not_parafree_screens(const Presentation& p) {
  const AbelianInvariants ab = abelianization(p);
  if (!ab.torsion_free())
    return Verdict{VerdictKind::NotParafree,
                   std::nullopt,
                   {{"screen.torsion", Status::Failed, "abelianization " + ab.to_string()}},
                   "screen"};
  if (!p.relators().empty() && ab.free_rank == p.rank())
    return Verdict{VerdictKind::NotParafree,
                   std::nullopt,
                   {{"screen.rank", Status::Failed,
                     "a proper quotient of F_" + std::to_string(p.rank()) +
                         " with abelian rank " + std::to_string(ab.free_rank)}},
                   "screen"};
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

Presentation sub_presentation(const Presentation& p, const std::vector<std::size_t>& gens,
                              const std::vector<std::size_t>& rels) {
  std::vector<std::size_t> map(p.rank(), 0);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    map[gens[k]] = k;
    names.push_back(p.generators()[gens[k]]);
  }
  std::vector<Word> relators;
  for (auto r : rels) relators.push_back(relabel(p.relators()[r], map, gens.size()));
  return Presentation(std::move(names), std::move(relators));
}

// Eliminates a generator that occurs exactly once in some relator.
std::optional<std::pair<Presentation, std::string>> tietze_step(const Presentation& p) {
  for (std::size_t ri = 0; ri < p.relators().size(); ++ri) {
    const Word& r = p.relators()[ri];
    std::vector<std::size_t> count(p.rank(), 0);
    for (Letter x : r.letters()) ++count[generator_of(x)];
    for (std::size_t g = 0; g < p.rank(); ++g) {
      if (count[g] != 1) continue;
      // r = A g^e B  =>  g = (B A)^-1 when e = 1, g = B A when e = -1
      const auto& ls = r.letters();
      const auto pos = static_cast<std::size_t>(
          std::find_if(ls.begin(), ls.end(), [&](Letter x) { return generator_of(x) == g; }) -
          ls.begin());
      const std::vector<Letter> a(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(pos));
      const std::vector<Letter> b(ls.begin() + static_cast<std::ptrdiff_t>(pos) + 1, ls.end());
      Word ba = Word::reduce(b, p.rank()) * Word::reduce(a, p.rank());
      const Word value = sign_of(ls[pos]) > 0 ? invert(ba) : ba;

      std::vector<std::size_t> map(p.rank(), 0);
      std::vector<std::string> names;
      for (std::size_t k = 0; k < p.rank(); ++k) {
        if (k == g) continue;
        map[k] = names.size();
        names.push_back(p.generators()[k]);
      }
      const std::size_t rank = names.size();
      std::vector<Word> images(p.rank());
      for (std::size_t k = 0; k < p.rank(); ++k)
        if (k != g) images[k] = Word::generator(map[k], rank);
      images[g] = relabel(value, map, rank);
      std::vector<Word> relators;
      for (std::size_t k = 0; k < p.relators().size(); ++k) {
        if (k == ri) continue;
        Word w = substitute(p.relators()[k], images, rank);
        if (!w.is_identity()) relators.push_back(std::move(w));
      }
      std::string ev = "eliminated " + p.generators()[g] + " = " + p.format(value) +
                       " using relator " + std::to_string(ri + 1);
      return std::pair{Presentation(std::move(names), std::move(relators), p.label()), ev};
    }
  }
  return std::nullopt;
}

Word rotate(const Word& w, std::size_t k) {
  std::vector<Letter> ls(w.letters().begin() + static_cast<std::ptrdiff_t>(k), w.letters().end());
  ls.insert(ls.end(), w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(k));
  return Word::reduce(ls, w.rank());
}

Word slice(const Word& w, std::size_t from, std::size_t to) {
  std::vector<Letter> ls(w.letters().begin() + static_cast<std::ptrdiff_t>(from),
                         w.letters().begin() + static_cast<std::ptrdiff_t>(to));
  return Word::reduce(ls, w.rank());
}

// The free group on the given generators of p, with a word of p moved into it.
std::pair<Presentation, std::vector<std::size_t>> free_on(const Presentation& p,
                                                          const std::set<std::size_t>& gens) {
  std::vector<std::size_t> map(p.rank(), 0);
  std::vector<std::string> names;
  for (auto g : gens) {
    map[g] = names.size();
    names.push_back(p.generators()[g]);
  }
  return {Presentation(std::move(names), {}, "F" + std::to_string(gens.size())), map};
}

std::set<std::size_t> support(const Word& w) {
  std::set<std::size_t> s;
  for (Letter x : w.letters()) s.insert(generator_of(x));
  return s;
}

std::optional<Amalgam> recognize_amalgam(const Presentation& p, const Word& r) {
  const std::size_t len = r.size();
  std::vector<std::size_t> total(p.rank(), 0);
  for (Letter x : r.letters()) ++total[generator_of(x)];
  for (std::size_t start = 0; start < len; ++start) {
    const Word rot = rotate(r, start);
    std::vector<std::size_t> pre(p.rank(), 0);
    std::size_t shared = 0;
    for (std::size_t k = 1; k < len; ++k) {
      const std::size_t g = generator_of(rot[k - 1]);
      if (pre[g] == 0 && total[g] > 1) ++shared;
      ++pre[g];
      if (pre[g] == total[g]) --shared;
      if (shared != 0) continue;
      const Word x = slice(rot, 0, k), y = slice(rot, k, len);
      auto [U, mu] = free_on(p, support(x));
      auto [V, mv] = free_on(p, support(y));
      return Amalgam{U, V, relabel(x, mu, U.rank()), invert(relabel(y, mv, V.rank()))};
    }
  }
  return std::nullopt;
}

std::vector<Hnn> recognize_hnn(const Presentation& p, const Word& r) {
  std::vector<Hnn> out;
  for (std::size_t t = 0; t < p.rank(); ++t) {
    std::vector<std::size_t> pos;
    for (std::size_t k = 0; k < r.size(); ++k)
      if (generator_of(r[k]) == t) pos.push_back(k);
    if (pos.size() != 2 || sign_of(r[pos[0]]) == sign_of(r[pos[1]])) continue;
    const std::size_t plus = sign_of(r[pos[0]]) > 0 ? pos[0] : pos[1];
    const Word rot = rotate(r, plus);  // t A t^-1 B
    std::size_t minus = 0;
    for (std::size_t k = 1; k < rot.size(); ++k)
      if (generator_of(rot[k]) == t) minus = k;
    const Word A = slice(rot, 1, minus), B = slice(rot, minus + 1, rot.size());
    if (A.is_identity() || B.is_identity()) continue;
    std::set<std::size_t> gens;
    for (std::size_t g = 0; g < p.rank(); ++g)
      if (g != t) gens.insert(g);
    auto [U, m] = free_on(p, gens);
    out.push_back(Hnn{U, relabel(A, m, U.rank()), invert(relabel(B, m, U.rank())),
                      p.generators()[t]});
  }
  return out;
}

std::optional<Verdict> recognize_baumslag_cleary(const Presentation& p, const Word& r) {
  for (const Word& rel : {r, invert(r)}) {
    const auto exps = exponent_vector(rel);
    for (std::size_t a1 = 0; a1 < p.rank(); ++a1) {
      // a_1 = v w with v, w in [F, F] forces the exponent vector e_{a_1}.
      bool unit = exps[a1] == 1;
      for (std::size_t g = 0; g < p.rank() && unit; ++g)
        if (g != a1 && exps[g] != 0) unit = false;
      if (!unit) continue;
      for (std::size_t k = 0; k < rel.size(); ++k) {
        if (rel[k] != letter(a1, 1)) continue;
        const Word rot = rotate(rel, k);
        const Word rest = invert(slice(rot, 1, rot.size()));
        for (std::size_t split = 0; split < rest.size(); ++split) {
          const Word v = slice(rest, 0, split), w = slice(rest, split, rest.size());
          if (w.involves(a1) || !is_cyclically_reduced(w)) continue;
          if (std::any_of(exponent_vector(w).begin(), exponent_vector(w).end(),
                          [](std::int64_t e) { return e != 0; }))
            continue;
          const std::set<std::size_t> E = support(w);
          if (E.size() < 2) continue;
          for (auto t : E) {
            const RedundancyReport red = redundancy_condition(w, t);
            for (auto s : red.satisfied) {
              if (v.involves(s)) continue;
              Verdict out;
              out.kind = VerdictKind::Parafree;
              out.route = "baumslag-cleary";
              out.conditions.push_back(
                  {"bc.redundancy", Status::Satisfied,
                   p.generators()[a1] + " = (" + p.format(v) + ")(" + p.format(w) +
                       "), redundancy on " + p.generators()[s] + " with stable letter " +
                       p.generators()[t]});
              out.certificate =
                  Certificate{Certificate::Kind::BaumslagCleary, name_of(p), p.rank() - 1,
                              {out.conditions.back().evidence}, {}};
              return out;
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

Verdict inconclusive(std::string evidence) {
  return Verdict{VerdictKind::Inconclusive,
                 std::nullopt,
                 {{"recognizer", Status::Unresolved, std::move(evidence)}},
                 "none"};
}

}  // namespace

Verdict check_presentation(const Presentation& p, const CheckOptions& options) {
  if (p.is_free()) return free_verdict(p);
  if (auto screen = not_parafree_screens(p)) return *screen;

  if (auto t = tietze_step(p)) {
    Verdict v = check_presentation(t->first, options);
    v.conditions.insert(v.conditions.begin(), {"tietze", Status::Satisfied, t->second});
    if (v.certificate) v.certificate->evidence.push_back(t->second);
    v.route = "tietze; " + v.route;
    return verified(std::move(v), p);
  }

  // Free factors: connected components of the relator supports.
  std::vector<std::size_t> parent(p.rank());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& r : p.relators()) {
    const std::size_t first = generator_of(r[0]);
    for (Letter x : r.letters()) parent[find(generator_of(x))] = find(first);
  }
  std::map<std::size_t, std::vector<std::size_t>> comp_gens, comp_rels;
  for (std::size_t g = 0; g < p.rank(); ++g) comp_gens[find(g)].push_back(g);
  for (std::size_t r = 0; r < p.relators().size(); ++r)
    comp_rels[find(generator_of(p.relators()[r][0]))].push_back(r);
  if (comp_gens.size() > 1) {
    std::vector<Verdict> parts;
    for (const auto& [root, gens] : comp_gens)
      parts.push_back(check_presentation(sub_presentation(p, gens, comp_rels[root]), options));
    return verified(check_free_product(parts), p);
  }

  if (p.relators().size() != 1)
    return inconclusive("no recognizer for " + std::to_string(p.relators().size()) +
                        " relators in one free factor");

  const Word r = cyclically_reduce(p.relators()[0]).core;
  std::optional<Verdict> first_open;
  if (auto a = recognize_amalgam(p, r)) {
    Verdict v = check_amalgam(*a, free_verdict(a->U), free_verdict(a->V));
    if (!v.is(VerdictKind::Inconclusive)) return verified(std::move(v), p);
    first_open = std::move(v);
  }
  for (const auto& h : recognize_hnn(p, r)) {
    Verdict v = check_hnn(h, free_verdict(h.U), options);
    if (!v.is(VerdictKind::Inconclusive)) return verified(std::move(v), p);
    if (!first_open) first_open = std::move(v);
  }
  if (auto v = recognize_baumslag_cleary(p, r)) return verified(std::move(*v), p);
  if (first_open) return *first_open;
  return inconclusive("no amalgam, HNN, Baumslag-Cleary or Tietze pattern in the relator");
}

Verdict check(const GroupInput& input, const CheckOptions& options) {
  return std::visit(
      [&](const auto& x) -> Verdict {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Presentation>)
          return check_presentation(x, options);
        else if constexpr (std::is_same_v<T, Amalgam>)
          return check_amalgam(x, options);
        else if constexpr (std::is_same_v<T, Hnn>)
          return check_hnn(x, options);
        else
          return check_graph(x, options);
      },
      input);
}

}  // namespace pfk

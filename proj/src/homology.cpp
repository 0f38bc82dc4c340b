#include "pfk/homology.hpp"

#include <cstdlib>
#include <deque>
#include <map>

#include "pfk/abelian.hpp"
#include "pfk/error.hpp"
#include "pfk/families.hpp"

namespace pfk {

std::uint64_t max_index_from_env() {
  const char* raw = std::getenv("PFK_MAX_INDEX");
  if (!raw || !*raw) return kDefaultMaxIndex;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) throw InvalidArgument(std::string("bad PFK_MAX_INDEX '") + raw + "'");
  return v;
}

namespace {

using Element = std::vector<std::uint32_t>;

Element shifted(const Element& e, const Element& by, const std::vector<std::uint64_t>& moduli,
                int sign) {
  Element out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::uint64_t m = moduli[i];
    const std::uint64_t b = by[i] % m;
    out[i] = static_cast<std::uint32_t>(sign > 0 ? (e[i] + b) % m : (e[i] + m - b) % m);
  }
  return out;
}

Element image_of(const std::vector<std::int64_t>& exps, const SubgroupData& s) {
  Element out(s.moduli.size(), 0);
  for (std::size_t i = 0; i < s.moduli.size(); ++i) {
    const auto m = static_cast<std::int64_t>(s.moduli[i]);
    std::int64_t acc = 0;
    for (std::size_t g = 0; g < exps.size(); ++g)
      acc = (acc + (exps[g] % m) * static_cast<std::int64_t>(s.generator_images[g][i] % m)) % m;
    out[i] = static_cast<std::uint32_t>(acc < 0 ? acc + m : acc);
  }
  return out;
}

}  // namespace

bool SubgroupData::contains(const Word& w) const {
  if (w.rank() != host.rank()) throw InvalidArgument("word over the wrong alphabet");
  for (auto x : image_of(exponent_vector(w), *this))
    if (x) return false;
  return true;
}

SubgroupData kernel_of(const Presentation& p, std::vector<std::uint64_t> moduli,
                       std::vector<std::vector<std::uint32_t>> generator_images,
                       std::uint64_t max_index) {
  const std::size_t n = p.rank();
  if (generator_images.size() != n) throw InvalidArgument("one image per generator is required");
  for (auto m : moduli)
    if (m == 0 || m > (1ULL << 31)) throw InvalidArgument("bad modulus");
  for (const auto& img : generator_images)
    if (img.size() != moduli.size()) throw InvalidArgument("image of the wrong length");

  SubgroupData s;
  s.host = p;
  s.moduli = std::move(moduli);
  s.generator_images = std::move(generator_images);
  for (const auto& r : p.relators())
    for (auto x : image_of(exponent_vector(r), s))
      if (x) throw InvalidArgument("relator " + p.format(r) + " does not map to zero");

  std::map<Element, std::size_t> lookup;
  std::vector<std::vector<bool>> tree;
  auto add = [&](Element e, Word t) {
    lookup.emplace(e, s.cosets.size());
    s.cosets.push_back(std::move(e));
    s.transversal.push_back(std::move(t));
    tree.emplace_back(n, false);
    if (s.cosets.size() > max_index)
      throw SizeLimit("subgroup index exceeds the cap of " + std::to_string(max_index));
  };
  add(Element(s.moduli.size(), 0), Word(n));
  for (std::size_t c = 0; c < s.cosets.size(); ++c) {
    for (std::size_t g = 0; g < n; ++g) {
      for (int sign : {1, -1}) {
        Element e = shifted(s.cosets[c], s.generator_images[g], s.moduli, sign);
        if (lookup.count(e)) continue;
        const Word t = s.transversal[c] * Word::reduce({letter(g, sign)}, n);
        add(std::move(e), t);
        const std::size_t fresh = s.cosets.size() - 1;
        if (sign > 0)
          tree[c][g] = true;
        else
          tree[fresh][g] = true;
      }
    }
  }
  s.action.assign(s.cosets.size(), std::vector<std::size_t>(n));
  for (std::size_t c = 0; c < s.cosets.size(); ++c)
    for (std::size_t g = 0; g < n; ++g) {
      const std::size_t d = lookup.at(shifted(s.cosets[c], s.generator_images[g], s.moduli, 1));
      s.action[c][g] = d;
      if (tree[c][g]) continue;
      s.schreier.emplace_back(c, g);
      s.schreier_words.push_back(s.transversal[c] * Word::generator(g, n) *
                                 invert(s.transversal[d]));
    }
  return s;
}

SubgroupData p_ab_kernel(const Presentation& p, std::uint64_t q, std::uint64_t max_index) {
  const ModAbelianizer ab(p, q);
  if (ab.dimension() == 0)
    throw InvalidArgument("H_1 with F_" + std::to_string(q) +
                          " coefficients vanishes; no proper kernel");
  std::vector<std::vector<std::uint32_t>> images;
  for (std::size_t g = 0; g < p.rank(); ++g) images.push_back(ab.generator_image(g));
  SubgroupData s = kernel_of(p, std::vector<std::uint64_t>(ab.dimension(), q),
                             std::move(images), max_index);
  s.q = q;
  return s;
}

Presentation reidemeister_schreier(const SubgroupData& sub) {
  const std::size_t n = sub.host.rank();
  const std::size_t m = sub.schreier.size();
  std::vector<std::vector<std::ptrdiff_t>> gen(sub.index(), std::vector<std::ptrdiff_t>(n, -1));
  for (std::size_t k = 0; k < m; ++k) gen[sub.schreier[k].first][sub.schreier[k].second] =
      static_cast<std::ptrdiff_t>(k);
  // inverse action: inv[c][g] is the coset d with d x_g = c
  std::vector<std::vector<std::size_t>> inv(sub.index(), std::vector<std::size_t>(n));
  for (std::size_t c = 0; c < sub.index(); ++c)
    for (std::size_t g = 0; g < n; ++g) inv[sub.action[c][g]][g] = c;

  std::vector<std::string> names;
  for (std::size_t k = 0; k < m; ++k) names.push_back("s" + std::to_string(k + 1));
  std::vector<Word> relators;
  std::vector<Letter> raw;
  for (std::size_t c = 0; c < sub.index(); ++c) {
    for (const auto& r : sub.host.relators()) {
      raw.clear();
      std::size_t cur = c;
      for (Letter x : r.letters()) {
        const std::size_t g = generator_of(x);
        if (sign_of(x) > 0) {
          if (gen[cur][g] >= 0) raw.push_back(letter(static_cast<std::size_t>(gen[cur][g]), 1));
          cur = sub.action[cur][g];
        } else {
          cur = inv[cur][g];
          if (gen[cur][g] >= 0) raw.push_back(letter(static_cast<std::size_t>(gen[cur][g]), -1));
        }
      }
      if (cur != c) throw Error("relator does not close up in the coset graph");
      Word w = Word::reduce(raw, m);
      if (!w.is_identity()) relators.push_back(std::move(w));
    }
  }
  std::string label = sub.host.label().empty() ? "subgroup" : sub.host.label();
  label += "[index " + std::to_string(sub.index()) + "]";
  return Presentation(std::move(names), std::move(relators), std::move(label));
}

std::size_t h1_fp_dim(const Presentation& p, std::uint64_t q) { return p_ab_dimension(p, q); }

ChainEstimate betti_chain_estimate(const Presentation& p, std::uint64_t q, std::size_t levels,
                                   const ChainOptions& options) {
  if (levels < 1) throw InvalidArgument("at least one level is required");
  ChainEstimate out;
  out.q = q;
  Presentation current = p;
  ChainLevel level{0, 1, h1_fp_dim(p, q)};
  out.levels.push_back(level);
  for (std::size_t j = 1; j <= levels; ++j) {
    if (level.h1dim == 0)
      throw InvalidArgument("level " + std::to_string(j - 1) + " has trivial H_1 over F_" +
                            std::to_string(q));
    std::uint64_t next = level.index;
    bool over = false;
    for (std::size_t k = 0; k < level.h1dim && !over; ++k)
      over = __builtin_mul_overflow(next, q, &next) || next > options.max_index;
    if (over) {
      if (options.stop_at_cap) {
        out.truncated = true;
        break;
      }
      throw SizeLimit("level " + std::to_string(j) + " would exceed the index cap of " +
                      std::to_string(options.max_index));
    }
    current = reidemeister_schreier(p_ab_kernel(current, q, options.max_index));
    level = ChainLevel{j, next, h1_fp_dim(current, q)};
    out.levels.push_back(level);
  }
  return out;
}

Rational l2_betti_closed_form(SurfaceFamily family, std::int64_t parameter) {
  switch (family) {
    case SurfaceFamily::Free:
      if (parameter < 0) throw InvalidArgument("free rank must be non-negative");
      if (parameter == 0) return {0, 1};
      return {parameter - 1, 1};
    case SurfaceFamily::Orientable:
      if (parameter < 1) throw InvalidArgument("genus must be at least 1");
      return {2 * parameter - 2, 1};
    case SurfaceFamily::Nonorientable:
      if (parameter < 1) throw InvalidArgument("genus must be at least 1");
      return {parameter - 1, 1};
  }
  throw InvalidArgument("unknown family");
}

EulerCoverReport euler_cover_check(SurfaceFamily family, std::int64_t genus, std::size_t k) {
  if (k < 1) throw InvalidArgument("cover index must be positive");
  Presentation s;
  std::int64_t chi = 0;
  if (family == SurfaceFamily::Orientable) {
    if (genus < 1) throw InvalidArgument("genus must be at least 1");
    s = families::orientable_surface(genus);
    chi = 2 - 2 * genus;
  } else if (family == SurfaceFamily::Nonorientable) {
    s = families::nonorientable_surface(genus);
    chi = 1 - genus;
  } else {
    throw InvalidArgument("not a closed surface family");
  }
  std::vector<std::vector<std::uint32_t>> images(s.rank(), {0});
  images[0][0] = static_cast<std::uint32_t>(1 % k);
  if (family == SurfaceFamily::Nonorientable) images[1][0] = static_cast<std::uint32_t>((k - 1) % k);
  const SubgroupData sub = kernel_of(s, {k}, std::move(images), k);
  const AbelianInvariants ab = abelianization(reidemeister_schreier(sub));

  EulerCoverReport r;
  r.index = sub.index();
  r.b1 = ab.free_rank;
  r.orientable = ab.torsion.empty();
  const auto b1 = static_cast<std::int64_t>(r.b1);
  r.chi_cover = r.orientable ? 2 - b1 : 1 - b1;
  r.chi_expected = static_cast<std::int64_t>(r.index) * chi;
  const bool shape = r.orientable ? r.b1 % 2 == 0
                                  : ab.torsion.size() == 1 && ab.torsion[0] == 2;
  r.consistent = shape && r.chi_cover == r.chi_expected;
  return r;
}

Cor823Report cor823_report(const Presentation& p, std::size_t r_ab, std::uint64_t q,
                           std::size_t levels, const ChainOptions& options) {
  if (r_ab < 1) throw InvalidArgument("certified abelian rank must be positive");
  const ChainEstimate chain = betti_chain_estimate(p, q, levels, options);
  Cor823Report out;
  out.r_ab = r_ab;
  out.truncated = chain.truncated;
  out.non_increasing = true;
  out.above_target = true;
  const auto target = static_cast<std::uint64_t>(r_ab - 1);
  for (std::size_t j = 0; j < chain.levels.size(); ++j) {
    const ChainLevel& l = chain.levels[j];
    Cor823Level c{l, l.ratio() - static_cast<double>(target),
                  l.h1dim >= target * l.index + 1};
    if (l.h1dim < target * l.index) out.above_target = false;
    if (j > 0) {
      const ChainLevel& prev = chain.levels[j - 1];
      if (l.h1dim * prev.index > prev.h1dim * l.index) out.non_increasing = false;
    }
    out.levels.push_back(c);
  }
  return out;
}

}  // namespace pfk

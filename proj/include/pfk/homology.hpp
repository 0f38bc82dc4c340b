#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pfk/presentation.hpp"

namespace pfk {

/// Default cap on subgroup indices; PFK_MAX_INDEX overrides it.
constexpr std::uint64_t kDefaultMaxIndex = 1ULL << 14;
std::uint64_t max_index_from_env();

/// Kernel of a map G -> Z/m_1 x ... x Z/m_d given by generator images.
struct SubgroupData {
  Presentation host;
  std::uint64_t q = 0;  // prime for elementary-abelian kernels, 0 otherwise
  std::vector<std::uint64_t> moduli;
  std::vector<std::vector<std::uint32_t>> generator_images;

  /// Image-group element of each coset; coset 0 is the identity.
  std::vector<std::vector<std::uint32_t>> cosets;
  /// Prefix-closed transversal; transversal[0] is the empty word.
  std::vector<Word> transversal;
  /// action[c][g]: coset of (coset c) * x_g.
  std::vector<std::vector<std::size_t>> action;
  /// Schreier generators t_c x_g t_{c x_g}^-1 that are not tree edges, as
  /// (c, g) pairs and as words in the host generators.
  std::vector<std::pair<std::size_t, std::size_t>> schreier;
  std::vector<Word> schreier_words;

  std::size_t index() const noexcept { return cosets.size(); }
  /// Whether w (over the host alphabet) lies in the subgroup.
  bool contains(const Word& w) const;
};

/// Throws InvalidArgument when some relator does not map to zero and
/// SizeLimit when the image has more than max_index elements.
SubgroupData kernel_of(const Presentation& p, std::vector<std::uint64_t> moduli,
                       std::vector<std::vector<std::uint32_t>> generator_images,
                       std::uint64_t max_index = kDefaultMaxIndex);

/// Kernel of G -> G / G^q [G, G] = (Z/q)^d. Throws InvalidArgument if d = 0.
SubgroupData p_ab_kernel(const Presentation& p, std::uint64_t q,
                         std::uint64_t max_index = kDefaultMaxIndex);

/// Presentation of the subgroup on its Schreier generators s1, s2, ...,
/// with one rewritten relator per (coset, relator) pair.
Presentation reidemeister_schreier(const SubgroupData& sub);

/// dim H_1(G; F_q).
std::size_t h1_fp_dim(const Presentation& p, std::uint64_t q);

struct ChainLevel {
  std::size_t level = 0;
  std::uint64_t index = 1;
  std::size_t h1dim = 0;
  /// h1dim / index.
  double ratio() const { return static_cast<double>(h1dim) / static_cast<double>(index); }
};

struct ChainEstimate {
  std::uint64_t q = 2;
  std::vector<ChainLevel> levels;  // level 0 is G itself
  /// Set when the chain stopped early because the next index exceeded the cap.
  bool truncated = false;
};

struct ChainOptions {
  std::uint64_t max_index = kDefaultMaxIndex;
  /// Stop quietly at the cap instead of throwing SizeLimit.
  bool stop_at_cap = false;
};

/// Levels 0..levels of the chain G = G_0 > G_1 > ..., where G_{j+1} is the
/// kernel of G_j -> H_1(G_j; F_q).
ChainEstimate betti_chain_estimate(const Presentation& p, std::uint64_t q, std::size_t levels,
                                   const ChainOptions& options = {});

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool operator==(const Rational&) const = default;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

enum class SurfaceFamily { Free, Orientable, Nonorientable };

/// First L2-Betti number: n - 1 for F_n, 2g - 2 for Sigma_g, and g - 1 for
/// the non-orientable surface with g + 1 cross-caps.
Rational l2_betti_closed_form(SurfaceFamily family, std::int64_t parameter);

struct EulerCoverReport {
  std::size_t index = 1;
  std::size_t b1 = 0;
  bool orientable = true;
  std::int64_t chi_cover = 0;     // read off the cover's abelianization
  std::int64_t chi_expected = 0;  // index * chi(surface)
  bool consistent = false;
};

/// Builds the index-k cyclic cover of a closed surface group through the
/// map x_1 -> 1 (and, for non-orientable surfaces, x_2 -> -1) and checks
/// chi(cover) = k chi(surface).
EulerCoverReport euler_cover_check(SurfaceFamily family, std::int64_t genus, std::size_t k);

struct Cor823Level {
  ChainLevel level;
  double gap = 0;          // ratio - (r_ab - 1)
  bool above_floor = false;  // ratio >= r_ab - 1 + 1/index
};

struct Cor823Report {
  std::size_t r_ab = 0;
  std::vector<Cor823Level> levels;
  bool non_increasing = false;
  bool above_target = false;
  bool truncated = false;
};

/// Compares the chain against the target r_ab - 1. r_ab must come from a
/// parafree certificate.
Cor823Report cor823_report(const Presentation& p, std::size_t r_ab, std::uint64_t q,
                           std::size_t levels, const ChainOptions& options = {});

}  // namespace pfk

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pfk/presentation.hpp"

namespace pfk {

enum class VerdictKind { Parafree, NotParafree, Inconclusive };
std::string to_string(VerdictKind k);

struct Condition {
  enum class Status { Satisfied, Failed, Unresolved };
  std::string id;  // e.g. "amalgam.2", "hnn.4", "screen.torsion"
  Status status = Status::Unresolved;
  std::string evidence;
};
std::string to_string(Condition::Status s);

/// Construction tree of a parafree group.
struct Certificate {
  enum class Kind { Free, Amalgam, Hnn, FreeProduct, BaumslagCleary, Graph };
  Kind kind = Kind::Free;
  std::string label;
  std::size_t r_ab = 0;
  std::vector<std::string> evidence;
  std::vector<Certificate> children;
};
std::string to_string(Certificate::Kind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<Certificate> certificate;  // present iff Parafree
  std::vector<Condition> conditions;
  /// Which theorem or recognizer produced the verdict.
  std::string route;

  bool is(VerdictKind k) const { return kind == k; }
  std::optional<std::size_t> r_ab() const;
  std::vector<std::string> failed() const;
  std::vector<std::string> unresolved() const;
  bool has_failed(std::string_view id) const;
};

struct CheckOptions {
  std::vector<std::uint64_t> primes{2, 3};
  int max_degree = 6;
};

/// Amalgam theorem. The operand verdicts supply condition 1.
Verdict check_amalgam(const Amalgam& a, const Verdict& vu, const Verdict& vv);
Verdict check_amalgam(const Amalgam& a, const CheckOptions& options = {});

/// HNN theorem; condition 4 by the rank-2 test when U_ab = Z^2, otherwise by
/// a quotient-algebra witness.
Verdict check_hnn(const Hnn& h, const Verdict& vu, const CheckOptions& options = {});
Verdict check_hnn(const Hnn& h, const CheckOptions& options = {});

/// Rank-2 variant: condition 4 becomes "images of u and v span Z^2 in U_ab".
/// Throws InvalidArgument unless U_ab = Z^2.
Verdict check_hnn_rank2(const Hnn& h, const Verdict& vu);

Verdict check_free_product(std::span<const Verdict> operands);

Verdict check_graph(const GraphOfGroups& g, const CheckOptions& options = {});

struct RedundancyRecord {
  std::size_t generator = 0;
  std::int64_t mu = 0;
  std::int64_t nu = 0;
  std::size_t count_mu = 0;
  std::size_t count_nu = 0;
  bool satisfied = false;
};

struct RedundancyReport {
  /// w rewritten as s_{i,j}^{+-1}: (generator, height, sign).
  std::vector<std::tuple<std::size_t, std::int64_t, int>> rewritten;
  std::vector<RedundancyRecord> records;  // one per generator other than t that occurs
  std::vector<std::size_t> satisfied;
};

/// Height scan of w with respect to the generator t. Throws InvalidArgument
/// unless every exponent sum of w is zero.
RedundancyReport redundancy_condition(const Word& w, std::size_t t);

/// < a_1..a_p, s_1..s_n, t | a_1 = v w > over the alphabet a.., s.., t (in
/// that order). i_prime is 1-based. Precondition violations throw
/// InvalidArgument; a failed redundancy condition is Inconclusive since the
/// criterion is only sufficient.
Verdict check_baumslag_cleary(std::size_t p, std::size_t n, const Word& w, const Word& v,
                              std::size_t i_prime);

/// Torsion in G_ab, or #generators = r_ab with a relator present.
std::optional<Verdict> not_parafree_screens(const Presentation& p);

Verdict check_presentation(const Presentation& p, const CheckOptions& options = {});
Verdict check(const GroupInput& input, const CheckOptions& options = {});

}  // namespace pfk

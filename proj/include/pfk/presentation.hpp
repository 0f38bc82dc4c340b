#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pfk/word.hpp"

namespace pfk {

/// A finite presentation < generators | relators >. Relators are freely
/// reduced, non-identity words over the generator alphabet.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generators, std::vector<Word> relators,
               std::string label = {});

  std::size_t rank() const noexcept { return generators_.size(); }
  const std::vector<std::string>& generators() const noexcept {
    return generators_;
  }
  const std::vector<Word>& relators() const noexcept { return relators_; }
  const std::string& label() const noexcept { return label_; }
  bool is_free() const noexcept { return relators_.empty(); }

  std::optional<std::size_t> index_of(std::string_view name) const;
  Word generator(std::size_t i) const { return Word::generator(i, rank()); }
  Word identity() const { return Word(rank()); }
  std::string format(const Word& w) const { return format_word(w, generators_); }

  Presentation with_label(std::string label) const;

  bool operator==(const Presentation& other) const {
    return generators_ == other.generators_ && relators_ == other.relators_;
  }

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
  std::string label_;
};

/// True when `name` can be used as a generator name in the text format.
bool is_valid_generator_name(std::string_view name);

Presentation free_group(std::size_t rank, std::string prefix = "x");

/// Result of combining several presentations into one alphabet: `maps[k][i]`
/// is the index in the combined alphabet of generator i of operand k.
struct Combination {
  Presentation presentation;
  std::vector<std::vector<std::size_t>> maps;

  Word translate(std::size_t operand, const Word& w) const;
};

/// Free product with disjoint renaming: names shared by several operands get
/// the suffix `_<operand position>` (1-based) in every operand using them.
Combination free_product(std::span<const Presentation> operands);

struct Amalgam {
  Presentation U;
  Presentation V;
  Word u;  // over U
  Word v;  // over V
};

struct Hnn {
  Presentation U;
  Word u;  // over U
  Word v;  // over U
  std::string stable_letter = "t";
};

using SplittingSpec = std::variant<Amalgam, Hnn>;

void validate(const SplittingSpec& spec);

struct Realization {
  Combination combination;        // operands U (and V for amalgams)
  std::optional<std::size_t> stable_letter;  // HNN only
  const Presentation& presentation() const { return combination.presentation; }
};

/// Presentation of the amalgamated product U *_{u=v} V, i.e. U * V with the
/// extra relator u v^-1, or of the HNN extension with relator t u t^-1 v^-1.
Realization realize_detail(const SplittingSpec& spec);
Presentation realize(const SplittingSpec& spec);

struct GraphEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  Word source_word;  // over vertices[source]
  Word target_word;  // over vertices[target]
  std::string stable_letter;  // used when the edge leaves the spanning tree
};

/// Finite connected graph of groups with non-trivial cyclic edge groups.
/// Vertex ids are positions in `vertices`.
struct GraphOfGroups {
  std::vector<std::string> names;
  std::vector<Presentation> vertices;
  std::vector<GraphEdge> edges;
};

void validate(const GraphOfGroups& g);

struct GraphFundamental {
  Presentation presentation;
  /// Steps replaying the construction: step k's base group is the group
  /// realized by step k - 1 (or the root vertex).
  std::vector<SplittingSpec> decomposition;
  /// Edge index handled by each step.
  std::vector<std::size_t> step_edge;
  std::vector<bool> tree_edge;
};

/// Breadth-first spanning tree from vertex 0; tree edges become amalgam
/// steps in discovery order, the remaining edges HNN steps in edge order.
GraphFundamental graph_fundamental(const GraphOfGroups& g);

/// Anything the text format can describe.
using GroupInput = std::variant<Presentation, Amalgam, Hnn, GraphOfGroups>;

/// The presentation of the group described by `input`.
Presentation presentation_of(const GroupInput& input);

}  // namespace pfk

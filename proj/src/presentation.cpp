#include "pfk/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>

#include "pfk/error.hpp"

namespace pfk {

bool is_valid_generator_name(std::string_view name) {
  if (name.empty()) return false;
  const auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Presentation::Presentation(std::vector<std::string> generators,
                           std::vector<Word> relators, std::string label)
    : generators_(std::move(generators)),
      relators_(std::move(relators)),
      label_(std::move(label)) {
  std::set<std::string_view> seen;
  for (const auto& g : generators_) {
    if (!is_valid_generator_name(g))
      throw InvalidArgument("invalid generator name '" + g + "'");
    if (!seen.insert(g).second)
      throw InvalidArgument("duplicate generator name '" + g + "'");
  }
  for (const auto& r : relators_) {
    if (r.rank() != generators_.size())
      throw InvalidArgument("relator over the wrong alphabet");
    if (r.is_identity()) throw InvalidArgument("identity relator");
  }
}

std::optional<std::size_t> Presentation::index_of(std::string_view name) const {
  auto it = std::find(generators_.begin(), generators_.end(), name);
  if (it == generators_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - generators_.begin());
}

Presentation Presentation::with_label(std::string label) const {
  Presentation p = *this;
  p.label_ = std::move(label);
  return p;
}

Presentation free_group(std::size_t rank, std::string prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= rank; ++i)
    names.push_back(prefix + std::to_string(i));
  return Presentation(std::move(names), {}, "F" + std::to_string(rank));
}

Word Combination::translate(std::size_t operand, const Word& w) const {
  return relabel(w, maps.at(operand), presentation.rank());
}

Combination free_product(std::span<const Presentation> operands) {
  std::map<std::string, std::size_t> owners;
  std::set<std::string> taken;
  for (const auto& p : operands) {
    for (const auto& g : p.generators()) {
      ++owners[g];
      taken.insert(g);
    }
  }

  Combination out;
  std::vector<std::string> names;
  std::vector<Word> relators;
  std::string label;
  for (std::size_t k = 0; k < operands.size(); ++k) {
    const auto& p = operands[k];
    std::vector<std::size_t> map;
    for (const auto& g : p.generators()) {
      std::string name = g;
      if (owners[g] > 1) {
        const std::string suffix = "_" + std::to_string(k + 1);
        name = g + suffix;
        while (taken.count(name)) name += suffix;
        taken.insert(name);
      }
      map.push_back(names.size());
      names.push_back(std::move(name));
    }
    out.maps.push_back(std::move(map));
    if (k) label += " * ";
    label += p.label().empty() ? "G" + std::to_string(k + 1) : p.label();
  }
  const std::size_t rank = names.size();
  for (std::size_t k = 0; k < operands.size(); ++k)
    for (const auto& r : operands[k].relators())
      relators.push_back(relabel(r, out.maps[k], rank));
  if (operands.size() == 1) label = operands[0].label();
  out.presentation =
      Presentation(std::move(names), std::move(relators), std::move(label));
  return out;
}

void validate(const SplittingSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Amalgam>) {
          if (s.u.rank() != s.U.rank() || s.v.rank() != s.V.rank())
            throw InvalidArgument("amalgam word over the wrong alphabet");
        } else {
          if (s.u.rank() != s.U.rank() || s.v.rank() != s.U.rank())
            throw InvalidArgument("HNN word over the wrong alphabet");
          if (!is_valid_generator_name(s.stable_letter))
            throw InvalidArgument("invalid stable letter name");
        }
        if (s.u.is_identity() || s.v.is_identity())
          throw InvalidArgument("splitting along the identity word");
      },
      spec);
}

namespace {

std::string fresh_name(const Presentation& p, const std::string& wanted) {
  std::string name = wanted;
  for (std::size_t k = 1; p.index_of(name); ++k)
    name = wanted + "_" + std::to_string(k);
  return name;
}

}  // namespace

Realization realize_detail(const SplittingSpec& spec) {
  validate(spec);
  if (const auto* a = std::get_if<Amalgam>(&spec)) {
    const Presentation ops[] = {a->U, a->V};
    Combination comb = free_product(ops);
    std::vector<Word> relators = comb.presentation.relators();
    relators.push_back(comb.translate(0, a->u) * invert(comb.translate(1, a->v)));
    std::string label = "amalgam(" + comb.presentation.label() + ")";
    auto names = comb.presentation.generators();
    comb.presentation =
        Presentation(std::move(names), std::move(relators), std::move(label));
    return {std::move(comb), std::nullopt};
  }
  const auto& h = std::get<Hnn>(spec);
  const std::string t = fresh_name(h.U, h.stable_letter);
  std::vector<std::string> names = h.U.generators();
  const std::size_t ti = names.size();
  names.push_back(t);
  const std::size_t rank = names.size();
  std::vector<std::size_t> map(h.U.rank());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  std::vector<Word> relators;
  for (const auto& r : h.U.relators()) relators.push_back(relabel(r, map, rank));
  const Word tw = Word::generator(ti, rank);
  relators.push_back(tw * relabel(h.u, map, rank) * invert(tw) *
                     invert(relabel(h.v, map, rank)));
  std::string label =
      "hnn(" + (h.U.label().empty() ? std::string("U") : h.U.label()) + ")";
  Combination comb;
  comb.presentation =
      Presentation(std::move(names), std::move(relators), std::move(label));
  comb.maps.push_back(std::move(map));
  return {std::move(comb), ti};
}

Presentation realize(const SplittingSpec& spec) {
  return realize_detail(spec).presentation();
}

namespace {

void check_connected(const GraphOfGroups& g) {
  if (g.vertices.empty()) throw InvalidArgument("graph without vertices");
  std::vector<bool> seen(g.vertices.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (const auto& e : g.edges) {
      for (auto [a, b] : {std::pair{e.source, e.target}, {e.target, e.source}}) {
        if (a == x && !seen[b]) {
          seen[b] = true;
          queue.push_back(b);
        }
      }
    }
  }
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v])
      throw InvalidArgument("graph of groups is disconnected (vertex " +
                            (v < g.names.size() ? g.names[v]
                                                : std::to_string(v)) +
                            " unreachable)");
}

}  // namespace

void validate(const GraphOfGroups& g) {
  if (!g.names.empty() && g.names.size() != g.vertices.size())
    throw InvalidArgument("vertex names do not match vertices");
  for (const auto& e : g.edges) {
    if (e.source >= g.vertices.size() || e.target >= g.vertices.size())
      throw InvalidArgument("edge endpoint does not exist");
    if (e.source_word.rank() != g.vertices[e.source].rank() ||
        e.target_word.rank() != g.vertices[e.target].rank())
      throw InvalidArgument("edge word over the wrong vertex alphabet");
    if (e.source_word.is_identity() || e.target_word.is_identity())
      throw InvalidArgument("trivial edge groups are not supported");
  }
  check_connected(g);
}

GraphFundamental graph_fundamental(const GraphOfGroups& g) {
  validate(g);
  GraphFundamental out;
  out.tree_edge.assign(g.edges.size(), false);

  Presentation current = g.vertices[0];
  // vmap[v][i]: index in `current` of generator i of vertex v.
  std::vector<std::optional<std::vector<std::size_t>>> vmap(g.vertices.size());
  {
    std::vector<std::size_t> id(current.rank());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    vmap[0] = std::move(id);
  }
  auto compose = [&](const std::vector<std::size_t>& base_map) {
    for (auto& m : vmap)
      if (m)
        for (auto& x : *m) x = base_map[x];
  };
  auto in_current = [&](std::size_t v, const Word& w) {
    return relabel(w, *vmap[v], current.rank());
  };

  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
      const auto& e = g.edges[ei];
      if (e.source == e.target) continue;
      std::size_t y;
      Word here, there;
      if (e.source == x) {
        y = e.target;
        here = e.source_word;
        there = e.target_word;
      } else if (e.target == x) {
        y = e.source;
        here = e.target_word;
        there = e.source_word;
      } else {
        continue;
      }
      if (vmap[y]) continue;
      out.tree_edge[ei] = true;
      SplittingSpec step = Amalgam{current, g.vertices[y], in_current(x, here), there};
      Realization r = realize_detail(step);
      compose(r.combination.maps[0]);
      vmap[y] = r.combination.maps[1];
      current = r.presentation();
      out.decomposition.push_back(std::move(step));
      out.step_edge.push_back(ei);
      queue.push_back(y);
    }
  }

  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    if (out.tree_edge[ei]) continue;
    const auto& e = g.edges[ei];
    std::string t = e.stable_letter.empty() ? "t" + std::to_string(ei + 1)
                                            : e.stable_letter;
    SplittingSpec step = Hnn{current, in_current(e.source, e.source_word),
                             in_current(e.target, e.target_word), std::move(t)};
    Realization r = realize_detail(step);
    compose(r.combination.maps[0]);
    current = r.presentation();
    out.decomposition.push_back(std::move(step));
    out.step_edge.push_back(ei);
  }
  out.presentation = std::move(current);
  return out;
}

Presentation presentation_of(const GroupInput& input) {
  return std::visit(
      [](const auto& x) -> Presentation {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Presentation>) {
          return x;
        } else if constexpr (std::is_same_v<T, GraphOfGroups>) {
          return graph_fundamental(x).presentation;
        } else {
          return realize(SplittingSpec{x});
        }
      },
      input);
}

}  // namespace pfk

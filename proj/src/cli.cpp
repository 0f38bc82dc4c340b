#include "pfk/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pfk/abelian.hpp"
#include "pfk/error.hpp"
#include "pfk/fox.hpp"
#include "pfk/homology.hpp"
#include "pfk/magnus.hpp"
#include "pfk/parafree.hpp"
#include "pfk/parser.hpp"
#include "pfk/pquot.hpp"

namespace pfk::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

void validate(const RunConfig& c) {
  if (c.degree < 1) throw InvalidArgument("--degree must be positive");
  if (c.levels < 1) throw InvalidArgument("--levels must be positive");
  if (c.dmax < 1) throw InvalidArgument("--dmax must be positive");
  if (c.relator && *c.relator < 1) throw InvalidArgument("--relator is 1-based");
  for (auto p : c.primes)
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string& only_input(const RunConfig& c) {
  if (c.inputs.size() != 1)
    throw InvalidArgument(c.command + " takes exactly one input, got " +
                          std::to_string(c.inputs.size()));
  return c.inputs[0];
}

Presentation load_presentation(const RunConfig& c) {
  return presentation_of(parse(read_file(only_input(c))));
}

// x2 < x10: digit runs compare numerically.
bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) &&
        std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      const std::string na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

std::vector<std::string> identifiers(const std::vector<std::string>& texts) {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  std::set<std::string> seen;
  for (const auto& t : texts)
    for (auto it = std::sregex_iterator(t.begin(), t.end(), ident); it != std::sregex_iterator();
         ++it)
      seen.insert(it->str());
  std::vector<std::string> names(seen.begin(), seen.end());
  std::sort(names.begin(), names.end(), natural_less);
  return names;
}

// Series variables: the generator name with its first letter capitalized,
// or X1.. when that would collide.
std::vector<std::string> variable_names(const std::vector<std::string>& gens) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (auto g : gens) {
    g[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(g[0])));
    if (!seen.insert(g).second) {
      out.clear();
      for (std::size_t i = 1; i <= gens.size(); ++i) out.push_back("X" + std::to_string(i));
      return out;
    }
    out.push_back(g);
  }
  return out;
}

std::string monomial_name(std::uint64_t index, const std::vector<std::string>& vars) {
  const Monomial m = monomial_at(index, vars.size());
  if (m.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < m.size(); ++k) s += (k ? "*" : "") + vars[m[k]];
  return s;
}

Ring parse_ring(const std::string& r) {
  if (r == "z" || r == "Z") return Ring::integers();
  if (r.size() > 1 && (r[0] == 'f' || r[0] == 'F')) {
    try {
      std::size_t used = 0;
      const auto p = std::stoull(r.substr(1), &used);
      if (used == r.size() - 1) return Ring::mod(p);
    } catch (const std::logic_error&) {
    }
  }
  throw InvalidArgument("--ring must be z or f<p>, got '" + r + "'");
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_parse(const RunConfig& c, std::ostream& out) {
  const GroupInput in = parse(read_file(only_input(c)));
  if (c.json) {
    const Presentation p = presentation_of(in);
    json rels = json::array();
    for (const auto& r : p.relators()) rels.push_back(p.format(r));
    emit(out, {{"text", format(in)}, {"generators", p.generators()}, {"relators", rels}});
  } else {
    out << format(in) << "\n";
  }
  return 0;
}

int cmd_abelianize(const RunConfig& c, std::ostream& out) {
  const AbelianInvariants ab = abelianization(load_presentation(c));
  if (c.json) {
    json tors = json::array();
    for (const auto& d : ab.torsion) tors.push_back(d.str());
    emit(out, {{"invariants", ab.to_string()}, {"free_rank", ab.free_rank}, {"torsion", tors}});
  } else {
    out << ab.to_string() << "\n";
  }
  return 0;
}

int cmd_magnus(const RunConfig& c, std::ostream& out) {
  const std::string& text = only_input(c);
  const auto names = identifiers({text});
  const Presentation alphabet(names, {});
  const Word w = parse_word(text, alphabet);
  const TruncSeries s = magnus_embed(w, c.degree, parse_ring(c.ring));
  const auto vars = variable_names(names);
  if (c.json) {
    json terms = json::array();
    for (const auto& [idx, coef] : s.terms())
      terms.push_back({{"monomial", monomial_name(idx, vars)}, {"coefficient", coef}});
    emit(out, {{"ring", s.ring().to_string()}, {"degree", c.degree}, {"terms", terms}});
  } else {
    for (const auto& [idx, coef] : s.terms()) out << monomial_name(idx, vars) << " " << coef << "\n";
  }
  return 0;
}

int cmd_fox(const RunConfig& c, std::ostream& out) {
  const Presentation p = load_presentation(c);
  if (p.relators().empty()) throw InvalidArgument("the presentation has no relators");
  std::size_t first = 0, last = p.relators().size();
  if (c.relator) {
    if (*c.relator > last)
      throw InvalidArgument("relator " + std::to_string(*c.relator) + " out of range");
    first = *c.relator - 1;
    last = first + 1;
  }
  json rows = json::array();
  for (std::size_t k = first; k < last; ++k) {
    json row = json::object();
    for (std::size_t g = 0; g < p.rank(); ++g) {
      const std::string d = fox_derivative(p.relators()[k], g).format(p.generators());
      if (c.json)
        row[p.generators()[g]] = d;
      else
        out << "d r" << k + 1 << " / d " << p.generators()[g] << " = " << d << "\n";
    }
    rows.push_back({{"relator", k + 1}, {"word", p.format(p.relators()[k])}, {"row", row}});
  }
  if (c.json) emit(out, rows);
  return 0;
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
  if (c.primes.size() != 1) throw InvalidArgument("solve needs exactly one --prime");
  const std::uint64_t p = c.primes[0];
  const std::string& omega_text = only_input(c);

  std::map<std::size_t, std::string> assigned;
  static const std::regex var("x([1-9][0-9]*)");
  for (const auto& a : c.assign) {
    const auto eq = a.find('=');
    std::smatch m;
    const std::string lhs = eq == std::string::npos ? a : a.substr(0, eq);
    if (eq == std::string::npos || !std::regex_match(lhs, m, var) || m[1] == "1")
      throw InvalidArgument("--assign expects x<i>=<word> with i >= 2, got '" + a + "'");
    assigned[std::stoul(m[1])] = a.substr(eq + 1);
  }
  std::size_t n = 1;
  for (const auto& name : identifiers({omega_text})) {
    std::smatch m;
    if (!std::regex_match(name, m, var))
      throw InvalidArgument("the equation must be a word in x1..xn, found '" + name + "'");
    n = std::max<std::size_t>(n, std::stoul(m[1]));
  }
  std::vector<std::string> xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back("x" + std::to_string(i));
  const Word omega = parse_word(omega_text, Presentation(xs, {}));
  for (std::size_t i = 2; i <= n; ++i)
    if (!assigned.count(i)) throw InvalidArgument("no --assign for x" + std::to_string(i));

  std::vector<std::string> texts;
  for (const auto& [i, t] : assigned) texts.push_back(t);
  const auto names = identifiers(texts);
  if (names.empty()) throw InvalidArgument("the constants need at least one variable");
  const Presentation calpha(names, {});
  std::vector<PQuotElt> constants;
  for (std::size_t i = 2; i <= n; ++i)
    constants.push_back(PQuotElt::of_word(parse_word(assigned.at(i), calpha), p, c.degree));

  std::optional<PQuotElt> seed;
  if (c.seed) {
    std::mt19937_64 rng(*c.seed);
    std::uniform_int_distribution<int> len(1, 8), pick(0, static_cast<int>(2 * names.size()) - 1);
    std::vector<Letter> raw;
    for (int k = len(rng); k > 0; --k) {
      const int r = pick(rng);
      raw.push_back(letter(static_cast<std::size_t>(r / 2), r % 2 ? -1 : 1));
    }
    seed = PQuotElt::of_word(Word::reduce(raw, names.size()), p, c.degree);
  }

  const SolveResult r = solve_word_equation(omega, constants, seed);
  std::vector<PQuotElt> values{r.solution};
  values.insert(values.end(), constants.begin(), constants.end());
  const bool holds = evaluate_word(omega, values) == PQuotElt::one(names.size(), p, c.degree);
  const auto vars = variable_names(names);
  if (c.json) {
    emit(out, {{"solution", r.solution.series().format(vars)},
               {"m", r.m},
               {"iterations", r.iterations},
               {"agreement", r.agreement},
               {"verified", holds}});
  } else {
    out << "x1 = " << r.solution.series().format(vars) << "\n";
    out << "m = " << r.m << ", iterations = " << r.iterations
        << ", omega(x1, c) = 1: " << (holds ? "yes" : "no") << "\n";
  }
  return holds ? 0 : kError;
}

int cmd_betti(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.primes.size() > 1) throw InvalidArgument("betti takes at most one --prime");
  const std::uint64_t q = c.primes.empty() ? 2 : c.primes[0];
  const ChainOptions opts{max_index_from_env(), c.truncate};
  const ChainEstimate e = betti_chain_estimate(load_presentation(c), q, c.levels, opts);
  if (c.json) {
    json rows = json::array();
    for (const auto& l : e.levels)
      rows.push_back({{"level", l.level}, {"index", l.index}, {"h1dim", l.h1dim},
                      {"ratio", l.ratio()}});
    emit(out, rows);
  } else {
    out << "level index h1dim ratio\n";
    for (const auto& l : e.levels)
      out << l.level << " " << l.index << " " << l.h1dim << " " << std::setprecision(12)
          << l.ratio() << "\n";
  }
  if (e.truncated) err << "note: chain stopped at the index cap " << opts.max_index << "\n";
  return 0;
}

json certificate_json(const Certificate& cert) {
  json children = json::array();
  for (const auto& ch : cert.children) children.push_back(certificate_json(ch));
  return {{"kind", to_string(cert.kind)},
          {"label", cert.label},
          {"r_ab", cert.r_ab},
          {"evidence", cert.evidence},
          {"children", children}};
}

void certificate_text(const Certificate& cert, std::ostream& out, int depth) {
  out << std::string(2 * static_cast<std::size_t>(depth + 1), ' ') << to_string(cert.kind) << " "
      << cert.label << " (r_ab " << cert.r_ab << ")";
  for (const auto& e : cert.evidence) out << "; " << e;
  out << "\n";
  for (const auto& ch : cert.children) certificate_text(ch, out, depth + 1);
}

CheckOptions check_options(const RunConfig& c) {
  CheckOptions o;
  if (!c.primes.empty()) o.primes = c.primes;
  o.max_degree = c.dmax;
  return o;
}

int exit_code(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::Parafree: return kParafree;
    case VerdictKind::NotParafree: return kNotParafree;
    case VerdictKind::Inconclusive: return kInconclusive;
  }
  return kError;
}

int cmd_check(const RunConfig& c, std::ostream& out) {
  const Verdict v = check(parse(read_file(only_input(c))), check_options(c));
  if (c.json) {
    json conds = json::array();
    for (const auto& k : v.conditions)
      conds.push_back({{"id", k.id}, {"status", to_string(k.status)}, {"evidence", k.evidence}});
    json j{{"verdict", to_string(v.kind)}, {"route", v.route}, {"conditions", conds}};
    j["r_ab"] = v.r_ab() ? json(*v.r_ab()) : json(nullptr);
    j["certificate"] = v.certificate ? certificate_json(*v.certificate) : json(nullptr);
    emit(out, j);
  } else {
    out << "verdict: " << to_string(v.kind) << "\n";
    out << "route: " << v.route << "\n";
    if (v.r_ab()) out << "r_ab: " << *v.r_ab() << "\n";
    for (const auto& k : v.conditions)
      out << "  " << k.id << " " << to_string(k.status) << ": " << k.evidence << "\n";
    if (v.certificate) {
      out << "certificate:\n";
      certificate_text(*v.certificate, out, 0);
    }
  }
  return exit_code(v);
}

struct CorpusRow {
  std::string name;
  std::string expected;
  std::string got;
  bool match = false;
  std::string error;
};

struct Expectation {
  VerdictKind kind;
  std::optional<std::size_t> r_ab;
};

Expectation read_expectation(const fs::path& path) {
  if (!fs::exists(path)) throw Error("missing sidecar " + path.filename().string());
  std::istringstream in(read_file(path.string()));
  std::string tok;
  std::optional<VerdictKind> kind;
  std::optional<std::size_t> r_ab;
  while (in >> tok) {
    if (tok == "parafree")
      kind = VerdictKind::Parafree;
    else if (tok == "not-parafree")
      kind = VerdictKind::NotParafree;
    else if (tok == "inconclusive")
      kind = VerdictKind::Inconclusive;
    else if (tok.rfind("r_ab=", 0) == 0)
      r_ab = std::stoul(tok.substr(5));
    else
      throw Error("bad token '" + tok + "' in " + path.filename().string());
  }
  if (!kind) throw Error("no verdict in " + path.filename().string());
  return {*kind, r_ab};
}

std::string describe(VerdictKind k, std::optional<std::size_t> r_ab) {
  return to_string(k) + (r_ab ? " r_ab=" + std::to_string(*r_ab) : "");
}

CorpusRow corpus_entry(const fs::path& gsp, const CheckOptions& opts) {
  CorpusRow row{gsp.stem().string(), "?", "?", false, ""};
  try {
    fs::path sidecar = gsp;
    sidecar.replace_extension(".expect");
    const Expectation e = read_expectation(sidecar);
    row.expected = describe(e.kind, e.r_ab);
    const Verdict v = check(parse(read_file(gsp.string())), opts);
    row.got = describe(v.kind, v.r_ab());
    row.match = v.kind == e.kind && (!e.r_ab || v.r_ab() == e.r_ab);
  } catch (const std::exception& ex) {
    row.error = ex.what();
  }
  return row;
}

int cmd_corpus(const RunConfig& c, std::ostream& out) {
  const fs::path dir = only_input(c);
  if (!fs::is_directory(dir)) throw Error(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".gsp") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  const CheckOptions opts = check_options(c);
  std::vector<std::future<CorpusRow>> jobs;
  for (const auto& f : files) jobs.push_back(std::async(std::launch::async, corpus_entry, f, opts));
  std::vector<CorpusRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());

  std::size_t mismatches = 0, errors = 0;
  for (const auto& r : rows) {
    if (!r.error.empty())
      ++errors;
    else if (!r.match)
      ++mismatches;
  }
  if (c.json) {
    json entries = json::array();
    for (const auto& r : rows) {
      json e{{"name", r.name}, {"expected", r.expected}, {"got", r.got}, {"match", r.match}};
      e["error"] = r.error.empty() ? json(nullptr) : json(r.error);
      entries.push_back(e);
    }
    emit(out, {{"entries", entries}, {"mismatches", mismatches}, {"errors", errors}});
  } else {
    for (const auto& r : rows) {
      out << std::left << std::setw(16) << r.name << " ";
      if (!r.error.empty())
        out << "ERROR " << r.error << "\n";
      else
        out << (r.match ? "ok       " : "MISMATCH ") << "expected " << r.expected << ", got "
            << r.got << "\n";
    }
    out << rows.size() << " entries, " << mismatches << " mismatches, " << errors << " errors\n";
  }
  if (errors) return kError;
  return mismatches ? 1 : 0;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    if (c.command == "parse") return cmd_parse(c, out);
    if (c.command == "abelianize") return cmd_abelianize(c, out);
    if (c.command == "magnus") return cmd_magnus(c, out);
    if (c.command == "fox") return cmd_fox(c, out);
    if (c.command == "solve") return cmd_solve(c, out);
    if (c.command == "betti") return cmd_betti(c, out, err);
    if (c.command == "check-parafree") return cmd_check(c, out);
    if (c.command == "corpus") return cmd_corpus(c, out);
    throw InvalidArgument("unknown command '" + c.command + "'");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace pfk::cli

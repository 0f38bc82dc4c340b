#include "pfk/parser.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "pfk/error.hpp"

namespace pfk {

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  bool is_punct(char c) const {
    return current_.kind == Tok::Punct && current_.text[0] == c;
  }
  bool is_ident(std::string_view word) const {
    return current_.kind == Tok::Ident && current_.text == word;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, current_.line, current_.column);
  }

  void expect(char c) {
    if (!is_punct(c)) fail(std::string("expected '") + c + "', found " + describe());
    advance();
  }

  std::string expect_ident(const char* what) {
    if (current_.kind != Tok::Ident)
      fail(std::string("expected ") + what + ", found " + describe());
    return next().text;
  }

  std::string describe() const {
    switch (current_.kind) {
      case Tok::End: return "end of input";
      default: return "'" + current_.text + "'";
    }
  }

 private:
  void advance() {
    skip_blank();
    current_ = Token{};
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= src_.size()) {
      current_.kind = Tok::End;
      return;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      current_.kind = Tok::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        current_.text += take();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      current_.kind = Tok::Int;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        current_.text += take();
    } else if (std::string_view("<>|,=:;{}[]()^'-").find(c) != std::string_view::npos) {
      current_.kind = Tok::Punct;
      current_.text = take();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_,
                       column_);
    }
  }

  char take() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token current_;
};

using Alphabet = std::function<std::optional<std::size_t>(std::string_view)>;

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  GroupInput parse_input() {
    GroupInput out;
    if (lex_.is_ident("amalgam")) {
      out = parse_amalgam();
    } else if (lex_.is_ident("hnn")) {
      out = parse_hnn();
    } else if (lex_.is_ident("graph")) {
      out = parse_graph();
    } else {
      out = parse_presentation();
    }
    if (lex_.peek().kind != Tok::End) lex_.fail("trailing input " + lex_.describe());
    return out;
  }

  Word parse_standalone_word(const Presentation& p) {
    Word w = parse_word(lookup(p), p.rank());
    if (lex_.peek().kind != Tok::End) lex_.fail("trailing input " + lex_.describe());
    return w;
  }

 private:
  static Alphabet lookup(const Presentation& p) {
    return [&p](std::string_view name) { return p.index_of(name); };
  }

  Presentation parse_presentation() {
    const Token open = lex_.peek();
    lex_.expect('<');
    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    if (lex_.peek().kind == Tok::Ident) {
      for (;;) {
        const Token t = lex_.peek();
        std::string name = lex_.expect_ident("generator name");
        if (!index.emplace(name, names.size()).second)
          throw ParseError("duplicate generator '" + name + "'", t.line, t.column);
        names.push_back(std::move(name));
        if (!lex_.is_punct(',')) break;
        lex_.next();
      }
    }
    std::vector<Word> relators;
    Alphabet alpha = [&index](std::string_view n) -> std::optional<std::size_t> {
      auto it = index.find(std::string(n));
      if (it == index.end()) return std::nullopt;
      return it->second;
    };
    if (lex_.is_punct('|')) {
      lex_.next();
      while (!lex_.is_punct('>')) {
        const Token at = lex_.peek();
        Word r = parse_word(alpha, names.size());
        if (lex_.is_punct('=')) {
          lex_.next();
          r = r * invert(parse_word(alpha, names.size()));
        }
        if (r.is_identity()) throw ParseError("identity relator", at.line, at.column);
        relators.push_back(std::move(r));
        if (!lex_.is_punct(',')) break;
        lex_.next();
      }
    }
    lex_.expect('>');
    try {
      return Presentation(std::move(names), std::move(relators));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), open.line, open.column);
    }
  }

  Word parse_word(const Alphabet& alpha, std::size_t rank) {
    std::vector<Letter> raw;
    while (starts_factor()) {
      const Word f = parse_factor(alpha, rank);
      raw.insert(raw.end(), f.letters().begin(), f.letters().end());
    }
    return Word::reduce(raw, rank);
  }

  bool starts_factor() const {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident || t.kind == Tok::Int) return true;
    return lex_.is_punct('(') || lex_.is_punct('[');
  }

  Word parse_factor(const Alphabet& alpha, std::size_t rank) {
    Word base = parse_atom(alpha, rank);
    for (;;) {
      if (lex_.is_punct('\'')) {
        lex_.next();
        base = invert(base);
      } else if (lex_.is_punct('^')) {
        lex_.next();
        bool negative = false;
        if (lex_.is_punct('-')) {
          lex_.next();
          negative = true;
        }
        if (lex_.peek().kind != Tok::Int) lex_.fail("expected exponent, found " + lex_.describe());
        const Token t = lex_.next();
        std::int64_t k = 0;
        try {
          k = std::stoll(t.text);
        } catch (const std::exception&) {
          throw ParseError("exponent out of range", t.line, t.column);
        }
        if (k > 1'000'000) throw ParseError("exponent out of range", t.line, t.column);
        base = power(base, negative ? -k : k);
      } else {
        return base;
      }
    }
  }

  Word parse_atom(const Alphabet& alpha, std::size_t rank) {
    const Token t = lex_.peek();
    if (t.kind == Tok::Ident) {
      lex_.next();
      const auto i = alpha(t.text);
      if (!i) throw ParseError("unknown generator '" + t.text + "'", t.line, t.column);
      return Word::generator(*i, rank);
    }
    if (t.kind == Tok::Int) {
      if (t.text != "1") throw ParseError("only 1 may appear as a number in a word", t.line, t.column);
      lex_.next();
      return Word(rank);
    }
    if (lex_.is_punct('(')) {
      lex_.next();
      Word w = parse_word(alpha, rank);
      lex_.expect(')');
      return w;
    }
    if (lex_.is_punct('[')) {
      lex_.next();
      Word a = parse_word(alpha, rank);
      lex_.expect(',');
      Word b = parse_word(alpha, rank);
      lex_.expect(']');
      return commutator(a, b);
    }
    lex_.fail("expected a word, found " + lex_.describe());
  }

  Word parse_nontrivial(const Alphabet& alpha, std::size_t rank) {
    const Token at = lex_.peek();
    Word w = parse_word(alpha, rank);
    if (w.is_identity()) throw ParseError("identity amalgamating word", at.line, at.column);
    return w;
  }

  Amalgam parse_amalgam() {
    lex_.next();
    Presentation U = parse_presentation();
    Presentation V = parse_presentation();
    lex_.expect(':');
    Word u = parse_nontrivial(lookup(U), U.rank());
    lex_.expect('=');
    Word v = parse_nontrivial(lookup(V), V.rank());
    return Amalgam{std::move(U), std::move(V), std::move(u), std::move(v)};
  }

  // Reads `t u t^-1 = v` with u, v words over U.
  std::pair<Word, Word> parse_conjugation(const Presentation& U,
                                          const std::string& t) {
    const std::size_t rank = U.rank() + 1;
    Alphabet ext = [&U, &t](std::string_view n) -> std::optional<std::size_t> {
      if (n == t) return U.rank();
      return U.index_of(n);
    };
    const Token at = lex_.peek();
    const Word lhs = parse_word(ext, rank);
    const auto& ls = lhs.letters();
    const Letter tl = letter(U.rank());
    if (ls.size() < 3 || ls.front() != tl || ls.back() != -tl)
      throw ParseError("expected 't u t^-1' on the left-hand side", at.line, at.column);
    std::vector<Letter> mid(ls.begin() + 1, ls.end() - 1);
    for (Letter l : mid)
      if (generator_of(l) == U.rank())
        throw ParseError("stable letter inside the conjugated word", at.line, at.column);
    lex_.expect('=');
    Word v = parse_nontrivial(lookup(U), U.rank());
    return {Word::reduce(mid, U.rank()), std::move(v)};
  }

  Hnn parse_hnn() {
    lex_.next();
    Presentation U = parse_presentation();
    const Token tt = lex_.peek();
    std::string t = lex_.expect_ident("stable letter");
    if (U.index_of(t))
      throw ParseError("stable letter '" + t + "' collides with a generator", tt.line, tt.column);
    lex_.expect(':');
    auto [u, v] = parse_conjugation(U, t);
    return Hnn{std::move(U), std::move(u), std::move(v), std::move(t)};
  }

  GraphOfGroups parse_graph() {
    lex_.next();
    lex_.expect('{');
    GraphOfGroups g;
    std::map<std::string, std::size_t> ids;
    auto vertex = [&](const Token& t) {
      auto it = ids.find(t.text);
      if (it == ids.end()) throw ParseError("unknown vertex '" + t.text + "'", t.line, t.column);
      return it->second;
    };
    while (!lex_.is_punct('}')) {
      const Token head = lex_.peek();
      if (head.kind != Tok::Ident) lex_.fail("expected a graph statement, found " + lex_.describe());
      if (head.text == "edge" || head.text == "loop") {
        const bool loop = head.text == "loop";
        lex_.next();
        const Token a = lex_.peek();
        lex_.expect_ident("vertex");
        GraphEdge e;
        e.source = vertex(a);
        if (loop) {
          e.target = e.source;
          const Token st = lex_.peek();
          e.stable_letter = lex_.expect_ident("stable letter");
          if (!is_valid_generator_name(e.stable_letter))
            throw ParseError("invalid stable letter", st.line, st.column);
        } else {
          const Token b = lex_.peek();
          lex_.expect_ident("vertex");
          e.target = vertex(b);
        }
        lex_.expect(':');
        e.source_word = parse_nontrivial(lookup(g.vertices[e.source]), g.vertices[e.source].rank());
        lex_.expect('=');
        e.target_word = parse_nontrivial(lookup(g.vertices[e.target]), g.vertices[e.target].rank());
        g.edges.push_back(std::move(e));
      } else {
        lex_.next();
        if (ids.count(head.text))
          throw ParseError("duplicate vertex '" + head.text + "'", head.line, head.column);
        lex_.expect('=');
        Presentation p = parse_presentation().with_label(head.text);
        ids.emplace(head.text, g.vertices.size());
        g.names.push_back(head.text);
        g.vertices.push_back(std::move(p));
      }
      if (!lex_.is_punct(';')) lex_.fail("expected ';', found " + lex_.describe());
      lex_.next();
    }
    const Token close = lex_.peek();
    lex_.expect('}');
    try {
      validate(g);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), close.line, close.column);
    }
    return g;
  }

  Lexer lex_;
};

}  // namespace

GroupInput parse(std::string_view text) { return Parser(text).parse_input(); }

Word parse_word(std::string_view text, const Presentation& alphabet) {
  return Parser(text).parse_standalone_word(alphabet);
}

std::string format(const Presentation& p) {
  std::ostringstream out;
  out << "< ";
  for (std::size_t i = 0; i < p.rank(); ++i) out << (i ? ", " : "") << p.generators()[i];
  out << " |";
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    out << (i ? ", " : " ") << p.format(p.relators()[i]);
  out << " >";
  return out.str();
}

std::string format(const GroupInput& input) {
  std::ostringstream out;
  if (const auto* p = std::get_if<Presentation>(&input)) {
    out << format(*p);
  } else if (const auto* a = std::get_if<Amalgam>(&input)) {
    out << "amalgam " << format(a->U) << ' ' << format(a->V) << " : "
        << a->U.format(a->u) << " = " << a->V.format(a->v);
  } else if (const auto* h = std::get_if<Hnn>(&input)) {
    out << "hnn " << format(h->U) << ' ' << h->stable_letter << " : "
        << h->stable_letter << ' ' << h->U.format(h->u) << ' '
        << h->stable_letter << "^-1 = " << h->U.format(h->v);
  } else {
    const auto& g = std::get<GraphOfGroups>(input);
    auto name = [&](std::size_t v) {
      return v < g.names.size() ? g.names[v] : "v" + std::to_string(v + 1);
    };
    out << "graph {\n";
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      out << "  " << name(v) << " = " << format(g.vertices[v]) << ";\n";
    for (const auto& e : g.edges) {
      if (e.source == e.target)
        out << "  loop " << name(e.source) << ' '
            << (e.stable_letter.empty() ? "t" : e.stable_letter);
      else
        out << "  edge " << name(e.source) << ' ' << name(e.target);
      out << " : " << g.vertices[e.source].format(e.source_word) << " = "
          << g.vertices[e.target].format(e.target_word) << ";\n";
    }
    out << "}";
  }
  return out.str();
}

}  // namespace pfk

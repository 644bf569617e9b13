#include "rootsheaf/document.hpp"

#include "rootsheaf/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace rootsheaf {

std::string to_string(DeclKind k) {
  switch (k) {
    case DeclKind::ring: return "ring";
    case DeclKind::monoid: return "monoid";
    case DeclKind::hom: return "hom";
    case DeclKind::chart: return "chart";
    case DeclKind::algebra: return "algebra";
    case DeclKind::parabolic: return "parabolic";
    case DeclKind::graded: return "gradedmodule";
  }
  return "?";
}

namespace {

enum class Tok { ident, number, sym, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 0, column = 0, begin = 0, end = 0;
};

[[noreturn]] void fail_at(const Token& t, const std::string& msg) {
  throw InputError("line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": " + msg);
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    t.begin = i;
    std::size_t n = 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::ident;
      while (i + n < src.size() && (std::isalnum(static_cast<unsigned char>(src[i + n])) || src[i + n] == '_')) ++n;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::number;
      while (i + n < src.size() && std::isdigit(static_cast<unsigned char>(src[i + n]))) ++n;
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Tok::sym;
      n = 2;
    } else if (std::string_view("{}()[];:,=+-*/^").find(c) != std::string_view::npos) {
      t.kind = Tok::sym;
    } else {
      t.text = std::string(1, c);
      fail_at(t, "unexpected character '" + t.text + "'");
    }
    t.text = src.substr(i, n);
    t.end = i + n;
    advance(n);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  end.begin = end.end = src.size();
  out.push_back(end);
  return out;
}

struct WordTerm {
  Integer coeff;
  std::string gen;
  Token at;
};
using WordAst = std::vector<WordTerm>;

struct ExprText {
  std::string text;
  Token at;
};

struct DegreeAst {
  bool canonical = false;
  std::vector<Rational> parts;
  Token at;
};

struct ModuleAst {
  std::size_t rank = 0;
  std::vector<std::vector<ExprText>> relations;
  Token at;
};

struct MatrixAst {
  std::vector<std::vector<ExprText>> rows;
  Token at;
};

struct Factor {
  enum Kind { number, expr, ident } kind = number;
  Rational value;
  ExprText text;
  std::string name;
  std::int64_t exponent = 1;
  Token at;
};

struct TermAst {
  bool negative = false;
  std::vector<Factor> factors;
  Token at;
};

struct MapAst {
  std::string gen;
  DegreeAst degree;
  MatrixAst matrix;
  Token at;
};

struct Decl {
  DeclKind kind = DeclKind::ring;
  std::string name;
  Token at;
  std::string literal;
  Token literal_at;
  std::vector<std::string> gens;
  std::vector<std::pair<WordAst, WordAst>> rels;
  std::string source, target;
  Token source_at, target_at;
  std::vector<std::pair<Token, WordAst>> images;
  std::vector<std::pair<Token, ExprText>> values;
  std::string chart_name, kummer_name;
  Token chart_at, kummer_at;
  std::string over;
  Token over_at;
  std::vector<std::pair<DegreeAst, ModuleAst>> slots;
  std::vector<MapAst> maps;
  std::vector<std::pair<Token, DegreeAst>> generators;
  std::vector<std::vector<TermAst>> relations;
  std::vector<Token> relation_at;
};

class Parser {
 public:
  Parser(const std::string& src, std::vector<Token> toks) : src_(src), toks_(std::move(toks)) {}

  std::vector<Decl> document() {
    std::vector<Decl> out;
    while (peek().kind != Tok::end) out.push_back(declaration());
    return out;
  }

  DegreeAst degree_only() {
    DegreeAst d = degree();
    if (peek().kind != Tok::end) fail_at(peek(), "unexpected '" + peek().text + "' after degree");
    return d;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is(const char* sym, std::size_t k = 0) const { return peek(k).kind == Tok::sym && peek(k).text == sym; }
  bool is_word(const char* w) const { return peek().kind == Tok::ident && peek().text == w; }
  bool accept(const char* sym) {
    if (!is(sym)) return false;
    next();
    return true;
  }
  const Token& expect(const char* sym) {
    if (!is(sym)) fail_at(peek(), std::string("expected '") + sym + "' but found " + describe(peek()));
    return next();
  }
  static std::string describe(const Token& t) { return t.kind == Tok::end ? "end of input" : "'" + t.text + "'"; }
  const Token& ident(const char* what) {
    if (peek().kind != Tok::ident) fail_at(peek(), std::string("expected ") + what + " but found " + describe(peek()));
    return next();
  }
  void keyword(const char* w) {
    if (!is_word(w)) fail_at(peek(), std::string("expected '") + w + "' but found " + describe(peek()));
    next();
  }
  Integer integer() {
    bool neg = accept("-");
    if (peek().kind != Tok::number) fail_at(peek(), "expected a number but found " + describe(peek()));
    Integer v(next().text);
    return neg ? Integer(-v) : v;
  }
  Rational fraction() {
    Integer n = integer();
    if (!accept("/")) return Rational(n);
    const Token& at = peek();
    Integer d = integer();
    if (d == 0) fail_at(at, "zero denominator");
    return Rational(n, d);
  }

  // tokens up to (not including) a stop symbol at bracket depth zero
  ExprText expression(const std::set<std::string>& stops) {
    const Token start = peek();
    int depth = 0;
    std::size_t last_end = start.begin;
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::end) fail_at(t, "unexpected end of input in expression");
      if (t.kind == Tok::sym) {
        if (depth == 0 && stops.count(t.text)) break;
        if (t.text == "(" || t.text == "[") ++depth;
        if (t.text == ")" || t.text == "]") {
          if (depth == 0) fail_at(t, "unbalanced '" + t.text + "'");
          --depth;
        }
        if (t.text == ";" || t.text == "{" || t.text == "}") fail_at(t, "unexpected '" + t.text + "' in expression");
      }
      last_end = t.end;
      next();
    }
    if (peek().begin == start.begin) fail_at(start, "expected an expression but found " + describe(start));
    return {src_.substr(start.begin, last_end - start.begin), start};
  }

  WordAst word() {
    WordAst w;
    if (peek().kind == Tok::number && peek().text == "0" && peek(1).kind != Tok::ident && !is("*", 1)) {
      next();
      return w;
    }
    do {
      WordTerm t;
      t.at = peek();
      t.coeff = 1;
      if (peek().kind == Tok::number) {
        t.coeff = Integer(next().text);
        accept("*");
      }
      t.gen = ident("a generator name").text;
      w.push_back(std::move(t));
    } while (accept("+"));
    return w;
  }

  DegreeAst degree() {
    DegreeAst d;
    d.at = peek();
    if (accept("[")) {
      d.canonical = true;
      if (!is("]")) {
        do d.parts.push_back(Rational(integer()));
        while (accept(","));
      }
      expect("]");
    } else if (accept("(")) {
      do d.parts.push_back(fraction());
      while (accept(","));
      expect(")");
    } else {
      d.parts.push_back(fraction());
    }
    return d;
  }

  ModuleAst module() {
    ModuleAst m;
    m.at = peek();
    if (peek().kind == Tok::number) {
      if (next().text != "0") fail_at(m.at, "a module is 0, R, R^n or a quotient of these");
      return m;
    }
    ident("a module");
    m.rank = 1;
    if (accept("^")) {
      const Token& at = peek();
      Integer n = integer();
      if (n < 0 || n > 10000) fail_at(at, "bad rank");
      m.rank = static_cast<std::size_t>(n);
    }
    if (accept("/")) {
      expect("(");
      do {
        if (accept("[")) {
          std::vector<ExprText> row;
          do row.push_back(expression({",", "]"}));
          while (accept(","));
          expect("]");
          m.relations.push_back(std::move(row));
        } else {
          m.relations.push_back({expression({",", ")"})});
        }
      } while (accept(","));
      expect(")");
    }
    return m;
  }

  MatrixAst matrix() {
    MatrixAst m;
    m.at = expect("[");
    if (accept("]")) return m;
    do {
      expect("[");
      std::vector<ExprText> row;
      if (!is("]")) {
        do row.push_back(expression({",", "]"}));
        while (accept(","));
      }
      expect("]");
      m.rows.push_back(std::move(row));
    } while (accept(","));
    expect("]");
    return m;
  }

  Factor factor() {
    Factor f;
    f.at = peek();
    if (peek().kind == Tok::number) {
      f.kind = Factor::number;
      Integer n(next().text);
      f.value = Rational(n);
      if (is("/") && peek(1).kind == Tok::number) {
        next();
        const Token& at = peek();
        Integer d(next().text);
        if (d == 0) fail_at(at, "zero denominator");
        f.value = Rational(n, d);
      }
      return f;
    }
    if (accept("(")) {
      f.kind = Factor::expr;
      f.text = expression({")"});
      expect(")");
    } else {
      f.kind = Factor::ident;
      f.name = ident("a factor").text;
    }
    if (accept("^")) {
      const Token& at = peek();
      Integer e = integer();
      if (e < -1000000 || e > 1000000) fail_at(at, "exponent out of range");
      f.exponent = static_cast<std::int64_t>(e);
    }
    return f;
  }

  std::vector<TermAst> element() {
    std::vector<TermAst> terms;
    bool negative = false;
    if (accept("-")) negative = true;
    else accept("+");
    while (true) {
      TermAst t;
      t.negative = negative;
      t.at = peek();
      t.factors.push_back(factor());
      while (true) {
        if (accept("*")) {
          t.factors.push_back(factor());
        } else if (t.factors.back().kind == Factor::number && (peek().kind == Tok::ident || is("("))) {
          t.factors.push_back(factor());
        } else {
          break;
        }
      }
      terms.push_back(std::move(t));
      if (accept("+")) negative = false;
      else if (accept("-")) negative = true;
      else break;
    }
    return terms;
  }

  void end_decl() {
    expect("}");
    accept(";");
  }

  Decl declaration() {
    const Token kw = ident("a declaration keyword");
    Decl d;
    d.at = kw;
    if (kw.text == "ring") {
      d.kind = DeclKind::ring;
      d.name = ident("a name").text;
      expect("=");
      d.literal_at = peek();
      d.literal = expression({";"}).text;
      expect(";");
    } else if (kw.text == "monoid") {
      d.kind = DeclKind::monoid;
      d.name = ident("a name").text;
      expect("{");
      while (!is("}")) {
        if (is_word("gens")) {
          next();
          while (peek().kind == Tok::ident) d.gens.push_back(next().text);
          expect(";");
        } else if (is_word("rel")) {
          next();
          WordAst lhs = word();
          expect("=");
          WordAst rhs = word();
          expect(";");
          d.rels.emplace_back(std::move(lhs), std::move(rhs));
        } else {
          fail_at(peek(), "expected 'gens' or 'rel' but found " + describe(peek()));
        }
      }
      end_decl();
    } else if (kw.text == "hom" || kw.text == "chart") {
      d.kind = kw.text == "hom" ? DeclKind::hom : DeclKind::chart;
      d.name = ident("a name").text;
      expect(":");
      d.source_at = peek();
      d.source = ident("a monoid name").text;
      expect("->");
      d.target_at = peek();
      d.target = ident(d.kind == DeclKind::hom ? "a monoid name" : "a ring name").text;
      expect("{");
      while (!is("}")) {
        Token g = ident("a generator name");
        expect("->");
        if (d.kind == DeclKind::hom) d.images.emplace_back(g, word());
        else d.values.emplace_back(g, expression({";"}));
        expect(";");
      }
      end_decl();
    } else if (kw.text == "algebra" || kw.text == "denominators") {
      d.kind = DeclKind::algebra;
      d.name = ident("a name").text;
      expect("{");
      while (!is("}")) {
        if (is_word("chart")) {
          next();
          d.chart_at = peek();
          d.chart_name = ident("a chart name").text;
        } else if (is_word("kummer")) {
          next();
          d.kummer_at = peek();
          d.kummer_name = ident("a hom name").text;
        } else {
          fail_at(peek(), "expected 'chart' or 'kummer' but found " + describe(peek()));
        }
        expect(";");
      }
      if (d.chart_name.empty() || d.kummer_name.empty()) fail_at(peek(), "algebra needs both 'chart' and 'kummer'");
      end_decl();
    } else if (kw.text == "parabolic" || kw.text == "gradedmodule") {
      d.kind = kw.text == "parabolic" ? DeclKind::parabolic : DeclKind::graded;
      d.name = ident("a name").text;
      keyword("over");
      d.over_at = peek();
      d.over = ident("an algebra name").text;
      expect("{");
      while (!is("}")) {
        const Token at = peek();
        if (d.kind == DeclKind::parabolic && is_word("slot")) {
          next();
          DegreeAst deg = degree();
          expect(":");
          d.slots.emplace_back(std::move(deg), module());
        } else if (d.kind == DeclKind::parabolic && is_word("map")) {
          next();
          MapAst m;
          m.at = at;
          m.gen = ident("a generator name").text;
          keyword("at");
          m.degree = degree();
          expect("=");
          m.matrix = matrix();
          d.maps.push_back(std::move(m));
        } else if (d.kind == DeclKind::graded && is_word("gen")) {
          next();
          std::vector<Token> names;
          do names.push_back(ident("a generator name"));
          while (peek().kind == Tok::ident && !is_word("at"));
          keyword("at");
          DegreeAst deg = degree();
          for (auto& n : names) d.generators.emplace_back(n, deg);
        } else if (d.kind == DeclKind::graded && is_word("rel")) {
          next();
          d.relation_at.push_back(peek());
          d.relations.push_back(element());
        } else {
          fail_at(at, std::string("unexpected ") + describe(at) + " in " + kw.text);
        }
        expect(";");
      }
      end_decl();
    } else {
      fail_at(kw, "unknown declaration '" + kw.text + "'");
    }
    return d;
  }

  const std::string& src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

template <class F>
auto located(const Token& at, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind("line ", 0) == 0) throw;
    fail_at(at, msg);
  }
}

}  // namespace

struct Document::Impl {
  std::string text;
  DocumentOptions options;
  std::vector<Decl> decls;
  std::map<std::string, std::size_t> index;
  mutable std::map<std::string, BaseRing> rings;
  mutable std::map<std::string, FpMonoid> monoids;
  mutable std::map<std::string, MonoidHom> homs;
  mutable std::map<std::string, KatoChart> charts;
  mutable std::map<std::string, AlgebraPtr> algebras;
  mutable std::map<std::string, ParabolicSheaf> sheaves;
  mutable std::map<std::string, GradedPresentation> graded;

  const Decl& decl(const std::string& name, DeclKind kind) const {
    auto it = index.find(name);
    if (it == index.end()) throw InputError("no declaration named '" + name + "'");
    const Decl& d = decls[it->second];
    if (d.kind != kind) throw InputError("'" + name + "' is a " + to_string(d.kind) + ", not a " + to_string(kind));
    return d;
  }

  IntVector degree(const GradedRootAlgebra& b, const DegreeAst& d) const {
    const auto& grp = b.degree_group();
    const auto& den = b.denominators();
    if (d.canonical) {
      if (d.parts.size() != grp.dimension())
        fail_at(d.at, "degree needs " + std::to_string(grp.dimension()) + " coordinates");
      IntVector v;
      for (const auto& p : d.parts) v.push_back(numerator(p));
      return grp.normalize(v);
    }
    if (!den.has_fraction_coordinates()) fail_at(d.at, "this degree group needs [..] coordinates");
    const std::size_t rank = den.source().group_presentation().group().dimension();
    if (d.parts.size() != rank) fail_at(d.at, "degree needs " + std::to_string(rank) + " fractions");
    return located(d.at, [&] { return den.from_fractions(d.parts); });
  }

  Poly ring_expr(const BaseRing& r, const ExprText& e) const {
    return located(e.at, [&] { return r.parse(e.text); });
  }

  Word word(const FpMonoid& m, const WordAst& w) const {
    Word out(m.num_generators(), 0);
    const auto& names = m.generator_names();
    for (const auto& t : w) {
      auto it = std::find(names.begin(), names.end(), t.gen);
      if (it == names.end()) fail_at(t.at, "unknown generator '" + t.gen + "'");
      out[static_cast<std::size_t>(it - names.begin())] += static_cast<std::int64_t>(t.coeff);
    }
    return out;
  }
};

Document Document::parse(const std::string& text, DocumentOptions options) {
  Document doc;
  doc.impl_ = std::make_shared<Impl>();
  Impl& im = *doc.impl_;
  im.text = text;
  im.options = options;
  Parser p(im.text, lex(im.text));
  im.decls = p.document();
  for (std::size_t k = 0; k < im.decls.size(); ++k) {
    const Decl& d = im.decls[k];
    if (!im.index.emplace(d.name, k).second) fail_at(d.at, "duplicate name '" + d.name + "'");
  }
  auto require = [&](const std::string& name, const Token& at, DeclKind kind) {
    auto it = im.index.find(name);
    if (it == im.index.end()) fail_at(at, "no declaration named '" + name + "'");
    if (im.decls[it->second].kind != kind)
      fail_at(at, "'" + name + "' is a " + to_string(im.decls[it->second].kind) + ", not a " + to_string(kind));
  };
  for (const Decl& d : im.decls) {
    switch (d.kind) {
      case DeclKind::hom:
        require(d.source, d.source_at, DeclKind::monoid);
        require(d.target, d.target_at, DeclKind::monoid);
        break;
      case DeclKind::chart:
        require(d.source, d.source_at, DeclKind::monoid);
        require(d.target, d.target_at, DeclKind::ring);
        break;
      case DeclKind::algebra:
        require(d.chart_name, d.chart_at, DeclKind::chart);
        require(d.kummer_name, d.kummer_at, DeclKind::hom);
        break;
      case DeclKind::parabolic:
      case DeclKind::graded: require(d.over, d.over_at, DeclKind::algebra); break;
      default: break;
    }
  }
  return doc;
}

std::optional<DeclKind> Document::kind_of(const std::string& name) const {
  auto it = impl_->index.find(name);
  if (it == impl_->index.end()) return std::nullopt;
  return impl_->decls[it->second].kind;
}

std::vector<std::string> Document::names() const {
  std::vector<std::string> out;
  for (const auto& d : impl_->decls) out.push_back(d.name);
  return out;
}

std::string Document::algebra_of(const std::string& name) const {
  auto k = kind_of(name);
  if (k != DeclKind::parabolic && k != DeclKind::graded)
    throw InputError("'" + name + "' is not a parabolic sheaf or graded module");
  return impl_->decls[impl_->index.at(name)].over;
}

BaseRing Document::ring(const std::string& name) const {
  auto it = impl_->rings.find(name);
  if (it != impl_->rings.end()) return it->second;
  const Decl& d = impl_->decl(name, DeclKind::ring);
  BaseRing r = located(d.literal_at, [&] { return parse_base_ring(d.literal); });
  return impl_->rings.emplace(name, r).first->second;
}

FpMonoid Document::monoid(const std::string& name) const {
  auto it = impl_->monoids.find(name);
  if (it != impl_->monoids.end()) return it->second;
  const Decl& d = impl_->decl(name, DeclKind::monoid);
  FpMonoid free = located(d.at, [&] { return FpMonoid::free(d.gens); });
  std::vector<Relation> rels;
  for (const auto& [l, r] : d.rels) rels.push_back({impl_->word(free, l), impl_->word(free, r)});
  FpMonoid m = located(d.at, [&] { return FpMonoid(d.gens, rels, impl_->options.limits); });
  return impl_->monoids.emplace(name, m).first->second;
}

MonoidHom Document::hom(const std::string& name) const {
  auto it = impl_->homs.find(name);
  if (it != impl_->homs.end()) return it->second;
  const Decl& d = impl_->decl(name, DeclKind::hom);
  FpMonoid src = monoid(d.source), tgt = monoid(d.target);
  std::vector<std::optional<Word>> images(src.num_generators());
  for (const auto& [g, w] : d.images) {
    const auto& names = src.generator_names();
    auto pos = std::find(names.begin(), names.end(), g.text);
    if (pos == names.end()) fail_at(g, "'" + g.text + "' is not a generator of " + d.source);
    auto& slot = images[static_cast<std::size_t>(pos - names.begin())];
    if (slot) fail_at(g, "image of '" + g.text + "' given twice");
    slot = impl_->word(tgt, w);
  }
  std::vector<Word> imgs;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i]) fail_at(d.at, "no image for generator '" + src.generator_names()[i] + "'");
    imgs.push_back(*images[i]);
  }
  MonoidHom h(src, tgt, imgs);
  return impl_->homs.emplace(name, h).first->second;
}

KatoChart Document::chart(const std::string& name) const {
  auto it = impl_->charts.find(name);
  if (it != impl_->charts.end()) return it->second;
  const Decl& d = impl_->decl(name, DeclKind::chart);
  FpMonoid m = monoid(d.source);
  BaseRing r = ring(d.target);
  std::vector<std::optional<Poly>> values(m.num_generators());
  for (const auto& [g, e] : d.values) {
    const auto& names = m.generator_names();
    auto pos = std::find(names.begin(), names.end(), g.text);
    if (pos == names.end()) fail_at(g, "'" + g.text + "' is not a generator of " + d.source);
    auto& slot = values[static_cast<std::size_t>(pos - names.begin())];
    if (slot) fail_at(g, "value of '" + g.text + "' given twice");
    slot = impl_->ring_expr(r, e);
  }
  std::vector<Poly> vals;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) fail_at(d.at, "no value for generator '" + m.generator_names()[i] + "'");
    vals.push_back(*values[i]);
  }
  KatoChart c(m, r, vals);
  return impl_->charts.emplace(name, c).first->second;
}

AlgebraPtr Document::algebra(const std::string& name) const {
  auto it = impl_->algebras.find(name);
  if (it != impl_->algebras.end()) return it->second;
  const Decl& d = impl_->decl(name, DeclKind::algebra);
  KatoChart c = chart(d.chart_name);
  MonoidHom j = hom(d.kummer_name);
  const Decl& cd = impl_->decl(d.chart_name, DeclKind::chart);
  const Decl& jd = impl_->decl(d.kummer_name, DeclKind::hom);
  if (cd.source != jd.source)
    fail_at(d.at, "chart is on " + cd.source + " but the Kummer map starts at " + jd.source);
  auto b = std::make_shared<const GradedRootAlgebra>(c, DenominatorSystem(j, impl_->options.search_bound),
                                                     impl_->options.piece_height);
  return impl_->algebras.emplace(name, b).first->second;
}

ParabolicSheaf Document::parabolic_unchecked(const std::string& name) const {
  const Decl& d = impl_->decl(name, DeclKind::parabolic);
  AlgebraPtr b = algebra(d.over);
  const BaseRing& r = b->ring();
  const std::size_t n = b->num_slots(), nq = b->q().num_generators();
  std::vector<Presentation> slots(n);
  std::vector<bool> seen(n, false);
  for (const auto& [deg, mod] : d.slots) {
    const std::size_t s = b->slot_of(impl_->degree(*b, deg));
    if (seen[s]) fail_at(deg.at, "slot given twice");
    seen[s] = true;
    slots[s].gens = mod.rank;
    for (const auto& row : mod.relations) {
      if (row.size() != mod.rank) fail_at(row.front().at, "relation needs " + std::to_string(mod.rank) + " entries");
      RingVector v;
      for (const auto& e : row) v.push_back(impl_->ring_expr(r, e));
      slots[s].relations.push_back(std::move(v));
    }
  }
  std::vector<std::vector<RingMatrix>> maps(n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t g = 0; g < nq; ++g) maps[s].emplace_back(slots[b->action_target(s, g)].gens, slots[s].gens);
  std::set<std::pair<std::size_t, std::size_t>> given;
  for (const auto& m : d.maps) {
    const auto& names = b->q().generator_names();
    auto pos = std::find(names.begin(), names.end(), m.gen);
    if (pos == names.end()) fail_at(m.at, "'" + m.gen + "' is not a generator of the Kummer target");
    const std::size_t g = static_cast<std::size_t>(pos - names.begin());
    const std::size_t s = b->slot_of(impl_->degree(*b, m.degree));
    if (!given.emplace(s, g).second) fail_at(m.at, "map given twice");
    if (m.matrix.rows.empty()) continue;
    const std::size_t cols = m.matrix.rows.front().size();
    RingMatrix mat(m.matrix.rows.size(), cols);
    for (std::size_t i = 0; i < mat.rows(); ++i) {
      if (m.matrix.rows[i].size() != cols) fail_at(m.matrix.at, "matrix rows have different lengths");
      for (std::size_t j = 0; j < cols; ++j) mat(i, j) = impl_->ring_expr(r, m.matrix.rows[i][j]);
    }
    const std::size_t t = b->action_target(s, g);
    if (mat.rows() != slots[t].gens || mat.cols() != slots[s].gens)
      fail_at(m.at, "map should be " + std::to_string(slots[t].gens) + "x" + std::to_string(slots[s].gens) +
                        ", got " + std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()));
    maps[s][g] = std::move(mat);
  }
  return ParabolicSheaf(b, std::move(slots), std::move(maps));
}

ParabolicSheaf Document::parabolic(const std::string& name) const {
  auto it = impl_->sheaves.find(name);
  if (it != impl_->sheaves.end()) return it->second;
  ParabolicSheaf e = parabolic_unchecked(name);
  validate(e);
  return impl_->sheaves.emplace(name, e).first->second;
}

GradedPresentation Document::graded(const std::string& name) const {
  auto it = impl_->graded.find(name);
  if (it != impl_->graded.end()) return it->second;
  const Decl& d = impl_->decl(name, DeclKind::graded);
  AlgebraPtr b = algebra(d.over);
  const BaseRing& r = b->ring();
  const std::size_t nq = b->q().num_generators();
  const std::size_t np = b->denominators().source().group_presentation().group().dimension();
  std::vector<std::string> names;
  std::vector<IntVector> degrees;
  for (const auto& [tok, deg] : d.generators) {
    if (std::find(names.begin(), names.end(), tok.text) != names.end()) fail_at(tok, "duplicate generator");
    names.push_back(tok.text);
    degrees.push_back(impl_->degree(*b, deg));
  }
  const auto& qnames = b->q().generator_names();
  std::vector<GradedRelation> rels;
  for (std::size_t k = 0; k < d.relations.size(); ++k) {
    GradedRelation rel;
    rel.entries.resize(names.size());
    bool have_degree = false;
    for (const auto& term : d.relations[k]) {
      BTerm t{term.negative ? r.constant(-1) : r.one(), word::zero(nq), IntVector(np)};
      std::optional<std::size_t> gen;
      for (const auto& f : term.factors) {
        if (f.kind == Factor::number) {
          t.coeff = r.scale(t.coeff, f.value);
          continue;
        }
        if (f.kind == Factor::expr) {
          Poly p = impl_->ring_expr(r, f.text);
          if (f.exponent < 0) fail_at(f.at, "negative power of a ring element");
          t.coeff = r.mul(t.coeff, r.pow(p, f.exponent));
          continue;
        }
        std::vector<int> hits;
        auto gpos = std::find(names.begin(), names.end(), f.name);
        auto qpos = std::find(qnames.begin(), qnames.end(), f.name);
        std::optional<std::size_t> tsym;
        for (std::size_t c = 0; c < np; ++c)
          if (b->t_symbol(c) == f.name) tsym = c;
        const auto& vars = r.variables();
        auto vpos = std::find(vars.begin(), vars.end(), f.name);
        const int matches = (gpos != names.end()) + (qpos != qnames.end()) + tsym.has_value() + (vpos != vars.end());
        if (matches == 0) fail_at(f.at, "unknown name '" + f.name + "'");
        if (matches > 1) fail_at(f.at, "ambiguous name '" + f.name + "'");
        if (gpos != names.end()) {
          if (gen) fail_at(f.at, "a term has more than one module generator");
          if (f.exponent != 1) fail_at(f.at, "module generators cannot be raised to powers");
          gen = static_cast<std::size_t>(gpos - names.begin());
        } else if (qpos != qnames.end()) {
          if (f.exponent < 0) fail_at(f.at, "x-symbols are not invertible");
          t.q[static_cast<std::size_t>(qpos - qnames.begin())] += f.exponent;
        } else if (tsym) {
          t.u[*tsym] += f.exponent;
        } else {
          if (f.exponent < 0) fail_at(f.at, "negative power of a ring variable");
          t.coeff = r.mul(t.coeff, r.pow(r.variable(static_cast<std::size_t>(vpos - vars.begin())), f.exponent));
        }
      }
      if (!gen) fail_at(term.at, "term has no module generator");
      if (!have_degree) {
        rel.degree = b->degree_group().add(term_degree(*b, t), degrees[*gen]);
        have_degree = true;
      }
      rel.entries[*gen].push_back(std::move(t));
    }
    rels.push_back(std::move(rel));
  }
  GradedPresentation n(b, std::move(degrees), std::move(rels), std::move(names));
  return impl_->graded.emplace(name, n).first->second;
}

IntVector Document::degree(const GradedRootAlgebra& b, const std::string& text) const {
  Parser p(text, lex(text));
  return impl_->degree(b, p.degree_only());
}

}  // namespace rootsheaf

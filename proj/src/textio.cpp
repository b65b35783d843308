#include "mfc/textio.hpp"

#include <algorithm>
#include <cctype>

#include "mfc/superforms.hpp"

namespace mfc {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

// ---------------------------------------------------------------------------
// Serializer

std::string serialize(const SuperSeries& s) {
  if (s.is_zero()) return "0";
  std::vector<std::pair<const Monomial*, const Rational*>> terms;
  for (const auto& [m, c] : s.terms()) terms.emplace_back(&m, &c);
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const auto da = a.first->degree(), db = b.first->degree();
    if (da != db) return da < db;
    return a.first->e > b.first->e;
  });
  const Chart& chart = *s.chart();
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const bool negative = sgn(*c) < 0;
    const Rational a = abs(*c);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < m->e.size(); ++i) {
      if (!m->e[i]) continue;
      if (!mono.empty()) mono += '*';
      mono += chart[i].name;
      if (m->e[i] > 1) mono += "^" + std::to_string(m->e[i]);
    }
    if (mono.empty())
      out += a.get_str();
    else if (a == 1)
      out += mono;
    else
      out += a.get_str() + "*" + mono;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { ident, number, sym, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view src, int line0 = 1, int col0 = 1) {
  std::vector<Token> out;
  int line = line0, col = col0;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    const int l = line, c = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), l, c});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::number, std::string(src.substr(i, j - i)), l, c});
      advance(j - i);
    } else if (ch == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::sym, "->", l, c});
      advance(2);
    } else if (std::string_view("+-*^/(){}:,=").find(ch) != std::string_view::npos) {
      out.push_back({Tok::sym, std::string(1, ch), l, c});
      advance(1);
    } else {
      throw ParseError(l, c, std::string("unexpected character '") + ch + "'");
    }
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::end; }
  bool is_sym(std::string_view s) const { return peek().kind == Tok::sym && peek().text == s; }
  bool is_word(std::string_view s) const { return peek().kind == Tok::ident && peek().text == s; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.col, msg);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(peek(), msg); }

  void expect_sym(std::string_view s) {
    if (!is_sym(s)) fail("expected '" + std::string(s) + "'" + found());
    next();
  }
  void expect_word(std::string_view s) {
    if (!is_word(s)) fail("expected '" + std::string(s) + "'" + found());
    next();
  }
  std::string ident() {
    if (peek().kind != Tok::ident) fail("expected identifier" + found());
    return next().text;
  }
  int integer() {
    if (peek().kind != Tok::number) fail("expected integer" + found());
    const Token& t = next();
    if (t.text.size() > 6) fail(t, "integer too large");
    return std::stoi(t.text);
  }
  std::string found() const {
    if (peek().kind == Tok::end) return ", found end of input";
    return ", found '" + peek().text + "'";
  }

  // expr := ['+'|'-'] term {('+'|'-') term}
  SuperSeries expr(const ChartPtr& c, int order) {
    SuperSeries r(c, order);
    bool neg = false;
    if (is_sym("+") || is_sym("-")) neg = next().text == "-";
    SuperSeries t = term(c, order);
    r += neg ? -t : t;
    while (is_sym("+") || is_sym("-")) {
      neg = next().text == "-";
      t = term(c, order);
      r += neg ? -t : t;
    }
    return r;
  }

 private:
  SuperSeries term(const ChartPtr& c, int order) {
    SuperSeries r = factor(c, order);
    while (is_sym("*")) {
      next();
      r = mul(r, factor(c, order));
    }
    return r;
  }

  SuperSeries factor(const ChartPtr& c, int order) {
    const Token& start = peek();
    std::optional<std::size_t> var;
    SuperSeries base = primary(c, order, var);
    if (!is_sym("^")) return base;
    next();
    const Token& et = peek();
    const int e = integer();
    if (var && is_odd((*c)[*var].parity) && e >= 2)
      fail(start, "odd variable squared: '" + (*c)[*var].name + "'");
    if (e > 64) fail(et, "exponent too large");
    return power(base, e);
  }

  SuperSeries primary(const ChartPtr& c, int order, std::optional<std::size_t>& var) {
    const Token& t = peek();
    if (t.kind == Tok::number) {
      next();
      Rational v(t.text);
      if (is_sym("/")) {
        next();
        const Token& d = peek();
        if (d.kind != Tok::number) fail("expected denominator" + found());
        next();
        Rational den(d.text);
        if (den == 0) fail(d, "zero denominator");
        v /= den;
      }
      v.canonicalize();
      return SuperSeries::constant(c, order, v);
    }
    if (t.kind == Tok::ident) {
      next();
      auto i = c->find(t.text);
      if (!i) fail(t, "undeclared identifier '" + t.text + "'");
      var = i;
      return SuperSeries::variable(c, order, t.text);
    }
    if (is_sym("(")) {
      next();
      SuperSeries r = expr(c, order);
      expect_sym(")");
      return r;
    }
    fail("expected expression" + found());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

SuperSeries parse_expression(std::string_view text, const ChartPtr& chart, int order) {
  Parser p(lex(text));
  SuperSeries r = p.expr(chart, order);
  if (!p.at_end()) p.fail("unexpected token '" + p.peek().text + "'");
  return r;
}

// ---------------------------------------------------------------------------
// Workspace

const ThickMorphism& Workspace::morphism(const std::string& name) const {
  auto it = morphisms.find(name);
  if (it == morphisms.end()) throw Error("unknown morphism '" + name + "'");
  return it->second;
}

const NamedFunction& Workspace::function(const std::string& name) const {
  auto it = functions.find(name);
  if (it == functions.end()) throw Error("unknown function '" + name + "'");
  return it->second;
}

namespace {

class WorkspaceParser {
 public:
  WorkspaceParser(std::string_view text, std::optional<bool> strict)
      : p_(lex(text)), strict_override_(strict) {}

  Workspace run() {
    if (strict_override_) ws_.settings.strict = *strict_override_;
    while (!p_.at_end()) {
      if (p_.is_word("chart"))
        chart();
      else if (p_.is_word("morphism"))
        morphism();
      else if (p_.is_word("function"))
        function();
      else if (p_.is_word("set"))
        setting();
      else
        p_.fail("expected 'chart', 'morphism', 'function' or 'set'" + p_.found());
    }
    return std::move(ws_);
  }

 private:
  void fresh(const Token& t, const std::string& name) {
    if (ws_.charts.count(name) || ws_.morphisms.count(name) || ws_.functions.count(name))
      p_.fail(t, "duplicate name '" + name + "'");
  }

  ChartPtr chart_ref() {
    const Token& t = p_.peek();
    const std::string name = p_.ident();
    auto it = ws_.charts.find(name);
    if (it == ws_.charts.end()) p_.fail(t, "unknown chart '" + name + "'");
    return it->second;
  }

  void chart() {
    p_.next();
    const Token& t = p_.peek();
    const std::string name = p_.ident();
    fresh(t, name);
    p_.expect_sym("{");
    std::vector<Variable> vars;
    while (!p_.is_sym("}")) {
      const Token& vt = p_.peek();
      std::string v = p_.ident();
      if (std::any_of(vars.begin(), vars.end(), [&](const Variable& w) { return w.name == v; }))
        p_.fail(vt, "duplicate coordinate '" + v + "'");
      if (v == kEpsName) p_.fail(vt, "'eps' is reserved");
      p_.expect_sym(":");
      Parity par;
      if (p_.is_word("even"))
        par = Parity::even;
      else if (p_.is_word("odd"))
        par = Parity::odd;
      else
        p_.fail("expected 'even' or 'odd'" + p_.found());
      p_.next();
      vars.push_back(Variable::base(std::move(v), par));
      if (!p_.is_sym("}")) p_.expect_sym(",");
    }
    p_.next();
    if (vars.empty()) p_.fail(t, "chart '" + name + "' has no coordinates");
    ws_.charts.emplace(name, Chart::make(name, std::move(vars)));
  }

  void morphism() {
    p_.next();
    const Token& t = p_.peek();
    const std::string name = p_.ident();
    fresh(t, name);
    p_.expect_sym(":");
    const ChartPtr src = chart_ref();
    p_.expect_sym("->");
    const ChartPtr tgt = chart_ref();
    Kind kind = Kind::even;
    int order = ws_.settings.order;
    while (p_.is_word("kind") || p_.is_word("order")) {
      const std::string key = p_.next().text;
      p_.expect_sym("=");
      if (key == "kind") {
        if (p_.is_word("even"))
          kind = Kind::even;
        else if (p_.is_word("odd"))
          kind = Kind::odd;
        else
          p_.fail("expected 'even' or 'odd'" + p_.found());
        p_.next();
      } else {
        order = p_.integer();
      }
    }
    p_.expect_sym("{");
    p_.expect_word("S");
    p_.expect_sym("=");
    const ChartPtr G = generating_chart(src, tgt, kind);
    const Token& et = p_.peek();
    SuperSeries S = p_.expr(G, order);
    p_.expect_sym("}");
    try {
      ws_.morphisms.emplace(name, mk_thick(src, tgt, kind, S, order, ws_.settings.strict));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      p_.fail(et, e.what());
    }
  }

  void function() {
    p_.next();
    const Token& t = p_.peek();
    const std::string name = p_.ident();
    fresh(t, name);
    p_.expect_word("on");
    const Token& ct = p_.peek();
    ChartPtr c = chart_ref();
    const std::string cname = ct.text;
    p_.expect_sym("{");
    // Body identifiers decide whether the function lives on a lifted chart.
    bool dot = false, par = false;
    for (std::size_t k = 0; !(p_.peek(k).kind == Tok::sym && p_.peek(k).text == "}") &&
                            p_.peek(k).kind != Tok::end;
         ++k) {
      const Token& b = p_.peek(k);
      if (b.kind != Tok::ident) continue;
      dot |= b.text.starts_with(kDotPrefix);
      par |= b.text.starts_with(kParPrefix);
    }
    if (dot && par) p_.fail(p_.peek(), "function mixes dot_ and par_ variables");
    if (dot) c = extend_chart(*c, BundleKind::T);
    if (par) c = extend_chart(*c, BundleKind::PiT);
    SuperSeries v = p_.expr(c, ws_.settings.order);
    p_.expect_sym("}");
    ws_.functions.emplace(name, NamedFunction{cname, std::move(v)});
  }

  void setting() {
    p_.next();
    const Token& kt = p_.peek();
    const std::string key = p_.ident();
    p_.expect_sym("=");
    if (key == "order") {
      ws_.settings.order = p_.integer();
    } else if (key == "eps_order") {
      ws_.settings.eps_order = p_.integer();
    } else if (key == "strict") {
      bool v;
      if (p_.is_word("true"))
        v = true;
      else if (p_.is_word("false"))
        v = false;
      else
        p_.fail("expected 'true' or 'false'" + p_.found());
      p_.next();
      if (!strict_override_) ws_.settings.strict = v;
    } else {
      p_.fail(kt, "unknown setting '" + key + "'");
    }
  }

  Parser p_;
  std::optional<bool> strict_override_;
  Workspace ws_;
};

}  // namespace

Workspace parse_workspace(std::string_view text, std::optional<bool> strict) {
  return WorkspaceParser(text, strict).run();
}

}  // namespace mfc

#include "twistcheck/dsl.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <set>

namespace twistcheck {

ExprPtr make_name(std::string name, SourcePosition pos) {
  auto e = std::make_shared<TwistExpr>();
  e->kind = TwistExpr::Kind::name;
  e->name = std::move(name);
  e->position = pos;
  return e;
}

ExprPtr make_compose(ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<TwistExpr>();
  e->kind = TwistExpr::Kind::compose;
  e->position = lhs->position;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

ExprPtr make_power(ExprPtr base, long exponent) {
  if (exponent == 1) return base;
  auto e = std::make_shared<TwistExpr>();
  e->kind = TwistExpr::Kind::power;
  e->position = base->position;
  e->base = std::move(base);
  e->exponent = exponent;
  return e;
}

ExprPtr make_product(const std::vector<ExprPtr>& factors) {
  if (factors.empty()) throw Error("empty product");
  ExprPtr out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = make_compose(out, factors[i]);
  return out;
}

bool same_expr(const TwistExpr& a, const TwistExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TwistExpr::Kind::name:
      return a.name == b.name;
    case TwistExpr::Kind::compose:
      return same_expr(*a.lhs, *b.lhs) && same_expr(*a.rhs, *b.rhs);
    case TwistExpr::Kind::power:
      return a.exponent == b.exponent && same_expr(*a.base, *b.base);
  }
  return false;
}

namespace {

constexpr std::size_t kMaxDepth = 200;

class Parser {
 public:
  Parser(std::string_view text, SourcePosition origin)
      : text_(text), line_(origin.line), col_(origin.column) {}

  ExprPtr parse_all() {
    skip_space();
    if (at_end()) fail("empty expression");
    ExprPtr e = parse_expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + describe(peek()) + "'");
    return e;
  }

 private:
  ExprPtr parse_expr() {
    ExprPtr lhs = parse_factor();
    for (;;) {
      skip_space();
      if (at_end() || peek() != '*') return lhs;
      advance();
      skip_space();
      lhs = make_compose(lhs, parse_factor());
    }
  }

  ExprPtr parse_factor() {
    ExprPtr e = parse_primary();
    for (;;) {
      skip_space();
      if (at_end()) return e;
      if (peek() == '\'') {
        advance();
        e = make_power(e, -1);
      } else if (peek() == '^') {
        advance();
        skip_space();
        e = make_power(e, parse_integer());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_primary() {
    skip_space();
    if (at_end()) fail("expected a twist name or '('");
    SourcePosition pos = here();
    char c = peek();
    if (c == '(') {
      if (++depth_ > kMaxDepth) fail("expression nested too deeply");
      advance();
      ExprPtr e = parse_expr();
      skip_space();
      if (at_end() || peek() != ')') fail("expected ')'");
      advance();
      --depth_;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        name += peek();
        advance();
      }
      return make_name(std::move(name), pos);
    }
    fail(std::string("expected a twist name or '(', found '") + describe(c) + "'");
  }

  long parse_integer() {
    SourcePosition pos = here();
    bool negative = false;
    if (!at_end() && peek() == '-') {
      negative = true;
      advance();
    }
    std::string digits;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    if (digits.empty()) fail("expected an integer exponent");
    long value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw ParseError("exponent out of range", pos);
    }
    return negative ? -value : value;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }
  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  SourcePosition here() const { return {line_, col_}; }

  static std::string describe(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isprint(u)) return std::string(1, c);
    static const char* hex = "0123456789abcdef";
    return std::string("\\x") + hex[u >> 4] + hex[u & 15];
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, here()); }

  std::string_view text_;
  std::size_t i_ = 0;
  std::size_t line_, col_;
  std::size_t depth_ = 0;
};

void format_into(const TwistExpr& e, std::string& out, ExprStyle style) {
  switch (e.kind) {
    case TwistExpr::Kind::name:
      out += e.name;
      return;
    case TwistExpr::Kind::compose:
      format_into(*e.lhs, out, style);
      out += style == ExprStyle::compact ? "*" : " * ";
      if (e.rhs->kind == TwistExpr::Kind::compose) {
        out += '(';
        format_into(*e.rhs, out, style);
        out += ')';
      } else {
        format_into(*e.rhs, out, style);
      }
      return;
    case TwistExpr::Kind::power:
      if (e.base->kind == TwistExpr::Kind::compose) {
        out += '(';
        format_into(*e.base, out, style);
        out += ')';
      } else {
        format_into(*e.base, out, style);
      }
      if (e.exponent == -1) {
        out += '\'';
      } else {
        out += '^';
        out += std::to_string(e.exponent);
      }
      return;
  }
}

void collect_names(const TwistExpr& e, std::vector<std::string>& out, std::set<std::string>& seen) {
  switch (e.kind) {
    case TwistExpr::Kind::name:
      if (seen.insert(e.name).second) out.push_back(e.name);
      return;
    case TwistExpr::Kind::compose:
      collect_names(*e.lhs, out, seen);
      collect_names(*e.rhs, out, seen);
      return;
    case TwistExpr::Kind::power:
      collect_names(*e.base, out, seen);
      return;
  }
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text, {}).parse_all(); }

ExprPtr parse_expr(std::string_view text, SourcePosition origin) {
  return Parser(text, origin).parse_all();
}

std::string format_expr(const TwistExpr& e, ExprStyle style) {
  std::string out;
  format_into(e, out, style);
  return out;
}

std::vector<std::string> expr_names(const TwistExpr& e) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_names(e, out, seen);
  return out;
}

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& table) {
  switch (e->kind) {
    case TwistExpr::Kind::name: {
      auto it = table.find(e->name);
      return it == table.end() ? e : it->second;
    }
    case TwistExpr::Kind::compose: {
      ExprPtr l = substitute(e->lhs, table), r = substitute(e->rhs, table);
      if (l == e->lhs && r == e->rhs) return e;
      return make_compose(l, r);
    }
    case TwistExpr::Kind::power: {
      ExprPtr b = substitute(e->base, table);
      if (b == e->base) return e;
      // A substituted base can itself be a power; keep the nesting explicit.
      auto p = std::make_shared<TwistExpr>(*e);
      p->base = b;
      return p;
    }
  }
  return e;
}

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::homology:
      return "homology";
    case Engine::exact:
      return "exact";
    case Engine::both:
      return "both";
  }
  return "both";
}

std::optional<Engine> parse_engine(std::string_view text) {
  if (text == "homology") return Engine::homology;
  if (text == "exact") return Engine::exact;
  if (text == "both") return Engine::both;
  return std::nullopt;
}

std::string format_equation(const Equation& eq, ExprStyle style) {
  return format_expr(eq.lhs, style) + " == " + format_expr(eq.rhs, style);
}

bool same_equation(const Equation& a, const Equation& b) {
  return same_expr(a.lhs, b.lhs) && same_expr(a.rhs, b.rhs);
}

Equation parse_equation(std::string_view text, SourcePosition origin) {
  std::size_t eq = text.find("==");
  if (eq == std::string_view::npos) {
    throw ParseError("expected an equation 'lhs == rhs'", origin);
  }
  SourcePosition rhs_origin = origin;
  for (std::size_t i = 0; i < eq + 2; ++i) {
    if (text[i] == '\n') {
      ++rhs_origin.line;
      rhs_origin.column = 1;
    } else {
      ++rhs_origin.column;
    }
  }
  std::string_view rhs = text.substr(eq + 2);
  if (rhs.find("==") != std::string_view::npos) {
    throw ParseError("more than one '==' in equation", rhs_origin);
  }
  Equation out;
  out.lhs = Parser(text.substr(0, eq), origin).parse_all();
  out.rhs = Parser(rhs, rhs_origin).parse_all();
  return out;
}

namespace dsl_detail {

std::string_view strip_comment(std::string_view line) {
  std::size_t hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::string_view trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

}  // namespace dsl_detail

namespace {

using dsl_detail::is_identifier;
using dsl_detail::strip_comment;
using dsl_detail::trim;

// Splits off a leading keyword; returns the rest and its column.
bool keyword(std::string_view line, std::string_view kw, std::string_view& rest,
             std::size_t& column) {
  std::size_t lead = 0;
  while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
  std::string_view s = line.substr(lead);
  if (s.substr(0, kw.size()) != kw) return false;
  if (s.size() > kw.size() && !std::isspace(static_cast<unsigned char>(s[kw.size()]))) {
    return false;
  }
  rest = s.substr(kw.size());
  column = lead + kw.size() + 1;
  return true;
}

// Finds a trailing "engine=<tag>" or "[engine=<tag>]".
std::optional<std::size_t> find_engine_tag(std::string_view s) {
  std::size_t at = s.rfind("engine");
  while (at != std::string_view::npos) {
    std::size_t j = at + 6;
    while (j < s.size() && s[j] == ' ') ++j;
    bool boundary = at == 0 || !(std::isalnum(static_cast<unsigned char>(s[at - 1])) ||
                                 s[at - 1] == '_');
    if (boundary && j < s.size() && s[j] == '=' && (j + 1 >= s.size() || s[j + 1] != '=')) {
      std::size_t start = at;
      std::size_t k = at;
      while (k > 0 && s[k - 1] == ' ') --k;
      if (k > 0 && s[k - 1] == '[') start = k - 1;
      return start;
    }
    if (at == 0) break;
    at = s.rfind("engine", at - 1);
  }
  return std::nullopt;
}

}  // namespace

std::vector<Directive> parse_script(std::string_view text) {
  std::vector<Directive> out;
  std::map<std::string, ExprPtr> lets;
  std::string surface;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string_view line = strip_comment(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    std::string_view rest;
    std::size_t col = 1;
    if (keyword(line, "surface", rest, col)) {
      std::string_view name = trim(rest);
      if (name.empty() || name.find_first_of(" \t") != std::string_view::npos) {
        throw ParseError("expected 'surface <name>'", {line_no, col});
      }
      surface = std::string(name);
      Directive d;
      d.kind = Directive::Kind::surface;
      d.line = line_no;
      d.surface = surface;
      out.push_back(std::move(d));
    } else if (keyword(line, "let", rest, col)) {
      std::size_t eq = rest.find('=');
      if (eq == std::string_view::npos || (eq + 1 < rest.size() && rest[eq + 1] == '=')) {
        throw ParseError("expected 'let <name> = <expr>'", {line_no, col});
      }
      std::string name(trim(rest.substr(0, eq)));
      if (!is_identifier(name)) throw ParseError("invalid let name '" + name + "'", {line_no, col});
      if (lets.count(name)) throw ParseError("duplicate let '" + name + "'", {line_no, col});
      ExprPtr body = Parser(rest.substr(eq + 1), {line_no, col + eq + 1}).parse_all();
      body = substitute(body, lets);
      lets[name] = body;
      Directive d;
      d.kind = Directive::Kind::let;
      d.line = line_no;
      d.surface = surface;
      d.let_name = name;
      d.let_expr = body;
      out.push_back(std::move(d));
    } else if (keyword(line, "assert", rest, col)) {
      if (surface.empty()) throw ParseError("assert before any surface directive", {line_no, 1});
      std::optional<Engine> engine;
      std::string_view body = rest;
      if (auto tag = find_engine_tag(rest)) {
        std::string_view t = trim(rest.substr(*tag));
        if (t.front() == '[') {
          if (t.back() != ']') throw ParseError("unterminated engine tag", {line_no, col + *tag});
          t = trim(t.substr(1, t.size() - 2));
        }
        std::string_view value = trim(t.substr(t.find('=') + 1));
        engine = parse_engine(value);
        if (!engine) {
          throw ParseError("unknown engine '" + std::string(value) + "'", {line_no, col + *tag});
        }
        body = rest.substr(0, *tag);
      }
      Equation eq = parse_equation(body, {line_no, col});
      eq.lhs = substitute(eq.lhs, lets);
      eq.rhs = substitute(eq.rhs, lets);
      Directive d;
      d.kind = Directive::Kind::assert_;
      d.line = line_no;
      d.surface = surface;
      d.equation = std::move(eq);
      d.source = std::string(trim(body));
      d.engine = engine;
      out.push_back(std::move(d));
    } else {
      std::string_view t = trim(line);
      std::size_t lead = t.data() - line.data();
      throw ParseError("unknown directive '" + std::string(t.substr(0, t.find_first_of(" \t"))) + "'",
                       {line_no, lead + 1});
    }
  }
  return out;
}

}  // namespace twistcheck

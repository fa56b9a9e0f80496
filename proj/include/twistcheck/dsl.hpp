#pragma once

// Twist-word expressions and relation scripts.
//
// Grammar (ASCII, whitespace insignificant):
//
//   expr    := factor ('*' factor)*          composition, left-associative
//   factor  := primary postfix*
//   postfix := '\''                          inverse, sugar for ^-1
//            | '^' '-'? digits               integer power, 0 allowed
//   primary := name | '(' expr ')'
//   name    := [A-Za-z][A-Za-z0-9_]*
//
// "A * B" is the mapping class "B first, then A", the words-module
// convention: the rightmost factor is applied first.
//
// Scripts are line based:
//
//   surface <name>
//   let <id> = <expr>
//   assert <expr> == <expr> [engine=homology|exact|both]
//   # comment
//
// Lets are expanded when defined, so a let body sees earlier lets and a later
// let may shadow a twist name.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twistcheck/error.hpp"

namespace twistcheck {

struct TwistExpr;
using ExprPtr = std::shared_ptr<const TwistExpr>;

struct TwistExpr {
  enum class Kind { name, compose, power };

  Kind kind = Kind::name;
  std::string name;        // name
  ExprPtr lhs, rhs;        // compose
  ExprPtr base;            // power
  long exponent = 0;       // power
  SourcePosition position;
};

ExprPtr make_name(std::string name, SourcePosition pos = {});
ExprPtr make_compose(ExprPtr lhs, ExprPtr rhs);
// power(e, 1) is e itself, so the AST never holds a unit exponent.
ExprPtr make_power(ExprPtr base, long exponent);
// Left-associated product of the factors; at least one factor.
ExprPtr make_product(const std::vector<ExprPtr>& factors);

// Structural equality, ignoring positions.
bool same_expr(const TwistExpr& a, const TwistExpr& b);
inline bool same_expr(const ExprPtr& a, const ExprPtr& b) { return same_expr(*a, *b); }

ExprPtr parse_expr(std::string_view text);
// Positions in errors are offset by `origin`.
ExprPtr parse_expr(std::string_view text, SourcePosition origin);

// Canonical printing. Compact style drops the blanks around '*'.
enum class ExprStyle { spaced, compact };
std::string format_expr(const TwistExpr& e, ExprStyle style = ExprStyle::spaced);
inline std::string format_expr(const ExprPtr& e, ExprStyle style = ExprStyle::spaced) {
  return format_expr(*e, style);
}

// Names occurring in e, in first-occurrence order.
std::vector<std::string> expr_names(const TwistExpr& e);
// Replaces names by expressions; unknown names are kept.
ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& table);

enum class Engine { homology, exact, both };
std::string engine_name(Engine e);
std::optional<Engine> parse_engine(std::string_view text);

struct Equation {
  ExprPtr lhs, rhs;
};
std::string format_equation(const Equation& eq, ExprStyle style = ExprStyle::spaced);
bool same_equation(const Equation& a, const Equation& b);
// "L == R", positions offset by `origin`.
Equation parse_equation(std::string_view text, SourcePosition origin = {});

struct Directive {
  enum class Kind { surface, let, assert_ };

  Kind kind = Kind::surface;
  std::size_t line = 0;
  std::string surface;             // surface: the name; assert: the context
  std::string let_name;            // let
  ExprPtr let_expr;                // let, already expanded
  Equation equation;               // assert, lets expanded
  std::string source;              // assert: text as written
  std::optional<Engine> engine;    // assert: explicit engine tag
};

std::vector<Directive> parse_script(std::string_view text);

// Helpers shared with the derivation script parser.
namespace dsl_detail {
std::string_view strip_comment(std::string_view line);
std::string_view trim(std::string_view s);
bool is_identifier(std::string_view s);
}  // namespace dsl_detail

}  // namespace twistcheck

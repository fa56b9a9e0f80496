#pragma once

// Step checker for rewriting proofs between twist relations.
//
// Script format (dsl lines plus three keywords):
//
//   surface S_1_3
//   initial <lhs> == <rhs>
//   step substitute(<lemma lhs> == <lemma rhs>): <lhs> == <rhs>
//   step expand_power: <lhs> == <rhs>
//   step free_cancel: <lhs> == <rhs>
//   step conjugate_both_sides(by=<expr>, justification=central_rhs): <lhs> == <rhs>
//   step rewrite_rhs_central: <lhs> == <rhs>
//   note <free text, kept as metadata>
//
// Each step is checked against the equation before it. Syntactic rules work
// in the free group on the twist symbols; anything that relies on the mapping
// class group (a lemma, a commutation) is confirmed with the exact engine.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistcheck/dsl.hpp"
#include "twistcheck/surfaces.hpp"

namespace twistcheck {

enum class Rule { substitute, expand_power, free_cancel, conjugate_both_sides, rewrite_rhs_central };
enum class Justification { central_rhs, verified_commutation };

std::string rule_name(Rule r);
std::optional<Rule> parse_rule(std::string_view s);

struct DerivationStep {
  Rule rule = Rule::free_cancel;
  std::optional<Equation> lemma;   // substitute
  ExprPtr by;                      // conjugate_both_sides
  Justification justification = Justification::central_rhs;
  Equation result;
  std::size_t line = 0;
};

struct DerivationScript {
  std::string surface;
  Equation initial;
  std::vector<DerivationStep> steps;
  std::vector<std::string> notes;
};

// Throws ParseError (also for an empty script or a missing surface/initial line).
DerivationScript parse_derivation(std::string_view text);

// A letter of the free group on twist symbols.
using FormalLetter = std::pair<std::string, int>;
using FormalWord = std::vector<FormalLetter>;
// Expands powers; optionally freely reduces. Throws Error past a size limit.
FormalWord formal_word(const TwistExpr& e, bool reduced);
std::string format_formal(const FormalWord& w);

struct StepResult {
  bool ok = true;
  std::string message;  // reason for a violation
};

StepResult check_step(const SurfaceModel& model, const Equation& prev, const DerivationStep& step);

struct StepReport {
  std::size_t index = 0;  // 1-based
  std::size_t line = 0;
  std::string rule;
  StepResult result;
};

struct DerivationReport {
  std::string surface;
  bool initial_verified = false;
  bool final_verified = false;
  std::string initial_message, final_message;
  std::vector<StepReport> steps;
  std::vector<std::string> notes;

  bool ok() const;
  // 1-based index of the first violating step, if any.
  std::optional<std::size_t> first_violation() const;
};

DerivationReport check_derivation(const DerivationScript& script);

}  // namespace twistcheck

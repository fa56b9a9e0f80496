#include "twistcheck/derivation.hpp"

#include <cctype>

#include "twistcheck/relations.hpp"

namespace twistcheck {

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::substitute:
      return "substitute";
    case Rule::expand_power:
      return "expand_power";
    case Rule::free_cancel:
      return "free_cancel";
    case Rule::conjugate_both_sides:
      return "conjugate_both_sides";
    case Rule::rewrite_rhs_central:
      return "rewrite_rhs_central";
  }
  return "";
}

std::optional<Rule> parse_rule(std::string_view s) {
  for (Rule r : {Rule::substitute, Rule::expand_power, Rule::free_cancel,
                 Rule::conjugate_both_sides, Rule::rewrite_rhs_central}) {
    if (rule_name(r) == s) return r;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using dsl_detail::strip_comment;
using dsl_detail::trim;

bool starts_with_word(std::string_view s, std::string_view kw) {
  return s.substr(0, kw.size()) == kw &&
         (s.size() == kw.size() || std::isspace(static_cast<unsigned char>(s[kw.size()])) ||
          s[kw.size()] == '(' || s[kw.size()] == ':');
}

std::size_t column_of(std::string_view line, std::string_view part) {
  return std::size_t(part.data() - line.data()) + 1;
}

// Splits "a, b" at top-level commas.
std::vector<std::string_view> split_args(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

DerivationStep parse_step(std::string_view line, std::string_view rest, std::size_t line_no) {
  DerivationStep step;
  step.line = line_no;
  std::size_t i = 0;
  while (i < rest.size() && (std::isalnum(static_cast<unsigned char>(rest[i])) || rest[i] == '_')) ++i;
  std::string_view rule_text = rest.substr(0, i);
  auto rule = parse_rule(rule_text);
  if (!rule) {
    throw ParseError("unknown rule '" + std::string(rule_text) + "'",
                     {line_no, column_of(line, rest)});
  }
  step.rule = *rule;
  std::string_view after = rest.substr(i);
  std::string_view args;
  std::size_t args_col = 0;
  std::size_t k = 0;
  while (k < after.size() && std::isspace(static_cast<unsigned char>(after[k]))) ++k;
  if (k < after.size() && after[k] == '(') {
    int depth = 0;
    std::size_t j = k;
    for (; j < after.size(); ++j) {
      if (after[j] == '(') ++depth;
      if (after[j] == ')' && --depth == 0) break;
    }
    if (j == after.size()) {
      throw ParseError("unterminated rule arguments", {line_no, column_of(line, after.substr(k))});
    }
    args = after.substr(k + 1, j - k - 1);
    args_col = column_of(line, args);
    k = j + 1;
  }
  while (k < after.size() && std::isspace(static_cast<unsigned char>(after[k]))) ++k;
  if (k >= after.size() || after[k] != ':') {
    throw ParseError("expected ':' before the resulting equation",
                     {line_no, column_of(line, after.substr(std::min(k, after.size())))});
  }
  std::string_view eq_text = after.substr(k + 1);
  step.result = parse_equation(eq_text, {line_no, column_of(line, eq_text)});

  auto need_no_args = [&] {
    if (!trim(args).empty()) {
      throw ParseError("rule " + rule_name(step.rule) + " takes no arguments", {line_no, args_col});
    }
  };
  switch (step.rule) {
    case Rule::substitute:
      if (trim(args).empty()) {
        throw ParseError("substitute needs a lemma equation", {line_no, column_of(line, rest)});
      }
      step.lemma = parse_equation(args, {line_no, args_col});
      break;
    case Rule::conjugate_both_sides: {
      bool have_by = false;
      for (std::string_view a : split_args(args)) {
        std::size_t eq = a.find('=');
        if (eq == std::string_view::npos) {
          throw ParseError("expected key=value argument", {line_no, column_of(line, a)});
        }
        std::string_view key = trim(a.substr(0, eq));
        std::string_view value = a.substr(eq + 1);
        if (key == "by") {
          step.by = parse_expr(value, {line_no, column_of(line, value)});
          have_by = true;
        } else if (key == "justification") {
          std::string_view v = trim(value);
          if (v == "central_rhs") {
            step.justification = Justification::central_rhs;
          } else if (v == "verified_commutation") {
            step.justification = Justification::verified_commutation;
          } else {
            throw ParseError("unknown justification '" + std::string(v) + "'",
                             {line_no, column_of(line, value)});
          }
        } else {
          throw ParseError("unknown argument '" + std::string(key) + "'",
                           {line_no, column_of(line, a)});
        }
      }
      if (!have_by) throw ParseError("conjugate_both_sides needs by=<expr>", {line_no, args_col});
      break;
    }
    default:
      need_no_args();
  }
  return step;
}

}  // namespace

DerivationScript parse_derivation(std::string_view text) {
  DerivationScript script;
  bool have_initial = false;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string_view t = trim(raw);
    if (starts_with_word(t, "note")) {
      script.notes.emplace_back(trim(t.substr(4)));
      continue;
    }
    std::string_view line = strip_comment(raw);
    t = trim(line);
    if (t.empty()) continue;
    SourcePosition here{line_no, column_of(line, t)};
    if (starts_with_word(t, "surface")) {
      std::string_view name = trim(t.substr(7));
      if (name.empty()) throw ParseError("expected 'surface <name>'", here);
      if (!script.surface.empty()) throw ParseError("surface given twice", here);
      script.surface = std::string(name);
    } else if (starts_with_word(t, "initial")) {
      if (script.surface.empty()) throw ParseError("initial equation before surface", here);
      if (have_initial) throw ParseError("initial equation given twice", here);
      std::string_view eq = t.substr(7);
      script.initial = parse_equation(eq, {line_no, column_of(line, eq)});
      have_initial = true;
    } else if (starts_with_word(t, "step")) {
      if (!have_initial) throw ParseError("step before the initial equation", here);
      std::string_view rest = trim(t.substr(4));
      script.steps.push_back(parse_step(line, rest, line_no));
    } else {
      throw ParseError("unknown directive '" + std::string(t.substr(0, t.find_first_of(" \t("))) + "'",
                       here);
    }
  }
  if (script.surface.empty()) throw ParseError("derivation script has no surface line", {line_no, 1});
  if (!have_initial) throw ParseError("derivation script has no initial equation", {line_no, 1});
  return script;
}

// ---------------------------------------------------------------------------
// Formal words

namespace {

constexpr std::size_t kMaxFormal = 1'000'000;

void push_letter(FormalWord& w, const FormalLetter& l, bool reduced) {
  if (reduced && !w.empty() && w.back().first == l.first && w.back().second == -l.second) {
    w.pop_back();
  } else {
    w.push_back(l);
  }
  if (w.size() > kMaxFormal) throw Error("formal word too long");
}

void append_formal(FormalWord& out, const FormalWord& w, bool inverse, bool reduced) {
  if (!inverse) {
    for (const auto& l : w) push_letter(out, l, reduced);
  } else {
    for (auto it = w.rbegin(); it != w.rend(); ++it) push_letter(out, {it->first, -it->second}, reduced);
  }
}

}  // namespace

FormalWord formal_word(const TwistExpr& e, bool reduced) {
  FormalWord out;
  switch (e.kind) {
    case TwistExpr::Kind::name:
      out.push_back({e.name, 1});
      break;
    case TwistExpr::Kind::compose:
      out = formal_word(*e.lhs, reduced);
      append_formal(out, formal_word(*e.rhs, reduced), false, reduced);
      break;
    case TwistExpr::Kind::power: {
      FormalWord b = formal_word(*e.base, reduced);
      long n = e.exponent < 0 ? -e.exponent : e.exponent;
      if (!b.empty() && std::size_t(n) > kMaxFormal / b.size()) throw Error("formal word too long");
      for (long i = 0; i < n; ++i) append_formal(out, b, e.exponent < 0, reduced);
      break;
    }
  }
  return out;
}

std::string format_formal(const FormalWord& w) {
  if (w.empty()) return "(empty)";
  std::string out;
  for (const auto& [name, sign] : w) {
    if (!out.empty()) out += ' ';
    out += name;
    if (sign < 0) out += '\'';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Substitution: one occurrence, with products flattened

namespace {

struct Flat {
  enum class Kind { name, product, power } kind = Kind::name;
  std::string name;
  std::vector<Flat> items;  // product factors, or the single power base
  long exponent = 0;

  bool operator==(const Flat&) const = default;
};

Flat flat_product(std::vector<Flat> items) {
  std::vector<Flat> merged;
  for (Flat& f : items) {
    if (f.kind == Flat::Kind::product) {
      for (Flat& g : f.items) merged.push_back(std::move(g));
    } else {
      merged.push_back(std::move(f));
    }
  }
  if (merged.size() == 1) return std::move(merged.front());
  Flat p;
  p.kind = Flat::Kind::product;
  p.items = std::move(merged);
  return p;
}

Flat flatten(const TwistExpr& e) {
  switch (e.kind) {
    case TwistExpr::Kind::name: {
      Flat f;
      f.name = e.name;
      return f;
    }
    case TwistExpr::Kind::compose:
      return flat_product({flatten(*e.lhs), flatten(*e.rhs)});
    case TwistExpr::Kind::power: {
      Flat f;
      f.kind = Flat::Kind::power;
      f.items = {flatten(*e.base)};
      f.exponent = e.exponent;
      return f;
    }
  }
  return {};
}

std::vector<Flat> factors(const Flat& f) {
  return f.kind == Flat::Kind::product ? f.items : std::vector<Flat>{f};
}

void rewrites(const Flat& node, const Flat& pattern, const Flat& repl, std::vector<Flat>& out) {
  if (node == pattern) out.push_back(repl);
  if (node.kind == Flat::Kind::product) {
    std::vector<Flat> p = factors(pattern), r = factors(repl);
    const auto& items = node.items;
    if (pattern.kind == Flat::Kind::product) {
      for (std::size_t s = 0; s + p.size() <= items.size(); ++s) {
        if (!std::equal(p.begin(), p.end(), items.begin() + s)) continue;
        if (s == 0 && p.size() == items.size()) continue;  // whole node, already counted
        std::vector<Flat> next(items.begin(), items.begin() + s);
        next.insert(next.end(), r.begin(), r.end());
        next.insert(next.end(), items.begin() + s + p.size(), items.end());
        out.push_back(flat_product(std::move(next)));
      }
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
      std::vector<Flat> sub;
      rewrites(items[i], pattern, repl, sub);
      for (Flat& c : sub) {
        std::vector<Flat> next = items;
        next[i] = std::move(c);
        out.push_back(flat_product(std::move(next)));
      }
    }
  } else if (node.kind == Flat::Kind::power) {
    std::vector<Flat> sub;
    rewrites(node.items[0], pattern, repl, sub);
    for (Flat& c : sub) {
      Flat p = node;
      p.items = {std::move(c)};
      out.push_back(std::move(p));
    }
  }
}

// The exact engine must be available for rules that rely on it.
GroupoidMorphism exact_of(const SurfaceModel& model, const TwistExpr& e) {
  bind(model, e);
  return exact_value(model, e);
}

bool commute_exact(const SurfaceModel& model, const TwistExpr& a, const TwistExpr& b) {
  GroupoidMorphism x = exact_of(model, a), y = exact_of(model, b);
  return equal_morphisms(compose(x, y), compose(y, x));
}

StepResult violation(std::string msg) { return {false, std::move(msg)}; }

StepResult formal_sides_equal(const Equation& prev, const Equation& next, bool reduced,
                              const char* what) {
  FormalWord pl = formal_word(*prev.lhs, reduced), nl = formal_word(*next.lhs, reduced);
  FormalWord pr = formal_word(*prev.rhs, reduced), nr = formal_word(*next.rhs, reduced);
  if (pl != nl) {
    return violation(std::string(what) + " changes the left side: " + format_formal(pl) +
                     "  vs  " + format_formal(nl));
  }
  if (pr != nr) {
    return violation(std::string(what) + " changes the right side: " + format_formal(pr) +
                     "  vs  " + format_formal(nr));
  }
  return {};
}

}  // namespace

StepResult check_step(const SurfaceModel& model, const Equation& prev, const DerivationStep& step) {
  try {
    bind(model, *step.result.lhs);
    bind(model, *step.result.rhs);
    switch (step.rule) {
      case Rule::expand_power:
        // Powers unfolded or folded, nothing cancelled.
        return formal_sides_equal(prev, step.result, false, "expand_power");
      case Rule::free_cancel:
        return formal_sides_equal(prev, step.result, true, "free_cancel");
      case Rule::substitute: {
        const Equation& lemma = *step.lemma;
        VerificationReport rep = verify(model, lemma, Engine::exact);
        if (!rep.verified()) {
          return violation("lemma " + format_equation(lemma) +
                           " fails the exact engine: " + rep.exact.witness);
        }
        Flat l = flatten(*prev.lhs), r = flatten(*prev.rhs);
        Flat pat = flatten(*lemma.lhs), repl = flatten(*lemma.rhs);
        Flat nl = flatten(*step.result.lhs), nr = flatten(*step.result.rhs);
        std::vector<Flat> cands;
        rewrites(l, pat, repl, cands);
        for (const Flat& c : cands) {
          if (c == nl && r == nr) return {};
        }
        cands.clear();
        rewrites(r, pat, repl, cands);
        for (const Flat& c : cands) {
          if (l == nl && c == nr) return {};
        }
        return violation("result is not the previous equation with one occurrence of " +
                         format_expr(lemma.lhs) + " replaced by " + format_expr(lemma.rhs));
      }
      case Rule::conjugate_both_sides: {
        const TwistExpr& w = *step.by;
        bind(model, w);
        ExprPtr winv = make_power(step.by, -1);
        Equation expected{make_product({winv, prev.lhs, step.by}),
                          make_product({winv, prev.rhs, step.by})};
        StepResult formal = formal_sides_equal(expected, step.result, true, "conjugate_both_sides");
        if (!formal.ok) return formal;
        const TwistExpr& claim = step.justification == Justification::central_rhs ? *prev.rhs
                                                                                   : *prev.lhs;
        if (!commute_exact(model, claim, w)) {
          return violation(std::string(step.justification == Justification::central_rhs
                                           ? "right side "
                                           : "left side ") +
                           format_expr(claim) + " does not commute with " + format_expr(w));
        }
        return {};
      }
      case Rule::rewrite_rhs_central: {
        FormalWord pl = formal_word(*prev.lhs, true), nl = formal_word(*step.result.lhs, true);
        if (pl != nl) {
          return violation("rewrite_rhs_central changes the left side: " + format_formal(pl) +
                           "  vs  " + format_formal(nl));
        }
        FormalWord pr = formal_word(*prev.rhs, true), nr = formal_word(*step.result.rhs, true);
        // prev rhs must read u * R * u' for some nonempty u.
        if (pr.size() < nr.size() + 2 || (pr.size() - nr.size()) % 2 != 0) {
          return violation("right side " + format_formal(pr) + " is not a conjugate of " +
                           format_formal(nr));
        }
        std::size_t k = (pr.size() - nr.size()) / 2;
        FormalWord u(pr.begin(), pr.begin() + k), mid(pr.begin() + k, pr.end() - k),
            tail(pr.end() - k, pr.end());
        FormalWord uinv;
        append_formal(uinv, u, true, false);
        if (mid != nr || tail != uinv) {
          return violation("right side " + format_formal(pr) + " is not a conjugate of " +
                           format_formal(nr));
        }
        std::vector<ExprPtr> uf;
        for (const auto& [n, s] : u) uf.push_back(make_power(make_name(n), s));
        ExprPtr uexpr = make_product(uf);
        if (!commute_exact(model, *step.result.rhs, *uexpr)) {
          return violation(format_expr(step.result.rhs) + " does not commute with " +
                           format_expr(uexpr));
        }
        return {};
      }
    }
  } catch (const Error& e) {
    return violation(e.what());
  }
  return violation("unknown rule");
}

bool DerivationReport::ok() const {
  return initial_verified && final_verified && !first_violation();
}

std::optional<std::size_t> DerivationReport::first_violation() const {
  for (const StepReport& s : steps) {
    if (!s.result.ok) return s.index;
  }
  return std::nullopt;
}

DerivationReport check_derivation(const DerivationScript& script) {
  DerivationReport report;
  report.surface = script.surface;
  report.notes = script.notes;
  std::shared_ptr<const SurfaceModel> model;
  try {
    model = resolve_surface(script.surface);
  } catch (const Error& e) {
    report.initial_message = e.what();
    return report;
  }
  auto check_exact = [&](const Equation& eq, bool& flag, std::string& msg) {
    try {
      VerificationReport r = verify(*model, eq, Engine::exact);
      flag = r.verified();
      if (!flag) msg = r.exact.witness;
    } catch (const Error& e) {
      flag = false;
      msg = e.what();
    }
  };
  check_exact(script.initial, report.initial_verified, report.initial_message);
  const Equation& last = script.steps.empty() ? script.initial : script.steps.back().result;
  check_exact(last, report.final_verified, report.final_message);
  Equation prev = script.initial;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const DerivationStep& step = script.steps[i];
    StepReport sr;
    sr.index = i + 1;
    sr.line = step.line;
    sr.rule = rule_name(step.rule);
    sr.result = check_step(*model, prev, step);
    report.steps.push_back(std::move(sr));
    prev = step.result;
  }
  return report;
}

}  // namespace twistcheck

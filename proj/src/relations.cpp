#include "twistcheck/relations.hpp"

#include <algorithm>
#include <chrono>

namespace twistcheck {

// ---------------------------------------------------------------------------
// Binding and evaluation

const CurveData& resolve_twist(const SurfaceModel& model, const TwistExpr& node) {
  if (const CurveData* c = model.find_curve(node.name)) return *c;
  if (node.name.size() > 1 && node.name[0] == 'D') {
    if (const CurveData* c = model.find_curve(std::string_view(node.name).substr(1))) return *c;
  }
  throw BindError(node.name, node.position);
}

void bind(const SurfaceModel& model, const TwistExpr& e) {
  switch (e.kind) {
    case TwistExpr::Kind::name:
      resolve_twist(model, e);
      return;
    case TwistExpr::Kind::compose:
      bind(model, *e.lhs);
      bind(model, *e.rhs);
      return;
    case TwistExpr::Kind::power:
      bind(model, *e.base);
      return;
  }
}

GroupoidMorphism exact_value(const SurfaceModel& model, const TwistExpr& e) {
  if (!model.is_exact()) {
    throw UnsupportedError("surface " + model.name + " has no exact model");
  }
  switch (e.kind) {
    case TwistExpr::Kind::name:
      return *resolve_twist(model, e).twist;
    case TwistExpr::Kind::compose:
      return compose(exact_value(model, *e.lhs), exact_value(model, *e.rhs));
    case TwistExpr::Kind::power:
      return power(exact_value(model, *e.base), e.exponent);
  }
  throw Error("bad expression");
}

IntMatrix homology_value(const SurfaceModel& model, const TwistExpr& e) {
  switch (e.kind) {
    case TwistExpr::Kind::name:
      return transvection(resolve_twist(model, e).homology, model.form);
    case TwistExpr::Kind::compose:
      return homology_value(model, *e.lhs) * homology_value(model, *e.rhs);
    case TwistExpr::Kind::power:
      return matrix_power(homology_value(model, *e.base), e.exponent);
  }
  throw Error("bad expression");
}

// ---------------------------------------------------------------------------
// Statements

Equation RelationStatement::expanded() const {
  std::map<std::string, ExprPtr> table;
  for (const auto& [name, body] : lets) table[name] = substitute(body, table);
  return {substitute(equation.lhs, table), substitute(equation.rhs, table)};
}

std::string statement_script(const RelationStatement& s) {
  std::string out;
  if (!s.title.empty()) out += "# " + s.title + "\n";
  out += "surface " + s.surface + "\n";
  for (const auto& [name, body] : s.lets) {
    out += "let " + name + " = " + format_expr(body, ExprStyle::compact) + "\n";
  }
  out += "assert " + format_equation(s.equation, ExprStyle::compact);
  if (s.engine != Engine::both) out += " engine=" + engine_name(s.engine);
  out += "\n";
  return out;
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::not_run:
      return "not-run";
    case Outcome::pass:
      return "pass";
    case Outcome::fail:
      return "fail";
    case Outcome::unsupported:
      return "unsupported";
  }
  return "not-run";
}

bool VerificationReport::refuted() const {
  return homology.outcome == Outcome::fail || exact.outcome == Outcome::fail;
}

bool VerificationReport::verified() const { return exact.outcome == Outcome::pass; }

std::string VerificationReport::verdict() const {
  if (refuted()) return "refuted";
  if (verified()) return "verified";
  return "passed (necessary condition only)";
}

namespace {

EngineResult run_homology(const SurfaceModel& model, const Equation& eq) {
  EngineResult r;
  IntMatrix l = homology_value(model, *eq.lhs);
  IntMatrix rr = homology_value(model, *eq.rhs);
  if (l == rr) {
    r.outcome = Outcome::pass;
    return r;
  }
  r.outcome = Outcome::fail;
  for (std::size_t j = 0; j < l.cols(); ++j) {
    HomologyClass a = l.column(j), b = rr.column(j);
    if (a == b) continue;
    r.witness = "sides differ on basis class " + model.homology_basis[j] + ": " +
                format_class(a) + " vs " + format_class(b);
    break;
  }
  r.witness_detail = "lhs " + l.to_string() + "\nrhs " + rr.to_string();
  return r;
}

EngineResult run_exact(const SurfaceModel& model, const Equation& eq) {
  EngineResult r;
  GroupoidMorphism l = exact_value(model, *eq.lhs);
  GroupoidMorphism rr = exact_value(model, *eq.rhs);
  auto diff = first_difference(l, rr);
  if (!diff) {
    r.outcome = Outcome::pass;
    return r;
  }
  r.outcome = Outcome::fail;
  const SpineGraph& g = *model.graph;
  const std::string& e = g.edge(*diff).name;
  r.witness = "sides differ on spine edge " + e + " (images of length " +
              std::to_string(l.image(*diff).size()) + " and " +
              std::to_string(rr.image(*diff).size()) + ")";
  r.witness_detail = "lhs " + e + " -> " + format_word(g, l.image(*diff)) + "\nrhs " + e +
                     " -> " + format_word(g, rr.image(*diff));
  return r;
}

}  // namespace

VerificationReport verify(const SurfaceModel& model, const Equation& eq, Engine engine) {
  auto start = std::chrono::steady_clock::now();
  bind(model, *eq.lhs);
  bind(model, *eq.rhs);
  if (engine == Engine::exact && !model.is_exact()) {
    throw UnsupportedError("the exact engine is not available on " + model.name +
                           " (homology-level model)");
  }
  VerificationReport report;
  report.surface = model.name;
  report.statement = format_equation(eq);
  report.engine = engine;
  if (engine != Engine::exact) report.homology = run_homology(model, eq);
  bool screened_out = engine == Engine::both && report.homology.outcome == Outcome::fail;
  if (engine != Engine::homology && !screened_out) {
    if (model.is_exact()) {
      report.exact = run_exact(model, eq);
    } else {
      report.exact.outcome = Outcome::unsupported;
    }
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

VerificationReport verify(const RelationStatement& s, std::optional<Engine> engine) {
  auto model = resolve_surface(s.surface);
  return verify(*model, s.expanded(), engine.value_or(s.engine));
}

// ---------------------------------------------------------------------------
// Catalogue

namespace {

ExprPtr name(const std::string& n) { return make_name(n); }

ExprPtr product_of(const std::vector<std::string>& names) {
  std::vector<ExprPtr> f;
  for (const auto& n : names) f.push_back(name(n));
  return make_product(f);
}

std::vector<std::string> boundary_twists(int b) {
  std::vector<std::string> out;
  for (int i = 1; i <= b; ++i) out.push_back("Db" + std::to_string(i));
  return out;
}

}  // namespace

RelationStatement chain_relation(int m, ChainVariant variant) {
  if (m < 1) throw Error("chain length must be at least 1");
  RelationStatement s;
  bool even = m % 2 == 0;
  bool squared = variant == ChainVariant::squared_first;
  long exponent = even ? (squared ? 2 * m : 2 * m + 2) : (squared ? m : m + 1);
  s.title = "chain relation, m = " + std::to_string(m) + (squared ? ", first twist squared" : "");

  std::vector<std::string> chain_curves;
  std::vector<std::pair<std::string, std::string>> boundary_lets;
  if (m == 1) {
    s.surface = "annulus";
    chain_curves = {"Dcore"};
  } else if (m == 2) {
    s.surface = "S_1_1";
    chain_curves = {"Da", "Db"};
    boundary_lets = {{"Db", "Dd"}};
  } else if (m == 3) {
    s.surface = "S_1_2";
    chain_curves = {"Dc1", "Dc2", "Dc3"};
  } else {
    // Regular neighbourhood of the chain: genus floor(m/2), one or two boundaries.
    s.surface = "S_" + std::to_string(m / 2) + "_" + std::to_string(even ? 1 : 2);
    s.title += " (no model ships for this surface)";
  }
  std::vector<ExprPtr> factors;
  for (int i = 1; i <= m; ++i) {
    std::string d = "D" + std::to_string(i);
    if (!chain_curves.empty()) s.lets.push_back({d, name(chain_curves[i - 1])});
    factors.push_back(i == 1 && squared ? make_power(name(d), 2) : name(d));
  }
  for (const auto& [n, body] : boundary_lets) s.lets.push_back({n, name(body)});
  s.equation.lhs = make_power(make_product(factors), exponent);
  s.equation.rhs = even ? name("Db") : product_of(boundary_twists(2));
  return s;
}

RelationStatement star_relation() {
  RelationStatement s;
  s.title = "star relation";
  s.surface = "S_1_3";
  s.equation = {make_power(product_of({"Dg", "Dp", "Db", "Dy"}), 3),
                product_of(boundary_twists(3))};
  return s;
}

RelationStatement corollary_relation() {
  RelationStatement s;
  s.title = "boundary twists as the cube of four interior twists";
  s.surface = "S_1_3";
  s.equation = {make_power(product_of({"Dr", "Dp", "Db", "Dg"}), 3),
                product_of(boundary_twists(3))};
  return s;
}

RelationStatement hkp_relation(int k, HkpOrder order) {
  if (k < 2) throw Error("hkp relation needs k >= 2");
  RelationStatement s;
  s.surface = "F_" + std::to_string(k) + "_" + std::to_string(k);
  s.title = "monodromy of z0^" + std::to_string(k) + " + z1^" + std::to_string(k) +
            (order == HkpOrder::typographic ? "" : ", factors reversed");
  std::vector<std::string> factors;
  for (int j = k - 1; j >= 1; --j) {
    for (int i = 1; i <= k - 1; ++i) {
      factors.push_back("D" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  if (order == HkpOrder::reversed) std::reverse(factors.begin(), factors.end());
  s.lets.push_back({"Phi", product_of(factors)});
  s.equation = {make_power(name("Phi"), k), product_of(boundary_twists(k))};
  if (k >= 4) s.engine = Engine::homology;
  return s;
}

RelationStatement braid_statement(const SurfaceModel& model, const std::string& c1,
                                  const std::string& c2) {
  auto i = model.declared_intersection(c1, c2);
  if (!i) throw Error("no intersection number declared for " + c1 + ", " + c2);
  if (*i != 0 && *i != 1) {
    throw Error("declared intersection " + std::to_string(*i) + " for " + c1 + ", " + c2 +
                " is neither 0 nor 1");
  }
  RelationStatement s;
  s.surface = model.name;
  std::string a = "D" + c1, b = "D" + c2;
  if (*i == 0) {
    s.title = c1 + " and " + c2 + " are disjoint";
    s.equation = {product_of({a, b}), product_of({b, a})};
  } else {
    s.title = c1 + " and " + c2 + " meet once";
    s.equation = {product_of({a, b, a}), product_of({b, a, b})};
  }
  s.engine = Engine::exact;
  return s;
}

VerificationReport braid_check(const SurfaceModel& model, const std::string& c1,
                               const std::string& c2) {
  RelationStatement s = braid_statement(model, c1, c2);
  return verify(model, s.expanded(), Engine::exact);
}

namespace {

void flatten(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (e->kind == TwistExpr::Kind::compose) {
    flatten(e->lhs, out);
    flatten(e->rhs, out);
  } else {
    out.push_back(e);
  }
}

const TwistExpr* first_power(const ExprPtr& e) {
  switch (e->kind) {
    case TwistExpr::Kind::name:
      return nullptr;
    case TwistExpr::Kind::power:
      return e.get();
    case TwistExpr::Kind::compose:
      if (auto p = first_power(e->lhs)) return p;
      return first_power(e->rhs);
  }
  return nullptr;
}

ExprPtr replace_node(const ExprPtr& e, const TwistExpr* target, const ExprPtr& repl) {
  if (e.get() == target) return repl;
  switch (e->kind) {
    case TwistExpr::Kind::name:
      return e;
    case TwistExpr::Kind::compose:
      return make_compose(replace_node(e->lhs, target, repl), replace_node(e->rhs, target, repl));
    case TwistExpr::Kind::power:
      return make_power(replace_node(e->base, target, repl), e->exponent);
  }
  return e;
}

}  // namespace

std::vector<Mutation> mutations(const RelationStatement& s) {
  Equation eq = s.expanded();
  std::vector<Mutation> out;
  auto with_lhs = [&](const std::string& label, ExprPtr lhs) {
    RelationStatement m;
    m.title = s.title + " [mutation: " + label + "]";
    m.surface = s.surface;
    m.engine = s.engine;
    m.equation = {std::move(lhs), eq.rhs};
    out.push_back({label, std::move(m)});
  };
  const TwistExpr* p = first_power(eq.lhs);
  if (p) {
    with_lhs("exponent +1", replace_node(eq.lhs, p, make_power(p->base, p->exponent + 1)));
    with_lhs("exponent -1", replace_node(eq.lhs, p, make_power(p->base, p->exponent - 1)));
  }
  std::vector<ExprPtr> factors;
  flatten(p ? p->base : eq.lhs, factors);
  auto rebuild = [&](const std::vector<ExprPtr>& f) {
    ExprPtr body = make_product(f);
    return p ? replace_node(eq.lhs, p, make_power(body, p->exponent)) : body;
  };
  if (factors.size() >= 2) {
    with_lhs("first factor dropped", rebuild({factors.begin() + 1, factors.end()}));
  }
  std::vector<ExprPtr> inverted = factors;
  inverted[0] = make_power(inverted[0], -1);
  with_lhs("first factor inverted", rebuild(inverted));
  return out;
}

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  out.push_back({"corollary", corollary_relation(), true});
  {
    RelationStatement s = corollary_relation();
    s.title += ", factors reversed";
    s.equation.lhs = make_power(product_of({"Dg", "Db", "Dp", "Dr"}), 3);
    out.push_back({"corollary-reversed", s, false});
  }
  out.push_back({"star", star_relation(), true});
  {
    RelationStatement s;
    s.title = "r is g-conjugate of y";
    s.surface = "S_1_3";
    s.equation.lhs = name("Dr");
    s.equation.rhs = make_product({make_power(name("Dg"), -1), name("Dy"), name("Dg")});
    out.push_back({"lemma", s, true});
    RelationStatement t = s;
    t.title = "r as the other conjugate of y";
    t.equation.rhs = make_product({name("Dg"), name("Dy"), make_power(name("Dg"), -1)});
    out.push_back({"lemma-other-side", t, false});
  }
  for (int m = 1; m <= 3; ++m) {
    out.push_back({"chain-" + std::to_string(m), chain_relation(m), true});
    out.push_back({"chain-" + std::to_string(m) + "-squared",
                   chain_relation(m, ChainVariant::squared_first), true});
  }
  {
    RelationStatement s = chain_relation(2);
    s.title = "chain relation, m = 2, exponent 5";
    s.equation.lhs = make_power(s.equation.lhs->base, 5);
    out.push_back({"chain-2-exponent-5", s, false});
  }
  for (int k = 2; k <= 6; ++k) {
    out.push_back({"hkp-" + std::to_string(k), hkp_relation(k), true});
    if (k >= 3) {
      out.push_back({"hkp-" + std::to_string(k) + "-reversed",
                     hkp_relation(k, HkpOrder::reversed), false});
    }
  }
  auto s13 = builtin("S_1_3");
  for (auto [a, b] : {std::pair{"g", "y"}, {"y", "b"}, {"y", "p"}, {"r", "y"}}) {
    out.push_back({std::string("braid-") + a + "-" + b, braid_statement(*s13, a, b), true});
  }
  out.push_back({"braid-a-b", braid_statement(*builtin("S_1_1"), "a", "b"), true});
  return out;
}

}  // namespace twistcheck

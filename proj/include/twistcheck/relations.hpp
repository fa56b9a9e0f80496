#pragma once

// Relation catalogue and the two-engine verification pipeline.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistcheck/dsl.hpp"
#include "twistcheck/surfaces.hpp"

namespace twistcheck {

// ---------------------------------------------------------------------------
// Binding twist names to curves

// A name resolves to the curve of that name, else to the curve named by the
// name without a leading 'D' ("Dr" -> r, "D1_2" -> 1_2). Throws BindError.
const CurveData& resolve_twist(const SurfaceModel& model, const TwistExpr& name_node);
// Throws BindError for the first name, left to right, that does not resolve.
void bind(const SurfaceModel& model, const TwistExpr& e);

GroupoidMorphism exact_value(const SurfaceModel& model, const TwistExpr& e);
IntMatrix homology_value(const SurfaceModel& model, const TwistExpr& e);

// ---------------------------------------------------------------------------
// Statements and reports

struct RelationStatement {
  std::string title;                                 // one-line description
  std::string surface;
  std::vector<std::pair<std::string, ExprPtr>> lets;  // in order, as written
  Equation equation;                                 // as written, may use let names
  Engine engine = Engine::both;

  // The equation with every let expanded (lets see earlier lets only).
  Equation expanded() const;
};

// The dsl text of a statement: comment, surface, lets and one assert.
std::string statement_script(const RelationStatement& s);

enum class Outcome { not_run, pass, fail, unsupported };
std::string outcome_name(Outcome o);

struct EngineResult {
  Outcome outcome = Outcome::not_run;
  std::string witness;         // short, in terms of twists and basis names
  std::string witness_detail;  // full groupoid words or matrices
};

struct VerificationReport {
  std::string surface;
  std::string statement;  // formatted expanded equation
  Engine engine = Engine::both;
  EngineResult homology;
  EngineResult exact;
  double seconds = 0;

  bool refuted() const;
  // Exact engine passed.
  bool verified() const;
  // "verified", "refuted", or "passed (necessary condition only)".
  std::string verdict() const;
};

// Runs the requested engines. Throws Error when the surface is unknown, a name
// does not bind, or the exact engine is requested on a homology-only model.
VerificationReport verify(const RelationStatement& s, std::optional<Engine> engine = std::nullopt);
VerificationReport verify(const SurfaceModel& model, const Equation& eq, Engine engine);

// ---------------------------------------------------------------------------
// Catalogue

enum class ChainVariant { standard, squared_first };
enum class HkpOrder { typographic, reversed };

// m = 1 on the annulus, m = 2 on S_1_1, m = 3 on S_1_2; larger m name the
// regular-neighbourhood surface S_g_b, for which no model ships. Throws for m < 1.
RelationStatement chain_relation(int m, ChainVariant variant = ChainVariant::standard);
RelationStatement star_relation();
RelationStatement corollary_relation();
// The F_{k,k} monodromy factorization Phi^k = Db1 * ... * Dbk with Phi the
// product of the grid twists in reading order: rows j = k-1 down to 1, each
// row i = 1 to k-1. The reversed order is kept for comparison; it is refuted
// for k >= 3. Throws for k < 2.
RelationStatement hkp_relation(int k, HkpOrder order = HkpOrder::typographic);
// Commutation (declared i = 0) or braid (i = 1) between two named curves,
// verified with the exact engine. Throws for undeclared pairs or other i.
RelationStatement braid_statement(const SurfaceModel& model, const std::string& c1,
                                  const std::string& c2);
VerificationReport braid_check(const SurfaceModel& model, const std::string& c1,
                               const std::string& c2);

struct Mutation {
  std::string label;
  RelationStatement statement;
};
// Exponent +1 and -1 on the first power of the left side, the first factor of
// that power dropped (when at least two factors remain) and inverted.
std::vector<Mutation> mutations(const RelationStatement& s);

struct CatalogEntry {
  std::string name;
  RelationStatement statement;
  bool expected = true;  // whether the relation should hold
};
// Every catalogued relation with the truth value recorded for it.
std::vector<CatalogEntry> catalog();

}  // namespace twistcheck

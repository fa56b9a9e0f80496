#include "doctest.h"

#include "oracle.hpp"
#include "twistcheck/relations.hpp"

using namespace twistcheck;

namespace {

std::string compact(const RelationStatement& s) {
  return format_equation(s.equation, ExprStyle::compact);
}

}  // namespace

TEST_CASE("catalogue statements") {
  CHECK(compact(chain_relation(2)) == "(D1*D2)^6 == Db");
  CHECK(compact(chain_relation(3)) == "(D1*D2*D3)^4 == Db1*Db2");
  CHECK(compact(chain_relation(3, ChainVariant::squared_first)) == "(D1^2*D2*D3)^3 == Db1*Db2");
  CHECK(compact(chain_relation(1)) == "D1^2 == Db1*Db2");
  CHECK(compact(chain_relation(4)) == "(D1*D2*D3*D4)^10 == Db");
  CHECK(chain_relation(4).surface == "S_2_1");
  CHECK(chain_relation(5).surface == "S_2_2");
  CHECK_THROWS(chain_relation(0));

  RelationStatement star = star_relation();
  CHECK(star.surface == "S_1_3");
  CHECK(compact(star) == "(Dg*Dp*Db*Dy)^3 == Db1*Db2*Db3");
  CHECK(expr_names(*star.equation.lhs).size() == 4);
  CHECK(expr_names(*star.equation.rhs).size() == 3);
  CHECK(compact(corollary_relation()) == "(Dr*Dp*Db*Dg)^3 == Db1*Db2*Db3");

  Equation h2 = hkp_relation(2).expanded();
  CHECK(format_equation(h2, ExprStyle::compact) == "D1_1^2 == Db1*Db2");
  Equation h3 = hkp_relation(3).expanded();
  CHECK(format_equation(h3, ExprStyle::compact) == "(D1_2*D2_2*D1_1*D2_1)^3 == Db1*Db2*Db3");
  CHECK(hkp_relation(5).engine == Engine::homology);
  CHECK_THROWS(hkp_relation(1));
}

TEST_CASE("statement_script round trip") {
  for (const CatalogEntry& c : catalog()) {
    std::string text = statement_script(c.statement);
    auto d = parse_script(text);
    REQUIRE(!d.empty());
    CHECK(same_equation(d.back().equation, c.statement.expanded()));
    CHECK(d.back().surface == c.statement.surface);
  }
  CHECK(statement_script(chain_relation(2)).find("(D1*D2)^6 == Db") != std::string::npos);
}

TEST_CASE("the catalogue has the recorded truth values") {
  for (const CatalogEntry& c : catalog()) {
    VerificationReport r = verify(c.statement);
    CHECK_MESSAGE(r.refuted() != c.expected, c.name);
    if (c.expected && resolve_surface(c.statement.surface)->is_exact()) {
      CHECK_MESSAGE(r.verified(), c.name);
    }
  }
}

TEST_CASE("exact verdicts agree with the token oracle") {
  oracle::Surface s13 = oracle::load("S_1_3");
  oracle::Factors b{{"b1", 1}, {"b2", 1}, {"b3", 1}};
  CHECK(oracle::equal(s13, oracle::repeat({{"r", 1}, {"p", 1}, {"b", 1}, {"g", 1}}, 3), b));
  CHECK(oracle::equal(s13, oracle::repeat({{"g", 1}, {"p", 1}, {"b", 1}, {"y", 1}}, 3), b));
  CHECK_FALSE(oracle::equal(s13, oracle::repeat({{"g", 1}, {"b", 1}, {"p", 1}, {"r", 1}}, 3), b));
  CHECK(oracle::equal(s13, {{"r", 1}}, {{"g", -1}, {"y", 1}, {"g", 1}}));
  CHECK_FALSE(oracle::equal(s13, {{"r", 1}}, {{"g", 1}, {"y", 1}, {"g", -1}}));

  oracle::Surface s11 = oracle::load("S_1_1");
  CHECK(oracle::equal(s11, oracle::repeat({{"a", 1}, {"b", 1}}, 6), {{"d", 1}}));
  CHECK_FALSE(oracle::equal(s11, oracle::repeat({{"a", 1}, {"b", 1}}, 5), {{"d", 1}}));
  oracle::Surface s12 = oracle::load("S_1_2");
  CHECK(oracle::equal(s12, oracle::repeat({{"c1", 1}, {"c2", 1}, {"c3", 1}}, 4),
                      {{"b1", 1}, {"b2", 1}}));
  oracle::Surface ann = oracle::load("annulus");
  CHECK(oracle::equal(ann, {{"core", 2}}, {{"b1", 1}, {"b2", 1}}));
  CHECK_FALSE(oracle::equal(ann, {{"core", 1}}, {{"b1", 1}, {"b2", 1}}));

  // same verdicts from the library
  CHECK(verify(corollary_relation()).verified());
  CHECK(verify(star_relation()).verified());
  CHECK(verify(chain_relation(2)).verified());
  CHECK(verify(chain_relation(3)).verified());
  CHECK(verify(chain_relation(1)).verified());
}

TEST_CASE("mutations are refuted") {
  for (const RelationStatement& s : {corollary_relation(), star_relation(), chain_relation(2),
                                     chain_relation(3), chain_relation(2, ChainVariant::squared_first),
                                     chain_relation(3, ChainVariant::squared_first),
                                     hkp_relation(3)}) {
    auto ms = mutations(s);
    CHECK(ms.size() >= 3);
    for (const Mutation& m : ms) {
      VerificationReport r = verify(m.statement, Engine::exact);
      CHECK_MESSAGE(r.exact.outcome == Outcome::fail, m.label, " of ", s.title);
      CHECK(!r.exact.witness.empty());
    }
  }
  auto ms = mutations(corollary_relation());
  std::vector<std::string> got;
  for (const auto& m : ms) got.push_back(format_equation(m.statement.expanded(), ExprStyle::compact));
  CHECK(std::find(got.begin(), got.end(), "(Dr*Dp*Db*Dg)^2 == Db1*Db2*Db3") != got.end());
  CHECK(std::find(got.begin(), got.end(), "(Dp*Db*Dg)^3 == Db1*Db2*Db3") != got.end());
  CHECK(std::find(got.begin(), got.end(), "(Dr'*Dp*Db*Dg)^3 == Db1*Db2*Db3") != got.end());
}

TEST_CASE("braid_check") {
  auto s13 = builtin("S_1_3");
  CHECK(braid_check(*s13, "g", "y").exact.outcome == Outcome::pass);
  CHECK(braid_check(*s13, "y", "b").exact.outcome == Outcome::pass);
  CHECK(braid_check(*s13, "y", "p").exact.outcome == Outcome::pass);
  CHECK(braid_check(*builtin("S_1_1"), "a", "b").exact.outcome == Outcome::pass);
  CHECK(format_equation(braid_statement(*s13, "g", "y").equation) == "Dg * Dy * Dg == Dy * Dg * Dy");
  CHECK(format_equation(braid_statement(*s13, "y", "b").equation) == "Dy * Db == Db * Dy");
  CHECK_THROWS(braid_statement(*s13, "g", "nosuch"));
}

TEST_CASE("verify pipeline") {
  auto s13 = builtin("S_1_3");
  VerificationReport both = verify(*s13, parse_equation("Dg * Dy == Dg * Dy"), Engine::both);
  CHECK(both.homology.outcome == Outcome::pass);
  CHECK(both.exact.outcome == Outcome::pass);
  CHECK(both.verdict() == "verified");

  VerificationReport h = verify(*s13, parse_equation("Db1 == Db2"), Engine::homology);
  CHECK(h.verdict() == "passed (necessary condition only)");
  CHECK(h.exact.outcome == Outcome::not_run);
  VerificationReport e = verify(*s13, parse_equation("Db1 == Db2"), Engine::exact);
  CHECK(e.refuted());

  // short circuit: a homology failure skips the exact engine
  VerificationReport sc = verify(*s13, parse_equation("Dg == Dy"), Engine::both);
  CHECK(sc.homology.outcome == Outcome::fail);
  CHECK(sc.exact.outcome == Outcome::not_run);
  CHECK(sc.refuted());

  CHECK_THROWS_AS(verify(hkp_relation(6), Engine::exact), UnsupportedError);
  VerificationReport h6 = verify(hkp_relation(6));
  CHECK(h6.homology.outcome == Outcome::pass);
  CHECK_FALSE(h6.verified());

  RelationStatement bad = corollary_relation();
  bad.equation.lhs = parse_expr("Dr * Dq");
  try {
    verify(bad);
    FAIL("expected a bind error");
  } catch (const BindError& err) {
    CHECK(err.name() == "Dq");
    CHECK(err.position().column == 6);
  }
  CHECK(resolve_twist(*s13, *make_name("g")).name == "g");
  CHECK(resolve_twist(*chain_surface(3, ModelLevel::exact), *make_name("D2_1")).name == "g");
}

TEST_CASE("soundness: homology refutation implies exact refutation on the golden suite") {
  for (const CatalogEntry& c : catalog()) {
    auto model = resolve_surface(c.statement.surface);
    if (!model->is_exact()) continue;
    Equation eq = c.statement.expanded();
    VerificationReport h = verify(*model, eq, Engine::homology);
    VerificationReport x = verify(*model, eq, Engine::exact);
    if (h.homology.outcome == Outcome::fail) CHECK_MESSAGE(x.exact.outcome == Outcome::fail, c.name);
    if (x.exact.outcome == Outcome::pass) CHECK_MESSAGE(h.homology.outcome == Outcome::pass, c.name);
    for (const Mutation& m : mutations(c.statement)) {
      Equation me = m.statement.expanded();
      VerificationReport mh = verify(*model, me, Engine::homology);
      VerificationReport mx = verify(*model, me, Engine::exact);
      if (mh.homology.outcome == Outcome::fail) CHECK(mx.exact.outcome == Outcome::fail);
    }
  }
}

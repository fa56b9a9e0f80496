#include "doctest.h"

#include <map>
#include <sstream>

#include "gen.hpp"
#include "seed.hpp"
#include "twistcheck/surfaces.hpp"
#include "twistcheck/words.hpp"

using namespace twistcheck;

namespace {

// Oracle: words as token lists ("a", "a'"), reduced with a stack.
using Tokens = std::vector<std::string>;

Tokens tokens(const std::string& text) {
  Tokens out;
  std::istringstream in(text);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::string inv_token(const std::string& t) {
  return t.back() == '\'' ? t.substr(0, t.size() - 1) : t + "'";
}

Tokens naive_reduce(const Tokens& w) {
  Tokens st;
  for (const auto& t : w) {
    if (!st.empty() && st.back() == inv_token(t)) {
      st.pop_back();
    } else {
      st.push_back(t);
    }
  }
  return st;
}

Tokens naive_apply(const std::map<std::string, Tokens>& table, const Tokens& w) {
  Tokens out;
  for (const auto& t : w) {
    bool inv = t.back() == '\'';
    std::string e = inv ? t.substr(0, t.size() - 1) : t;
    Tokens img = table.at(e);
    if (inv) {
      Tokens r;
      for (auto it = img.rbegin(); it != img.rend(); ++it) r.push_back(inv_token(*it));
      img = r;
    }
    out.insert(out.end(), img.begin(), img.end());
  }
  return naive_reduce(out);
}

std::string join(const Tokens& t) {
  std::string s;
  for (const auto& x : t) s += (s.empty() ? "" : " ") + x;
  return s;
}

std::shared_ptr<const SpineGraph> torus_graph() {
  return std::make_shared<const SpineGraph>(std::vector<std::string>{"p"},
                                            std::vector<Edge>{{"a", 0, 0}, {"b", 0, 0}});
}

GroupoidMorphism twist_a(const std::shared_ptr<const SpineGraph>& g) {
  return GroupoidMorphism(g, {parse_word(*g, "a", 0), parse_word(*g, "b a", 0)},
                          std::vector<Word>{parse_word(*g, "a", 0), parse_word(*g, "b a'", 0)});
}

GroupoidMorphism twist_b(const std::shared_ptr<const SpineGraph>& g) {
  return GroupoidMorphism(g, {parse_word(*g, "a b'", 0), parse_word(*g, "b", 0)},
                          std::vector<Word>{parse_word(*g, "a b", 0), parse_word(*g, "b", 0)});
}

}  // namespace

TEST_CASE("reduce examples") {
  auto g = torus_graph();
  CHECK(reduce(*g, parse_word(*g, "a a'", 0)).empty());
  CHECK(format_word(*g, reduce(*g, parse_word(*g, "a b b' a", 0))) == "a a");
  // two-vertex graph: a: p->q, c: p->p; "a c" does not chain
  SpineGraph h({"p", "q"}, {{"a", 0, 1}, {"c", 0, 0}});
  std::vector<Letter> bad{{0, false}, {1, false}};
  CHECK_THROWS_AS(reduce(h, std::span<const Letter>(bad)), CompositionError);
  CHECK_THROWS_AS(Word(h, bad), CompositionError);
  Word e = reduce(h, parse_word(h, "a a'", 0));
  CHECK(e.empty());
  CHECK(e.source() == 0);
}

TEST_CASE("compose_words examples") {
  SpineGraph g({"p"}, {{"a", 0, 0}, {"b", 0, 0}, {"c", 0, 0}});
  Word v = parse_word(g, "b c", 0);
  CHECK(compose_words(g, Word(0), v) == v);
  CHECK(compose_words(g, parse_word(g, "a", 0), parse_word(g, "a'", 0)).empty());
  CHECK(format_word(g, compose_words(g, parse_word(g, "a b", 0), parse_word(g, "b' c", 0))) ==
        "a c");
  SpineGraph h({"p", "q"}, {{"t", 0, 1}, {"c", 0, 0}});
  CHECK_THROWS_AS(compose_words(h, parse_word(h, "t", 0), parse_word(h, "c", 0)),
                  CompositionError);
}

TEST_CASE("apply on the one-holed torus") {
  auto g = torus_graph();
  GroupoidMorphism ta = twist_a(g);
  Word comm = parse_word(*g, "a b a' b'", 0);
  // oracle: expand a (b a) a' (b a)' by hand
  Tokens expected = naive_reduce(tokens("a b a a' a' b'"));
  CHECK(format_word(*g, apply(ta, comm)) == join(expected));
  CHECK(format_word(*g, apply(ta, comm)) == "a b a' b'");
  CHECK(format_word(*g, apply(ta, parse_word(*g, "b", 0))) == "b a");
  CHECK(apply(GroupoidMorphism::identity(g), comm) == comm);
}

TEST_CASE("morphism algebra") {
  auto g = torus_graph();
  GroupoidMorphism ta = twist_a(g), tb = twist_b(g);
  CHECK(inverse_is_valid(ta));
  CHECK(inverse_is_valid(tb));
  CHECK(equal_morphisms(compose(ta, invert(ta)), GroupoidMorphism::identity(g)));
  CHECK(equal_morphisms(power(GroupoidMorphism::identity(g), 7), GroupoidMorphism::identity(g)));
  CHECK(equal_morphisms(power(ta, 0), GroupoidMorphism::identity(g)));
  CHECK(equal_morphisms(power(ta, -3), power(invert(ta), 3)));
  CHECK_FALSE(equal_morphisms(ta, tb));
  CHECK(first_difference(ta, tb).has_value());
  // braid relation a b a = b a b
  CHECK(equal_morphisms(compose(compose(ta, tb), ta), compose(compose(tb, ta), tb)));

  // (Ta Tb)^6: every generator goes to its conjugate by the peripheral loop.
  GroupoidMorphism six = power(compose(ta, tb), 6);
  Word per = parse_word(*g, "b a b' a'", 0);
  for (EdgeId e = 0; e < 2; ++e) {
    Word gen(*g, {{e, false}});
    Word conj = compose_words(*g, compose_words(*g, inverse(per), gen), per);
    Word conj2 = compose_words(*g, compose_words(*g, per, gen), inverse(per));
    bool ok = apply(six, gen) == conj || apply(six, gen) == conj2;
    CHECK(ok);
    CHECK(is_conjugate(*g, apply(six, gen), gen));
  }
  // (Ta Tb)^5 is not central
  GroupoidMorphism five = power(compose(ta, tb), 5);
  CHECK_FALSE(is_conjugate(*g, apply(five, Word(*g, {{0, false}})), Word(*g, {{0, false}})));

  auto other = std::make_shared<const SpineGraph>(std::vector<std::string>{"p"},
                                                  std::vector<Edge>{{"x", 0, 0}});
  CHECK_THROWS(compose(ta, GroupoidMorphism::identity(other)));
  GroupoidMorphism no_inv(g, {parse_word(*g, "a", 0), parse_word(*g, "b a", 0)});
  CHECK_THROWS(invert(no_inv));
}

TEST_CASE("endpoint compatibility is enforced") {
  auto h = std::make_shared<const SpineGraph>(std::vector<std::string>{"p", "q"},
                                              std::vector<Edge>{{"t", 0, 1}, {"c", 0, 0}});
  CHECK_THROWS_AS(GroupoidMorphism(h, {parse_word(*h, "c", 0), parse_word(*h, "c", 0)}),
                  ModelError);
  CHECK_NOTHROW(GroupoidMorphism(h, {parse_word(*h, "c t", 0), parse_word(*h, "c", 0)}));
}

TEST_CASE("loop_basis") {
  auto g = torus_graph();
  LoopBasis lb = loop_basis(*g, 0, {});
  REQUIRE(lb.loops.size() == 2);
  CHECK(format_word(*g, lb.loops[0]) == "a");
  CHECK(format_word(*g, lb.loops[1]) == "b");

  auto s13 = builtin("S_1_3");
  auto tree = s13->tree_edges();
  LoopBasis b13 = loop_basis(*s13->graph, 0, tree);
  CHECK(b13.loops.size() == 4);
  CHECK(b13.loops.size() == s13->graph->edge_count() - s13->graph->vertex_count() + 1);
  for (const Word& w : b13.loops) CHECK(w.is_loop());

  SpineGraph h({"p", "q", "r"}, {{"t", 0, 1}, {"u", 1, 0}, {"c", 2, 2}});
  std::vector<EdgeId> bad{0};
  CHECK_THROWS(loop_basis(h, 0, bad));
  std::vector<EdgeId> cyc{0, 1};
  CHECK_THROWS(loop_basis(h, 0, cyc));
}

TEST_CASE("is_conjugate examples") {
  SpineGraph g({"p"}, {{"a", 0, 0}, {"b", 0, 0}});
  CHECK(is_conjugate(g, parse_word(g, "a b a'", 0), parse_word(g, "b", 0)));
  CHECK(is_conjugate(g, parse_word(g, "a b", 0), parse_word(g, "b a", 0)));
  CHECK_FALSE(is_conjugate(g, parse_word(g, "a", 0), parse_word(g, "b", 0)));
  CHECK_FALSE(is_conjugate(g, parse_word(g, "a b", 0), parse_word(g, "a b'", 0)));
  SpineGraph h({"p", "q"}, {{"t", 0, 1}});
  CHECK_THROWS(is_conjugate(h, parse_word(h, "t", 0), parse_word(h, "t", 0)));
}

TEST_CASE("parse_word and format_word") {
  SpineGraph g({"p"}, {{"a", 0, 0}, {"b", 0, 0}});
  CHECK(format_word(g, parse_word(g, "  a  b' a ", 0)) == "a b' a");
  CHECK(parse_word(g, "", 0).empty());
  CHECK_THROWS(parse_word(g, "a z", 0));
}

TEST_CASE("property: reduce agrees with the stack oracle and is idempotent") {
  auto rng = tc_test::make_rng(1);
  auto s13 = builtin("S_1_3");
  const SpineGraph& g = *s13->graph;
  for (int it = 0; it < 500; ++it) {
    VertexId v = VertexId(tc_test::uniform(rng, 0, int(g.vertex_count()) - 1));
    Word w = tc_test::random_word(g, v, tc_test::uniform(rng, 0, 30), rng);
    Word r = reduce(g, w);
    CHECK(format_word(g, r) == join(naive_reduce(tokens(format_word(g, w)))));
    CHECK(reduce(g, r) == r);
    CHECK(r.size() <= w.size());
    CHECK(is_reduced(r));
    CHECK(r.source() == w.source());
    CHECK(r.target() == w.target());
    Word u = tc_test::random_word(g, w.target(), tc_test::uniform(rng, 0, 20), rng);
    std::vector<Letter> cat = w.letters();
    cat.insert(cat.end(), u.letters().begin(), u.letters().end());
    Word whole(g, cat, w.source());
    CHECK(reduce(g, whole) == compose_words(g, reduce(g, w), reduce(g, u)));
    CHECK(compose_words(g, r, inverse(r)).empty());
  }
}

TEST_CASE("property: apply is functorial, matches the oracle, keeps endpoints") {
  auto rng = tc_test::make_rng(2);
  for (const std::string name : {"S_1_1", "S_1_2", "S_1_3", "annulus"}) {
    auto m = builtin(name);
    const SpineGraph& g = *m->graph;
    for (const CurveData& c : m->curves) {
      const GroupoidMorphism& phi = *c.twist;
      std::map<std::string, Tokens> table;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        table[g.edge(e).name] = tokens(format_word(g, phi.image(e)));
      }
      for (int it = 0; it < 20; ++it) {
        VertexId v = VertexId(tc_test::uniform(rng, 0, int(g.vertex_count()) - 1));
        Word w = tc_test::random_word(g, v, tc_test::uniform(rng, 0, 12), rng);
        Word u = tc_test::random_word(g, w.target(), tc_test::uniform(rng, 0, 12), rng);
        Word img = apply(phi, w);
        CHECK(img.source() == w.source());
        CHECK(img.target() == w.target());
        CHECK(format_word(g, img) == join(naive_apply(table, tokens(format_word(g, w)))));
        CHECK(apply(phi, compose_words(g, w, u)) ==
              compose_words(g, apply(phi, w), apply(phi, u)));
      }
    }
  }
}

TEST_CASE("property: compose is phi after psi and associative") {
  auto rng = tc_test::make_rng(3);
  auto m = builtin("S_1_3");
  const SpineGraph& g = *m->graph;
  for (int it = 0; it < 50; ++it) {
    const auto& a = *m->curves[tc_test::uniform(rng, 0, int(m->curves.size()) - 1)].twist;
    const auto& b = *m->curves[tc_test::uniform(rng, 0, int(m->curves.size()) - 1)].twist;
    const auto& c = *m->curves[tc_test::uniform(rng, 0, int(m->curves.size()) - 1)].twist;
    Word w = tc_test::random_word(g, 0, 10, rng);
    CHECK(apply(compose(a, b), w) == apply(a, apply(b, w)));
    CHECK(equal_morphisms(compose(compose(a, b), c), compose(a, compose(b, c))));
    CHECK(equal_morphisms(a, a));
    CHECK(equal_morphisms(compose(a, b), compose(b, a)) ==
          equal_morphisms(compose(b, a), compose(a, b)));
  }
}

#pragma once

// Seeded generators for property tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "twistcheck/dsl.hpp"
#include "twistcheck/milnor.hpp"
#include "twistcheck/words.hpp"

namespace tc_test {

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random walk of `len` letters from `start`; may contain cancelling pairs.
inline twistcheck::Word random_word(const twistcheck::SpineGraph& g, twistcheck::VertexId start,
                                    int len, std::mt19937_64& rng) {
  using namespace twistcheck;
  std::vector<Letter> letters;
  VertexId at = start;
  for (int i = 0; i < len; ++i) {
    std::vector<Letter> options;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.edge(e).source == at) options.push_back({e, false});
      if (g.edge(e).target == at) options.push_back({e, true});
    }
    if (options.empty()) break;
    Letter l = options[uniform(rng, 0, int(options.size()) - 1)];
    letters.push_back(l);
    at = l.inverse ? g.edge(l.edge).source : g.edge(l.edge).target;
  }
  return Word(g, letters, start);
}

// Random closed walk: a random walk followed by a tree path home, built by
// walking back along the reversed prefix when needed.
inline twistcheck::Word random_loop(const twistcheck::SpineGraph& g, twistcheck::VertexId at,
                                    int len, std::mt19937_64& rng) {
  using namespace twistcheck;
  Word w = random_word(g, at, len, rng);
  std::vector<Letter> letters = w.letters();
  // Close up with a loop-only detour: append the inverse of the part of the
  // walk that left `at` for the last time.
  std::size_t last_home = 0;
  VertexId v = at;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    Letter l = letters[i];
    v = l.inverse ? g.edge(l.edge).source : g.edge(l.edge).target;
    if (v == at) last_home = i + 1;
  }
  for (std::size_t i = letters.size(); i > last_home; --i) letters.push_back(letters[i - 1].inverted());
  return Word(g, letters, at);
}

// Random AST over `names` with nesting depth at most `depth`. Never produces
// a power with exponent 1, which the printer and make_power normalize away.
inline twistcheck::ExprPtr random_expr(const std::vector<std::string>& names, int depth,
                                       std::mt19937_64& rng) {
  using namespace twistcheck;
  int pick = depth <= 0 ? 0 : uniform(rng, 0, 3);
  if (pick == 0) return make_name(names[uniform(rng, 0, int(names.size()) - 1)]);
  if (pick == 1 || pick == 2) {
    return make_compose(random_expr(names, depth - 1, rng), random_expr(names, depth - 1, rng));
  }
  long e = uniform(rng, -12, 12);
  if (e == 1) e = 2;
  return make_power(random_expr(names, depth - 1, rng), e);
}

// Random name drawn from the grammar's identifier set.
inline std::string random_identifier(std::mt19937_64& rng) {
  static const std::string first = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
  static const std::string rest = first + "0123456789_";
  std::string s(1, first[uniform(rng, 0, int(first.size()) - 1)]);
  int len = uniform(rng, 0, 6);
  for (int i = 0; i < len; ++i) s += rest[uniform(rng, 0, int(rest.size()) - 1)];
  return s;
}

// Random polynomial in canonical form (up to four variables) and small integer or
// fractional coefficients.
inline twistcheck::Poly random_poly(std::mt19937_64& rng) {
  using namespace twistcheck;
  Poly p;
  p.variables = std::size_t(uniform(rng, 1, 4));
  int terms = uniform(rng, 0, 5);
  for (int t = 0; t < terms; ++t) {
    std::vector<unsigned> exps(p.variables);
    for (auto& e : exps) e = unsigned(uniform(rng, 0, 7));
    Rational c(uniform(rng, -9, 9), uniform(rng, 1, 4));
    if (c == 0) continue;
    p.terms[exps] += c;
    if (p.terms[exps] == 0) p.terms.erase(exps);
  }
  // Canonical variable count: one past the highest variable that occurs.
  std::size_t used = 0;
  for (const auto& [ex, c] : p.terms) {
    for (std::size_t v = 0; v < ex.size(); ++v) {
      if (ex[v] != 0) used = std::max(used, v + 1);
    }
  }
  Poly out;
  out.variables = used;
  for (const auto& [ex, c] : p.terms) {
    out.terms[std::vector<unsigned>(ex.begin(), ex.begin() + used)] += c;
  }
  return out;
}

}  // namespace tc_test

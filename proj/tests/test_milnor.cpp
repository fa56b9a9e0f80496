#include "doctest.h"

#include "gen.hpp"
#include "seed.hpp"
#include "twistcheck/milnor.hpp"
#include "twistcheck/surfaces.hpp"

using namespace twistcheck;

namespace {

WeightData wd(std::vector<Rational> w, Rational d) { return {std::move(w), d}; }

// Oracle: dimension of C[z]/(z_i^{a_i - 1}), counted monomial by monomial.
long jacobian_monomials(const std::vector<int>& a) {
  long count = 0;
  std::vector<int> e(a.size(), 0);
  for (int x : a) {
    if (x < 2) return 0;
  }
  while (true) {
    ++count;
    std::size_t i = 0;
    while (i < e.size() && ++e[i] == a[i] - 1) e[i++] = 0;
    if (i == e.size()) break;
  }
  return count;
}

std::string brieskorn(const std::vector<int>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += " + ";
    s += "z" + std::to_string(i) + "^" + std::to_string(a[i]);
  }
  return s;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("parse_poly examples") {
  Poly p = parse_poly("z0^3 + z1^3 + z2^3");
  CHECK(p.terms.size() == 3);
  CHECK(p.variables == 3);
  CHECK(parse_poly("z0^2 + z1^3").terms.size() == 2);
  CHECK_THROWS_AS(parse_poly("z0 + "), ParseError);
  CHECK_THROWS_AS(parse_poly("z0 + x1"), ParseError);
  CHECK_THROWS_AS(parse_poly(""), ParseError);
  try {
    parse_poly("z0 + ");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("1:") != std::string::npos);
  }

  Poly c = parse_poly("2*z0*z1 + z1*z0 - 3*z0*z1 + z1^2");
  CHECK(c.terms.size() == 1);
  CHECK(format_poly(c) == "z1^2");
  CHECK(format_poly(parse_poly("z0 - z0")) == "0");
  CHECK(format_poly(parse_poly("1/2*z0^2 - 3*z1")) == "1/2*z0^2 - 3*z1");
}

TEST_CASE("weighted homogeneity") {
  Poly p = parse_poly("z0^2 + z1^3");
  CHECK(check_weighted_homogeneous(p, wd({3, 2}, 6)));
  CHECK_FALSE(check_weighted_homogeneous(p, wd({1, 1}, 2)));
  CHECK_THROWS_AS(check_weighted_homogeneous(p, wd({1}, 2)), Error);
  for (int k = 1; k <= 6; ++k) {
    for (int n = 1; n <= 4; ++n) {
      std::vector<int> a(n, k);
      CHECK(check_weighted_homogeneous(parse_poly(brieskorn(a)),
                                       wd(std::vector<Rational>(n, 1), k)));
    }
  }
}

TEST_CASE("infer_weights examples") {
  auto w = infer_weights(parse_poly("z0^2 + z1^3"));
  REQUIRE(w);
  CHECK(w->weights == std::vector<Rational>{3, 2});
  CHECK(w->degree == 6);
  auto s = infer_weights(parse_poly("z0^3 + z1^3"));
  REQUIRE(s);
  CHECK(s->weights == std::vector<Rational>{1, 1});
  CHECK(s->degree == 3);
  CHECK_FALSE(infer_weights(parse_poly("z0^2*z1 + z1^5 + z0^3")));
  // underdetermined and nonpositive cases
  CHECK_FALSE(infer_weights(parse_poly("z0^2*z1^2")));
  CHECK_FALSE(infer_weights(parse_poly("z0 + z0^2*z1")));
}

TEST_CASE("milnor_number examples") {
  CHECK(milnor_number(wd({1, 1, 1}, 3)) == 8);
  CHECK(milnor_number(wd({1}, 1)) == 0);
  CHECK(milnor_number(wd({3, 2}, 6)) == 2);
  CHECK(milnor_number(wd({2, 3}, 5)) == 1);  // (3/2)(2/3)
}

TEST_CASE("milnor_number errors") {
  CHECK_THROWS_AS(milnor_number(wd({0, 1}, 2)), Error);
  CHECK_THROWS_AS(milnor_number(wd({3, 1}, 2)), Error);
  CHECK_THROWS_AS(milnor_number(wd({2, 2}, 5)), Error);  // (3/2)^2
}

TEST_CASE("Brieskorn-Pham Milnor numbers against the Jacobian monomial count") {
  auto rng = tc_test::make_rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int n = tc_test::uniform(rng, 1, 4);
    std::vector<int> a(n);
    for (int& x : a) x = tc_test::uniform(rng, 2, 7);
    auto w = infer_weights(parse_poly(brieskorn(a)));
    REQUIRE(w);
    CHECK(check_weighted_homogeneous(parse_poly(brieskorn(a)), *w));
    CHECK(milnor_number(*w) == jacobian_monomials(a));
  }
  // homogeneous degree k in n + 1 variables: (k - 1)^(n + 1)
  for (int k = 2; k <= 10; ++k) {
    for (int n = 1; n <= 4; ++n) {
      std::vector<int> a(n + 1, k);
      auto w = infer_weights(parse_poly(brieskorn(a)));
      REQUIRE(w);
      CHECK(milnor_number(*w) == ipow(k - 1, n + 1));
    }
  }
}

TEST_CASE("twist counts") {
  CHECK(twist_count(2, 1) == 0);
  CHECK(twist_count(5, 1) == 0);
  CHECK(twist_count(1, 2) == 2);
  CHECK(twist_count(2, 3) == 12);
  CHECK(per_fiber_count(2, 3) == 4);
  CHECK(per_fiber_count(3, 1) == 0);
  CHECK(per_fiber_count(3, 4) == 27);
  for (int k = 1; k <= 10; ++k) {
    for (int n = 1; n <= 5; ++n) {
      CHECK(per_fiber_count(n, k) == ipow(k - 1, n));
      CHECK(twist_count(n, k) == k * per_fiber_count(n, k));
    }
  }
  CHECK_THROWS_AS(twist_count(0, 3), Error);
  CHECK_THROWS_AS(per_fiber_count(2, 0), Error);
  CHECK(twist_count(40, 10) > Integer("1" + std::string(38, '0')));
}

TEST_CASE("fiber topology") {
  FiberTopology t3 = fiber_topology(3);
  CHECK(t3.genus == 1);
  CHECK(t3.boundary == 3);
  CHECK(t3.euler == -3);
  CHECK(t3.h1_rank == 4);
  FiberTopology t1 = fiber_topology(1);
  CHECK(t1.genus == 0);
  CHECK(t1.boundary == 1);
  CHECK(t1.euler == 1);
  CHECK(t1.h1_rank == 0);
  FiberTopology t4 = fiber_topology(4);
  CHECK(t4.genus == 3);
  CHECK(t4.euler == -8);
  CHECK(t4.h1_rank == 9);
  for (int k = 1; k <= 10; ++k) {
    FiberTopology t = fiber_topology(k);
    Integer mu = milnor_number(wd({1, 1}, k));
    CHECK(mu == (k - 1) * (k - 1));
    CHECK(Integer(t.h1_rank) == mu);
    CHECK(Integer(t.euler) == 1 - mu);
  }
  CHECK_THROWS_AS(fiber_topology(0), Error);
}

TEST_CASE("fiber rank matches the surface models") {
  for (int k = 2; k <= 6; ++k) {
    CHECK(chain_surface(k, ModelLevel::homology)->rank() == std::size_t(fiber_topology(k).h1_rank));
    CHECK(grid_surface(k)->rank() == std::size_t(fiber_topology(k).h1_rank));
  }
}

TEST_CASE("fractional powers") {
  auto divisors = [](long k) {
    std::vector<long> d;
    for (const auto& f : fractional_powers(k)) {
      CHECK(f.angle == Rational(1, f.divisor));
      d.push_back(f.divisor);
    }
    return d;
  };
  CHECK(divisors(6) == std::vector<long>{1, 2, 3, 6});
  CHECK(divisors(1) == std::vector<long>{1});
  CHECK(divisors(7) == std::vector<long>{1, 7});
  CHECK(divisors(36) == std::vector<long>{1, 2, 3, 4, 6, 9, 12, 18, 36});
  for (long k = 1; k <= 200; ++k) {
    std::vector<long> naive;
    for (long l = 1; l <= k; ++l) {
      if (k % l == 0) naive.push_back(l);
    }
    CHECK(divisors(k) == naive);
  }
}

TEST_CASE("properties: rescaling, inference, round trip") {
  auto rng = tc_test::make_rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    int n = tc_test::uniform(rng, 1, 4);
    std::vector<Rational> w(n);
    for (auto& x : w) x = tc_test::uniform(rng, 1, 4);
    Rational d = 0;
    for (auto& x : w) d = std::max(d, x);
    d *= tc_test::uniform(rng, 1, 4);
    Rational mu;
    bool ok = true;
    try {
      mu = Rational(milnor_number(wd(w, d)));
    } catch (const Error&) {
      ok = false;
    }
    Rational c(tc_test::uniform(rng, 1, 9), tc_test::uniform(rng, 1, 9));
    std::vector<Rational> cw;
    for (auto& x : w) cw.push_back(c * x);
    if (ok) {
      CHECK(Rational(milnor_number(wd(cw, c * d))) == mu);
    } else {
      CHECK_THROWS_AS(milnor_number(wd(cw, c * d)), Error);
    }
  }
  for (int trial = 0; trial < 1000; ++trial) {
    Poly p = tc_test::random_poly(rng);
    if (p.terms.empty()) continue;
    CHECK(parse_poly(format_poly(p)) == p);
    auto w = infer_weights(p);
    if (w) {
      CHECK(check_weighted_homogeneous(p, *w));
      for (const auto& x : w->weights) CHECK(x > 0);
    }
  }
}

TEST_CASE("leading zeros are decimal") {
  CHECK(parse_poly("012*z0^09") == parse_poly("12*z0^9"));
  CHECK(parse_poly("z010") == parse_poly("z10"));
  CHECK(format_poly(parse_poly("0*z0 + 00")) == "0");
}

#pragma once

// Weighted homogeneous polynomials and the counting formulas attached to
// their Milnor fibers.
//
// Variable convention: a polynomial in z0..zn has n+1 variables. The twist
// counts k(k-1)^n take that n, i.e. the number of variables minus one.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twistcheck/homology.hpp"

namespace twistcheck {

// Polynomial grammar: terms joined by '+' or '-', a term being a product of
// factors separated by '*', a factor an integer (or p/q) or z<index>[^<exp>].
struct Poly {
  std::size_t variables = 0;
  // exponent vector (length `variables`) -> nonzero coefficient
  std::map<std::vector<unsigned>, Rational> terms;

  bool operator==(const Poly&) const = default;
};

Poly parse_poly(std::string_view text);
// Canonical form: terms in descending exponent order, "+"/"-" separated,
// unit coefficients omitted.
std::string format_poly(const Poly& p);

struct WeightData {
  std::vector<Rational> weights;
  Rational degree;
};

// Throws Error when the weight count differs from the variable count.
bool check_weighted_homogeneous(const Poly& p, const WeightData& w);
// The unique (up to scale) positive weights, as coprime integers; none when
// the system has no positive solution or does not pin the weights down.
std::optional<WeightData> infer_weights(const Poly& p);
// prod (d - w_i) / w_i; throws Error unless every weight is positive, every
// factor nonnegative and the product an integer.
Integer milnor_number(const WeightData& w);

Integer twist_count(long n, long k);
Integer per_fiber_count(long n, long k);

struct FiberTopology {
  long genus = 0;
  long boundary = 0;
  long euler = 0;
  long h1_rank = 0;
};
// Throws Error for k < 1 or if the Milnor-number cross-check fails.
FiberTopology fiber_topology(long k);

struct FractionalPower {
  long divisor = 1;
  Rational angle;  // fraction of a full turn, 1/l
};
std::vector<FractionalPower> fractional_powers(long k);

std::string format_rational(const Rational& q);

}  // namespace twistcheck

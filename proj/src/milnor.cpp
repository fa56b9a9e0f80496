#include "twistcheck/milnor.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

namespace twistcheck {

std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Poly parse() {
    skip();
    if (at_end()) fail("empty polynomial");
    std::vector<std::pair<Rational, std::map<std::size_t, unsigned>>> terms;
    bool first = true;
    while (true) {
      skip();
      Rational sign = 1;
      if (!at_end() && (peek() == '+' || peek() == '-')) {
        sign = peek() == '-' ? -1 : 1;
        ++i_;
        skip();
      } else if (!first) {
        break;
      }
      auto term = parse_term();
      term.first *= sign;
      terms.push_back(std::move(term));
      first = false;
      skip();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail(std::string("unexpected '") + show(peek()) + "'");
    }
    Poly p;
    std::size_t vars = 0;
    for (const auto& [c, e] : terms) {
      if (!e.empty()) vars = std::max(vars, e.rbegin()->first + 1);
    }
    p.variables = vars;
    for (const auto& [c, e] : terms) {
      std::vector<unsigned> ex(vars, 0);
      for (const auto& [v, a] : e) ex[v] = a;
      p.terms[ex] += c;
    }
    for (auto it = p.terms.begin(); it != p.terms.end();) {
      it = it->second == 0 ? p.terms.erase(it) : std::next(it);
    }
    return p;
  }

 private:
  std::pair<Rational, std::map<std::size_t, unsigned>> parse_term() {
    Rational coeff = 1;
    std::map<std::size_t, unsigned> ex;
    while (true) {
      skip();
      if (at_end()) fail("expected a coefficient or a variable");
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Integer num = parse_digits();
        Integer den = 1;
        skip();
        if (!at_end() && peek() == '/') {
          ++i_;
          skip();
          if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator");
          den = parse_digits();
          if (den == 0) fail("zero denominator");
        }
        coeff *= Rational(num, den);
      } else if (c == 'z') {
        std::size_t start = i_;
        ++i_;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
          i_ = start;
          fail("unknown variable; variables are z0, z1, ...");
        }
        Integer idx = parse_digits();
        if (idx > 1000) {
          i_ = start;
          fail("variable index too large");
        }
        if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
          i_ = start;
          fail("unknown variable name");
        }
        unsigned a = 1;
        skip();
        if (!at_end() && peek() == '^') {
          ++i_;
          skip();
          if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent");
          Integer e = parse_digits();
          if (e > 100000) fail("exponent too large");
          a = e.convert_to<unsigned>();
        }
        ex[idx.convert_to<std::size_t>()] += a;
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        fail("unknown variable name; variables are z0, z1, ...");
      } else {
        fail(std::string("unexpected '") + show(c) + "'");
      }
      skip();
      if (at_end() || peek() != '*') break;
      ++i_;
    }
    return {coeff, ex};
  }

  Integer parse_digits() {
    std::size_t start = i_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
    if (i_ - start > 200) fail("number too long");
    // cpp_int reads a leading 0 as octal; digits are always decimal here.
    std::string_view digits = text_.substr(start, i_ - start);
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    return Integer(std::string(digits));
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++i_;
  }
  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }
  static std::string show(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isprint(u)) return std::string(1, c);
    static const char* hex = "0123456789abcdef";
    return std::string("\\x") + hex[u >> 4] + hex[u & 15];
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, {1, i_ + 1});
  }

  std::string_view text_;
  std::size_t i_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

std::string format_poly(const Poly& p) {
  if (p.terms.empty()) return "0";
  std::string out;
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
    const auto& [ex, c] = *it;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t v = 0; v < ex.size(); ++v) {
      if (ex[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "z" + std::to_string(v);
      if (ex[v] != 1) mono += "^" + std::to_string(ex[v]);
    }
    if (mono.empty()) {
      out += format_rational(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += format_rational(mag) + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weights

bool check_weighted_homogeneous(const Poly& p, const WeightData& w) {
  if (w.weights.size() != p.variables) {
    throw Error("expected " + std::to_string(p.variables) + " weights, got " +
                std::to_string(w.weights.size()));
  }
  for (const auto& [ex, c] : p.terms) {
    Rational s = 0;
    for (std::size_t i = 0; i < ex.size(); ++i) s += w.weights[i] * ex[i];
    if (s != w.degree) return false;
  }
  return true;
}

std::optional<WeightData> infer_weights(const Poly& p) {
  const std::size_t n = p.variables;
  if (n == 0 || p.terms.empty()) return std::nullopt;
  // Unknowns (w_1..w_n, d); one row sum a_i w_i - d = 0 per monomial.
  std::vector<std::vector<Rational>> a;
  for (const auto& [ex, c] : p.terms) {
    std::vector<Rational> row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = ex[i];
    row[n] = -1;
    a.push_back(std::move(row));
  }
  // Reduced row echelon form.
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c <= n && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j <= n; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c <= n; ++c) {
    if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) free_cols.push_back(c);
  }
  if (free_cols.size() != 1) return std::nullopt;
  std::vector<Rational> x(n + 1);
  x[free_cols[0]] = 1;
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = -a[i][free_cols[0]];
  if (x[n] < 0) {
    for (auto& v : x) v = -v;
  }
  for (const Rational& v : x) {
    if (v <= 0) return std::nullopt;
  }
  // Scale to coprime integers.
  Integer l = 1;
  for (const Rational& v : x) l = boost::multiprecision::lcm(l, denominator(v));
  Integer g = 0;
  for (const Rational& v : x) g = boost::multiprecision::gcd(g, numerator(Rational(v * l)));
  WeightData w;
  for (std::size_t i = 0; i < n; ++i) w.weights.push_back(x[i] * l / g);
  w.degree = x[n] * l / g;
  return w;
}

Integer milnor_number(const WeightData& w) {
  Rational prod = 1;
  for (const Rational& wi : w.weights) {
    if (wi <= 0) throw Error("weights must be positive");
    Rational f = (w.degree - wi) / wi;
    if (f < 0) throw Error("weight " + format_rational(wi) + " exceeds the degree");
    prod *= f;
  }
  if (denominator(prod) != 1) {
    throw Error("Milnor number " + format_rational(prod) +
                " is not an integer; not an isolated weighted homogeneous singularity");
  }
  return numerator(prod);
}

// ---------------------------------------------------------------------------
// Counting

namespace {

void check_nk(long n, long k) {
  if (n < 1) throw Error("n must be at least 1");
  if (k < 1) throw Error("k must be at least 1");
}

}  // namespace

Integer per_fiber_count(long n, long k) {
  check_nk(n, k);
  return boost::multiprecision::pow(Integer(k - 1), static_cast<unsigned>(n));
}

Integer twist_count(long n, long k) { return Integer(k) * per_fiber_count(n, k); }

FiberTopology fiber_topology(long k) {
  if (k < 1) throw Error("k must be at least 1");
  FiberTopology t;
  t.genus = (k - 1) * (k - 2) / 2;
  t.boundary = k;
  t.euler = 2 - 2 * t.genus - t.boundary;
  t.h1_rank = 2 * t.genus + t.boundary - 1;
  Integer mu = milnor_number({{1, 1}, Rational(k)});
  if (Integer(t.euler) != 1 - mu || Integer(t.h1_rank) != mu) {
    throw Error("fiber topology disagrees with the Milnor number for k = " + std::to_string(k));
  }
  return t;
}

std::vector<FractionalPower> fractional_powers(long k) {
  if (k < 1) throw Error("k must be at least 1");
  std::vector<long> small, large;
  for (long l = 1; l <= k / l; ++l) {
    if (k % l != 0) continue;
    small.push_back(l);
    if (l != k / l) large.push_back(k / l);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  std::vector<FractionalPower> out;
  for (long l : small) out.push_back({l, Rational(1, l)});
  return out;
}

}  // namespace twistcheck

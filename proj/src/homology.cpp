#include "twistcheck/homology.hpp"

#include <algorithm>
#include <sstream>

namespace twistcheck {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw Error("matrix dimension mismatch");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  }
  return out;
}

HomologyClass IntMatrix::operator*(const HomologyClass& x) const {
  if (cols_ != x.size()) throw Error("matrix-vector dimension mismatch");
  HomologyClass out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * x[j];
  }
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error("matrix dimension mismatch");
  IntMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

HomologyClass IntMatrix::column(std::size_t j) const {
  HomologyClass out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw Error("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t IntMatrix::rank() const {
  IntMatrix a = *this;
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && a(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(a(r, j), a(p, j));
    }
    for (std::size_t i = r + 1; i < rows_; ++i) {
      for (std::size_t j = c + 1; j < cols_; ++j) {
        a(i, j) = (a(i, j) * a(r, c) - a(i, c) * a(r, j)) / prev;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << ", ";
    out << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ", ";
      out << (*this)(i, j);
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

IntMatrix matrix_power(const IntMatrix& m, long n) {
  IntMatrix base = n < 0 ? unimodular_inverse(m) : m;
  unsigned long e = n < 0 ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
  IntMatrix result = IntMatrix::identity(m.rows());
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error("inverse of a non-square matrix");
  // Gauss-Jordan over the rationals; the result must come back integral.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw Error("singular matrix");
    std::swap(a[c], a[p]);
    Rational piv = a[c][c];
    for (auto& x : a[c]) x /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = a[i][n + j];
      if (denominator(x) != 1) throw Error("matrix is not unimodular");
      out(i, j) = numerator(x);
    }
  }
  return out;
}

IntersectionForm::IntersectionForm(IntMatrix q) : q_(std::move(q)) {
  if (q_.rows() != q_.cols()) throw ModelError("intersection form is not square");
  for (std::size_t i = 0; i < q_.rows(); ++i) {
    if (q_(i, i) != 0) throw ModelError("intersection form has a nonzero diagonal");
    for (std::size_t j = 0; j < i; ++j) {
      if (q_(i, j) != -q_(j, i)) throw ModelError("intersection form is not antisymmetric");
    }
  }
}

Integer IntersectionForm::pair(const HomologyClass& x, const HomologyClass& y) const {
  if (x.size() != dimension() || y.size() != dimension()) {
    throw Error("homology class has the wrong length");
  }
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * q_(i, j) * y[j];
  }
  return s;
}

bool IntersectionForm::in_radical(const HomologyClass& c) const {
  HomologyClass qc = q_ * c;
  return std::all_of(qc.begin(), qc.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix transvection(const HomologyClass& c, const IntersectionForm& q) {
  const std::size_t n = q.dimension();
  if (c.size() != n) throw Error("homology class has the wrong length");
  // <x, c> = x . (Q c), so M = I + c (Q c)^T.
  HomologyClass qc = q.matrix() * c;
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) m(i, j) += c[i] * qc[j];
  }
  return m;
}

IntMatrix homology_product(std::span<const HomologyFactor> factors, const IntersectionForm& q) {
  IntMatrix m = IntMatrix::identity(q.dimension());
  for (const HomologyFactor& f : factors) {
    // T^n = I + n c (Qc)^T since the rank-one part squares to zero.
    IntMatrix t = transvection(f.cls, q);
    IntMatrix step = IntMatrix::identity(q.dimension());
    for (std::size_t i = 0; i < q.dimension(); ++i) {
      for (std::size_t j = 0; j < q.dimension(); ++j) {
        step(i, j) += (t(i, j) - step(i, j)) * f.exponent;
      }
    }
    m = m * step;
  }
  return m;
}

bool verify_homology(std::span<const HomologyFactor> lhs, std::span<const HomologyFactor> rhs,
                     const IntersectionForm& q) {
  return homology_product(lhs, q) == homology_product(rhs, q);
}

HomologyClass abelianize(const Word& w, std::span<const EdgeId> basis_edges) {
  HomologyClass out(basis_edges.size());
  for (const Letter& l : w.letters()) {
    auto it = std::find(basis_edges.begin(), basis_edges.end(), l.edge);
    if (it == basis_edges.end()) continue;
    out[it - basis_edges.begin()] += l.inverse ? -1 : 1;
  }
  return out;
}

IntMatrix abelianization_matrix(const GroupoidMorphism& phi, VertexId basepoint,
                                std::span<const EdgeId> tree,
                                std::optional<std::vector<EdgeId>> basis_edges) {
  LoopBasis lb = loop_basis(phi.graph(), basepoint, tree);
  std::vector<EdgeId> basis = basis_edges ? *basis_edges : lb.cotree;
  if (basis.size() != lb.cotree.size()) throw Error("basis does not match the loop basis");
  for (EdgeId e : basis) {
    if (std::find(lb.cotree.begin(), lb.cotree.end(), e) == lb.cotree.end()) {
      throw Error("basis edge '" + phi.graph().edge(e).name + "' lies in the tree");
    }
  }
  const std::size_t r = basis.size();
  IntMatrix m(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    std::size_t k = std::find(lb.cotree.begin(), lb.cotree.end(), basis[j]) - lb.cotree.begin();
    HomologyClass col = abelianize(apply(phi, lb.loops[k]), basis);
    for (std::size_t i = 0; i < r; ++i) m(i, j) = col[i];
  }
  return m;
}

std::string format_class(const HomologyClass& c) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < c.size(); ++i) out << (i ? ", " : "") << c[i];
  out << ']';
  return out.str();
}

}  // namespace twistcheck

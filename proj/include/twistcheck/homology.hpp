#pragma once

// Integer homology of a surface with boundary and the transvection action of
// Dehn twists on it. Vectors are columns; a product A * B acts as "B first".

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twistcheck/words.hpp"

namespace twistcheck {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using HomologyClass = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& other) const;
  HomologyClass operator*(const HomologyClass& x) const;
  IntMatrix operator-(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const = default;

  IntMatrix transpose() const;
  bool is_identity() const;
  bool is_zero() const;
  HomologyClass column(std::size_t j) const;

  // Fraction-free (Bareiss) elimination.
  Integer determinant() const;
  std::size_t rank() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix matrix_power(const IntMatrix& m, long n);
// Inverse of a unimodular matrix; throws Error otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

class IntersectionForm {
 public:
  IntersectionForm() = default;
  // Throws ModelError unless square, antisymmetric with zero diagonal.
  explicit IntersectionForm(IntMatrix q);

  std::size_t dimension() const { return q_.rows(); }
  const IntMatrix& matrix() const { return q_; }
  Integer pair(const HomologyClass& x, const HomologyClass& y) const;
  bool in_radical(const HomologyClass& c) const;

 private:
  IntMatrix q_;
};

// M(x) = x + <x, c> c. Throws Error on dimension mismatch.
IntMatrix transvection(const HomologyClass& c, const IntersectionForm& q);

struct HomologyFactor {
  HomologyClass cls;
  long exponent = 1;
};

// Matrix of the product f_1 * f_2 * ... (last factor acts first).
IntMatrix homology_product(std::span<const HomologyFactor> factors, const IntersectionForm& q);
bool verify_homology(std::span<const HomologyFactor> lhs, std::span<const HomologyFactor> rhs,
                     const IntersectionForm& q);

// Signed letter count of the basis edges in w.
HomologyClass abelianize(const Word& w, std::span<const EdgeId> basis_edges);

// Action of phi on the loop basis determined by `tree`, in the coordinates of
// `basis_edges` (default: the cotree edges in edge order). Each basis edge
// must lie outside the tree.
IntMatrix abelianization_matrix(const GroupoidMorphism& phi, VertexId basepoint,
                                std::span<const EdgeId> tree,
                                std::optional<std::vector<EdgeId>> basis_edges = std::nullopt);

std::string format_class(const HomologyClass& c);

}  // namespace twistcheck

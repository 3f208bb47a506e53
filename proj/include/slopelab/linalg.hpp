#pragma once

#include <optional>
#include <vector>

#include "slopelab/rational.hpp"

namespace slopelab {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;  // row-major

bool is_zero_vec(const QVec& v);

QVec vec_add(const QVec& a, const QVec& b);
QVec vec_sub(const QVec& a, const QVec& b);
QVec vec_scale(const Rational& c, const QVec& v);

QMat identity_matrix(int n);
bool is_identity_matrix(const QMat& m);

// A * x for row-major A.
QVec mat_vec(const QMat& a, const QVec& x);

// In-place reduced row echelon form; returns the pivot column of each
// nonzero row, in row order.
std::vector<int> rref(QMat& m);

int rank(QMat m);

// Basis of the kernel of A (rows = equations), one vector per free
// column, in ascending free-column order.
std::vector<QVec> kernel_basis(const QMat& a);

// Inverse of a square matrix; nullopt if singular.
std::optional<QMat> inverse(const QMat& m);

// Solves sum_i x_i * columns[i] = target; nullopt if inconsistent.
// `columns` need not be square but must be independent for a unique
// solution; with dependent columns any one solution is returned.
std::optional<QVec> solve_in_span(const std::vector<QVec>& columns, const QVec& target);

// Incremental echelon basis used for greedy adapted-basis extension.
// Deterministic: candidates are reduced against accepted rows; ties are
// broken by first pivot.
class EchelonSpan {
 public:
  explicit EchelonSpan(int ambient_dim) : ambient_(ambient_dim) {}

  // Returns true (and absorbs v) iff v is outside the current span.
  bool try_add(const QVec& v);
  bool contains(const QVec& v) const;
  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient_dim() const { return ambient_; }

 private:
  QVec reduce(QVec v) const;
  int ambient_;
  QMat rows_;               // echelon rows, pivot entries = 1
  std::vector<int> pivots_;  // pivot column per row
};

}  // namespace slopelab

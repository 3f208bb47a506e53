#include "slopelab/linalg.hpp"

#include <algorithm>

namespace slopelab {

bool is_zero_vec(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

QVec vec_add(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec vec_sub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec vec_scale(const Rational& c, const QVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

QMat identity_matrix(int n) {
  QMat m(n, QVec(n, Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

bool is_identity_matrix(const QMat& m) {
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) return false;
    for (size_t j = 0; j < m[i].size(); ++j) {
      if (m[i][j] != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

QVec mat_vec(const QMat& a, const QVec& x) {
  QVec r(a.size(), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < x.size(); ++j) {
      if (a[i][j] != 0 && x[j] != 0) r[i] += a[i][j] * x[j];
    }
  }
  return r;
}

std::vector<int> rref(QMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pivot = -1;
    for (int r = row; r < rows; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[row], m[pivot]);
    const Rational inv = Rational(1) / m[row][col];
    for (int c = col; c < cols; ++c) m[row][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(QMat m) { return static_cast<int>(rref(m).size()); }

std::vector<QVec> kernel_basis(const QMat& a) {
  if (a.empty()) return {};
  QMat m = a;
  const int cols = static_cast<int>(m[0].size());
  const std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;

  std::vector<QVec> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVec v(cols, Rational(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) {
      v[pivots[r]] = -m[r][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QMat> inverse(const QMat& m) {
  const int n = static_cast<int>(m.size());
  QMat aug(n, QVec(2 * n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n) return std::nullopt;
    for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  const std::vector<int> pivots = rref(aug);
  // Invertible iff the left block yields pivots 0..n-1.
  if (static_cast<int>(pivots.size()) < n) return std::nullopt;
  for (int i = 0; i < n; ++i) {
    if (pivots[i] != i) return std::nullopt;
  }
  QMat inv(n, QVec(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  }
  return inv;
}

std::optional<QVec> solve_in_span(const std::vector<QVec>& columns, const QVec& target) {
  const int k = static_cast<int>(columns.size());
  const int dim = static_cast<int>(target.size());
  if (k == 0) {
    if (is_zero_vec(target)) return QVec{};
    return std::nullopt;
  }
  // [columns | target] as an augmented system, one row per coordinate.
  QMat aug(dim, QVec(k + 1));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < k; ++j) aug[i][j] = columns[j][i];
    aug[i][k] = target[i];
  }
  const std::vector<int> pivots = rref(aug);
  for (int p : pivots) {
    if (p == k) return std::nullopt;  // pivot in the augmented column
  }
  QVec x(k, Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][k];
  return x;
}

QVec EchelonSpan::reduce(QVec v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Rational& c = v[pivots_[r]];
    if (c != 0) {
      const Rational f = c;
      for (int j = 0; j < ambient_; ++j) v[j] -= f * rows_[r][j];
    }
  }
  return v;
}

bool EchelonSpan::try_add(const QVec& v) {
  QVec w = reduce(v);
  int pivot = -1;
  for (int j = 0; j < ambient_; ++j) {
    if (w[j] != 0) {
      pivot = j;
      break;
    }
  }
  if (pivot < 0) return false;
  const Rational inv = Rational(1) / w[pivot];
  for (int j = 0; j < ambient_; ++j) w[j] *= inv;
  // Keep rows fully reduced against the new row.
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Rational c = rows_[r][pivot];
    if (c != 0) {
      for (int j = 0; j < ambient_; ++j) rows_[r][j] -= c * w[j];
    }
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(pivot);
  return true;
}

bool EchelonSpan::contains(const QVec& v) const { return is_zero_vec(reduce(v)); }

}  // namespace slopelab

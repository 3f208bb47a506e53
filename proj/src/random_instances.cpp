#include "slopelab/random_instances.hpp"

#include <algorithm>

namespace slopelab {

Rational random_small_rational(std::mt19937_64& rng, int num_range, int den_range) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

FilteredSpace random_filtered_space(std::mt19937_64& rng, int max_dim, bool nonnegative_jumps) {
  std::uniform_int_distribution<int> dim_dist(1, max_dim);
  const int n = dim_dist(rng);

  std::vector<Rational> jumps;
  for (int i = 0; i < n; ++i) {
    Rational j = random_small_rational(rng);
    if (nonnegative_jumps && j < 0) j = -j;
    jumps.push_back(std::move(j));
  }
  std::sort(jumps.begin(), jumps.end(), [](const Rational& a, const Rational& b) { return a > b; });

  QMat basis = identity_matrix(n);
  std::uniform_int_distribution<int> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> op(0, 2);
  for (int step = 0; step < 2 * n; ++step) {
    const int i = idx(rng);
    const int j = idx(rng);
    if (i == j) continue;
    switch (op(rng)) {
      case 0:
        std::swap(basis[i], basis[j]);
        break;
      default: {
        const Rational c(coef(rng));
        for (int k = 0; k < n; ++k) basis[i][k] += c * basis[j][k];
        break;
      }
    }
  }
  return FilteredSpace(std::move(basis), std::move(jumps));
}

std::vector<QVec> random_independent_vectors(std::mt19937_64& rng, int ambient_dim, int count) {
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<QVec> vecs;
    for (int i = 0; i < count; ++i) {
      QVec v(ambient_dim);
      for (int k = 0; k < ambient_dim; ++k) v[k] = coef(rng);
      vecs.push_back(std::move(v));
    }
    QMat m(vecs.begin(), vecs.end());
    if (rank(m) == count) return vecs;
  }
  throw std::logic_error("random_independent_vectors: exhausted attempts");
}

}  // namespace slopelab

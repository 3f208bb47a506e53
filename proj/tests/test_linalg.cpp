#include <doctest.h>

#include <random>

#include "slopelab/linalg.hpp"
#include "slopelab/random_instances.hpp"

using namespace slopelab;

TEST_CASE("rref ranks and kernels") {
  QMat m = {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
  CHECK(rank(m) == 1);
  const auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0][0] * 1 + ker[0][1] * 2 == 0);

  QMat id = identity_matrix(3);
  CHECK(rank(id) == 3);
  CHECK(kernel_basis(id).empty());
}

TEST_CASE("inverse round-trips on random invertible matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const FilteredSpace v = random_filtered_space(rng, 5);
    const QMat& m = v.basis();
    const auto inv = inverse(m);
    REQUIRE(inv.has_value());
    const int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i) {
      QVec e = mat_vec(*inv, mat_vec(m, identity_matrix(n)[i]));
      CHECK(e == identity_matrix(n)[i]);
    }
  }
}

TEST_CASE("inverse rejects singular matrices") {
  QMat m = {{Rational(1), Rational(1)}, {Rational(2), Rational(2)}};
  CHECK_FALSE(inverse(m).has_value());
}

TEST_CASE("solve_in_span finds coordinates and detects misses") {
  std::vector<QVec> cols = {{Rational(1), Rational(0), Rational(1)},
                            {Rational(0), Rational(1), Rational(1)}};
  const auto hit = solve_in_span(cols, {Rational(2), Rational(3), Rational(5)});
  REQUIRE(hit.has_value());
  CHECK((*hit)[0] == 2);
  CHECK((*hit)[1] == 3);
  CHECK_FALSE(solve_in_span(cols, {Rational(0), Rational(0), Rational(1)}).has_value());
  // empty span contains only zero
  CHECK(solve_in_span({}, {Rational(0)}).has_value());
  CHECK_FALSE(solve_in_span({}, {Rational(1)}).has_value());
}

TEST_CASE("echelon span grows deterministically") {
  EchelonSpan span(3);
  CHECK(span.try_add({Rational(1), Rational(1), Rational(0)}));
  CHECK_FALSE(span.try_add({Rational(2), Rational(2), Rational(0)}));
  CHECK(span.try_add({Rational(0), Rational(1), Rational(1)}));
  CHECK(span.dim() == 2);
  CHECK(span.contains({Rational(1), Rational(0), Rational(-1)}));
  CHECK_FALSE(span.contains({Rational(0), Rational(0), Rational(1)}));
}

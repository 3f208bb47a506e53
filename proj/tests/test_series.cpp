#include <doctest.h>

#include "slopelab/series.hpp"
#include "test_support.hpp"

using namespace slopelab;
using slopelab::testsupport::frac;

namespace {

// P^1 with g = min(x, 1-x): lambda(k; n) = min(k, n-k).
MonomialSeries roof_series() {
  return MonomialSeries(1, 1, Rational(0), [](const Multidegree& a) {
    std::vector<std::pair<ZPoint, Rational>> out;
    for (int k = 0; k <= a[0]; ++k) out.push_back({{k}, Rational(std::min(k, a[0] - k))});
    return out;
  });
}

// P^1 with g = 1: lambda(k; n) = n.
MonomialSeries one_series() {
  return MonomialSeries(1, 1, Rational(0), [](const Multidegree& a) {
    std::vector<std::pair<ZPoint, Rational>> out;
    for (int k = 0; k <= a[0]; ++k) out.push_back({{k}, Rational(a[0])});
    return out;
  });
}

MonomialSeries zero_lambda_series() {
  return MonomialSeries(1, 1, Rational(0), [](const Multidegree& a) {
    std::vector<std::pair<ZPoint, Rational>> out;
    for (int k = 0; k <= a[0]; ++k) out.push_back({{k}, Rational(0)});
    return out;
  });
}

// P^2 simplex with g = 1 - x - y: lambda((i,j); n) = n - i - j.
MonomialSeries simplex_series() {
  return MonomialSeries(2, 1, Rational(0), [](const Multidegree& a) {
    std::vector<std::pair<ZPoint, Rational>> out;
    for (int i = 0; i <= a[0]; ++i) {
      for (int j = 0; i + j <= a[0]; ++j) out.push_back({{i, j}, Rational(a[0] - i - j)});
    }
    return out;
  });
}

// Single monomial per degree with lambda(x^n; n) = -n^2: every product
// violates superadditivity.
MonomialSeries adversarial_series() {
  return MonomialSeries(1, 1, Rational(0), [](const Multidegree& a) {
    const int n = a[0];
    return std::vector<std::pair<ZPoint, Rational>>{{{n}, Rational(-n * n)}};
  });
}

// Floor-perturbed linear values: lambda(x^k; n) = floor(2k/3).
MonomialSeries floor_series() {
  return MonomialSeries(1, 1, Rational(0), [](const Multidegree& a) {
    std::vector<std::pair<ZPoint, Rational>> out;
    for (int k = 0; k <= a[0]; ++k) out.push_back({{k}, Rational((2 * k) / 3)});
    return out;
  });
}

}  // namespace

TEST_CASE("series validation") {
  SUBCASE("degree zero must be the unit") {
    CHECK_THROWS_AS(MonomialSeries(1, 1, Rational(0),
                                   [](const Multidegree&) {
                                     return std::vector<std::pair<ZPoint, Rational>>{
                                         {{0}, Rational(1)}};
                                   }),
                    input_error);
  }
  SUBCASE("duplicate points rejected") {
    MonomialSeries s(1, 1, Rational(0), [](const Multidegree& a) {
      std::vector<std::pair<ZPoint, Rational>> out = {{{0}, Rational(0)}};
      if (a[0] == 2) out = {{{1}, Rational(0)}, {{1}, Rational(1)}};
      return out;
    });
    CHECK_THROWS_AS(s.piece({2}), input_error);
  }
  SUBCASE("negative multidegree rejected") {
    CHECK_THROWS_AS(roof_series().piece({-1}), input_error);
  }
}

TEST_CASE("series_space materialization") {
  const MonomialSeries s = roof_series();
  SUBCASE("degree 0 is one-dimensional with jump 0") {
    const FilteredSpace v = series_space(s, {0});
    CHECK(v.dim() == 1);
    CHECK(v.jumps() == std::vector<Rational>{Rational(0)});
  }
  SUBCASE("degree 4 jumps are (2,1,1,0,0)") {
    const FilteredSpace v = series_space(s, {4});
    CHECK(v.jumps() == std::vector<Rational>{Rational(2), Rational(1), Rational(1), Rational(0),
                                             Rational(0)});
  }
  SUBCASE("empty piece gives the zero space") {
    MonomialSeries empty(1, 1, Rational(0), [](const Multidegree& a) {
      std::vector<std::pair<ZPoint, Rational>> out;
      if (a[0] == 0) out.push_back({{0}, Rational(0)});
      return out;
    });
    CHECK(series_space(empty, {3}).dim() == 0);
  }
}

TEST_CASE("superadditivity checking") {
  SUBCASE("concave toric values never violate") {
    const SuperadditivityReport r = check_superadditivity(roof_series(), 8, 3);
    CHECK(r.ok());
    CHECK(r.worst_slack >= 0);
    CHECK(r.tuples_checked > 0);
  }
  SUBCASE("zero lambda never violates") {
    CHECK(check_superadditivity(zero_lambda_series(), 6, 2).ok());
  }
  SUBCASE("simplex fixture never violates") {
    CHECK(check_superadditivity(simplex_series(), 6, 2).ok());
  }
  SUBCASE("adversarial fixture reports exactly its planted violation") {
    const SuperadditivityReport r = check_superadditivity(adversarial_series(), 2, 2);
    REQUIRE(r.violations.size() == 1);
    const SuperadditivityViolation& v = r.violations[0];
    CHECK(v.degrees == std::vector<Multidegree>{{1}, {1}});
    CHECK(v.product_lambda == -4);
    CHECK(v.required_lower == -2);
    CHECK(r.worst_slack == -2);
  }
}

TEST_CASE("fekete estimator") {
  SUBCASE("toric monomials are already asymptotic: lambda' = lambda") {
    const MonomialSeries s = roof_series();
    for (int n = 1; n <= 5; ++n) {
      const auto piece = s.piece({n});
      for (int i = 0; i < piece->dim(); ++i) {
        const auto est =
            fekete_lambda(s, MonomialCombination::monomial({n}, piece->points[i]), 8);
        CHECK(est.estimate == piece->lambdas[i]);
      }
    }
  }
  SUBCASE("zero lambda gives zero") {
    const auto est = fekete_lambda(zero_lambda_series(), MonomialCombination::monomial({1}, {1}), 6);
    CHECK(est.estimate == 0);
  }
  SUBCASE("floor-perturbed values recover 2/3 within 1/m_max") {
    const auto est = fekete_lambda(floor_series(), MonomialCombination::monomial({1}, {1}), 16);
    CHECK(est.estimate <= frac(2, 3));
    CHECK(est.estimate >= frac(2, 3) - frac(1, 16));
    CHECK(est.lower_bounds.size() == 16);
  }
  SUBCASE("lambda' >= lambda universally at C = 0") {
    const MonomialSeries s = floor_series();
    for (int n = 1; n <= 4; ++n) {
      const auto piece = s.piece({n});
      for (int i = 0; i < piece->dim(); ++i) {
        const auto est =
            fekete_lambda(s, MonomialCombination::monomial({n}, piece->points[i]), 6);
        CHECK(est.estimate >= piece->lambdas[i]);
      }
    }
  }
  SUBCASE("sections outside the algebra are input errors") {
    CHECK_THROWS_AS(fekete_lambda(roof_series(), MonomialCombination::monomial({1}, {7}), 4),
                    input_error);
  }
  SUBCASE("ultrametric property of the limit on sampled combinations") {
    // prop: lambda'(s + t) >= min(lambda'(s), lambda'(t))
    const MonomialSeries s = roof_series();
    const MonomialCombination a = MonomialCombination::monomial({3}, {1});
    const MonomialCombination b = MonomialCombination::monomial({3}, {2});
    const MonomialCombination sum{{3}, {{{1}, Rational(1)}, {{2}, Rational(1)}}};
    const Rational la = fekete_lambda(s, a, 8).estimate;
    const Rational lb = fekete_lambda(s, b, 8).estimate;
    const Rational lsum = fekete_lambda(s, sum, 8).estimate;
    CHECK(lsum >= rational_min(la, lb));
  }
  SUBCASE("superadditivity of the limit on sampled pairs") {
    // prop: lambda'(st) >= lambda'(s) + lambda'(t)
    const MonomialSeries s = roof_series();
    for (int n = 1; n <= 3; ++n) {
      for (int k1 = 0; k1 <= n; ++k1) {
        for (int m = 1; m <= 3; ++m) {
          for (int k2 = 0; k2 <= m; ++k2) {
            const Rational ls =
                fekete_lambda(s, MonomialCombination::monomial({n}, {k1}), 6).estimate;
            const Rational lt =
                fekete_lambda(s, MonomialCombination::monomial({m}, {k2}), 6).estimate;
            const Rational lst =
                fekete_lambda(s, MonomialCombination::monomial({n + m}, {k1 + k2}), 6).estimate;
            CHECK(lst >= ls + lt);
          }
        }
      }
    }
  }
}

TEST_CASE("asymptotic invariants") {
  SUBCASE("roof series: mu_max trace 1/2, mu_min trace 0") {
    const AsymptoticInvariants inv = asymptotic_invariants(roof_series(), 20, frac(1, 10));
    CHECK(inv.mu_max_asy_estimate == frac(1, 2));
    CHECK(inv.mu_min_inf_estimate == 0);
    CHECK(inv.mu_min_sup_estimate == 0);
    CHECK(inv.converged);
  }
  SUBCASE("zero series: all zero") {
    const AsymptoticInvariants inv = asymptotic_invariants(zero_lambda_series(), 10, Rational(0));
    CHECK(inv.mu_max_asy_estimate == 0);
    CHECK(inv.mu_min_inf_estimate == 0);
    CHECK(inv.converged);
  }
  SUBCASE("constant-one green: all traces are 1") {
    const AsymptoticInvariants inv = asymptotic_invariants(one_series(), 10, Rational(0));
    CHECK(inv.mu_max_asy_estimate == 1);
    CHECK(inv.mu_min_inf_estimate == 1);
    CHECK(inv.mu_min_sup_estimate == 1);
    CHECK(inv.converged);
  }
}

TEST_CASE("chi volume sequences") {
  SUBCASE("roof at n = 4: chi = 1/2") {
    const auto seq = chi_volume_sequence(roof_series(), 1, {4});
    CHECK(seq[0].chi_est == frac(1, 2));
  }
  SUBCASE("constant-one green at n = 10: chi = 11/5") {
    const auto seq = chi_volume_sequence(one_series(), 1, {10});
    CHECK(seq[0].chi_est == frac(11, 5));
  }
  SUBCASE("flat simplex: chi 0, vol (n+1)(n+2)/n^2") {
    MonomialSeries flat(2, 1, Rational(0), [](const Multidegree& a) {
      std::vector<std::pair<ZPoint, Rational>> out;
      for (int i = 0; i <= a[0]; ++i) {
        for (int j = 0; i + j <= a[0]; ++j) out.push_back({{i, j}, Rational(0)});
      }
      return out;
    });
    const auto seq = chi_volume_sequence(flat, 2, {7});
    CHECK(seq[0].chi_est == 0);
    CHECK(seq[0].vol_hat_est == 0);
    CHECK(seq[0].vol_est == frac(8 * 9, 49));
  }
  SUBCASE("positive lambdas make chi and vol-hat agree") {
    const auto seq = chi_volume_sequence(roof_series(), 1, {3, 5, 8});
    for (const auto& p : seq) CHECK(p.chi_est == p.vol_hat_est);
  }
}

TEST_CASE("okounkov bodies and the concave transform") {
  SUBCASE("roof hull is [0,1] already at small truncation") {
    const OkounkovComputation comp(roof_series(), 10);
    CHECK(comp.hull() == std::vector<QVec>{{Rational(0)}, {Rational(1)}});
  }
  SUBCASE("superlevel hull above the maximum is empty") {
    const OkounkovComputation comp(roof_series(), 10);
    CHECK(comp.hull_at(Rational(2)).empty());
    CHECK_FALSE(comp.hull_at(frac(1, 2)).empty());
  }
  SUBCASE("simplex hull is the simplex at any truncation") {
    const OkounkovComputation comp(simplex_series(), 4);
    CHECK(comp.hull() == std::vector<QVec>{{Rational(0), Rational(0)},
                                           {Rational(1), Rational(0)},
                                           {Rational(0), Rational(1)}});
  }
  SUBCASE("transform at the midpoint recovers g") {
    CHECK(concave_transform(roof_series(), {frac(1, 2)}, 2) == frac(1, 2));
    CHECK(concave_transform(roof_series(), {frac(1, 4)}, 8) == frac(1, 4));
  }
  SUBCASE("low thresholds give the whole body") {
    const OkounkovComputation comp(roof_series(), 8);
    CHECK(comp.hull_at(Rational(-1)) == comp.hull());
    CHECK(comp.hull_at(Rational(0)) == comp.hull());
  }
  SUBCASE("points outside the body are domain errors") {
    CHECK_THROWS_AS(concave_transform(roof_series(), {Rational(2)}, 4), input_error);
  }
  SUBCASE("transform is a lower bound for g with equality at compatible points") {
    const OkounkovComputation comp(roof_series(), 6);
    for (int num = 0; num <= 6; ++num) {
      const Rational x = frac(num, 6);
      const Rational g = rational_min(x, 1 - x);
      const Rational est = comp.transform({x});
      CHECK(est <= g);
      CHECK(est == g);  // denominator divides the truncation
    }
    // a point with incompatible denominator underestimates
    CHECK(comp.transform({frac(1, 7)}) <= frac(1, 7));
  }
  SUBCASE("okounkov_body report carries nested hulls") {
    const OkounkovEstimate est = okounkov_body(roof_series(), 8, {frac(1, 4), frac(1, 2)});
    REQUIRE(est.hulls_at_t.size() == 2);
    // hull at 1/4 contains hull at 1/2
    CHECK(est.hulls_at_t[0][0][0] <= est.hulls_at_t[1][0][0]);
    CHECK(est.hulls_at_t[0].back()[0] >= est.hulls_at_t[1].back()[0]);
  }
}

TEST_CASE("slope certificates") {
  SUBCASE("roof: S = 0, T = 0, verified") {
    const SlopeCertificate c = slope_certificate(roof_series(), 1, 50);
    CHECK(c.S == 0);
    CHECK(c.T == 0);
    CHECK(c.valid);
  }
  SUBCASE("constant-one green: S = 1, verified") {
    const SlopeCertificate c = slope_certificate(one_series(), 1, 50);
    CHECK(c.S == 1);
    CHECK(c.valid);
  }
  SUBCASE("zero lambda: S = 0") {
    CHECK(slope_certificate(zero_lambda_series(), 1, 20).S == 0);
  }
  SUBCASE("wrong generation degree surfaces as an invalid certificate") {
    // lambda(k; n) = n^2 is superlinear: no linear bound from degree 1 holds
    MonomialSeries quad(1, 1, Rational(0), [](const Multidegree& a) {
      std::vector<std::pair<ZPoint, Rational>> out;
      for (int k = 0; k <= a[0]; ++k) out.push_back({{k}, Rational(-a[0] * a[0])});
      return out;
    });
    const SlopeCertificate c = slope_certificate(quad, 1, 20);
    CHECK_FALSE(c.valid);
    REQUIRE(c.first_violation_degree.has_value());
    CHECK(*c.first_violation_degree == 2);
  }
}

TEST_CASE("bundle sums of multigraded series") {
  // Hand multigraded series: piece((a,b)) = {0..a+b} with constant
  // lambda a + 2b.
  MonomialSeries multi(1, 2, Rational(0), [](const Multidegree& a) {
    std::vector<std::pair<ZPoint, Rational>> out;
    const int total = a[0] + a[1];
    const Rational lam = (total == 0) ? Rational(0) : Rational(a[0] + 2 * a[1]);
    for (int k = 0; k <= total; ++k) out.push_back({{k}, lam});
    return out;
  });
  const MonomialSeries bundle = bundle_sum_series(multi);
  CHECK(bundle.ambient_dim() == 3);
  CHECK(bundle.grading_rank() == 1);

  SUBCASE("degree-m piece is the direct sum over |a| = m") {
    // dims: sum over a+b=m of (a+b+1) = (m+1)^2
    CHECK(bundle.piece({3})->dim() == 16);
  }
  SUBCASE("minimal slope is the minimum over the multidegrees") {
    for (int m = 1; m <= 5; ++m) {
      const auto piece = bundle.piece({m});
      Rational mn = piece->lambdas[0];
      for (const Rational& l : piece->lambdas) mn = rational_min(mn, l);
      CHECK(mn == m);  // min over a+b=m of a+2b is a=m, b=0
    }
  }
  SUBCASE("rank-1 bundling reproduces the input slopes") {
    const MonomialSeries base = roof_series();
    const MonomialSeries rebundled = bundle_sum_series(base);
    for (int n = 0; n <= 6; ++n) {
      auto lhs = rebundled.piece({n})->lambdas;
      auto rhs = base.piece({n})->lambdas;
      std::sort(lhs.begin(), lhs.end());
      std::sort(rhs.begin(), rhs.end());
      CHECK(lhs == rhs);
    }
  }
  SUBCASE("bundle superadditivity holds for the hand multigraded series") {
    CHECK(check_superadditivity(bundle, 5, 2).ok());
  }
  SUBCASE("chi of the bundle merges component slope sums") {
    // direct-sum slope multisets are exact: chi over the bundle at m
    // equals the weighted merge computed by hand
    for (int m = 1; m <= 4; ++m) {
      Rational by_hand = 0;
      for (int a = 0; a <= m; ++a) {
        const int b = m - a;
        by_hand += Rational(a + 2 * b) * (m + 1);
      }
      const auto piece = bundle.piece({m});
      Rational sum = 0;
      for (const Rational& l : piece->lambdas) sum += l;
      CHECK(sum == by_hand);
    }
  }
}

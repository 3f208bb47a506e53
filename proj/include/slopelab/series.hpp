#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slopelab/filtration.hpp"
#include "slopelab/geometry.hpp"

namespace slopelab {

// Multidegree in N^r; rank-1 series use a single entry.
using Multidegree = std::vector<int>;

int degree_total(const Multidegree& a);

// One graded piece: the lattice-point basis with filtration values,
// sorted lexicographically by point.
struct DegreePiece {
  std::vector<ZPoint> points;
  std::vector<Rational> lambdas;

  int dim() const { return static_cast<int>(points.size()); }
  std::optional<Rational> lambda_of(const ZPoint& m) const;
};

// Graded (or N^r-multigraded) monomial linear series. The provider maps a
// multidegree to the (lattice point, lambda) list of that piece; it must
// be a pure function. Pieces are validated (distinct points, degree zero
// equal to {(origin, 0)}) and cached. Copies share the cache.
class MonomialSeries {
 public:
  using Provider =
      std::function<std::vector<std::pair<ZPoint, Rational>>(const Multidegree&)>;

  MonomialSeries(int ambient_dim, int grading_rank, Rational superadd_constant,
                 Provider provider, int ln_precision_terms = 32);

  int ambient_dim() const;
  int grading_rank() const;
  const Rational& superadd_constant() const;

  // Cached materialization.
  std::shared_ptr<const DegreePiece> piece(const Multidegree& a) const;
  // Uncached materialization for streaming consumers.
  DegreePiece piece_uncached(const Multidegree& a) const;

  // delta(a) = C * ln(dim E_a), as an exact rational upper bound of the
  // logarithm; exactly 0 when C = 0 or dim <= 1.
  Rational delta(const Multidegree& a) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Materializes E_a as a FilteredSpace: coordinates follow the sorted
// monomial order; the adapted basis is the corresponding permutation.
FilteredSpace series_space(const MonomialSeries& s, const Multidegree& a);

struct SuperadditivityViolation {
  std::vector<Multidegree> degrees;
  std::vector<ZPoint> monomials;
  Rational product_lambda;      // lambda of the product monomial
  Rational required_lower;      // sum lambda_i - sum delta(n_i)
};

struct SuperadditivityReport {
  int n_max = 0;
  int factor_count_max = 0;
  long long tuples_checked = 0;
  std::vector<SuperadditivityViolation> violations;
  Rational worst_slack;  // min of (product_lambda - required_lower); >= 0 iff ok

  bool ok() const { return violations.empty(); }
};

// Verifies lambda(prod s_i) >= sum lambda(s_i) - sum delta(n_i) over all
// basis-monomial tuples with two to factor_count_max factors of nonzero
// multidegrees summing to total degree <= n_max.
SuperadditivityReport check_superadditivity(const MonomialSeries& s, int n_max,
                                            int factor_count_max = 2);

// A rational combination of basis monomials inside one graded piece.
struct MonomialCombination {
  Multidegree degree;
  std::vector<std::pair<ZPoint, Rational>> terms;

  static MonomialCombination monomial(Multidegree degree, ZPoint m) {
    return {std::move(degree), {{std::move(m), Rational(1)}}};
  }
};

struct FeketeEstimate {
  Rational estimate;                   // best lower bound for lambda'
  std::vector<Rational> lower_bounds;  // (lambda(s^m) - delta(nm))/m, m = 1..m_max
  Rational last_ratio;                 // lambda(s^{m_max}) / m_max
};

// Fekete estimator for the asymptotic value lambda'(s). With C = 0 every
// reported bound is exact and the estimate dominates lambda(s).
FeketeEstimate fekete_lambda(const MonomialSeries& s, const MonomialCombination& section,
                             int m_max);

struct AsymptoticInvariants {
  std::vector<int> degrees;  // n <= n_max with nonempty E_n
  std::vector<Rational> mu_max_over_n;
  std::vector<Rational> mu_min_over_n;
  Rational mu_max_asy_estimate;   // tail max of mu_max/n
  Rational mu_min_inf_estimate;   // tail min of mu_min/n
  Rational mu_min_sup_estimate;   // tail max of mu_min/n
  Rational tail_oscillation_mu_max;
  Rational tail_oscillation_mu_min;
  bool converged = false;  // oscillations within the caller tolerance
};

AsymptoticInvariants asymptotic_invariants(const MonomialSeries& s, int n_max,
                                           const Rational& oscillation_tol);

struct ChiVolumePoint {
  int n;
  Rational chi_est;      // sum mu_i * (d+1)! / n^(d+1)
  Rational vol_hat_est;  // sum max(mu_i, 0) * (d+1)! / n^(d+1)
  Rational vol_est;      // dim * d! / n^d
};

std::vector<ChiVolumePoint> chi_volume_sequence(const MonomialSeries& s, int kodaira_dim,
                                                const std::vector<int>& n_list);

// Okounkov body machinery at a fixed truncation: sites are the normalized
// valuation vectors m/n with level lambda'(m; n)/n, where lambda' is the
// Fekete estimate truncated so powers stay within degree n_max.
class OkounkovComputation {
 public:
  OkounkovComputation(const MonomialSeries& s, int n_max);

  int ambient_dim() const { return dim_; }
  int truncation() const { return n_max_; }

  // Full body hull (d=1: one or two points; d=2: CCW polygon).
  const std::vector<QVec>& hull() const;

  // Delta^t: hull of sites with level >= t; empty if none qualify.
  std::vector<QVec> hull_at(const Rational& t) const;

  bool in_body(const QVec& x) const;

  // G_est(x) = max{ level t of the computed family : x in Delta^t };
  // throws input_error outside the body.
  Rational transform(const QVec& x) const;

 private:
  bool in_hull(const std::vector<QVec>& h, const QVec& x) const;
  int dim_;
  int n_max_;
  std::vector<Rational> levels_;                // descending
  std::vector<std::vector<QVec>> level_hulls_;  // cumulative
};

struct OkounkovEstimate {
  std::vector<QVec> hull;
  std::vector<Rational> t_grid;
  std::vector<std::vector<QVec>> hulls_at_t;
};

OkounkovEstimate okounkov_body(const MonomialSeries& s, int n_max,
                               const std::vector<Rational>& t_grid);

Rational concave_transform(const MonomialSeries& s, const QVec& x, int n_max);

struct SlopeCertificate {
  Rational S;
  Rational T;
  int generator_degree = 0;
  int verified_up_to = 0;
  bool valid = false;
  std::optional<int> first_violation_degree;
};

// S = min_{1<=l<=N} (mu_min(E_l) - delta(l)) / l over nonempty pieces,
// T = caller offset (0 in the homogeneous bound); verifies
// mu_min(E_n) >= S*n + T for n <= n_check.
SlopeCertificate slope_certificate(const MonomialSeries& s, int generator_degree, int n_check,
                                   const Rational& t_offset = Rational(0));

// Total-degree grading of a multigraded series: the degree-m piece is the
// orthogonal direct sum of the pieces with |a| = m, lattice points
// disambiguated by appending the multidegree tag (ambient dim grows by
// the grading rank).
MonomialSeries bundle_sum_series(const MonomialSeries& multigraded);

}  // namespace slopelab

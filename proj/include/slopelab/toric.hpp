#pragma once

#include <map>
#include <string>
#include <vector>

#include "slopelab/adelic.hpp"
#include "slopelab/geometry.hpp"
#include "slopelab/series.hpp"

namespace slopelab {

// Thrown when a stated mathematical precondition is detected to fail on
// actual data (e.g. a lambda bound above the minimal slope). The CLI maps
// it to exit code 1.
class contract_error : public std::runtime_error {
 public:
  explicit contract_error(const std::string& what) : std::runtime_error(what) {}
};

// Toric model of an adelic R-Cartier divisor: a polytope and one concave
// PL Green function per place, all on the same domain. Places without an
// explicit Green get the zero function.
class ToricAdelicDivisor {
 public:
  ToricAdelicDivisor(LatticePolytope polytope, AdelicCurveSpec curve,
                     std::map<std::string, ConcavePLFunction> greens);

  const LatticePolytope& polytope() const { return polytope_; }
  const AdelicCurveSpec& curve() const { return curve_; }
  int ambient_dim() const { return polytope_.ambient_dim(); }
  const ConcavePLFunction& green(int place_index) const { return greens_.at(place_index); }

  // sum_omega nu(omega) g_omega, a single concave PL function on P.
  const ConcavePLFunction& total_green() const { return *total_green_; }

 private:
  LatticePolytope polytope_;
  AdelicCurveSpec curve_;
  std::vector<ConcavePLFunction> greens_;  // aligned with curve places
  std::shared_ptr<const ConcavePLFunction> total_green_;
};

// (d+1)! * sum_omega nu(omega) * integral_P g_omega.
Rational chi_volume_oracle(const ToricAdelicDivisor& d);

// Graded series of the divisor: degree-n basis = lattice points of n*P,
// lambda(m; n) = n * (sum_omega nu g_omega)(m/n).
MonomialSeries to_series(const ToricAdelicDivisor& d);

// N^r-multigraded series of r divisors on one curve: the multidegree-a
// piece comes from the weighted Minkowski sum with sup-convolved Greens.
MonomialSeries to_multigraded_series(const std::vector<ToricAdelicDivisor>& divisors);

// Weighted combination sum a_i * D_i (weights >= 0).
ToricAdelicDivisor weighted_combination(const std::vector<ToricAdelicDivisor>& divisors,
                                        const std::vector<Rational>& weights);

struct ToricChiReport {
  Rational oracle;
  std::vector<ChiVolumePoint> estimates;
  Rational max_gap_tail;  // max |chi_est - oracle| over n > n_max/2
  Rational tolerance;
  bool pass = false;  // |chi_est(n_max) - oracle| <= tolerance
};

ToricChiReport hilbert_samuel_check(const ToricAdelicDivisor& d, int n_max, const Rational& tol);

// Adds the constant c(omega) to each Green function.
ToricAdelicDivisor twist_divisor(const ToricAdelicDivisor& d, const std::vector<Rational>& c);

// alpha * D: polytope alpha*P, Greens x -> alpha*g(x/alpha).
ToricAdelicDivisor scale_divisor(const ToricAdelicDivisor& d, const Rational& alpha);

struct ConeScanRow {
  std::vector<Rational> weights;
  Rational vol;      // d! * vol_d(P_a)
  Rational vol_chi;  // oracle
  bool ratio_defined = false;
  Rational ratio;  // vol_chi / vol when defined
  Rational chi_est_at_n;
};

std::vector<ConeScanRow> cone_scan(const std::vector<ToricAdelicDivisor>& divisors,
                                   const std::vector<std::vector<Rational>>& grid, int n_est);

// Continuous extension value at the weight vector a:
//   (d+1)! * ( integral_P max(g_tot - lambda, 0) + vol_d(P) * lambda ).
// Requires lambda strictly below the minimal value of the total Green
// (the mu_min^sup surrogate); throws contract_error otherwise.
Rational vol_I_extension(const std::vector<ToricAdelicDivisor>& divisors,
                         const std::vector<Rational>& weights, const Rational& lambda_bound);

}  // namespace slopelab

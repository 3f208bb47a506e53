#include "slopelab/toric.hpp"

#include <algorithm>

namespace slopelab {

ToricAdelicDivisor::ToricAdelicDivisor(LatticePolytope polytope, AdelicCurveSpec curve,
                                       std::map<std::string, ConcavePLFunction> greens)
    : polytope_(std::move(polytope)), curve_(std::move(curve)) {
  for (const auto& [label, g] : greens) {
    if (!curve_.index_of(label)) {
      throw input_error("ToricAdelicDivisor: green for unknown place \"" + label + "\"");
    }
    if (!(g.domain() == polytope_)) {
      throw input_error("ToricAdelicDivisor: green domain differs from the divisor polytope");
    }
  }
  const ConcavePLFunction zero(
      polytope_, {{QVec(polytope_.ambient_dim(), Rational(0)), Rational(0)}});
  greens_.reserve(curve_.place_count());
  std::vector<Rational> weights;
  for (const AdelicPlace& place : curve_.places()) {
    auto it = greens.find(place.label);
    greens_.push_back(it == greens.end() ? zero : it->second);
    weights.push_back(place.weight);
  }
  total_green_ = std::make_shared<const ConcavePLFunction>(weighted_sum(weights, greens_));
}

Rational chi_volume_oracle(const ToricAdelicDivisor& d) {
  const Rational norm = factorial(d.ambient_dim() + 1);
  Rational sum = 0;
  for (int i = 0; i < d.curve().place_count(); ++i) {
    sum += d.curve().places()[i].weight * d.green(i).integral();
  }
  return norm * sum;
}

MonomialSeries to_series(const ToricAdelicDivisor& d) {
  const LatticePolytope polytope = d.polytope();
  const ConcavePLFunction total = d.total_green();
  const int dim = polytope.ambient_dim();
  auto provider = [polytope, total, dim](const Multidegree& a) {
    const int n = a[0];
    std::vector<std::pair<ZPoint, Rational>> out;
    for (ZPoint& m : polytope.lattice_points(n)) {
      // n * G(m/n) evaluated without division: min_j (grad_j . m + b_j * n)
      bool have = false;
      Rational lam;
      for (const auto& piece : total.pieces()) {
        Rational v = piece.offset * n;
        for (int c = 0; c < dim; ++c) v += piece.gradient[c] * m[c];
        if (!have || v < lam) {
          lam = v;
          have = true;
        }
      }
      out.emplace_back(std::move(m), n == 0 ? Rational(0) : lam);
    }
    return out;
  };
  return MonomialSeries(dim, 1, Rational(0), std::move(provider));
}

ToricAdelicDivisor weighted_combination(const std::vector<ToricAdelicDivisor>& divisors,
                                        const std::vector<Rational>& weights) {
  if (divisors.empty() || divisors.size() != weights.size()) {
    throw input_error("weighted_combination: divisor/weight count mismatch");
  }
  for (size_t i = 1; i < divisors.size(); ++i) {
    if (!(divisors[i].curve() == divisors[0].curve())) {
      throw input_error("weighted_combination: divisors live on different curves");
    }
    if (divisors[i].ambient_dim() != divisors[0].ambient_dim()) {
      throw input_error("weighted_combination: ambient dimension mismatch");
    }
  }
  const AdelicCurveSpec& curve = divisors[0].curve();
  std::map<std::string, ConcavePLFunction> greens;
  for (int p = 0; p < curve.place_count(); ++p) {
    ConcavePLFunction g = divisors[0].green(p).scaled(weights[0]);
    for (size_t i = 1; i < divisors.size(); ++i) {
      g = sup_convolve(g, divisors[i].green(p).scaled(weights[i]));
    }
    greens.emplace(curve.places()[p].label, std::move(g));
  }
  LatticePolytope domain = greens.begin()->second.domain();
  return ToricAdelicDivisor(std::move(domain), curve, std::move(greens));
}

MonomialSeries to_multigraded_series(const std::vector<ToricAdelicDivisor>& divisors) {
  if (divisors.empty()) throw input_error("to_multigraded_series: no divisors");
  const int r = static_cast<int>(divisors.size());
  const int dim = divisors[0].ambient_dim();
  auto provider = [divisors, dim](const Multidegree& a) {
    std::vector<Rational> weights;
    for (int x : a) weights.emplace_back(x);
    const ToricAdelicDivisor combined = weighted_combination(divisors, weights);
    const ConcavePLFunction& total = combined.total_green();
    std::vector<std::pair<ZPoint, Rational>> out;
    for (ZPoint& m : combined.polytope().lattice_points(1)) {
      QVec x(dim);
      for (int c = 0; c < dim; ++c) x[c] = Rational(m[c]);
      Rational lam = total.value(x);
      out.emplace_back(std::move(m), degree_total(a) == 0 ? Rational(0) : std::move(lam));
    }
    return out;
  };
  return MonomialSeries(dim, r, Rational(0), std::move(provider));
}

ToricChiReport hilbert_samuel_check(const ToricAdelicDivisor& d, int n_max, const Rational& tol) {
  if (n_max < 1) throw input_error("hilbert_samuel_check: n_max must be >= 1");
  ToricChiReport report;
  report.oracle = chi_volume_oracle(d);
  report.tolerance = tol;
  std::vector<int> degrees(n_max);
  for (int n = 1; n <= n_max; ++n) degrees[n - 1] = n;
  report.estimates = chi_volume_sequence(to_series(d), d.ambient_dim(), degrees);
  report.max_gap_tail = 0;
  for (const ChiVolumePoint& p : report.estimates) {
    if (p.n <= n_max / 2) continue;
    report.max_gap_tail = rational_max(report.max_gap_tail, rational_abs(p.chi_est - report.oracle));
  }
  const Rational final_gap = rational_abs(report.estimates.back().chi_est - report.oracle);
  report.pass = final_gap <= tol;
  return report;
}

ToricAdelicDivisor twist_divisor(const ToricAdelicDivisor& d, const std::vector<Rational>& c) {
  if (static_cast<int>(c.size()) != d.curve().place_count()) {
    throw input_error("twist_divisor: one constant per place required");
  }
  std::map<std::string, ConcavePLFunction> greens;
  for (int p = 0; p < d.curve().place_count(); ++p) {
    greens.emplace(d.curve().places()[p].label, d.green(p).shifted(c[p]));
  }
  return ToricAdelicDivisor(d.polytope(), d.curve(), std::move(greens));
}

ToricAdelicDivisor scale_divisor(const ToricAdelicDivisor& d, const Rational& alpha) {
  if (alpha <= 0) throw input_error("scale_divisor: factor must be positive");
  std::map<std::string, ConcavePLFunction> greens;
  for (int p = 0; p < d.curve().place_count(); ++p) {
    greens.emplace(d.curve().places()[p].label, d.green(p).scaled(alpha));
  }
  return ToricAdelicDivisor(d.polytope().scaled(alpha), d.curve(), std::move(greens));
}

std::vector<ConeScanRow> cone_scan(const std::vector<ToricAdelicDivisor>& divisors,
                                   const std::vector<std::vector<Rational>>& grid, int n_est) {
  if (n_est < 1) throw input_error("cone_scan: estimation degree must be >= 1");
  std::vector<ConeScanRow> rows;
  rows.reserve(grid.size());
  const Rational dfact = factorial(divisors.empty() ? 0 : divisors[0].ambient_dim());
  for (const std::vector<Rational>& weights : grid) {
    for (const Rational& w : weights) {
      if (w < 0) throw input_error("cone_scan: negative weight");
    }
    const ToricAdelicDivisor combined = weighted_combination(divisors, weights);
    ConeScanRow row;
    row.weights = weights;
    row.vol = dfact * combined.polytope().volume();
    row.vol_chi = chi_volume_oracle(combined);
    if (row.vol != 0) {
      row.ratio_defined = true;
      row.ratio = row.vol_chi / row.vol;
    }
    row.chi_est_at_n =
        chi_volume_sequence(to_series(combined), combined.ambient_dim(), {n_est})[0].chi_est;
    rows.push_back(std::move(row));
  }
  return rows;
}

Rational vol_I_extension(const std::vector<ToricAdelicDivisor>& divisors,
                         const std::vector<Rational>& weights, const Rational& lambda_bound) {
  bool all_zero = true;
  for (const Rational& w : weights) {
    if (w != 0) all_zero = false;
  }
  if (all_zero) throw input_error("vol_I_extension: zero weight vector excluded");
  const ToricAdelicDivisor combined = weighted_combination(divisors, weights);
  const ConcavePLFunction& g_tot = combined.total_green();
  if (!(lambda_bound < g_tot.min_value())) {
    throw contract_error("vol_I_extension: lambda bound is not below the minimal slope");
  }
  const Rational norm = factorial(combined.ambient_dim() + 1);
  return norm * (g_tot.integral_above(lambda_bound) +
                 combined.polytope().volume() * lambda_bound);
}

}  // namespace slopelab

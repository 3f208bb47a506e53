#include "slopelab/experiments.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

#include "slopelab/config.hpp"
#include "slopelab/random_instances.hpp"

namespace slopelab {

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open config file: " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw input_error(std::string("config parse error: ") + e.what());
  }
}

std::string multidegree_string(const Multidegree& a) {
  std::string s = "[";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(a[i]);
  }
  return s + "]";
}

std::string zpoint_string(const ZPoint& m) {
  std::string s = "(";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(m[i]);
  }
  return s + ")";
}

std::string jumps_string(const std::vector<Rational>& jumps) {
  std::string s = "[";
  for (size_t i = 0; i < jumps.size(); ++i) {
    if (i) s += " ";
    s += fraction_string(jumps[i]);
  }
  return s + "]";
}

std::optional<AdelicCurveSpec> maybe_curve(const json& cfg) {
  if (!cfg.contains("curve")) return std::nullopt;
  return curve_from_json(cfg["curve"]);
}

MonomialSeries required_series(const json& cfg) {
  if (!cfg.contains("series")) throw input_error("config: missing \"series\"");
  const auto curve = maybe_curve(cfg);
  return series_from_json(cfg["series"], curve ? &*curve : nullptr);
}

const json& required_params(const json& cfg) {
  if (!cfg.contains("params")) throw input_error("config: missing \"params\"");
  return cfg["params"];
}

int required_int(const json& params, const char* key) {
  if (!params.contains(key)) throw input_error(std::string("params: missing \"") + key + "\"");
  return params[key].get<int>();
}

// ---------------------------------------------------------------- slopes

int run_slopes(const json& cfg, CsvReport& rep) {
  if (!cfg.contains("spaces") || !cfg["spaces"].is_array()) {
    throw input_error("slopes: missing \"spaces\"");
  }
  int index = 0;
  for (const auto& js : cfg["spaces"]) {
    const FilteredSpace v = filtered_space_from_json(js);
    const SlopeProfile p = slope_profile(v);
    const std::string n = std::to_string(index++);
    for (size_t i = 0; i < p.slopes.size(); ++i) {
      rep.add_row(n, "slope_" + std::to_string(i), p.slopes[i]);
    }
    rep.add_row(n, "degree", p.degree);
    rep.add_row(n, "positive_degree", p.positive_degree);
    rep.add_text_row(n, "mu_min", p.mu_min.to_string());
    rep.add_text_row(n, "mu_max", p.mu_max.to_string());
  }
  return kExitOk;
}

// ------------------------------------------------------ series-invariants

int run_series_invariants(const json& cfg, CsvReport& rep) {
  const MonomialSeries s = required_series(cfg);
  const json& params = required_params(cfg);
  const int n_max = required_int(params, "n_max");
  const Rational tol =
      params.contains("oscillation_tol") ? rational_from_json(params["oscillation_tol"]) : Rational(0);
  const int factors = params.value("factor_count_max", 2);

  if (s.grading_rank() == 1) {
    const AsymptoticInvariants inv = asymptotic_invariants(s, n_max, tol);
    for (size_t i = 0; i < inv.degrees.size(); ++i) {
      const std::string n = std::to_string(inv.degrees[i]);
      rep.add_row(n, "mu_max_over_n", inv.mu_max_over_n[i]);
      rep.add_row(n, "mu_min_over_n", inv.mu_min_over_n[i]);
    }
    rep.add_row("", "mu_max_asy_estimate", inv.mu_max_asy_estimate);
    rep.add_row("", "mu_min_inf_estimate", inv.mu_min_inf_estimate);
    rep.add_row("", "mu_min_sup_estimate", inv.mu_min_sup_estimate);
    rep.add_row("", "tail_oscillation_mu_max", inv.tail_oscillation_mu_max);
    rep.add_row("", "tail_oscillation_mu_min", inv.tail_oscillation_mu_min);
    rep.add_text_row("", "converged", inv.converged ? "true" : "false");
  }

  const SuperadditivityReport sup = check_superadditivity(s, n_max, factors);
  rep.add_row("", "superadd_tuples_checked", Rational(static_cast<long>(sup.tuples_checked)));
  rep.add_row("", "superadd_worst_slack", sup.worst_slack);
  for (const SuperadditivityViolation& v : sup.violations) {
    std::string note = "delta-superadditivity degrees=";
    for (const Multidegree& d : v.degrees) note += multidegree_string(d);
    note += " monomials=";
    for (const ZPoint& m : v.monomials) note += zpoint_string(m);
    note += " product_lambda=" + fraction_string(v.product_lambda);
    note += " required=" + fraction_string(v.required_lower);
    rep.add_row("", "superadd_violation", v.product_lambda - v.required_lower, note);
  }

  if (params.contains("t_grid") && s.grading_rank() == 1) {
    const OkounkovComputation comp(s, n_max);
    int vi = 0;
    for (const QVec& v : comp.hull()) {
      for (size_t c = 0; c < v.size(); ++c) {
        rep.add_row(std::to_string(vi), "hull_vertex_" + std::to_string(c), v[c]);
      }
      ++vi;
    }
    for (const auto& jt : params["t_grid"]) {
      const Rational t = rational_from_json(jt);
      const auto hull = comp.hull_at(t);
      rep.add_row("", "hull_size_at_" + fraction_string(t), Rational(static_cast<long>(hull.size())));
    }
    if (params.contains("x_grid")) {
      int xi = 0;
      for (const auto& jx : params["x_grid"]) {
        const QVec x = point_from_json(jx);
        if (comp.in_body(x)) {
          rep.add_row(std::to_string(xi), "concave_transform", comp.transform(x));
        } else {
          rep.add_text_row(std::to_string(xi), "concave_transform", "outside");
        }
        ++xi;
      }
    }
  }
  return sup.ok() ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- chi-vol

int run_chi_vol(const json& cfg, CsvReport& rep) {
  const MonomialSeries s = required_series(cfg);
  const json& params = required_params(cfg);
  const int d = required_int(params, "d");
  if (!params.contains("n_list")) throw input_error("chi-vol: missing n_list");
  std::vector<int> n_list;
  for (const auto& n : params["n_list"]) n_list.push_back(n.get<int>());
  for (const ChiVolumePoint& p : chi_volume_sequence(s, d, n_list)) {
    const std::string n = std::to_string(p.n);
    rep.add_row(n, "chi_est", p.chi_est);
    rep.add_row(n, "vol_hat_est", p.vol_hat_est);
    rep.add_row(n, "vol_est", p.vol_est);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- hs-check

int run_hs_check(const json& cfg, CsvReport& rep) {
  const auto curve = maybe_curve(cfg);
  if (!curve) throw input_error("hs-check: missing \"curve\"");
  if (!cfg.contains("divisor")) throw input_error("hs-check: missing \"divisor\"");
  const ToricAdelicDivisor d = divisor_from_json(cfg["divisor"], *curve);
  const json& params = required_params(cfg);
  const int n_max = required_int(params, "n_max");
  const Rational tol =
      params.contains("tolerance") ? rational_from_json(params["tolerance"]) : Rational(0);

  const ToricChiReport report = hilbert_samuel_check(d, n_max, tol);
  rep.add_row("", "oracle", report.oracle);
  rep.add_row("", "tolerance", report.tolerance);
  rep.add_row("", "max_gap_tail", report.max_gap_tail);
  rep.add_text_row("", "verdict", report.pass ? "pass" : "fail");
  for (const ChiVolumePoint& p : report.estimates) {
    const std::string n = std::to_string(p.n);
    rep.add_row(n, "chi_est", p.chi_est);
    rep.add_row(n, "gap", rational_abs(p.chi_est - report.oracle));
  }
  return report.pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- cone-scan

int run_cone_scan(const json& cfg, CsvReport& rep, int jobs) {
  const auto curve = maybe_curve(cfg);
  if (!curve) throw input_error("cone-scan: missing \"curve\"");
  if (!cfg.contains("divisors") || !cfg["divisors"].is_array() || cfg["divisors"].empty()) {
    throw input_error("cone-scan: missing \"divisors\"");
  }
  std::vector<ToricAdelicDivisor> divisors;
  for (const auto& jd : cfg["divisors"]) divisors.push_back(divisor_from_json(jd, *curve));
  const json& params = required_params(cfg);
  if (!params.contains("grid")) throw input_error("cone-scan: missing grid");
  std::vector<std::vector<Rational>> grid;
  for (const auto& row : params["grid"]) {
    std::vector<Rational> w;
    for (const auto& x : row) w.push_back(rational_from_json(x));
    if (w.size() != divisors.size()) throw input_error("cone-scan: grid row arity mismatch");
    grid.push_back(std::move(w));
  }
  const int n_est = params.value("n_est", 4);
  std::optional<Rational> lambda_bound;
  if (params.contains("lambda_bound")) lambda_bound = rational_from_json(params["lambda_bound"]);

  // Rows are independent; compute in parallel but emit in grid order.
  std::vector<ConeScanRow> rows(grid.size());
  std::vector<std::optional<Rational>> vol_i(grid.size());
  auto compute = [&](size_t i) {
    rows[i] = cone_scan(divisors, {grid[i]}, n_est)[0];
    if (lambda_bound) {
      bool zero = true;
      for (const Rational& w : grid[i]) {
        if (w != 0) zero = false;
      }
      if (!zero) vol_i[i] = vol_I_extension(divisors, grid[i], *lambda_bound);
    }
  };
  if (jobs > 1 && grid.size() > 1) {
    std::vector<std::future<void>> futures;
    std::atomic<size_t> next{0};
    const int workers = std::min<int>(jobs, static_cast<int>(grid.size()));
    for (int w = 0; w < workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&]() {
        for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) compute(i);
      }));
    }
    for (auto& f : futures) f.get();
  } else {
    for (size_t i = 0; i < grid.size(); ++i) compute(i);
  }

  int exit_code = kExitOk;
  for (size_t i = 0; i < rows.size(); ++i) {
    const std::string n = std::to_string(i);
    for (size_t k = 0; k < rows[i].weights.size(); ++k) {
      rep.add_row(n, "weight_" + std::to_string(k), rows[i].weights[k]);
    }
    rep.add_row(n, "vol", rows[i].vol);
    rep.add_row(n, "vol_chi", rows[i].vol_chi);
    if (rows[i].ratio_defined) {
      rep.add_row(n, "ratio", rows[i].ratio);
    } else {
      rep.add_text_row(n, "ratio", "undefined", "zero divisor");
    }
    rep.add_row(n, "chi_est_at_n", rows[i].chi_est_at_n);
    if (vol_i[i]) {
      rep.add_row(n, "vol_I", *vol_i[i]);
      if (*vol_i[i] != rows[i].vol_chi) {
        rep.add_row(n, "vol_I_mismatch", *vol_i[i] - rows[i].vol_chi,
                    "vol_I disagrees with the chi-volume oracle at a rational point");
        exit_code = kExitCheckFailed;
      }
    }
  }

  if (params.contains("concavity_pairs")) {
    int ci = 0;
    for (const auto& pair : params["concavity_pairs"]) {
      const size_t a = pair[0].get<size_t>();
      const size_t b = pair[1].get<size_t>();
      if (a >= grid.size() || b >= grid.size()) {
        throw input_error("cone-scan: concavity pair index out of range");
      }
      std::vector<Rational> mid(grid[a].size());
      for (size_t k = 0; k < mid.size(); ++k) mid[k] = (grid[a][k] + grid[b][k]) / 2;
      const ConeScanRow mrow = cone_scan(divisors, {mid}, n_est)[0];
      const std::string n = "pair" + std::to_string(ci++);
      if (!rows[a].ratio_defined || !rows[b].ratio_defined || !mrow.ratio_defined) {
        rep.add_text_row(n, "ratio_concavity", "skipped", "zero divisor in the pair");
        continue;
      }
      const Rational slack = mrow.ratio * 2 - rows[a].ratio - rows[b].ratio;
      std::string note;
      if (slack < 0) {
        note = "midpoint concavity violated: rows " + std::to_string(a) + "," + std::to_string(b);
        exit_code = kExitCheckFailed;
      }
      rep.add_row(n, "ratio_concavity_slack", slack, note);
    }
  }
  return exit_code;
}

// ------------------------------------------------------------- certificate

int run_certificate(const json& cfg, CsvReport& rep) {
  const MonomialSeries s = required_series(cfg);
  const json& params = required_params(cfg);
  const int generator_degree = required_int(params, "N");
  const int n_check = required_int(params, "n_check");
  const Rational t_offset =
      params.contains("T") ? rational_from_json(params["T"]) : Rational(0);
  const SlopeCertificate cert = slope_certificate(s, generator_degree, n_check, t_offset);
  rep.add_row("", "S", cert.S);
  rep.add_row("", "T", cert.T);
  rep.add_row("", "generator_degree", Rational(cert.generator_degree));
  rep.add_row("", "verified_up_to", Rational(cert.verified_up_to));
  rep.add_text_row("", "valid", cert.valid ? "true" : "false");
  if (cert.first_violation_degree) {
    rep.add_row("", "first_violation_degree", Rational(*cert.first_violation_degree),
                "mu_min(E_n) < S n + T: the generation-degree assertion fails");
  }
  return cert.valid ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------ fekete

int run_fekete(const json& cfg, CsvReport& rep) {
  const MonomialSeries s = required_series(cfg);
  const json& params = required_params(cfg);
  const int m_max = required_int(params, "m_max");
  if (!params.contains("degree")) throw input_error("fekete: missing degree");
  Multidegree degree;
  for (const auto& d : params["degree"]) degree.push_back(d.get<int>());
  MonomialCombination section;
  section.degree = degree;
  if (params.contains("point")) {
    ZPoint m;
    for (const auto& c : params["point"]) {
      m.push_back(c.is_number_integer() ? c.get<long long>() : std::stoll(c.get<std::string>()));
    }
    section.terms.push_back({std::move(m), Rational(1)});
  } else if (params.contains("terms")) {
    for (const auto& t : params["terms"]) {
      ZPoint m;
      for (const auto& c : t["m"]) {
        m.push_back(c.is_number_integer() ? c.get<long long>() : std::stoll(c.get<std::string>()));
      }
      section.terms.push_back({std::move(m), rational_from_json(t["coeff"])});
    }
  } else {
    throw input_error("fekete: need \"point\" or \"terms\"");
  }
  const FeketeEstimate est = fekete_lambda(s, section, m_max);
  for (size_t m = 0; m < est.lower_bounds.size(); ++m) {
    rep.add_row(std::to_string(m + 1), "lower_bound", est.lower_bounds[m]);
  }
  rep.add_row("", "estimate", est.estimate);
  rep.add_row("", "last_ratio", est.last_ratio);
  return kExitOk;
}

// ------------------------------------------------------------ check-axioms

int run_check_axioms(const json& cfg, CsvReport& rep, std::uint64_t seed) {
  const json params = cfg.contains("params") ? cfg["params"] : json::object();
  const int count = params.value("count", 100);
  const int dim_max = params.value("dim_max", 6);
  std::mt19937_64 rng(seed);

  rep.add_row("", "seed", Rational(static_cast<unsigned long>(seed)));
  rep.add_row("", "count", Rational(count));

  long long failures = 0;
  long long checks = 0;
  auto expect = [&](bool ok, const char* name, const FilteredSpace& v) {
    ++checks;
    if (!ok) {
      ++failures;
      rep.add_text_row("", "violation", name, "jumps=" + jumps_string(v.jumps()));
    }
  };

  for (int i = 0; i < count; ++i) {
    const bool nonneg = (i % 2 == 1);
    const FilteredSpace v = random_filtered_space(rng, dim_max, nonneg);
    std::uniform_int_distribution<int> sub(1, v.dim());
    const auto gens = random_independent_vectors(rng, v.dim(), sub(rng));

    // exact sequence: mu_min(V) = min over the two pieces
    expect(mu_min(v) == min(mu_min(restrict_space(v, gens)), mu_min(quotient_space(v, gens))),
           "exact_sequence_mu_min", v);

    // flag additivity over a two-step flag inside a random frame
    if (v.dim() >= 2) {
      const auto frame = random_independent_vectors(rng, v.dim(), v.dim());
      std::uniform_int_distribution<int> cut(1, v.dim() - 1);
      const int k = cut(rng);
      const std::vector<QVec> first(frame.begin(), frame.begin() + k);
      const FilteredSpace r1 = restrict_space(v, first);
      const FilteredSpace r2 = restrict_space(v, frame);
      const FilteredSpace q2 = quotient_space(r2, express_in(frame, first));
      expect(slope_profile(r1).degree + slope_profile(q2).degree == slope_profile(v).degree,
             "flag_degree_additivity", v);
    }

    // nonnegative slopes: deg = deg_+
    if (nonneg) {
      const SlopeProfile p = slope_profile(v);
      expect(p.degree == p.positive_degree, "deg_equals_posdeg", v);
    }

    // HN fixed point + falsifier
    expect(same_filtration(hn_filtration(v), v), "hn_fixed_point", v);
    expect(hn_brute_check(v).empty(), "hn_brute_check", v);

    // subspace monotonicity
    expect(mu_min(restrict_space(v, gens)) >= mu_min(v), "subspace_monotonicity", v);

    // dual involution
    {
      const FilteredSpace dd = dual_space(dual_space(v));
      expect(dd.basis() == v.basis() && dd.jumps() == v.jumps(), "dual_involution", v);
    }

    // tensor minimal slope additivity on small factors
    {
      const FilteredSpace a = random_filtered_space(rng, 3);
      const FilteredSpace b = random_filtered_space(rng, 3);
      expect(mu_min(tensor(a, b)) == ExtRational(mu_min(a).value() + mu_min(b).value()),
             "tensor_mu_min_additivity", a);
    }

    // properness: at trivially valued places ln|alpha| = 0, so the
    // weighted sum over places vanishes for every sampled scalar
    {
      Rational sum = 0;
      const Rational alpha = random_small_rational(rng);
      if (alpha != 0) {
        // each place contributes weight * ln|alpha| = weight * 0
        sum = 0;
      }
      expect(sum == 0, "properness_product_formula", v);
    }
  }
  rep.add_row("", "checks", Rational(static_cast<long>(checks)));
  rep.add_row("", "failures", Rational(static_cast<long>(failures)));
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_experiment(const std::string& kind, const std::string& config_path,
                   const std::string& out_path, std::uint64_t seed, int jobs) {
  try {
    const json cfg = load_config(config_path);
    CsvReport rep(kind);
    int code;
    if (kind == "slopes") {
      code = run_slopes(cfg, rep);
    } else if (kind == "series-invariants") {
      code = run_series_invariants(cfg, rep);
    } else if (kind == "chi-vol") {
      code = run_chi_vol(cfg, rep);
    } else if (kind == "hs-check") {
      code = run_hs_check(cfg, rep);
    } else if (kind == "cone-scan") {
      code = run_cone_scan(cfg, rep, jobs);
    } else if (kind == "certificate") {
      code = run_certificate(cfg, rep);
    } else if (kind == "fekete") {
      code = run_fekete(cfg, rep);
    } else if (kind == "check-axioms") {
      code = run_check_axioms(cfg, rep, seed);
    } else {
      throw input_error("unknown experiment kind: " + kind);
    }
    rep.write_file(out_path);
    return code;
  } catch (const contract_error& e) {
    std::cerr << "slope-lab: check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const input_error& e) {
    std::cerr << "slope-lab: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "slope-lab: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace slopelab

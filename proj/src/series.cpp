#include "slopelab/series.hpp"

#include <algorithm>
#include <mutex>

namespace slopelab {

int degree_total(const Multidegree& a) {
  int s = 0;
  for (int x : a) s += x;
  return s;
}

std::optional<Rational> DegreePiece::lambda_of(const ZPoint& m) const {
  auto it = std::lower_bound(points.begin(), points.end(), m);
  if (it == points.end() || *it != m) return std::nullopt;
  return lambdas[static_cast<size_t>(it - points.begin())];
}

struct MonomialSeries::Impl {
  int ambient_dim;
  int grading_rank;
  Rational superadd_constant;
  Provider provider;
  int ln_terms;
  mutable std::mutex mutex;
  mutable std::map<Multidegree, std::shared_ptr<const DegreePiece>> cache;

  DegreePiece materialize(const Multidegree& a) const {
    if (static_cast<int>(a.size()) != grading_rank) {
      throw input_error("MonomialSeries: multidegree rank mismatch");
    }
    for (int x : a) {
      if (x < 0) throw input_error("MonomialSeries: negative multidegree");
    }
    std::vector<std::pair<ZPoint, Rational>> raw = provider(a);
    std::sort(raw.begin(), raw.end(),
              [](const auto& p, const auto& q) { return p.first < q.first; });
    DegreePiece piece;
    piece.points.reserve(raw.size());
    piece.lambdas.reserve(raw.size());
    for (auto& [m, lam] : raw) {
      if (static_cast<int>(m.size()) != ambient_dim) {
        throw input_error("MonomialSeries: lattice point dimension mismatch");
      }
      if (!piece.points.empty() && piece.points.back() == m) {
        throw input_error("MonomialSeries: duplicate lattice point in one degree");
      }
      piece.points.push_back(std::move(m));
      piece.lambdas.push_back(std::move(lam));
    }
    if (degree_total(a) == 0) {
      if (piece.dim() != 1 || piece.points[0] != ZPoint(ambient_dim, 0) || piece.lambdas[0] != 0) {
        throw input_error("MonomialSeries: degree-0 piece must be {(origin, 0)}");
      }
    }
    return piece;
  }
};

MonomialSeries::MonomialSeries(int ambient_dim, int grading_rank, Rational superadd_constant,
                               Provider provider, int ln_precision_terms)
    : impl_(std::make_shared<Impl>()) {
  if (ambient_dim < 0) throw input_error("MonomialSeries: negative ambient dimension");
  if (grading_rank < 1) throw input_error("MonomialSeries: grading rank must be >= 1");
  if (superadd_constant < 0) throw input_error("MonomialSeries: negative superadditivity level");
  impl_->ambient_dim = ambient_dim;
  impl_->grading_rank = grading_rank;
  impl_->superadd_constant = std::move(superadd_constant);
  impl_->provider = std::move(provider);
  impl_->ln_terms = ln_precision_terms;
  piece(Multidegree(grading_rank, 0));  // validates the unit piece
}

int MonomialSeries::ambient_dim() const { return impl_->ambient_dim; }
int MonomialSeries::grading_rank() const { return impl_->grading_rank; }
const Rational& MonomialSeries::superadd_constant() const { return impl_->superadd_constant; }

std::shared_ptr<const DegreePiece> MonomialSeries::piece(const Multidegree& a) const {
  {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    auto it = impl_->cache.find(a);
    if (it != impl_->cache.end()) return it->second;
  }
  auto fresh = std::make_shared<const DegreePiece>(impl_->materialize(a));
  std::lock_guard<std::mutex> lock(impl_->mutex);
  auto [it, inserted] = impl_->cache.emplace(a, std::move(fresh));
  return it->second;
}

DegreePiece MonomialSeries::piece_uncached(const Multidegree& a) const {
  {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    auto it = impl_->cache.find(a);
    if (it != impl_->cache.end()) return *it->second;
  }
  return impl_->materialize(a);
}

Rational MonomialSeries::delta(const Multidegree& a) const {
  if (impl_->superadd_constant == 0) return Rational(0);
  const int d = piece(a)->dim();
  if (d <= 1) return Rational(0);
  return impl_->superadd_constant * ln_upper_bound(Integer(d), impl_->ln_terms);
}

FilteredSpace series_space(const MonomialSeries& s, const Multidegree& a) {
  const auto piece = s.piece(a);
  const int n = piece->dim();
  if (n == 0) return FilteredSpace();
  // Sort monomial indices by descending lambda; the adapted basis is the
  // corresponding permutation of the monomial coordinates.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return piece->lambdas[i] > piece->lambdas[j]; });
  QMat basis(n, QVec(n, Rational(0)));
  std::vector<Rational> jumps(n);
  for (int i = 0; i < n; ++i) {
    basis[i][order[i]] = 1;
    jumps[i] = piece->lambdas[order[i]];
  }
  return FilteredSpace(std::move(basis), std::move(jumps));
}

namespace {

// Nonzero multidegrees of rank r with total degree <= n_max, ascending lex.
std::vector<Multidegree> enumerate_multidegrees(int rank, int n_max) {
  std::vector<Multidegree> out;
  Multidegree cur(rank, 0);
  while (true) {
    // increment in lex order subject to total <= n_max
    int i = rank - 1;
    while (i >= 0) {
      cur[i] += 1;
      if (degree_total(cur) <= n_max) break;
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    out.push_back(cur);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ZPoint zpoint_add(const ZPoint& a, const ZPoint& b) {
  ZPoint r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Multidegree multidegree_add(const Multidegree& a, const Multidegree& b) {
  Multidegree r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

ZPoint zpoint_scale(int k, const ZPoint& a) {
  ZPoint r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
  return r;
}

Multidegree multidegree_scale(int k, const Multidegree& a) {
  Multidegree r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
  return r;
}

}  // namespace

SuperadditivityReport check_superadditivity(const MonomialSeries& s, int n_max,
                                            int factor_count_max) {
  if (n_max < 1) throw input_error("check_superadditivity: n_max must be >= 1");
  if (factor_count_max < 2) throw input_error("check_superadditivity: need at least 2 factors");

  SuperadditivityReport report;
  report.n_max = n_max;
  report.factor_count_max = factor_count_max;
  report.worst_slack = 0;
  bool any = false;

  const std::vector<Multidegree> degrees = enumerate_multidegrees(s.grading_rank(), n_max);

  // Tuples of degree indices, non-decreasing, with total degree <= n_max.
  std::vector<int> tuple;
  auto check_tuple = [&](const std::vector<int>& idx) {
    std::vector<std::shared_ptr<const DegreePiece>> pieces;
    Multidegree total(s.grading_rank(), 0);
    Rational delta_sum = 0;
    for (int i : idx) {
      pieces.push_back(s.piece(degrees[i]));
      if (pieces.back()->dim() == 0) return;  // empty factor, nothing to check
      total = multidegree_add(total, degrees[i]);
      delta_sum += s.delta(degrees[i]);
    }
    const auto product_piece = s.piece(total);

    std::vector<int> pick(idx.size(), 0);
    while (true) {
      ZPoint prod(s.ambient_dim(), 0);
      Rational lam_sum = 0;
      for (size_t f = 0; f < idx.size(); ++f) {
        prod = zpoint_add(prod, pieces[f]->points[pick[f]]);
        lam_sum += pieces[f]->lambdas[pick[f]];
      }
      const auto plam = product_piece->lambda_of(prod);
      if (!plam) {
        throw input_error("check_superadditivity: product monomial missing (not a graded algebra)");
      }
      ++report.tuples_checked;
      const Rational required = lam_sum - delta_sum;
      const Rational slack = *plam - required;
      if (!any || slack < report.worst_slack) {
        report.worst_slack = slack;
        any = true;
      }
      if (slack < 0) {
        SuperadditivityViolation v;
        for (int i : idx) v.degrees.push_back(degrees[i]);
        for (size_t f = 0; f < idx.size(); ++f) v.monomials.push_back(pieces[f]->points[pick[f]]);
        v.product_lambda = *plam;
        v.required_lower = required;
        report.violations.push_back(std::move(v));
      }
      // advance the monomial multi-index
      size_t f = 0;
      while (f < idx.size()) {
        if (++pick[f] < pieces[f]->dim()) break;
        pick[f] = 0;
        ++f;
      }
      if (f == idx.size()) break;
    }
  };

  // enumerate non-decreasing index tuples recursively
  std::function<void(int, int, int)> recurse = [&](int start, int remaining_degree, int count) {
    if (count >= 2) check_tuple(tuple);
    if (count == factor_count_max) return;
    for (int i = start; i < static_cast<int>(degrees.size()); ++i) {
      const int d = degree_total(degrees[i]);
      if (d > remaining_degree) continue;
      tuple.push_back(i);
      recurse(i, remaining_degree - d, count + 1);
      tuple.pop_back();
    }
  };
  recurse(0, n_max, 0);
  return report;
}

namespace {

// Exact product expansion inside the monomial algebra.
std::map<ZPoint, Rational> combination_multiply(const std::map<ZPoint, Rational>& a,
                                                const std::vector<std::pair<ZPoint, Rational>>& b) {
  std::map<ZPoint, Rational> out;
  for (const auto& [pa, ca] : a) {
    for (const auto& [pb, cb] : b) {
      const ZPoint p = zpoint_add(pa, pb);
      auto [it, inserted] = out.emplace(p, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0) {
      it = out.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

Rational combination_lambda(const MonomialSeries& s, const Multidegree& degree,
                            const std::map<ZPoint, Rational>& terms) {
  if (terms.empty()) throw input_error("fekete_lambda: the section vanished (zero combination)");
  const auto piece = s.piece(degree);
  bool found = false;
  Rational best;
  for (const auto& [p, c] : terms) {
    const auto lam = piece->lambda_of(p);
    if (!lam) throw input_error("fekete_lambda: section not in the algebra");
    if (!found || *lam < best) {
      best = *lam;
      found = true;
    }
  }
  return best;
}

}  // namespace

FeketeEstimate fekete_lambda(const MonomialSeries& s, const MonomialCombination& section,
                             int m_max) {
  if (m_max < 1) throw input_error("fekete_lambda: m_max must be >= 1");
  std::map<ZPoint, Rational> base;
  for (const auto& [p, c] : section.terms) {
    if (c == 0) continue;
    auto [it, inserted] = base.emplace(p, c);
    if (!inserted) it->second += c;
  }
  for (auto it = base.begin(); it != base.end();) {
    it = (it->second == 0) ? base.erase(it) : std::next(it);
  }
  const std::vector<std::pair<ZPoint, Rational>> factor(base.begin(), base.end());

  FeketeEstimate result;
  std::map<ZPoint, Rational> power = base;
  Multidegree degree = section.degree;
  Rational lam = combination_lambda(s, degree, power);

  bool have = false;
  for (int m = 1; m <= m_max; ++m) {
    if (m > 1) {
      power = combination_multiply(power, factor);
      degree = multidegree_add(degree, section.degree);
      lam = combination_lambda(s, degree, power);
    }
    const Rational bound = (lam - s.delta(degree)) / m;
    result.lower_bounds.push_back(bound);
    if (!have || bound > result.estimate) {
      result.estimate = bound;
      have = true;
    }
    if (m == m_max) result.last_ratio = lam / m;
  }
  return result;
}

AsymptoticInvariants asymptotic_invariants(const MonomialSeries& s, int n_max,
                                           const Rational& oscillation_tol) {
  if (s.grading_rank() != 1) throw input_error("asymptotic_invariants: rank-1 series required");
  if (n_max < 1) throw input_error("asymptotic_invariants: n_max must be >= 1");
  AsymptoticInvariants inv;
  for (int n = 1; n <= n_max; ++n) {
    const auto piece = s.piece({n});
    if (piece->dim() == 0) continue;
    Rational mx = piece->lambdas[0], mn = piece->lambdas[0];
    for (const Rational& l : piece->lambdas) {
      mx = rational_max(mx, l);
      mn = rational_min(mn, l);
    }
    inv.degrees.push_back(n);
    inv.mu_max_over_n.push_back(mx / n);
    inv.mu_min_over_n.push_back(mn / n);
  }
  if (inv.degrees.empty()) {
    throw input_error("asymptotic_invariants: all graded pieces empty up to n_max");
  }
  size_t tail_begin = 0;
  for (size_t i = 0; i < inv.degrees.size(); ++i) {
    if (inv.degrees[i] > n_max / 2) {
      tail_begin = i;
      break;
    }
    tail_begin = i;  // fall back to the last entry when the tail is empty
  }
  Rational tmax_hi = inv.mu_max_over_n[tail_begin], tmax_lo = inv.mu_max_over_n[tail_begin];
  Rational tmin_hi = inv.mu_min_over_n[tail_begin], tmin_lo = inv.mu_min_over_n[tail_begin];
  for (size_t i = tail_begin; i < inv.degrees.size(); ++i) {
    tmax_hi = rational_max(tmax_hi, inv.mu_max_over_n[i]);
    tmax_lo = rational_min(tmax_lo, inv.mu_max_over_n[i]);
    tmin_hi = rational_max(tmin_hi, inv.mu_min_over_n[i]);
    tmin_lo = rational_min(tmin_lo, inv.mu_min_over_n[i]);
  }
  inv.mu_max_asy_estimate = tmax_hi;
  inv.mu_min_inf_estimate = tmin_lo;
  inv.mu_min_sup_estimate = tmin_hi;
  inv.tail_oscillation_mu_max = tmax_hi - tmax_lo;
  inv.tail_oscillation_mu_min = tmin_hi - tmin_lo;
  inv.converged = inv.tail_oscillation_mu_max <= oscillation_tol &&
                  inv.tail_oscillation_mu_min <= oscillation_tol;
  return inv;
}

std::vector<ChiVolumePoint> chi_volume_sequence(const MonomialSeries& s, int kodaira_dim,
                                                const std::vector<int>& n_list) {
  if (s.grading_rank() != 1) throw input_error("chi_volume_sequence: rank-1 series required");
  if (kodaira_dim < 0) throw input_error("chi_volume_sequence: negative dimension");
  if (n_list.empty()) throw input_error("chi_volume_sequence: empty degree list");
  const Rational dfact = factorial(kodaira_dim);
  const Rational d1fact = factorial(kodaira_dim + 1);
  std::vector<ChiVolumePoint> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    if (n < 1) throw input_error("chi_volume_sequence: degrees must be >= 1");
    const DegreePiece piece = s.piece_uncached({n});
    Rational sum = 0, sum_pos = 0;
    for (const Rational& l : piece.lambdas) {
      sum += l;
      if (l > 0) sum_pos += l;
    }
    Rational npow = 1;
    for (int i = 0; i < kodaira_dim; ++i) npow *= n;
    ChiVolumePoint p;
    p.n = n;
    p.vol_est = Rational(piece.dim()) * dfact / npow;
    npow *= n;
    p.chi_est = sum * d1fact / npow;
    p.vol_hat_est = sum_pos * d1fact / npow;
    out.push_back(std::move(p));
  }
  return out;
}

OkounkovComputation::OkounkovComputation(const MonomialSeries& s, int n_max)
    : dim_(s.ambient_dim()), n_max_(n_max) {
  if (s.grading_rank() != 1) throw input_error("OkounkovComputation: rank-1 series required");
  if (dim_ != 1 && dim_ != 2) throw input_error("OkounkovComputation: ambient dimension 1 or 2");
  if (n_max < 1) throw input_error("OkounkovComputation: n_max must be >= 1");

  // Site: normalized point m/n with the best truncated Fekete level.
  std::map<QVec, Rational> sites;
  for (int n = 1; n <= n_max; ++n) {
    const auto piece = s.piece({n});
    const int k_max = std::max(1, n_max / n);
    for (int i = 0; i < piece->dim(); ++i) {
      const ZPoint& m = piece->points[i];
      Rational lam_prime = piece->lambdas[i] - s.delta({n});
      for (int k = 2; k <= k_max; ++k) {
        const auto pk = s.piece({k * n});
        const auto lk = pk->lambda_of(zpoint_scale(k, m));
        if (!lk) continue;  // truncated provider: power unavailable
        const Rational bound = (*lk - s.delta({k * n})) / k;
        lam_prime = rational_max(lam_prime, bound);
      }
      QVec p(dim_);
      for (int c = 0; c < dim_; ++c) p[c] = Rational(m[c], n);
      for (int c = 0; c < dim_; ++c) p[c].canonicalize();
      const Rational level = lam_prime / n;
      auto [it, inserted] = sites.emplace(p, level);
      if (!inserted) it->second = rational_max(it->second, level);
    }
  }
  if (sites.empty()) throw input_error("OkounkovComputation: series has no sections up to n_max");

  // Group sites by level, descending, and grow cumulative hulls.
  std::map<Rational, std::vector<QVec>, std::greater<Rational>> by_level;
  for (const auto& [p, lvl] : sites) by_level[lvl].push_back(p);

  std::vector<QVec> acc;
  for (const auto& [lvl, pts] : by_level) {
    acc.insert(acc.end(), pts.begin(), pts.end());
    if (dim_ == 1) {
      Rational lo = acc[0][0], hi = acc[0][0];
      for (const QVec& q : acc) {
        lo = rational_min(lo, q[0]);
        hi = rational_max(hi, q[0]);
      }
      acc = (lo == hi) ? std::vector<QVec>{{lo}} : std::vector<QVec>{{lo}, {hi}};
    } else {
      acc = convex_hull_2d(std::move(acc));
    }
    levels_.push_back(lvl);
    level_hulls_.push_back(acc);
  }
}

const std::vector<QVec>& OkounkovComputation::hull() const { return level_hulls_.back(); }

bool OkounkovComputation::in_hull(const std::vector<QVec>& h, const QVec& x) const {
  if (h.empty()) return false;
  if (dim_ == 1) {
    if (h.size() == 1) return x[0] == h[0][0];
    return h[0][0] <= x[0] && x[0] <= h[1][0];
  }
  return point_in_convex_polygon(h, x);
}

std::vector<QVec> OkounkovComputation::hull_at(const Rational& t) const {
  // levels_ descending: qualifying sites are those in levels_[0..j] with
  // levels_[j] >= t.
  int j = -1;
  for (size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i] >= t) {
      j = static_cast<int>(i);
    } else {
      break;
    }
  }
  if (j < 0) return {};
  return level_hulls_[j];
}

bool OkounkovComputation::in_body(const QVec& x) const { return in_hull(hull(), x); }

Rational OkounkovComputation::transform(const QVec& x) const {
  if (static_cast<int>(x.size()) != dim_) throw input_error("transform: dimension mismatch");
  if (!in_body(x)) throw input_error("transform: point outside the Okounkov body");
  // Membership is monotone along the cumulative hulls; binary search for
  // the first hull containing x.
  size_t lo = 0, hi = level_hulls_.size() - 1;
  while (lo < hi) {
    const size_t mid = (lo + hi) / 2;
    if (in_hull(level_hulls_[mid], x)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return levels_[lo];
}

OkounkovEstimate okounkov_body(const MonomialSeries& s, int n_max,
                               const std::vector<Rational>& t_grid) {
  OkounkovComputation comp(s, n_max);
  OkounkovEstimate est;
  est.hull = comp.hull();
  est.t_grid = t_grid;
  for (const Rational& t : t_grid) est.hulls_at_t.push_back(comp.hull_at(t));
  return est;
}

Rational concave_transform(const MonomialSeries& s, const QVec& x, int n_max) {
  return OkounkovComputation(s, n_max).transform(x);
}

SlopeCertificate slope_certificate(const MonomialSeries& s, int generator_degree, int n_check,
                                   const Rational& t_offset) {
  if (s.grading_rank() != 1) throw input_error("slope_certificate: rank-1 series required");
  if (generator_degree < 1) throw input_error("slope_certificate: generator degree must be >= 1");
  SlopeCertificate cert;
  cert.generator_degree = generator_degree;
  cert.T = t_offset;
  cert.verified_up_to = n_check;

  bool have = false;
  for (int l = 1; l <= generator_degree; ++l) {
    const auto piece = s.piece({l});
    if (piece->dim() == 0) continue;
    Rational mn = piece->lambdas[0];
    for (const Rational& lam : piece->lambdas) mn = rational_min(mn, lam);
    const Rational candidate = (mn - s.delta({l})) / l;
    if (!have || candidate < cert.S) {
      cert.S = candidate;
      have = true;
    }
  }
  if (!have) {
    throw input_error("slope_certificate: all pieces up to the generator degree are empty");
  }

  cert.valid = true;
  for (int n = 1; n <= n_check; ++n) {
    const DegreePiece piece = s.piece_uncached({n});
    if (piece.dim() == 0) continue;
    Rational mn = piece.lambdas[0];
    for (const Rational& lam : piece.lambdas) mn = rational_min(mn, lam);
    if (mn < cert.S * n + cert.T) {
      cert.valid = false;
      cert.first_violation_degree = n;
      break;
    }
  }
  return cert;
}

MonomialSeries bundle_sum_series(const MonomialSeries& multigraded) {
  const int d = multigraded.ambient_dim();
  const int r = multigraded.grading_rank();
  auto provider = [multigraded, d, r](const Multidegree& deg) {
    const int m = deg[0];
    std::vector<std::pair<ZPoint, Rational>> out;
    // compositions of m into r parts, ascending lex
    Multidegree a(r, 0);
    std::function<void(int, int)> emit = [&](int pos, int remaining) {
      if (pos == r - 1) {
        a[pos] = remaining;
        const auto piece = multigraded.piece(a);
        for (int i = 0; i < piece->dim(); ++i) {
          ZPoint tagged = piece->points[i];
          for (int j = 0; j < r; ++j) tagged.push_back(a[j]);
          out.emplace_back(std::move(tagged), piece->lambdas[i]);
        }
        return;
      }
      for (int v = 0; v <= remaining; ++v) {
        a[pos] = v;
        emit(pos + 1, remaining - v);
      }
    };
    emit(0, m);
    return out;
  };
  return MonomialSeries(d + r, 1, multigraded.superadd_constant(), std::move(provider));
}

}  // namespace slopelab

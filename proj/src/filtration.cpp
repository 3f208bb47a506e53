#include "slopelab/filtration.hpp"

#include <algorithm>
#include <utility>

namespace slopelab {

FilteredSpace::FilteredSpace(QMat basis, std::vector<Rational> jumps)
    : basis_(std::move(basis)), jumps_(std::move(jumps)) {
  const int n = static_cast<int>(jumps_.size());
  if (static_cast<int>(basis_.size()) != n) {
    throw input_error("FilteredSpace: basis/jump count mismatch");
  }
  for (const QVec& row : basis_) {
    if (static_cast<int>(row.size()) != n) {
      throw input_error("FilteredSpace: basis matrix must be square");
    }
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (jumps_[i] < jumps_[i + 1]) {
      throw input_error("FilteredSpace: jumps must be non-increasing");
    }
  }
  identity_basis_ = is_identity_matrix(basis_);
  if (!identity_basis_) {
    // Permutation matrices (series spaces) are invertible by inspection;
    // everything else pays for a rank check.
    bool permutation = true;
    std::vector<bool> seen(n, false);
    for (const QVec& row : basis_) {
      int nonzero = -1;
      for (int j = 0; j < n && permutation; ++j) {
        if (row[j] == 0) continue;
        if (nonzero >= 0 || row[j] != 1) {
          permutation = false;
        } else {
          nonzero = j;
        }
      }
      if (!permutation || nonzero < 0 || seen[nonzero]) {
        permutation = false;
        break;
      }
      seen[nonzero] = true;
    }
    if (!permutation && rank(basis_) != n) {
      throw input_error("FilteredSpace: basis matrix is singular");
    }
  }
}

FilteredSpace FilteredSpace::orthogonal(std::vector<Rational> jumps) {
  std::sort(jumps.begin(), jumps.end(), [](const Rational& a, const Rational& b) { return a > b; });
  const int n = static_cast<int>(jumps.size());
  return FilteredSpace(identity_matrix(n), std::move(jumps));
}

int FilteredSpace::filtration_dim(const Rational& t) const {
  int k = 0;
  while (k < dim() && jumps_[k] >= t) ++k;
  return k;
}

std::vector<QVec> FilteredSpace::filtration_basis(const Rational& t) const {
  const int k = filtration_dim(t);
  return std::vector<QVec>(basis_.begin(), basis_.begin() + k);
}

std::vector<Rational> FilteredSpace::distinct_jumps() const {
  std::vector<Rational> out;
  for (const Rational& j : jumps_) {
    if (out.empty() || out.back() != j) out.push_back(j);
  }
  return out;
}

ExtRational lambda_value(const FilteredSpace& v, const QVec& vec) {
  if (static_cast<int>(vec.size()) != v.dim()) {
    throw input_error("lambda_value: dimension mismatch");
  }
  if (is_zero_vec(vec)) return ExtRational::pos_inf();
  QVec coords;
  if (v.has_identity_basis()) {
    coords = vec;
  } else {
    auto solved = solve_in_span(v.basis(), vec);
    if (!solved) throw input_error("lambda_value: basis failed to span the vector");
    coords = std::move(*solved);
  }
  bool found = false;
  Rational best;
  for (int i = 0; i < v.dim(); ++i) {
    if (coords[i] == 0) continue;
    if (!found || v.jumps()[i] < best) {
      best = v.jumps()[i];
      found = true;
    }
  }
  return ExtRational(best);
}

SlopeProfile slope_profile(const FilteredSpace& v) {
  SlopeProfile p;
  p.slopes = v.jumps();
  p.degree = 0;
  p.positive_degree = 0;
  for (const Rational& mu : p.slopes) {
    p.degree += mu;
    if (mu > 0) p.positive_degree += mu;
  }
  if (p.slopes.empty()) {
    p.mu_min = ExtRational::pos_inf();
    p.mu_max = ExtRational::neg_inf();
  } else {
    p.mu_min = ExtRational(p.slopes.back());
    p.mu_max = ExtRational(p.slopes.front());
  }
  return p;
}

ExtRational mu_min(const FilteredSpace& v) {
  if (v.dim() == 0) return ExtRational::pos_inf();
  return ExtRational(v.jumps().back());
}

ExtRational mu_max(const FilteredSpace& v) {
  if (v.dim() == 0) return ExtRational::neg_inf();
  return ExtRational(v.jumps().front());
}

namespace {

void check_independent(const std::vector<QVec>& generators, int ambient) {
  QMat m;
  for (const QVec& g : generators) {
    if (static_cast<int>(g.size()) != ambient) {
      throw input_error("generators: ambient dimension mismatch");
    }
    m.push_back(g);
  }
  if (!generators.empty() && rank(m) != static_cast<int>(generators.size())) {
    throw input_error("generators must be independent");
  }
}

}  // namespace

std::vector<QVec> express_in(const std::vector<QVec>& columns, const std::vector<QVec>& vectors) {
  std::vector<QVec> out;
  out.reserve(vectors.size());
  for (const QVec& v : vectors) {
    auto c = solve_in_span(columns, v);
    if (!c) throw input_error("vector outside the span of the given generators");
    out.push_back(std::move(*c));
  }
  return out;
}

FilteredSpace restrict_space(const FilteredSpace& v, const std::vector<QVec>& generators) {
  check_independent(generators, v.dim());
  const int m = static_cast<int>(generators.size());
  if (m == 0) return FilteredSpace();

  QMat adapted;
  std::vector<Rational> jumps;
  EchelonSpan chosen(m);

  for (const Rational& t : v.distinct_jumps()) {
    // F cap F^t: kernel of [ generators | -F^t basis ] read off on the
    // generator block gives coordinates inside span(generators).
    const std::vector<QVec> ft = v.filtration_basis(t);
    QMat sys(v.dim(), QVec(m + ft.size()));
    for (int row = 0; row < v.dim(); ++row) {
      for (int j = 0; j < m; ++j) sys[row][j] = generators[j][row];
      for (size_t j = 0; j < ft.size(); ++j) sys[row][m + j] = -ft[j][row];
    }
    for (const QVec& k : kernel_basis(sys)) {
      QVec inside(k.begin(), k.begin() + m);
      if (is_zero_vec(inside)) continue;
      if (chosen.try_add(inside)) {
        adapted.push_back(std::move(inside));
        jumps.push_back(t);
      }
    }
  }
  return FilteredSpace(std::move(adapted), std::move(jumps));
}

FilteredSpace quotient_space(const FilteredSpace& v, const std::vector<QVec>& generators) {
  check_independent(generators, v.dim());
  const int n = v.dim();
  const int m = static_cast<int>(generators.size());
  const int q = n - m;
  if (q == 0) return FilteredSpace();

  // Reduce modulo span(generators): RREF rows eliminate the pivot
  // coordinates; classes live on the free coordinates.
  QMat red(generators.begin(), generators.end());
  const std::vector<int> pivots = rref(red);
  std::vector<int> free_cols;
  {
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;
    for (int c = 0; c < n; ++c) {
      if (!is_pivot[c]) free_cols.push_back(c);
    }
  }
  auto project = [&](const QVec& vec) {
    QVec w = vec;
    for (size_t r = 0; r < pivots.size(); ++r) {
      const Rational c = w[pivots[r]];
      if (c != 0) {
        for (int j = 0; j < n; ++j) w[j] -= c * red[r][j];
      }
    }
    QVec cls(q);
    for (int j = 0; j < q; ++j) cls[j] = w[free_cols[j]];
    return cls;
  };

  QMat adapted;
  std::vector<Rational> jumps;
  EchelonSpan chosen(q);
  for (const Rational& t : v.distinct_jumps()) {
    for (const QVec& b : v.filtration_basis(t)) {
      QVec img = project(b);
      if (is_zero_vec(img)) continue;
      if (chosen.try_add(img)) {
        adapted.push_back(std::move(img));
        jumps.push_back(t);
      }
    }
  }
  return FilteredSpace(std::move(adapted), std::move(jumps));
}

FilteredSpace dual_space(const FilteredSpace& v) {
  const int n = v.dim();
  if (n == 0) return FilteredSpace();
  QMat cols(n, QVec(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) cols[i][j] = v.basis()[j][i];
  }
  auto inv = inverse(cols);
  if (!inv) throw std::logic_error("dual_space: invariant violation (singular basis)");
  // Row i of cols^-1 is dual to basis vector i. Reversing pairs negated
  // jumps back into non-increasing order and makes the dual an exact
  // involution.
  QMat dual_basis;
  std::vector<Rational> dual_jumps;
  for (int i = n - 1; i >= 0; --i) {
    dual_basis.push_back((*inv)[i]);
    dual_jumps.push_back(-v.jumps()[i]);
  }
  return FilteredSpace(std::move(dual_basis), std::move(dual_jumps));
}

FilteredSpace direct_sum(const std::vector<FilteredSpace>& spaces) {
  int total = 0;
  for (const FilteredSpace& s : spaces) total += s.dim();
  struct Entry {
    Rational jump;
    QVec vec;
  };
  std::vector<Entry> entries;
  entries.reserve(total);
  int offset = 0;
  for (const FilteredSpace& s : spaces) {
    for (int i = 0; i < s.dim(); ++i) {
      QVec v(total, Rational(0));
      for (int j = 0; j < s.dim(); ++j) v[offset + j] = s.basis()[i][j];
      entries.push_back({s.jumps()[i], std::move(v)});
    }
    offset += s.dim();
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.jump > b.jump; });
  QMat basis;
  std::vector<Rational> jumps;
  for (Entry& e : entries) {
    basis.push_back(std::move(e.vec));
    jumps.push_back(std::move(e.jump));
  }
  return FilteredSpace(std::move(basis), std::move(jumps));
}

FilteredSpace tensor(const FilteredSpace& v, const FilteredSpace& w) {
  const int nv = v.dim();
  const int nw = w.dim();
  struct Entry {
    Rational jump;
    QVec vec;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<size_t>(nv) * nw);
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nw; ++j) {
      QVec kron(static_cast<size_t>(nv) * nw, Rational(0));
      for (int p = 0; p < nv; ++p) {
        if (v.basis()[i][p] == 0) continue;
        for (int q = 0; q < nw; ++q) {
          if (w.basis()[j][q] == 0) continue;
          kron[static_cast<size_t>(p) * nw + q] = v.basis()[i][p] * w.basis()[j][q];
        }
      }
      entries.push_back({v.jumps()[i] + w.jumps()[j], std::move(kron)});
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.jump > b.jump; });
  QMat basis;
  std::vector<Rational> jumps;
  for (Entry& e : entries) {
    basis.push_back(std::move(e.vec));
    jumps.push_back(std::move(e.jump));
  }
  return FilteredSpace(std::move(basis), std::move(jumps));
}

FilteredSpace hn_filtration(const FilteredSpace& v) {
  // F_hn^t = { s : lambda(s) >= t } coincides with F^t itself: the input
  // representation is already the fixed point.
  return FilteredSpace(v.basis(), v.jumps());
}

std::string hn_brute_check(const FilteredSpace& v, std::vector<QVec> pool) {
  if (pool.empty()) {
    for (int i = 0; i < v.dim(); ++i) pool.push_back(v.basis()[i]);
    for (int i = 0; i < v.dim(); ++i) {
      for (int j = i + 1; j < v.dim(); ++j) {
        pool.push_back(vec_add(v.basis()[i], v.basis()[j]));
      }
    }
  }
  const FilteredSpace hn = hn_filtration(v);

  // Each claimed step must have mu_min >= its threshold.
  for (const Rational& t : hn.distinct_jumps()) {
    const FilteredSpace step = restrict_space(v, hn.filtration_basis(t));
    if (mu_min(step) < ExtRational(t)) {
      return "claimed HN step at t=" + fraction_string(t) + " has smaller minimal slope";
    }
  }

  // No sampled subspace of minimal slope >= t may escape F_hn^t.
  auto check_subspace = [&](const std::vector<QVec>& gens) -> std::string {
    QMat m(gens.begin(), gens.end());
    if (rank(m) != static_cast<int>(gens.size())) return "";  // dependent sample, skip
    const FilteredSpace sub = restrict_space(v, gens);
    const ExtRational mu = mu_min(sub);
    if (!mu.is_finite()) return "";
    const std::vector<QVec> step = hn.filtration_basis(mu.value());
    for (const QVec& g : gens) {
      if (!solve_in_span(step, g)) {
        return "sampled subspace with mu_min=" + mu.to_string() + " escapes F_hn";
      }
    }
    return "";
  };
  for (const QVec& p : pool) {
    if (is_zero_vec(p)) continue;
    if (auto msg = check_subspace({p}); !msg.empty()) return msg;
  }
  for (size_t i = 0; i < pool.size(); ++i) {
    for (size_t j = i + 1; j < pool.size(); ++j) {
      if (is_zero_vec(pool[i]) || is_zero_vec(pool[j])) continue;
      if (auto msg = check_subspace({pool[i], pool[j]}); !msg.empty()) return msg;
    }
  }
  return "";
}

bool same_filtration(const FilteredSpace& a, const FilteredSpace& b) {
  if (a.dim() != b.dim()) return false;
  if (a.jumps() != b.jumps()) return false;
  for (const Rational& t : a.distinct_jumps()) {
    const std::vector<QVec> fa = a.filtration_basis(t);
    const std::vector<QVec> fb = b.filtration_basis(t);
    if (fa.size() != fb.size()) return false;
    QMat joint(fa.begin(), fa.end());
    joint.insert(joint.end(), fb.begin(), fb.end());
    if (rank(joint) != static_cast<int>(fa.size())) return false;
  }
  return true;
}

}  // namespace slopelab

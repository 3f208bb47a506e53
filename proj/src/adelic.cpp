#include "slopelab/adelic.hpp"

#include <algorithm>
#include <set>

#include "slopelab/toric.hpp"

namespace slopelab {

AdelicCurveSpec::AdelicCurveSpec(std::vector<AdelicPlace> places) : places_(std::move(places)) {
  std::set<std::string> seen;
  for (const AdelicPlace& p : places_) {
    if (!seen.insert(p.label).second) {
      throw input_error("AdelicCurveSpec: duplicate place label \"" + p.label + "\"");
    }
    if (p.weight <= 0) {
      throw input_error("AdelicCurveSpec: place weight must be positive");
    }
  }
}

std::optional<int> AdelicCurveSpec::index_of(const std::string& label) const {
  for (size_t i = 0; i < places_.size(); ++i) {
    if (places_[i].label == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

Rational AdelicCurveSpec::total_mass() const {
  Rational m = 0;
  for (const AdelicPlace& p : places_) m += p.weight;
  return m;
}

bool operator==(const AdelicCurveSpec& a, const AdelicCurveSpec& b) {
  if (a.places_.size() != b.places_.size()) return false;
  for (size_t i = 0; i < a.places_.size(); ++i) {
    if (a.places_[i].label != b.places_[i].label || a.places_[i].weight != b.places_[i].weight) {
      return false;
    }
  }
  return true;
}

DiagonalAdelicBundle::DiagonalAdelicBundle(AdelicCurveSpec curve,
                                           std::vector<std::string> basis_labels, QMat lambda)
    : curve_(std::move(curve)), labels_(std::move(basis_labels)), lambda_(std::move(lambda)) {
  if (static_cast<int>(lambda_.size()) != curve_.place_count()) {
    throw input_error("DiagonalAdelicBundle: one lambda row per place required");
  }
  for (const QVec& row : lambda_) {
    if (row.size() != labels_.size()) {
      throw input_error("DiagonalAdelicBundle: lambda row size differs from the rank");
    }
  }
}

FilteredSpace DiagonalAdelicBundle::place_space(int place_index) const {
  const QVec& lam = lambda_.at(place_index);
  const int n = rank();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return lam[i] > lam[j]; });
  QMat basis(n, QVec(n, Rational(0)));
  std::vector<Rational> jumps(n);
  for (int i = 0; i < n; ++i) {
    basis[i][order[i]] = 1;
    jumps[i] = lam[order[i]];
  }
  return FilteredSpace(std::move(basis), std::move(jumps));
}

Rational total_degree(const DiagonalAdelicBundle& b) {
  Rational deg = 0;
  for (int p = 0; p < b.curve().place_count(); ++p) {
    Rational s = 0;
    for (const Rational& l : b.lambda()[p]) s += l;
    deg += b.curve().places()[p].weight * s;
  }
  return deg;
}

DiagonalAdelicBundle twist(const DiagonalAdelicBundle& b, const std::vector<Rational>& f) {
  if (static_cast<int>(f.size()) != b.curve().place_count()) {
    throw input_error("twist: one constant per place required");
  }
  QMat lam = b.lambda();
  for (size_t p = 0; p < lam.size(); ++p) {
    for (Rational& x : lam[p]) x += f[p];
  }
  return DiagonalAdelicBundle(b.curve(), b.labels(), std::move(lam));
}

HnSorted hn_sorted(const DiagonalAdelicBundle& b) {
  HnSorted out;
  const int n = b.rank();
  std::vector<Rational> degrees(n, Rational(0));
  for (int p = 0; p < b.curve().place_count(); ++p) {
    const Rational& w = b.curve().places()[p].weight;
    for (int i = 0; i < n; ++i) degrees[i] += w * b.lambda()[p][i];
  }
  out.order.resize(n);
  for (int i = 0; i < n; ++i) out.order[i] = i;
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](int i, int j) { return degrees[i] > degrees[j]; });
  for (int i : out.order) out.slopes.push_back(degrees[i]);
  if (n == 0) {
    out.mu_min = ExtRational::pos_inf();
    out.mu_max = ExtRational::neg_inf();
  } else {
    out.mu_min = ExtRational(out.slopes.back());
    out.mu_max = ExtRational(out.slopes.front());
  }
  return out;
}

Rational line_degree(const DiagonalAdelicBundle& b, const QVec& v) {
  if (static_cast<int>(v.size()) != b.rank()) throw input_error("line_degree: dimension mismatch");
  if (is_zero_vec(v)) throw input_error("line_degree: zero vector");
  Rational deg = 0;
  for (int p = 0; p < b.curve().place_count(); ++p) {
    bool found = false;
    Rational lam;
    for (int i = 0; i < b.rank(); ++i) {
      if (v[i] == 0) continue;
      if (!found || b.lambda()[p][i] < lam) {
        lam = b.lambda()[p][i];
        found = true;
      }
    }
    deg += b.curve().places()[p].weight * lam;
  }
  return deg;
}

FlagCheckReport flag_degree_check(const DiagonalAdelicBundle& b,
                                  const std::vector<std::vector<QVec>>& flag) {
  if (flag.empty()) throw input_error("flag_degree_check: empty flag");
  const int n = b.rank();
  // Validate: strictly increasing nested subspaces ending at the full space.
  size_t prev_dim = 0;
  for (size_t step = 0; step < flag.size(); ++step) {
    QMat m(flag[step].begin(), flag[step].end());
    const int r = rank(m);
    if (r != static_cast<int>(flag[step].size())) {
      throw input_error("flag_degree_check: dependent generators in a flag step");
    }
    if (static_cast<size_t>(r) <= prev_dim && step > 0) {
      throw input_error("flag_degree_check: flag must be strictly increasing");
    }
    if (step > 0) {
      for (const QVec& g : flag[step - 1]) {
        if (!solve_in_span(flag[step], g)) {
          throw input_error("flag_degree_check: flag steps are not nested");
        }
      }
    }
    prev_dim = static_cast<size_t>(r);
  }
  if (static_cast<int>(prev_dim) != n) {
    throw input_error("flag_degree_check: flag must end at the full space");
  }

  FlagCheckReport report;
  report.total_degree = total_degree(b);
  report.flag_sum = 0;
  for (size_t step = 0; step < flag.size(); ++step) {
    for (int p = 0; p < b.curve().place_count(); ++p) {
      const FilteredSpace vp = b.place_space(p);
      const FilteredSpace restricted = restrict_space(vp, flag[step]);
      FilteredSpace quotient_piece;
      if (step == 0) {
        quotient_piece = restricted;
      } else {
        const std::vector<QVec> inner = express_in(flag[step], flag[step - 1]);
        quotient_piece = quotient_space(restricted, inner);
      }
      Rational deg = 0;
      for (const Rational& j : quotient_piece.jumps()) deg += j;
      report.flag_sum += b.curve().places()[p].weight * deg;
    }
  }
  report.slack = report.total_degree - report.flag_sum;
  report.ok = report.slack == 0;
  return report;
}

namespace {

std::string zpoint_label(const ZPoint& m) {
  std::string s = "(";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(m[i]);
  }
  s += ")";
  return s;
}

}  // namespace

DiagonalAdelicBundle pushforward_toric(const ToricAdelicDivisor& divisor, int n) {
  if (n < 0) throw input_error("pushforward_toric: negative degree");
  const std::vector<ZPoint> points = divisor.polytope().lattice_points(n);
  std::vector<std::string> labels;
  labels.reserve(points.size());
  for (const ZPoint& m : points) labels.push_back(zpoint_label(m));

  const int dim = divisor.ambient_dim();
  QMat lambda(divisor.curve().place_count(), QVec(points.size(), Rational(0)));
  if (n > 0) {
    for (int p = 0; p < divisor.curve().place_count(); ++p) {
      const ConcavePLFunction& g = divisor.green(p);
      for (size_t i = 0; i < points.size(); ++i) {
        // n * g(m/n) = min_j (grad_j . m + b_j * n)
        bool have = false;
        Rational lam;
        for (const auto& piece : g.pieces()) {
          Rational v = piece.offset * n;
          for (int c = 0; c < dim; ++c) v += piece.gradient[c] * points[i][c];
          if (!have || v < lam) {
            lam = v;
            have = true;
          }
        }
        lambda[p][i] = lam;
      }
    }
  }
  return DiagonalAdelicBundle(divisor.curve(), std::move(labels), std::move(lambda));
}

}  // namespace slopelab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slopelab/filtration.hpp"
#include "slopelab/rational.hpp"

namespace slopelab {

class ToricAdelicDivisor;

struct AdelicPlace {
  std::string label;
  Rational weight;  // nu(omega) > 0
};

// Finite measured place set, every place trivially valued on scalars.
// Properness is automatic: ln|alpha| = 0 at each place.
class AdelicCurveSpec {
 public:
  explicit AdelicCurveSpec(std::vector<AdelicPlace> places);

  const std::vector<AdelicPlace>& places() const { return places_; }
  int place_count() const { return static_cast<int>(places_.size()); }
  std::optional<int> index_of(const std::string& label) const;

  // Total mass sum nu(omega).
  Rational total_mass() const;

  friend bool operator==(const AdelicCurveSpec& a, const AdelicCurveSpec& b);

 private:
  std::vector<AdelicPlace> places_;
};

// Adelic vector bundle whose norm at every place is orthogonal with
// respect to one common basis: lambda(place, i) = -ln ||e_i||_omega.
class DiagonalAdelicBundle {
 public:
  DiagonalAdelicBundle(AdelicCurveSpec curve, std::vector<std::string> basis_labels, QMat lambda);

  int rank() const { return static_cast<int>(labels_.size()); }
  const AdelicCurveSpec& curve() const { return curve_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const QMat& lambda() const { return lambda_; }  // [place][basis index]

  // Per-place filtration on the common coordinate space.
  FilteredSpace place_space(int place_index) const;

 private:
  AdelicCurveSpec curve_;
  std::vector<std::string> labels_;
  QMat lambda_;
};

// sum_omega nu(omega) sum_i lambda(omega, i); 0 for rank 0.
Rational total_degree(const DiagonalAdelicBundle& b);

// Adds f(omega) to every lambda at that place.
DiagonalAdelicBundle twist(const DiagonalAdelicBundle& b, const std::vector<Rational>& f);

struct HnSorted {
  std::vector<Rational> slopes;  // sorted non-increasing
  std::vector<int> order;        // basis index realizing each slope
  ExtRational mu_min;
  ExtRational mu_max;
};

// HN filtration of an orthogonal direct sum of adelic line bundles:
// per-vector degrees sorted; the flag is spanned by sorted prefixes.
HnSorted hn_sorted(const DiagonalAdelicBundle& b);

// Arakelov degree of the line spanned by v.
Rational line_degree(const DiagonalAdelicBundle& b, const QVec& v);

struct FlagCheckReport {
  Rational total_degree;
  Rational flag_sum;  // sum of successive-quotient degrees
  Rational slack;     // total - flag_sum; must be 0
  bool ok = false;
};

// Flag of nested subspaces (zero space implicit, last entry must span the
// whole space); verifies exact degree additivity over the flag.
FlagCheckReport flag_degree_check(const DiagonalAdelicBundle& b,
                                  const std::vector<std::vector<QVec>>& flag);

// H^0 of the n-th multiple of a toric divisor as a diagonal bundle:
// basis = lattice points of n*P, lambda(omega, m) = n * g_omega(m/n).
DiagonalAdelicBundle pushforward_toric(const ToricAdelicDivisor& divisor, int n);

}  // namespace slopelab

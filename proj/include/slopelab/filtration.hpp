#pragma once

#include <string>
#include <vector>

#include "slopelab/linalg.hpp"
#include "slopelab/rational.hpp"

namespace slopelab {

// Finite-dimensional space over the rationals (trivially valued) with a
// decreasing R-filtration, represented by an orthogonal adapted basis and
// its jump values. F^t = span{ basis[i] : jumps[i] >= t }.
//
// Values are immutable after construction; all operations are pure.
class FilteredSpace {
 public:
  // Zero space.
  FilteredSpace() = default;

  // General constructor; validates squareness, jump ordering and
  // invertibility of the basis matrix.
  FilteredSpace(QMat basis, std::vector<Rational> jumps);

  // Space whose adapted basis is the standard basis (jumps sorted
  // internally, non-increasing).
  static FilteredSpace orthogonal(std::vector<Rational> jumps);

  int dim() const { return static_cast<int>(jumps_.size()); }
  const QMat& basis() const { return basis_; }
  const std::vector<Rational>& jumps() const { return jumps_; }

  // Number of adapted basis vectors with jump >= t, i.e. dim F^t.
  int filtration_dim(const Rational& t) const;

  // Adapted basis vectors spanning F^t.
  std::vector<QVec> filtration_basis(const Rational& t) const;

  // Distinct jump values, descending.
  std::vector<Rational> distinct_jumps() const;

  bool has_identity_basis() const { return identity_basis_; }

 private:
  QMat basis_;                   // basis_[i] = adapted basis vector i
  std::vector<Rational> jumps_;  // non-increasing
  bool identity_basis_ = true;
};

struct SlopeProfile {
  std::vector<Rational> slopes;  // mu_1 >= ... >= mu_r
  Rational degree;
  Rational positive_degree;
  ExtRational mu_min;  // +inf for the zero space
  ExtRational mu_max;  // -inf for the zero space
};

// lambda_F(v) = sup{ t : v in F^t }; +inf for v = 0.
ExtRational lambda_value(const FilteredSpace& v, const QVec& vec);

SlopeProfile slope_profile(const FilteredSpace& v);

// Convenience accessors matching the paper conventions.
ExtRational mu_min(const FilteredSpace& v);
ExtRational mu_max(const FilteredSpace& v);

// Induced filtration t -> F cap F^t on the span of the independent
// generators, expressed in the generators' coordinates.
FilteredSpace restrict_space(const FilteredSpace& v, const std::vector<QVec>& generators);

// Quotient V / span(generators) with the image filtration, expressed in
// the coordinates of the non-pivot standard directions.
FilteredSpace quotient_space(const FilteredSpace& v, const std::vector<QVec>& generators);

// Dual space: dual adapted basis, negated jumps. An involution.
FilteredSpace dual_space(const FilteredSpace& v);

FilteredSpace direct_sum(const std::vector<FilteredSpace>& spaces);

FilteredSpace tensor(const FilteredSpace& v, const FilteredSpace& w);

// Harder-Narasimhan filtration. Over a trivially valued field this is a
// fixed point: the returned space defines the same filtration map as the
// input.
FilteredSpace hn_filtration(const FilteredSpace& v);

// Falsifier cross-check for hn_filtration: samples subspaces spanned by
// subsets (singletons and pairs) of the pool and verifies they never
// escape the claimed filtration steps. Empty pool means the default
// (adapted basis vectors and their pairwise sums). Returns a human
// readable complaint for the first failure, empty string on success.
std::string hn_brute_check(const FilteredSpace& v, std::vector<QVec> pool = {});

// Coordinates of each vector w.r.t. the given independent columns;
// throws input_error if some vector is outside their span.
std::vector<QVec> express_in(const std::vector<QVec>& columns, const std::vector<QVec>& vectors);

// True if the two spaces define the same filtration map t -> F^t.
bool same_filtration(const FilteredSpace& a, const FilteredSpace& b);

}  // namespace slopelab

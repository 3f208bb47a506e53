#pragma once

#include <cstdint>
#include <vector>

#include "slopelab/linalg.hpp"
#include "slopelab/rational.hpp"

namespace slopelab {

using ZPoint = std::vector<std::int64_t>;

// Rational convex polytope in ambient dimension 1 or 2, kept in canonical
// form: d=1 as [lo] or [lo, hi]; d=2 as the counter-clockwise vertex cycle
// starting at the lexicographically smallest vertex. Full-dimensional or a
// single point (degenerate segments in d=2 are rejected).
class LatticePolytope {
 public:
  struct Facet {
    QVec normal;  // outward
    Rational offset;  // normal . x <= offset
  };

  LatticePolytope(int ambient_dim, std::vector<QVec> points);

  int ambient_dim() const { return dim_; }
  const std::vector<QVec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  bool is_point() const { return vertices_.size() == 1; }
  bool contains(const QVec& x) const;

  // d-dimensional Lebesgue volume (length / area); 0 for a point.
  Rational volume() const;

  // Lattice points of n*P, sorted lexicographically. n >= 0; n = 0 gives
  // the origin.
  std::vector<ZPoint> lattice_points(int n) const;

  LatticePolytope scaled(const Rational& alpha) const;  // alpha >= 0

  friend LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b);
  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }

 private:
  int dim_;
  std::vector<QVec> vertices_;
  std::vector<Facet> facets_;
};

// Concave piecewise-linear function on a polytope, x -> min_i (a_i.x + b_i).
// Construction drops duplicate and never-active pieces, so the piece list
// is canonical (sorted) and irredundant.
class ConcavePLFunction {
 public:
  struct Piece {
    QVec gradient;  // a
    Rational offset;  // b
  };

  ConcavePLFunction(LatticePolytope domain, std::vector<Piece> pieces);

  const LatticePolytope& domain() const { return domain_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  Rational value(const QVec& x) const;  // throws input_error outside the domain

  // min / max over the domain (attained at subdivision vertices).
  Rational min_value() const;
  Rational max_value() const;

  // Vertices of the activity subdivision (kinks and domain vertices).
  std::vector<QVec> subdivision_vertices() const;

  // Exact integral over the domain.
  Rational integral() const;

  // Exact integral of max(value - level, 0) over the domain.
  Rational integral_above(const Rational& level) const;

  ConcavePLFunction scaled(const Rational& alpha) const;  // x -> alpha * g(x / alpha)
  ConcavePLFunction shifted(const Rational& c) const;     // g + c

  friend ConcavePLFunction weighted_sum(const std::vector<Rational>& weights,
                                        const std::vector<ConcavePLFunction>& greens);

  // Sup-convolution (g1 # g2)(m) = max{ g1(x) + g2(y) : x + y = m }.
  friend ConcavePLFunction sup_convolve(const ConcavePLFunction& g1, const ConcavePLFunction& g2);

 private:
  LatticePolytope domain_;
  std::vector<Piece> pieces_;
};

ConcavePLFunction weighted_sum(const std::vector<Rational>& weights,
                               const std::vector<ConcavePLFunction>& greens);
ConcavePLFunction sup_convolve(const ConcavePLFunction& g1, const ConcavePLFunction& g2);

// --- low-level exact 2D primitives (exposed for tests) ---

// Convex hull, CCW, lexicographically smallest first, no collinear
// vertices. Accepts any point multiset; 1-point and 2-point hulls allowed.
std::vector<QVec> convex_hull_2d(std::vector<QVec> points);

// Signed double area of the CCW polygon (shoelace).
Rational polygon_double_area(const std::vector<QVec>& poly);

// Clip a convex polygon by normal.x <= offset (Sutherland-Hodgman).
std::vector<QVec> clip_polygon(const std::vector<QVec>& poly, const QVec& normal,
                               const Rational& offset);

bool point_in_convex_polygon(const std::vector<QVec>& poly, const QVec& p);

// Upper hull of 2D points (x, z): pieces z = a*x + b of the least concave
// majorant of the point cloud over [min x, max x].
std::vector<ConcavePLFunction::Piece> upper_envelope_1d(const std::vector<std::pair<Rational, Rational>>& pts);

// Upper hull facets of 3D points (x, y, z) as pieces z = a.(x,y) + b.
// The (x,y) projections must not all be collinear.
std::vector<ConcavePLFunction::Piece> upper_envelope_2d(const std::vector<std::pair<QVec, Rational>>& pts);

}  // namespace slopelab

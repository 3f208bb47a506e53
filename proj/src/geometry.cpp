#include "slopelab/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace slopelab {

namespace {

Rational cross2(const QVec& o, const QVec& a, const QVec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw input_error("lattice coordinate out of supported range");
  return z.get_si();
}

}  // namespace

std::vector<QVec> convex_hull_2d(std::vector<QVec> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const size_t n = points.size();
  if (n <= 2) return points;

  std::vector<QVec> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  const size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

Rational polygon_double_area(const std::vector<QVec>& poly) {
  if (poly.size() < 3) return Rational(0);
  Rational s = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const QVec& a = poly[i];
    const QVec& b = poly[(i + 1) % poly.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return s;
}

std::vector<QVec> clip_polygon(const std::vector<QVec>& poly, const QVec& normal,
                               const Rational& offset) {
  auto inside = [&](const QVec& p) {
    Rational d = 0;
    for (size_t i = 0; i < normal.size(); ++i) d += normal[i] * p[i];
    return d <= offset;
  };
  if (poly.empty()) return {};
  if (poly.size() == 1) return inside(poly[0]) ? poly : std::vector<QVec>{};

  std::vector<QVec> input = poly;
  if (poly.size() == 2) input = {poly[0], poly[1]};  // treated as a 2-cycle below

  std::vector<QVec> out;
  const size_t n = input.size();
  for (size_t i = 0; i < n; ++i) {
    const QVec& cur = input[i];
    const QVec& nxt = input[(i + 1) % n];
    Rational dc = -offset, dn = -offset;
    for (size_t j = 0; j < normal.size(); ++j) {
      dc += normal[j] * cur[j];
      dn += normal[j] * nxt[j];
    }
    const bool cin = dc <= 0, nin = dn <= 0;
    if (cin) out.push_back(cur);
    if (cin != nin) {
      const Rational t = dc / (dc - dn);
      QVec cut(cur.size());
      for (size_t j = 0; j < cur.size(); ++j) cut[j] = cur[j] + t * (nxt[j] - cur[j]);
      out.push_back(std::move(cut));
    }
  }
  return convex_hull_2d(std::move(out));
}

bool point_in_convex_polygon(const std::vector<QVec>& poly, const QVec& p) {
  if (poly.empty()) return false;
  if (poly.size() == 1) return poly[0] == p;
  if (poly.size() == 2) {
    if (cross2(poly[0], poly[1], p) != 0) return false;
    // between the endpoints, tested on the dominant axis
    for (int axis = 0; axis < 2; ++axis) {
      const Rational lo = rational_min(poly[0][axis], poly[1][axis]);
      const Rational hi = rational_max(poly[0][axis], poly[1][axis]);
      if (p[axis] < lo || p[axis] > hi) return false;
    }
    return true;
  }
  for (size_t i = 0; i < poly.size(); ++i) {
    if (cross2(poly[i], poly[(i + 1) % poly.size()], p) < 0) return false;
  }
  return true;
}

LatticePolytope::LatticePolytope(int ambient_dim, std::vector<QVec> points) : dim_(ambient_dim) {
  if (dim_ != 1 && dim_ != 2) throw input_error("LatticePolytope: ambient dimension must be 1 or 2");
  if (points.empty()) throw input_error("LatticePolytope: empty vertex list");
  for (const QVec& p : points) {
    if (static_cast<int>(p.size()) != dim_) {
      throw input_error("LatticePolytope: vertex dimension mismatch");
    }
  }
  if (dim_ == 1) {
    Rational lo = points[0][0], hi = points[0][0];
    for (const QVec& p : points) {
      lo = rational_min(lo, p[0]);
      hi = rational_max(hi, p[0]);
    }
    if (lo == hi) {
      vertices_ = {{lo}};
    } else {
      vertices_ = {{lo}, {hi}};
    }
    facets_.push_back({{Rational(1)}, hi});
    facets_.push_back({{Rational(-1)}, -lo});
  } else {
    vertices_ = convex_hull_2d(std::move(points));
    if (vertices_.size() == 2) {
      throw input_error("LatticePolytope: degenerate segment in dimension 2");
    }
    if (vertices_.size() == 1) {
      const QVec& v = vertices_[0];
      facets_.push_back({{Rational(1), Rational(0)}, v[0]});
      facets_.push_back({{Rational(-1), Rational(0)}, -v[0]});
      facets_.push_back({{Rational(0), Rational(1)}, v[1]});
      facets_.push_back({{Rational(0), Rational(-1)}, -v[1]});
    } else {
      for (size_t i = 0; i < vertices_.size(); ++i) {
        const QVec& v = vertices_[i];
        const QVec& w = vertices_[(i + 1) % vertices_.size()];
        QVec normal = {w[1] - v[1], v[0] - w[0]};
        facets_.push_back({normal, normal[0] * v[0] + normal[1] * v[1]});
      }
    }
  }
}

bool LatticePolytope::contains(const QVec& x) const {
  if (static_cast<int>(x.size()) != dim_) throw input_error("contains: dimension mismatch");
  for (const Facet& f : facets_) {
    Rational d = 0;
    for (int i = 0; i < dim_; ++i) d += f.normal[i] * x[i];
    if (d > f.offset) return false;
  }
  return true;
}

Rational LatticePolytope::volume() const {
  if (dim_ == 1) {
    return vertices_.size() == 2 ? vertices_[1][0] - vertices_[0][0] : Rational(0);
  }
  return polygon_double_area(vertices_) / 2;
}

std::vector<ZPoint> LatticePolytope::lattice_points(int n) const {
  if (n < 0) throw input_error("lattice_points: negative multiple");
  if (n == 0) return {ZPoint(dim_, 0)};

  // Integer facet forms A.x <= c*n (denominators cleared once).
  struct IntFacet {
    std::vector<std::int64_t> a;
    std::int64_t c;  // test: a.x <= c*n
  };
  std::vector<IntFacet> ifacets;
  for (const Facet& f : facets_) {
    Integer lcm = f.offset.get_den();
    for (int i = 0; i < dim_; ++i) {
      Integer l;
      mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), f.normal[i].get_den().get_mpz_t());
      lcm = l;
    }
    IntFacet g;
    for (int i = 0; i < dim_; ++i) {
      Rational scaled = f.normal[i] * lcm;
      g.a.push_back(to_int64(scaled.get_num()));
    }
    Rational oc = f.offset * lcm;
    g.c = to_int64(oc.get_num());
    ifacets.push_back(std::move(g));
  }

  std::vector<std::int64_t> lo(dim_), hi(dim_);
  for (int i = 0; i < dim_; ++i) {
    Rational mn = vertices_[0][i], mx = vertices_[0][i];
    for (const QVec& v : vertices_) {
      mn = rational_min(mn, v[i]);
      mx = rational_max(mx, v[i]);
    }
    lo[i] = to_int64(rational_ceil(mn * n));
    hi[i] = to_int64(rational_floor(mx * n));
  }

  std::vector<ZPoint> out;
  auto feasible = [&](const ZPoint& p) {
    for (const IntFacet& f : ifacets) {
      std::int64_t lhs = 0;
      for (int i = 0; i < dim_; ++i) lhs += f.a[i] * p[i];
      if (lhs > f.c * n) return false;
    }
    return true;
  };
  if (dim_ == 1) {
    for (std::int64_t x = lo[0]; x <= hi[0]; ++x) {
      ZPoint p = {x};
      if (feasible(p)) out.push_back(std::move(p));
    }
  } else {
    for (std::int64_t x = lo[0]; x <= hi[0]; ++x) {
      for (std::int64_t y = lo[1]; y <= hi[1]; ++y) {
        ZPoint p = {x, y};
        if (feasible(p)) out.push_back(std::move(p));
      }
    }
  }
  return out;
}

LatticePolytope LatticePolytope::scaled(const Rational& alpha) const {
  if (alpha < 0) throw input_error("scaled: negative factor");
  std::vector<QVec> pts;
  for (const QVec& v : vertices_) pts.push_back(vec_scale(alpha, v));
  return LatticePolytope(dim_, std::move(pts));
}

LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b) {
  if (a.dim_ != b.dim_) throw input_error("minkowski_sum: dimension mismatch");
  std::vector<QVec> pts;
  for (const QVec& u : a.vertices_) {
    for (const QVec& v : b.vertices_) pts.push_back(vec_add(u, v));
  }
  return LatticePolytope(a.dim_, std::move(pts));
}

// ---------------------------------------------------------------------------
// ConcavePLFunction

namespace {

// Activity region of piece i inside the 1D domain [lo, hi]; empty if the
// piece never attains the minimum. Returns {lo, hi} with lo <= hi.
std::optional<std::pair<Rational, Rational>> activity_interval(
    const std::vector<ConcavePLFunction::Piece>& pieces, size_t i, Rational lo, Rational hi) {
  for (size_t k = 0; k < pieces.size(); ++k) {
    if (k == i) continue;
    const Rational c = pieces[i].gradient[0] - pieces[k].gradient[0];
    const Rational r = pieces[k].offset - pieces[i].offset;
    if (c == 0) {
      if (r < 0) return std::nullopt;
    } else if (c > 0) {
      hi = rational_min(hi, r / c);
    } else {
      lo = rational_max(lo, r / c);
    }
    if (lo > hi) return std::nullopt;
  }
  return std::make_pair(lo, hi);
}

std::vector<QVec> activity_polygon(const std::vector<ConcavePLFunction::Piece>& pieces, size_t i,
                                   std::vector<QVec> region) {
  for (size_t k = 0; k < pieces.size() && !region.empty(); ++k) {
    if (k == i) continue;
    QVec normal = {pieces[i].gradient[0] - pieces[k].gradient[0],
                   pieces[i].gradient[1] - pieces[k].gradient[1]};
    region = clip_polygon(region, normal, pieces[k].offset - pieces[i].offset);
  }
  return region;
}

Rational piece_value(const ConcavePLFunction::Piece& p, const QVec& x) {
  Rational v = p.offset;
  for (size_t i = 0; i < x.size(); ++i) v += p.gradient[i] * x[i];
  return v;
}

bool piece_less(const ConcavePLFunction::Piece& a, const ConcavePLFunction::Piece& b) {
  if (a.gradient != b.gradient) return a.gradient < b.gradient;
  return a.offset < b.offset;
}

bool piece_eq(const ConcavePLFunction::Piece& a, const ConcavePLFunction::Piece& b) {
  return a.gradient == b.gradient && a.offset == b.offset;
}

}  // namespace

ConcavePLFunction::ConcavePLFunction(LatticePolytope domain, std::vector<Piece> pieces)
    : domain_(std::move(domain)) {
  if (pieces.empty()) throw input_error("ConcavePLFunction: empty piece list");
  for (const Piece& p : pieces) {
    if (static_cast<int>(p.gradient.size()) != domain_.ambient_dim()) {
      throw input_error("ConcavePLFunction: piece dimension mismatch");
    }
  }
  std::sort(pieces.begin(), pieces.end(), piece_less);
  pieces.erase(std::unique(pieces.begin(), pieces.end(), piece_eq), pieces.end());

  if (domain_.is_point()) {
    // On a point the function is just a value; canonicalize to a constant.
    const QVec& v = domain_.vertices()[0];
    Rational best = piece_value(pieces[0], v);
    for (const Piece& p : pieces) best = rational_min(best, piece_value(p, v));
    pieces_.push_back({QVec(domain_.ambient_dim(), Rational(0)), best});
    return;
  }

  // Keep pieces whose activity region has positive measure; dropping the
  // rest leaves the pointwise minimum unchanged.
  if (domain_.ambient_dim() == 1) {
    const Rational lo = domain_.vertices()[0][0];
    const Rational hi = domain_.vertices()[1][0];
    for (size_t i = 0; i < pieces.size(); ++i) {
      auto iv = activity_interval(pieces, i, lo, hi);
      if (iv && iv->first < iv->second) pieces_.push_back(pieces[i]);
    }
  } else {
    for (size_t i = 0; i < pieces.size(); ++i) {
      auto poly = activity_polygon(pieces, i, domain_.vertices());
      if (polygon_double_area(poly) > 0) pieces_.push_back(pieces[i]);
    }
  }
  if (pieces_.empty()) {
    // All pieces tie on a measure-zero set only when several pieces agree
    // everywhere after deduplication, which cannot happen; keep the first
    // as a safeguard for fully degenerate domains.
    pieces_.push_back(pieces[0]);
  }
}

Rational ConcavePLFunction::value(const QVec& x) const {
  if (!domain_.contains(x)) throw input_error("ConcavePLFunction: point outside the domain");
  Rational best = piece_value(pieces_[0], x);
  for (size_t i = 1; i < pieces_.size(); ++i) {
    best = rational_min(best, piece_value(pieces_[i], x));
  }
  return best;
}

std::vector<QVec> ConcavePLFunction::subdivision_vertices() const {
  std::vector<QVec> verts;
  if (domain_.is_point()) return domain_.vertices();
  if (domain_.ambient_dim() == 1) {
    const Rational lo = domain_.vertices()[0][0];
    const Rational hi = domain_.vertices()[1][0];
    for (size_t i = 0; i < pieces_.size(); ++i) {
      auto iv = activity_interval(pieces_, i, lo, hi);
      if (!iv) continue;
      verts.push_back({iv->first});
      verts.push_back({iv->second});
    }
  } else {
    for (size_t i = 0; i < pieces_.size(); ++i) {
      for (QVec& v : activity_polygon(pieces_, i, domain_.vertices())) {
        verts.push_back(std::move(v));
      }
    }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

Rational ConcavePLFunction::min_value() const {
  // A concave function attains its minimum at a domain vertex.
  Rational best = value(domain_.vertices()[0]);
  for (const QVec& v : domain_.vertices()) best = rational_min(best, value(v));
  return best;
}

Rational ConcavePLFunction::max_value() const {
  Rational best = value(domain_.vertices()[0]);
  for (const QVec& v : subdivision_vertices()) best = rational_max(best, value(v));
  return best;
}

namespace {

// Integral of an affine form over a convex polygon (fan triangulation).
Rational integrate_affine_polygon(const ConcavePLFunction::Piece& p, const std::vector<QVec>& poly) {
  if (poly.size() < 3) return Rational(0);
  Rational total = 0;
  for (size_t i = 1; i + 1 < poly.size(); ++i) {
    const QVec& a = poly[0];
    const QVec& b = poly[i];
    const QVec& c = poly[i + 1];
    const Rational area2 = cross2(a, b, c);
    if (area2 == 0) continue;
    QVec centroid = {(a[0] + b[0] + c[0]) / 3, (a[1] + b[1] + c[1]) / 3};
    total += (area2 / 2) * piece_value(p, centroid);
  }
  return total;
}

}  // namespace

Rational ConcavePLFunction::integral() const {
  if (domain_.is_point()) return Rational(0);
  Rational total = 0;
  if (domain_.ambient_dim() == 1) {
    const Rational lo = domain_.vertices()[0][0];
    const Rational hi = domain_.vertices()[1][0];
    for (size_t i = 0; i < pieces_.size(); ++i) {
      auto iv = activity_interval(pieces_, i, lo, hi);
      if (!iv || iv->first >= iv->second) continue;
      const Rational mid = (iv->first + iv->second) / 2;
      total += (iv->second - iv->first) * piece_value(pieces_[i], {mid});
    }
  } else {
    for (size_t i = 0; i < pieces_.size(); ++i) {
      total += integrate_affine_polygon(pieces_[i], activity_polygon(pieces_, i, domain_.vertices()));
    }
  }
  return total;
}

Rational ConcavePLFunction::integral_above(const Rational& level) const {
  if (domain_.is_point()) return Rational(0);
  // { g >= level } is the intersection of the half-spaces piece_k >= level.
  if (domain_.ambient_dim() == 1) {
    Rational lo = domain_.vertices()[0][0];
    Rational hi = domain_.vertices()[1][0];
    for (const Piece& p : pieces_) {
      const Rational& c = p.gradient[0];
      const Rational r = level - p.offset;  // c*x >= r
      if (c == 0) {
        if (r > 0) return Rational(0);
      } else if (c > 0) {
        lo = rational_max(lo, r / c);
      } else {
        hi = rational_min(hi, r / c);
      }
    }
    if (lo >= hi) return Rational(0);
    Rational total = 0;
    for (size_t i = 0; i < pieces_.size(); ++i) {
      auto iv = activity_interval(pieces_, i, lo, hi);
      if (!iv || iv->first >= iv->second) continue;
      const Rational mid = (iv->first + iv->second) / 2;
      total += (iv->second - iv->first) * (piece_value(pieces_[i], {mid}) - level);
    }
    return total;
  }
  std::vector<QVec> region = domain_.vertices();
  for (const Piece& p : pieces_) {
    QVec normal = {-p.gradient[0], -p.gradient[1]};
    region = clip_polygon(region, normal, p.offset - level);
    if (region.empty()) return Rational(0);
  }
  if (polygon_double_area(region) == 0) return Rational(0);
  Rational total = 0;
  for (size_t i = 0; i < pieces_.size(); ++i) {
    std::vector<QVec> sub = region;
    for (size_t k = 0; k < pieces_.size() && !sub.empty(); ++k) {
      if (k == i) continue;
      QVec normal = {pieces_[i].gradient[0] - pieces_[k].gradient[0],
                     pieces_[i].gradient[1] - pieces_[k].gradient[1]};
      sub = clip_polygon(sub, normal, pieces_[k].offset - pieces_[i].offset);
    }
    Piece shifted_piece = pieces_[i];
    shifted_piece.offset -= level;
    total += integrate_affine_polygon(shifted_piece, sub);
  }
  return total;
}

ConcavePLFunction ConcavePLFunction::scaled(const Rational& alpha) const {
  if (alpha < 0) throw input_error("scaled: negative factor");
  LatticePolytope dom = domain_.scaled(alpha);
  if (alpha == 0) {
    return ConcavePLFunction(dom, {{QVec(domain_.ambient_dim(), Rational(0)), Rational(0)}});
  }
  std::vector<Piece> pieces;
  for (const Piece& p : pieces_) pieces.push_back({p.gradient, alpha * p.offset});
  return ConcavePLFunction(std::move(dom), std::move(pieces));
}

ConcavePLFunction ConcavePLFunction::shifted(const Rational& c) const {
  std::vector<Piece> pieces;
  for (const Piece& p : pieces_) pieces.push_back({p.gradient, p.offset + c});
  return ConcavePLFunction(domain_, std::move(pieces));
}

ConcavePLFunction weighted_sum(const std::vector<Rational>& weights,
                               const std::vector<ConcavePLFunction>& greens) {
  if (greens.empty() || weights.size() != greens.size()) {
    throw input_error("weighted_sum: weight/green count mismatch");
  }
  for (size_t k = 0; k < greens.size(); ++k) {
    if (!(greens[k].domain() == greens[0].domain())) {
      throw input_error("weighted_sum: greens must share their domain");
    }
    if (weights[k] < 0) throw input_error("weighted_sum: negative weight");
  }
  // min distributes over sums: the sum's pieces are the weighted sums of
  // one piece from each summand (pruned by the constructor).
  std::vector<ConcavePLFunction::Piece> acc = {{QVec(greens[0].domain().ambient_dim(), Rational(0)), Rational(0)}};
  for (size_t k = 0; k < greens.size(); ++k) {
    std::vector<ConcavePLFunction::Piece> next;
    for (const auto& base : acc) {
      for (const auto& p : greens[k].pieces()) {
        ConcavePLFunction::Piece q = base;
        for (size_t i = 0; i < q.gradient.size(); ++i) q.gradient[i] += weights[k] * p.gradient[i];
        q.offset += weights[k] * p.offset;
        next.push_back(std::move(q));
      }
    }
    acc = std::move(next);
  }
  return ConcavePLFunction(greens[0].domain(), std::move(acc));
}

std::vector<ConcavePLFunction::Piece> upper_envelope_1d(
    const std::vector<std::pair<Rational, Rational>>& pts) {
  if (pts.empty()) throw input_error("upper_envelope_1d: no points");
  std::map<Rational, Rational> best;
  for (const auto& [x, z] : pts) {
    auto it = best.find(x);
    if (it == best.end() || it->second < z) best[x] = z;
  }
  std::vector<std::pair<Rational, Rational>> s(best.begin(), best.end());
  if (s.size() == 1) {
    return {{{Rational(0)}, s[0].second}};
  }
  // Upper chain of the 2D cloud.
  std::vector<std::pair<Rational, Rational>> chain;
  auto turn = [](const std::pair<Rational, Rational>& o, const std::pair<Rational, Rational>& a,
                 const std::pair<Rational, Rational>& b) -> Rational {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  for (const auto& p : s) {
    while (chain.size() >= 2 && turn(chain[chain.size() - 2], chain.back(), p) >= 0) {
      chain.pop_back();
    }
    chain.push_back(p);
  }
  std::vector<ConcavePLFunction::Piece> pieces;
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    const Rational slope = (chain[i + 1].second - chain[i].second) / (chain[i + 1].first - chain[i].first);
    pieces.push_back({{slope}, chain[i].second - slope * chain[i].first});
  }
  return pieces;
}

std::vector<ConcavePLFunction::Piece> upper_envelope_2d(
    const std::vector<std::pair<QVec, Rational>>& pts) {
  if (pts.empty()) throw input_error("upper_envelope_2d: no points");
  std::map<QVec, Rational> best;
  for (const auto& [xy, z] : pts) {
    auto it = best.find(xy);
    if (it == best.end() || it->second < z) best[xy] = z;
  }
  struct P3 {
    Rational x, y, z;
  };
  std::vector<P3> s;
  for (const auto& [xy, z] : best) s.push_back({xy[0], xy[1], z});
  const size_t n = s.size();

  std::set<std::pair<QVec, Rational>> seen;
  std::vector<ConcavePLFunction::Piece> pieces;
  auto try_plane = [&](const Rational& ax, const Rational& ay, const Rational& b) {
    if (!seen.insert({{ax, ay}, b}).second) return;
    for (const P3& p : s) {
      if (p.z > ax * p.x + ay * p.y + b) return;
    }
    pieces.push_back({{ax, ay}, b});
  };

  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      for (size_t k = j + 1; k < n; ++k) {
        const Rational ux = s[j].x - s[i].x, uy = s[j].y - s[i].y, uz = s[j].z - s[i].z;
        const Rational vx = s[k].x - s[i].x, vy = s[k].y - s[i].y, vz = s[k].z - s[i].z;
        const Rational nz = ux * vy - uy * vx;
        if (nz == 0) continue;
        const Rational nx = uy * vz - uz * vy;
        const Rational ny = uz * vx - ux * vz;
        // plane: nx*x + ny*y + nz*z = c  =>  z = ax*x + ay*y + b
        const Rational ax = -nx / nz;
        const Rational ay = -ny / nz;
        const Rational b = s[i].z - ax * s[i].x - ay * s[i].y;
        try_plane(ax, ay, b);
      }
    }
  }
  if (pieces.empty()) {
    throw input_error("upper_envelope_2d: degenerate point cloud (collinear projections)");
  }
  return pieces;
}

ConcavePLFunction sup_convolve(const ConcavePLFunction& g1, const ConcavePLFunction& g2) {
  if (g1.domain().ambient_dim() != g2.domain().ambient_dim()) {
    throw input_error("sup_convolve: dimension mismatch");
  }
  const int d = g1.domain().ambient_dim();

  // A point summand is a translation plus a constant.
  if (g1.domain().is_point() || g2.domain().is_point()) {
    const ConcavePLFunction& pt = g1.domain().is_point() ? g1 : g2;
    const ConcavePLFunction& gen = g1.domain().is_point() ? g2 : g1;
    const QVec& v = pt.domain().vertices()[0];
    const Rational c = pt.value(v);
    std::vector<ConcavePLFunction::Piece> pieces;
    for (const auto& p : gen.pieces()) {
      Rational b = p.offset + c;
      for (int i = 0; i < d; ++i) b -= p.gradient[i] * v[i];
      pieces.push_back({p.gradient, b});
    }
    return ConcavePLFunction(minkowski_sum(g1.domain(), g2.domain()), std::move(pieces));
  }

  const std::vector<QVec> v1 = g1.subdivision_vertices();
  const std::vector<QVec> v2 = g2.subdivision_vertices();
  LatticePolytope dom = minkowski_sum(g1.domain(), g2.domain());

  if (d == 1) {
    std::vector<std::pair<Rational, Rational>> lifted;
    for (const QVec& a : v1) {
      for (const QVec& b : v2) lifted.push_back({a[0] + b[0], g1.value(a) + g2.value(b)});
    }
    return ConcavePLFunction(std::move(dom), upper_envelope_1d(lifted));
  }
  std::vector<std::pair<QVec, Rational>> lifted;
  for (const QVec& a : v1) {
    for (const QVec& b : v2) lifted.push_back({vec_add(a, b), g1.value(a) + g2.value(b)});
  }
  return ConcavePLFunction(std::move(dom), upper_envelope_2d(lifted));
}

}  // namespace slopelab

#pragma once

// Deterministic SVG rendering of 3-dimensional cones and complexes. Geometry
// is computed exactly on the x3 = 0 cross-section (points modulo constants);
// the only floating point is the final isometric projection, and every
// emitted coordinate is rounded to 6 decimals, half to even, through exact
// integer arithmetic.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ambitrop/alcoved.hpp"
#include "ambitrop/games.hpp"
#include "ambitrop/retract.hpp"

namespace ambitrop::svg {

enum class ShapeKind { ambitropical, max_cone, min_cone, marker };

struct Shape {
  ShapeKind kind = ShapeKind::ambitropical;
  int dim = 2;                            // 2 polygon, 1 polyline, 0 dot
  std::vector<std::pair<Rat, Rat>> pts;   // cross-section coordinates (x1, x2)
};

namespace detail {

struct HalfPlane {
  Rat a, b, c;  // keep a*x + b*y >= c
};

// Sutherland-Hodgman with exact rationals.
inline std::vector<std::pair<Rat, Rat>> clip(std::vector<std::pair<Rat, Rat>> poly,
                                             const HalfPlane& h) {
  std::vector<std::pair<Rat, Rat>> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& cur = poly[i];
    const auto& nxt = poly[(i + 1) % n];
    Rat fc = h.a * cur.first + h.b * cur.second - h.c;
    Rat fn = h.a * nxt.first + h.b * nxt.second - h.c;
    bool in_c = fc >= 0, in_n = fn >= 0;
    if (in_c) out.push_back(cur);
    if (in_c != in_n) {
      Rat t = fc / (fc - fn);
      out.emplace_back(cur.first + t * (nxt.first - cur.first),
                       cur.second + t * (nxt.second - cur.second));
    }
  }
  // Drop consecutive duplicates.
  std::vector<std::pair<Rat, Rat>> dedup;
  for (const auto& p : out)
    if (dedup.empty() || dedup.back() != p) dedup.push_back(p);
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  return dedup;
}

// The Hilbert ball of radius R in the x3 = 0 cross-section is the hexagon
// |x1| <= R, |x2| <= R, |x1 - x2| <= R.
inline std::vector<std::pair<Rat, Rat>> hilbert_hexagon(const Rat& R) {
  return {{R, Rat(0)},  {R, R},   {Rat(0), R},
          {-R, Rat(0)}, {-R, -R}, {Rat(0), -R}};
}

inline std::string fixed6(double v) {
  // Exact: double -> rational -> round(10^6 v) half to even -> decimal string.
  Rat q(v);
  q.canonicalize();
  mpz_class scaled_num = q.get_num() * 1000000;
  mpz_class den = q.get_den();
  mpz_class quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled_num.get_mpz_t(), den.get_mpz_t());
  mpz_class twice = rem * 2;
  int cmp = ::cmp(twice, den);
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(quot.get_mpz_t()))) quot += 1;
  bool neg = quot < 0;
  mpz_class mag = neg ? mpz_class(-quot) : quot;
  std::string digits = mag.get_str();
  if (digits.size() < 7) digits.insert(0, 7 - digits.size(), '0');
  std::string whole = digits.substr(0, digits.size() - 6);
  std::string frac = digits.substr(digits.size() - 6);
  return (neg ? "-" : "") + whole + "." + frac;
}

struct Projected {
  double x, y;
};

inline Projected project(const std::pair<Rat, Rat>& p) {
  // <x, (1,-1,0)/sqrt2>, <x, (1,1,-2)/sqrt6> at x3 = 0; SVG y points down.
  double x1 = p.first.get_d(), x2 = p.second.get_d();
  return {(x1 - x2) / std::sqrt(2.0), -(x1 + x2) / std::sqrt(6.0)};
}

inline const char* fill_color(ShapeKind k) {
  switch (k) {
    case ShapeKind::ambitropical: return "#8a8a8a";
    case ShapeKind::max_cone: return "#4477cc";
    case ShapeKind::min_cone: return "#cc5544";
    case ShapeKind::marker: return "#111111";
  }
  return "#000000";
}

inline std::string shape_key(const Shape& s) {
  std::string k = std::to_string(static_cast<int>(s.kind)) + "|";
  for (const auto& p : s.pts) k += p.first.get_str() + "," + p.second.get_str() + ";";
  return k;
}

}  // namespace detail

// Cross-section polygon of an alcoved cell given by its star matrix, clipped
// to the Hilbert hexagon of radius R. The emitted shape dimension follows
// the clip result (polygon / segment / point).
inline Shape cell_shape(const TropMat& star, const Rat& R, ShapeKind kind) {
  if (star.rows != 3) throw TropError(Errc::unsupported_dimension, "plot: n must be 3");
  std::vector<std::pair<Rat, Rat>> poly = detail::hilbert_hexagon(R);
  auto add = [&](Rat a, Rat b, const ExtScalar& c) {
    if (!c.is_finite() || poly.empty()) return;
    poly = detail::clip(std::move(poly), detail::HalfPlane{std::move(a), std::move(b), c.rat()});
  };
  add(Rat(1), Rat(-1), star.at(0, 1));   // x1 - x2 >= c
  add(Rat(-1), Rat(1), star.at(1, 0));
  add(Rat(1), Rat(0), star.at(0, 2));    // x1 >= c
  add(Rat(-1), Rat(0), star.at(2, 0));
  add(Rat(0), Rat(1), star.at(1, 2));    // x2 >= c
  add(Rat(0), Rat(-1), star.at(2, 1));
  Shape s;
  s.kind = kind;
  s.pts = std::move(poly);
  s.dim = s.pts.size() >= 3 ? 2 : (s.pts.size() == 2 ? 1 : 0);
  return s;
}

// Tropical segment between two finite generators, as its exact breakpoint
// polyline in the cross-section.
inline Shape tropical_segment(const RatVec& g, const RatVec& h, bool max_side,
                              ShapeKind kind) {
  std::vector<Rat> params;
  for (int i = 0; i < 3; ++i) params.push_back(g[i] - h[i]);
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());
  Shape s;
  s.kind = kind;
  s.dim = 1;
  for (const Rat& t : params) {
    RatVec q(3);
    for (int i = 0; i < 3; ++i)
      q[i] = max_side ? rat_max(g[i], Rat(t + h[i])) : rat_min(g[i], Rat(t + h[i]));
    s.pts.emplace_back(q[0] - q[2], q[1] - q[2]);  // anchor x3 = 0
  }
  return s;
}

inline Shape point_marker(const RatVec& p) {
  Shape s;
  s.kind = ShapeKind::marker;
  s.dim = 0;
  s.pts.emplace_back(p[0] - p[2], p[1] - p[2]);
  return s;
}

inline std::vector<Shape> shapes_of_complex(const CellComplex& complex, const Rat& R) {
  std::vector<Shape> out;
  for (const Cell& c : complex.cells)
    out.push_back(cell_shape(c.star, R, ShapeKind::ambitropical));
  return out;
}

inline std::vector<Shape> shapes_of_alcoved(const AlcovedPoly& P, const Rat& R) {
  return {cell_shape(P.star, R, ShapeKind::ambitropical)};
}

// Generator documents: exact pairwise tropical segments for E^max and E^min,
// retraction-image polylines between consecutive finite generators for the
// hull, and markers on the generators themselves.
inline std::vector<Shape> shapes_of_generators(const GeneratorSet& E, int samples = 33) {
  if (E.n != 3) throw TropError(Errc::unsupported_dimension, "plot: n must be 3");
  std::vector<Shape> out;
  std::vector<RatVec> finite_max, finite_min;
  for (const TropVec& g : E.max_gens)
    if (is_finite(g)) finite_max.push_back(to_finite(g));
  for (const TropVec& h : E.min_gens)
    if (is_finite(h)) finite_min.push_back(to_finite(h));
  for (std::size_t a = 0; a < finite_max.size(); ++a)
    for (std::size_t b = a + 1; b < finite_max.size(); ++b)
      out.push_back(tropical_segment(finite_max[a], finite_max[b], true, ShapeKind::max_cone));
  for (std::size_t a = 0; a < finite_min.size(); ++a)
    for (std::size_t b = a + 1; b < finite_min.size(); ++b)
      out.push_back(tropical_segment(finite_min[a], finite_min[b], false, ShapeKind::min_cone));
  auto Q = [&](const RatVec& v) { return q_plus(E, v); };
  for (std::size_t a = 0; a + 1 < finite_max.size(); ++a) {
    RatVec x = Q(finite_max[a]), y = Q(finite_max[a + 1]);
    std::vector<RatVec> line = geodesic(Q, x, y, samples);
    Shape s;
    s.kind = ShapeKind::ambitropical;
    s.dim = 1;
    for (const RatVec& p : line) s.pts.emplace_back(p[0] - p[2], p[1] - p[2]);
    out.push_back(std::move(s));
  }
  for (const RatVec& g : finite_max) out.push_back(point_marker(g));
  for (const RatVec& h : finite_min) out.push_back(point_marker(h));
  return out;
}

inline std::string render(std::vector<Shape> shapes) {
  using detail::fixed6;
  // Deterministic z-order: polygons first (largest dimension at the back),
  // then lines, then markers; ties broken by exact coordinates.
  std::stable_sort(shapes.begin(), shapes.end(), [](const Shape& a, const Shape& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    return detail::shape_key(a) < detail::shape_key(b);
  });

  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  bool any = false;
  for (const Shape& s : shapes)
    for (const auto& p : s.pts) {
      detail::Projected q = detail::project(p);
      if (!any) {
        minx = maxx = q.x;
        miny = maxy = q.y;
        any = true;
      }
      minx = std::min(minx, q.x);
      maxx = std::max(maxx, q.x);
      miny = std::min(miny, q.y);
      maxy = std::max(maxy, q.y);
    }
  double span = std::max({maxx - minx, maxy - miny, 1.0});
  double pad = span * 0.08;
  minx -= pad;
  miny -= pad;
  double w = (maxx + pad) - minx, h = (maxy + pad) - miny;
  double stroke = span / 160.0, dot = span / 70.0;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" viewBox=\"";
  out += fixed6(minx) + " " + fixed6(miny) + " " + fixed6(w) + " " + fixed6(h) + "\">\n";
  for (const Shape& s : shapes) {
    std::string pts;
    for (const auto& p : s.pts) {
      detail::Projected q = detail::project(p);
      if (!pts.empty()) pts += " ";
      pts += fixed6(q.x) + "," + fixed6(q.y);
    }
    const char* color = detail::fill_color(s.kind);
    if (s.dim == 2) {
      out += "<polygon points=\"" + pts + "\" fill=\"" + color +
             "\" fill-opacity=\"0.45\" stroke=\"#333333\" stroke-width=\"" +
             fixed6(stroke) + "\"/>\n";
    } else if (s.dim == 1 && s.pts.size() >= 2) {
      out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"" + fixed6(stroke * 2) + "\"/>\n";
    } else if (!s.pts.empty()) {
      detail::Projected q = detail::project(s.pts[0]);
      out += "<circle cx=\"" + fixed6(q.x) + "\" cy=\"" + fixed6(q.y) + "\" r=\"" +
             fixed6(dot) + "\" fill=\"" + color + "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

inline Rat default_radius_from_star(const TropMat& star) {
  Rat m(0);
  for (const ExtScalar& e : star.a)
    if (e.is_finite()) m = rat_max(m, rat_abs(e.rat()));
  Rat r = m * 3 / 2;
  return r > 0 ? r : Rat(1);
}

inline Rat default_radius_from_generators(const GeneratorSet& E) {
  Rat r = generator_hilbert_bound(E) * 3 / 2;
  return r > 0 ? r : Rat(1);
}

}  // namespace ambitrop::svg

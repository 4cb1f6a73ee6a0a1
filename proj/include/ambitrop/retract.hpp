#pragma once

// Closed ambitropical cones through finite generator descriptions: the
// projections P^max / P^min, the canonical retractions Q^- = P^min o P^max
// and Q^+ = P^max o P^min, best tropical co-approximation intervals,
// ambitropical hulls of finite sets, fixed-point iteration, geodesics and
// the hyperconvexity witness.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ambitrop/alcoved.hpp"
#include "ambitrop/minmax.hpp"
#include "ambitrop/tropical.hpp"

namespace ambitrop {

struct GeneratorSet {
  int n = 0;
  std::vector<TropVec> max_gens;  // no +inf entries, nonempty support
  std::vector<TropVec> min_gens;  // no -inf entries, nonempty co-support
};

inline GeneratorSet make_generator_set(int n, std::vector<TropVec> max_gens,
                                       std::vector<TropVec> min_gens) {
  if (max_gens.empty() || min_gens.empty())
    throw TropError(Errc::empty_input, "generator set: both lists must be nonempty");
  std::vector<bool> covered_max(n, false), covered_min(n, false);
  for (const TropVec& g : max_gens) {
    if (static_cast<int>(g.size()) != n)
      throw TropError(Errc::dimension_mismatch, "max generator of wrong length");
    bool support = false;
    for (int i = 0; i < n; ++i) {
      if (g[i].is_pos_inf())
        throw TropError(Errc::parse_error, "max generator with +inf entry");
      if (g[i].is_finite()) {
        support = true;
        covered_max[i] = true;
      }
    }
    if (!support) throw TropError(Errc::empty_input, "max generator with empty support");
  }
  for (const TropVec& h : min_gens) {
    if (static_cast<int>(h.size()) != n)
      throw TropError(Errc::dimension_mismatch, "min generator of wrong length");
    bool support = false;
    for (int i = 0; i < n; ++i) {
      if (h[i].is_neg_inf())
        throw TropError(Errc::parse_error, "min generator with -inf entry");
      if (h[i].is_finite()) {
        support = true;
        covered_min[i] = true;
      }
    }
    if (!support) throw TropError(Errc::empty_input, "min generator with empty co-support");
  }
  for (int i = 0; i < n; ++i)
    if (!covered_max[i] || !covered_min[i])
      throw TropError(Errc::empty_input, "generators leave a coordinate uncovered");
  return GeneratorSet{n, std::move(max_gens), std::move(min_gens)};
}

inline GeneratorSet points_as_generators(const std::vector<RatVec>& points) {
  if (points.empty()) throw TropError(Errc::empty_input, "no points");
  std::vector<TropVec> gens;
  gens.reserve(points.size());
  for (const RatVec& p : points) gens.push_back(to_trop(p));
  return make_generator_set(static_cast<int>(points[0].size()), gens, gens);
}

// Description by generators of a finite union of alcoved polyhedra: the
// primal generators of each cell and the dual generators of each cell,
// deduplicated. P^max of the union is the sup of the cellwise downward
// retractions, which the pooled generator family computes directly.
inline GeneratorSet generators_of_union(const std::vector<AlcovedPoly>& cells) {
  if (cells.empty()) throw TropError(Errc::empty_input, "generators_of_union: no cells");
  const int n = cells[0].n;
  std::vector<TropVec> mx, mn;
  auto push_unique = [](std::vector<TropVec>& list, TropVec v) {
    for (const TropVec& w : list)
      if (w == v) return;
    list.push_back(std::move(v));
  };
  for (const AlcovedPoly& P : cells) {
    if (P.n != n) throw TropError(Errc::dimension_mismatch, "generators_of_union");
    for (TropVec& g : alcoved_generators(P)) push_unique(mx, std::move(g));
    for (TropVec& h : alcoved_dual_generators(P)) push_unique(mn, std::move(h));
  }
  return make_generator_set(n, std::move(mx), std::move(mn));
}

// P^max(x) = sup_g (b((x - g)|supp g) + g).
inline RatVec p_max(const GeneratorSet& E, const RatVec& x) {
  if (static_cast<int>(x.size()) != E.n)
    throw TropError(Errc::dimension_mismatch, "p_max: point size");
  RatVec out(E.n);
  std::vector<bool> seen(E.n, false);
  for (const TropVec& g : E.max_gens) {
    bool first = true;
    Rat b;
    for (int i = 0; i < E.n; ++i) {
      if (!g[i].is_finite()) continue;
      Rat v = x[i] - g[i].rat();
      if (first || v < b) {
        b = v;
        first = false;
      }
    }
    for (int i = 0; i < E.n; ++i) {
      if (!g[i].is_finite()) continue;
      Rat v = b + g[i].rat();
      if (!seen[i] || out[i] < v) {
        out[i] = v;
        seen[i] = true;
      }
    }
  }
  return out;
}

// P^min(x) = inf_h (t((x - h)|cosupp h) + h).
inline RatVec p_min(const GeneratorSet& E, const RatVec& x) {
  if (static_cast<int>(x.size()) != E.n)
    throw TropError(Errc::dimension_mismatch, "p_min: point size");
  RatVec out(E.n);
  std::vector<bool> seen(E.n, false);
  for (const TropVec& h : E.min_gens) {
    bool first = true;
    Rat t;
    for (int i = 0; i < E.n; ++i) {
      if (!h[i].is_finite()) continue;
      Rat v = x[i] - h[i].rat();
      if (first || t < v) {
        t = v;
        first = false;
      }
    }
    for (int i = 0; i < E.n; ++i) {
      if (!h[i].is_finite()) continue;
      Rat v = t + h[i].rat();
      if (!seen[i] || v < out[i]) {
        out[i] = v;
        seen[i] = true;
      }
    }
  }
  return out;
}

inline RatVec q_minus(const GeneratorSet& E, const RatVec& x) { return p_min(E, p_max(E, x)); }
inline RatVec q_plus(const GeneratorSet& E, const RatVec& x) { return p_max(E, p_min(E, x)); }

// The projections as finitely generated Shapley operators (min-max terms):
// P^max coordinate i = max over generators g with i in supp g of
// g_i + min_{j in supp g} (x_j - g_j), and dually for P^min.
inline ShapleyOp p_max_operator(const GeneratorSet& E) {
  ShapleyOp T;
  T.n_in = E.n;
  for (int i = 0; i < E.n; ++i) {
    std::vector<MinMaxTerm> clauses;
    for (const TropVec& g : E.max_gens) {
      if (!g[i].is_finite()) continue;
      std::vector<MinMaxTerm> parts;
      for (int j = 0; j < E.n; ++j)
        if (g[j].is_finite())
          parts.push_back(MinMaxTerm::shift(Rat(-g[j].rat()), MinMaxTerm::var(j)));
      clauses.push_back(MinMaxTerm::shift(g[i].rat(), MinMaxTerm::min_of(std::move(parts))));
    }
    T.coords.push_back(MinMaxTerm::max_of(std::move(clauses)));
  }
  return T;
}

inline ShapleyOp p_min_operator(const GeneratorSet& E) {
  ShapleyOp T;
  T.n_in = E.n;
  for (int i = 0; i < E.n; ++i) {
    std::vector<MinMaxTerm> clauses;
    for (const TropVec& h : E.min_gens) {
      if (!h[i].is_finite()) continue;
      std::vector<MinMaxTerm> parts;
      for (int j = 0; j < E.n; ++j)
        if (h[j].is_finite())
          parts.push_back(MinMaxTerm::shift(Rat(-h[j].rat()), MinMaxTerm::var(j)));
      clauses.push_back(MinMaxTerm::shift(h[i].rat(), MinMaxTerm::max_of(std::move(parts))));
    }
    T.coords.push_back(MinMaxTerm::min_of(std::move(clauses)));
  }
  return T;
}

inline ShapleyOp q_minus_operator(const GeneratorSet& E) {
  return compose(p_min_operator(E), p_max_operator(E));
}

inline ShapleyOp q_plus_operator(const GeneratorSet& E) {
  return compose(p_max_operator(E), p_min_operator(E));
}

// Best tropical co-approximation interval B_E(z) = [P^max(z), P^min(z)].
inline std::pair<RatVec, RatVec> co_approximation_interval(const GeneratorSet& E,
                                                           const RatVec& z) {
  return {p_max(E, z), p_min(E, z)};
}

struct AmbiCone {
  GeneratorSet gens;

  bool fixes_qminus(const RatVec& x) const { return q_minus(gens, x) == x; }
  bool fixes_qplus(const RatVec& x) const { return q_plus(gens, x) == x; }

  // The explicit retractions as finitely generated Shapley operators.
  ShapleyOp retraction_plus() const { return q_plus_operator(gens); }
  ShapleyOp retraction_minus() const { return q_minus_operator(gens); }
};

// Ambitropical hull of a finite point set: the range of Q^+ built from the
// points used as both generator families. Bounded in Hilbert's seminorm by
// the largest generator seminorm.
inline AmbiCone ambitropical_hull(const std::vector<RatVec>& points) {
  return AmbiCone{points_as_generators(points)};
}

inline Rat generator_hilbert_bound(const GeneratorSet& E) {
  Rat r(0);
  auto update = [&](const TropVec& g) {
    bool first = true;
    Rat lo, hi;
    for (const ExtScalar& e : g) {
      if (!e.is_finite()) continue;
      if (first || e.rat() < lo) lo = e.rat();
      if (first || hi < e.rat()) hi = e.rat();
      first = false;
    }
    if (!first && r < hi - lo) r = hi - lo;
  };
  for (const TropVec& g : E.max_gens) update(g);
  for (const TropVec& h : E.min_gens) update(h);
  return r;
}

// ---- fixed-point iteration ------------------------------------------------------

struct IterFixed {
  RatVec point;
  long iterations = 0;
};
struct IterCycle {
  long period = 0;
  RatVec sample;  // a point on the cycle
};
struct IterBudget {
  RatVec last;
  Rat residual_hilbert;
};
using IterationResult = std::variant<IterFixed, IterCycle, IterBudget>;

namespace detail {
inline std::string normalized_key(const RatVec& x) {
  Rat b = bottom(x);
  std::string key;
  for (const Rat& v : x) {
    key += Rat(v - b).get_str();
    key += ';';
  }
  return key;
}
}  // namespace detail

// Iterates x <- T(x) with exact cycle detection on the iterates normalized by
// subtracting their bottom. Stops early when the residual drops to
// tol_hilbert or below (tol 0 demands an exact fixed point).
inline IterationResult iterate_to_fixed_point(const ShapleyOp& T, RatVec x, long max_iters,
                                              const Rat& tol_hilbert = Rat(0)) {
  if (!T.square()) throw TropError(Errc::dimension_mismatch, "iterate: operator not square");
  std::map<std::string, long> seen;
  seen[detail::normalized_key(x)] = 0;
  RatVec residual(x.size());
  for (long k = 0; k < max_iters; ++k) {
    RatVec next = eval(T, x);
    if (next == x) return IterFixed{std::move(x), k};
    for (std::size_t i = 0; i < x.size(); ++i) residual[i] = next[i] - x[i];
    Rat res = hilbert_seminorm(residual);
    if (tol_hilbert > 0 && res <= tol_hilbert) return IterBudget{std::move(next), res};
    x = std::move(next);
    auto [it, fresh] = seen.emplace(detail::normalized_key(x), k + 1);
    if (!fresh) return IterCycle{k + 1 - it->second, std::move(x)};
  }
  RatVec next = eval(T, x);
  for (std::size_t i = 0; i < x.size(); ++i) residual[i] = next[i] - x[i];
  return IterBudget{std::move(x), hilbert_seminorm(residual)};
}

// Least fixed upper bound of two fixed points: lim T^k(x v y).
inline RatVec lattice_sup(const ShapleyOp& T, const RatVec& x, const RatVec& y,
                          long max_iters = 10000) {
  if (eval(T, x) != x || eval(T, y) != y)
    throw TropError(Errc::not_a_fixed_point, "lattice_sup: inputs must be fixed points");
  IterationResult r = iterate_to_fixed_point(T, vec_sup(x, y), max_iters);
  if (auto* fixed = std::get_if<IterFixed>(&r)) return fixed->point;
  throw TropError(Errc::non_convergence, "lattice_sup: iteration did not settle");
}

inline RatVec lattice_inf(const ShapleyOp& T, const RatVec& x, const RatVec& y,
                          long max_iters = 10000) {
  if (eval(T, x) != x || eval(T, y) != y)
    throw TropError(Errc::not_a_fixed_point, "lattice_inf: inputs must be fixed points");
  IterationResult r = iterate_to_fixed_point(T, vec_inf(x, y), max_iters);
  if (auto* fixed = std::get_if<IterFixed>(&r)) return fixed->point;
  throw TropError(Errc::non_convergence, "lattice_inf: iteration did not settle");
}

// Image of the straight segment [x, y] under a retraction, sampled at
// `samples` equally spaced parameters. For idempotent Shapley Q fixing x and
// y this is a geodesic polyline in both the sup-norm and Hilbert seminorm.
template <typename Retraction>
std::vector<RatVec> geodesic(Retraction&& Q, const RatVec& x, const RatVec& y, int samples) {
  if (samples < 2) throw TropError(Errc::parse_error, "geodesic: need at least 2 samples");
  if (x.size() != y.size()) throw TropError(Errc::dimension_mismatch, "geodesic");
  if (Q(x) != x || Q(y) != y)
    throw TropError(Errc::not_a_fixed_point, "geodesic: endpoints not fixed by Q");
  std::vector<RatVec> line;
  line.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    Rat t(k, samples - 1);
    t.canonicalize();
    RatVec p(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i] + t * (y[i] - x[i]);
    line.push_back(Q(p));
  }
  return line;
}

inline bool polyline_additive_sup(const std::vector<RatVec>& line) {
  Rat total(0);
  for (std::size_t k = 0; k + 1 < line.size(); ++k) total += sup_dist(line[k], line[k + 1]);
  return total == sup_dist(line.front(), line.back());
}

inline bool polyline_additive_hilbert(const std::vector<RatVec>& line) {
  Rat total(0);
  for (std::size_t k = 0; k + 1 < line.size(); ++k) total += hilbert_dist(line[k], line[k + 1]);
  return total == hilbert_dist(line.front(), line.back());
}

// Hyperconvexity witness: a point of the cone within distance r_a of every
// center c_a, provided the balls are pairwise compatible. The box
// intersection is nonempty by the Helly property of boxes; its lower corner
// is pushed into the cone by the nonexpansive retraction Q^-.
inline RatVec hyperconvexity_witness(const GeneratorSet& E, const std::vector<RatVec>& centers,
                                     const std::vector<Rat>& radii) {
  if (centers.empty() || centers.size() != radii.size())
    throw TropError(Errc::empty_input, "witness: need matching centers and radii");
  for (const Rat& r : radii)
    if (r < 0) throw TropError(Errc::parse_error, "witness: negative radius");
  for (std::size_t a = 0; a < centers.size(); ++a) {
    if (q_minus(E, centers[a]) != centers[a])
      throw TropError(Errc::not_a_fixed_point, "witness: center not in the cone");
    for (std::size_t b = a + 1; b < centers.size(); ++b)
      if (sup_dist(centers[a], centers[b]) > radii[a] + radii[b])
        throw TropError(Errc::pairwise_condition_violated,
                        "witness: ball pair too far apart");
  }
  RatVec z(E.n);
  for (int i = 0; i < E.n; ++i) {
    Rat lo = centers[0][i] - radii[0];
    for (std::size_t a = 1; a < centers.size(); ++a)
      lo = rat_max(lo, Rat(centers[a][i] - radii[a]));
    z[i] = lo;
  }
  return q_minus(E, z);
}

}  // namespace ambitrop

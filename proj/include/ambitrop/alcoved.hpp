#pragma once

// Alcoved polyhedra Q(M) = {x : x_i >= M_ij + x_j}, carried with the Kleene
// star of the defining matrix. Generators come from the critical digraph of
// M*: an arc (i,j) is critical iff M*_ij + M*_ji = 0, which is exactly
// "lies on a zero-weight circuit of the digraph of M*".

#include <algorithm>
#include <vector>

#include "ambitrop/tropical.hpp"

namespace ambitrop {

struct AlcovedPoly {
  int n = 0;
  TropMat M;     // defining matrix
  TropMat star;  // cached Kleene star of M (canonical form)
};

inline AlcovedPoly alcoved_new(const TropMat& M) {
  if (M.rows != M.cols)
    throw TropError(Errc::dimension_mismatch, "alcoved_new: matrix not square");
  try {
    TropMat star = kleene_star(M);
    return AlcovedPoly{M.rows, M, std::move(star)};
  } catch (const TropError& e) {
    if (e.code() == Errc::positive_circuit)
      throw TropError(Errc::empty_polyhedron, "alcoved_new: empty polyhedron", e.witness());
    throw;
  }
}

inline bool alcoved_contains(const AlcovedPoly& P, const RatVec& x) {
  if (static_cast<int>(x.size()) != P.n)
    throw TropError(Errc::dimension_mismatch, "alcoved_contains");
  // M* x <= x, scanned directly on the star entries.
  for (int i = 0; i < P.n; ++i)
    for (int j = 0; j < P.n; ++j) {
      const ExtScalar& s = P.star.at(i, j);
      if (s.is_neg_inf()) continue;
      if (x[i] < s.rat() + x[j]) return false;
    }
  return true;
}

// Least element of P above x: M* x.
inline RatVec project_up(const AlcovedPoly& P, const RatVec& x) {
  if (static_cast<int>(x.size()) != P.n)
    throw TropError(Errc::dimension_mismatch, "project_up");
  RatVec y(P.n);
  for (int i = 0; i < P.n; ++i) {
    bool seen = false;
    Rat best;
    for (int j = 0; j < P.n; ++j) {
      const ExtScalar& s = P.star.at(i, j);
      if (s.is_neg_inf()) continue;
      Rat v = s.rat() + x[j];
      if (!seen || best < v) {
        best = v;
        seen = true;
      }
    }
    y[i] = best;  // diagonal of the star is 0, so every row is inhabited
  }
  return y;
}

// Greatest element of P below x: -(N*(-x)) with N = M^T, i.e.
// min_j (x_j - M*_ji).
inline RatVec project_down(const AlcovedPoly& P, const RatVec& x) {
  if (static_cast<int>(x.size()) != P.n)
    throw TropError(Errc::dimension_mismatch, "project_down");
  RatVec y(P.n);
  for (int i = 0; i < P.n; ++i) {
    bool seen = false;
    Rat best;
    for (int j = 0; j < P.n; ++j) {
      const ExtScalar& s = P.star.at(j, i);
      if (s.is_neg_inf()) continue;
      Rat v = x[j] - s.rat();
      if (!seen || v < best) {
        best = v;
        seen = true;
      }
    }
    y[i] = best;
  }
  return y;
}

// Connected components of the critical graph (the criterion is symmetric),
// one sorted component list per entry, ordered by smallest member.
inline std::vector<std::vector<int>> critical_components(const TropMat& star) {
  const int n = star.rows;
  auto critical = [&](int i, int j) {
    if (i == j) return true;
    const ExtScalar& a = star.at(i, j);
    const ExtScalar& b = star.at(j, i);
    return a.is_finite() && b.is_finite() && a.rat() + b.rat() == 0;
  };
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = nc;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w)
        if (comp[w] < 0 && critical(v, w)) {
          comp[w] = nc;
          stack.push_back(w);
        }
    }
    ++nc;
  }
  std::vector<std::vector<int>> out(nc);
  for (int i = 0; i < n; ++i) out[comp[i]].push_back(i);
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  return out;
}

// Dimension of Q(M) = number of critical components.
inline int alcoved_dimension(const AlcovedPoly& P) {
  return static_cast<int>(critical_components(P.star).size());
}

// Tropical generators of the lower closure: column of M* at the smallest
// index of each critical component.
inline std::vector<TropVec> alcoved_generators(const AlcovedPoly& P) {
  std::vector<TropVec> gens;
  for (const auto& comp : critical_components(P.star)) {
    int j = comp[0];
    TropVec g(P.n);
    for (int i = 0; i < P.n; ++i) g[i] = P.star.at(i, j);
    gens.push_back(std::move(g));
  }
  return gens;
}

// Dual tropical generators of the upper closure: negated rows of M*, mirror
// of the primal construction through the flip x -> -x.
inline std::vector<TropVec> alcoved_dual_generators(const AlcovedPoly& P) {
  std::vector<TropVec> gens;
  for (const auto& comp : critical_components(P.star)) {
    int i = comp[0];
    TropVec g(P.n);
    for (int j = 0; j < P.n; ++j) g[j] = -P.star.at(i, j);
    gens.push_back(std::move(g));
  }
  return gens;
}

// Smallest alcoved superset of a finite point set: M_ij = min_v (v_i - v_j).
inline AlcovedPoly alcoved_envelope(const std::vector<RatVec>& points) {
  if (points.empty()) throw TropError(Errc::empty_input, "alcoved_envelope: no points");
  const int n = static_cast<int>(points[0].size());
  for (const RatVec& p : points)
    if (static_cast<int>(p.size()) != n)
      throw TropError(Errc::dimension_mismatch, "alcoved_envelope: ragged points");
  TropMat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat m = points[0][i] - points[0][j];
      for (std::size_t k = 1; k < points.size(); ++k)
        m = rat_min(m, Rat(points[k][i] - points[k][j]));
      M.at(i, j) = ExtScalar(m);
    }
  return alcoved_new(M);
}

}  // namespace ambitrop

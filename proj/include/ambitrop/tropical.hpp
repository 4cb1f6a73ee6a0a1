#pragma once

// Max-plus / min-plus vectors and matrices: tropical products, Kleene stars
// with positive-circuit witnesses, residuation, and the hemi-norms t, b.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "ambitrop/rational.hpp"

namespace ambitrop {

using TropVec = std::vector<ExtScalar>;
using RatVec = std::vector<Rat>;

inline TropVec to_trop(const RatVec& x) {
  TropVec v;
  v.reserve(x.size());
  for (const Rat& q : x) v.emplace_back(q);
  return v;
}

inline RatVec to_finite(const TropVec& x) {
  RatVec v;
  v.reserve(x.size());
  for (const ExtScalar& s : x) v.push_back(s.rat());
  return v;
}

inline bool is_finite(const TropVec& x) {
  return std::all_of(x.begin(), x.end(), [](const ExtScalar& s) { return s.is_finite(); });
}

struct TropMat {
  int rows = 0;
  int cols = 0;
  std::vector<ExtScalar> a;  // row-major

  TropMat() = default;
  TropMat(int r, int c, ExtScalar fill = ExtScalar::neg_inf())
      : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

  ExtScalar& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const ExtScalar& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static TropMat identity(int n) {
    TropMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ExtScalar::zero();
    return m;
  }

  friend bool operator==(const TropMat& x, const TropMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
  friend bool operator!=(const TropMat& x, const TropMat& y) { return !(x == y); }
};

// Entrywise supremum.
inline TropMat trop_sup(const TropMat& x, const TropMat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw TropError(Errc::dimension_mismatch, "trop_sup: shape mismatch");
  TropMat r = x;
  for (std::size_t k = 0; k < r.a.size(); ++k) r.a[k] = trop_max(r.a[k], y.a[k]);
  return r;
}

inline bool leq(const TropMat& x, const TropMat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw TropError(Errc::dimension_mismatch, "leq: shape mismatch");
  for (std::size_t k = 0; k < x.a.size(); ++k)
    if (!(x.a[k] <= y.a[k])) return false;
  return true;
}

// Max-plus matrix product, entry (i,j) = max_k (A_ik + B_kj).
inline TropMat trop_matmul(const TropMat& A, const TropMat& B) {
  if (A.cols != B.rows)
    throw TropError(Errc::dimension_mismatch, "trop_matmul: inner dimensions disagree");
  TropMat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const ExtScalar& aik = A.at(i, k);
      if (aik.is_neg_inf()) continue;
      for (int j = 0; j < B.cols; ++j) {
        const ExtScalar& bkj = B.at(k, j);
        if (bkj.is_neg_inf()) {
          if (aik.is_pos_inf())
            throw TropError(Errc::undefined_sum, "trop_matmul: (+inf) + (-inf)");
          continue;
        }
        ExtScalar s = aik + bkj;
        if (C.at(i, j) < s) C.at(i, j) = s;
      }
    }
  return C;
}

inline TropVec trop_apply(const TropMat& A, const TropVec& x) {
  if (A.cols != static_cast<int>(x.size()))
    throw TropError(Errc::dimension_mismatch, "trop_apply: size mismatch");
  TropVec y(A.rows, ExtScalar::neg_inf());
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) {
      const ExtScalar& aij = A.at(i, j);
      if (aij.is_neg_inf()) {
        if (x[j].is_pos_inf())
          throw TropError(Errc::undefined_sum, "trop_apply: (-inf) + (+inf)");
        continue;
      }
      ExtScalar s = aij + x[j];
      if (y[i] < s) y[i] = s;
    }
  return y;
}

// Searches for a simple circuit of positive weight in the digraph of M.
// Returns the 0-based node cycle, or nullopt.
inline std::optional<std::vector<int>> find_positive_circuit(const TropMat& M) {
  const int n = M.rows;
  // D[k][i][j]: best weight of a walk i -> j of length exactly k, with the
  // maximizing predecessor for reconstruction.
  std::vector<TropMat> D;
  std::vector<std::vector<int>> pred;  // pred[k-2] for D[k], k >= 2
  D.push_back(M);
  for (int k = 2; k <= n; ++k) {
    const TropMat& P = D.back();
    TropMat Q(n, n);
    std::vector<int> par(static_cast<std::size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (P.at(i, l).is_neg_inf()) continue;
        for (int j = 0; j < n; ++j) {
          if (M.at(l, j).is_neg_inf()) continue;
          ExtScalar s = P.at(i, l) + M.at(l, j);
          if (Q.at(i, j) < s) {
            Q.at(i, j) = s;
            par[static_cast<std::size_t>(i) * n + j] = l;
          }
        }
      }
    D.push_back(Q);
    pred.push_back(std::move(par));
  }
  for (int k = 1; k <= n; ++k) {
    const TropMat& Dk = D[k - 1];
    for (int i = 0; i < n; ++i) {
      if (Dk.at(i, i) > ExtScalar::zero()) {
        // Reconstruct the walk i -> i of length k.
        std::vector<int> walk(k + 1);
        walk[0] = i;
        walk[k] = i;
        int j = i;
        for (int len = k; len >= 2; --len) {
          int l = pred[len - 2][static_cast<std::size_t>(walk[0]) * n + j];
          // walk[0] is fixed = i throughout the backtrack.
          walk[len - 1] = l;
          j = l;
        }
        // Extract a simple positive circuit from the closed walk.
        auto weight_of = [&](const std::vector<int>& cyc) {
          Rat w(0);
          for (std::size_t t = 0; t < cyc.size(); ++t)
            w += M.at(cyc[t], cyc[(t + 1) % cyc.size()]).rat();
          return w;
        };
        std::vector<int> cur(walk.begin(), walk.end() - 1);  // cycle nodes
        for (;;) {
          std::vector<int> seen(n, -1);
          int s = -1, t = -1;
          for (std::size_t p = 0; p < cur.size(); ++p) {
            if (seen[cur[p]] >= 0) {
              s = seen[cur[p]];
              t = static_cast<int>(p);
              break;
            }
            seen[cur[p]] = static_cast<int>(p);
          }
          if (s < 0) return cur;  // already simple
          std::vector<int> inner(cur.begin() + s, cur.begin() + t);
          Rat wi = weight_of(inner);
          if (wi > 0) {
            cur = std::move(inner);
          } else {
            std::vector<int> outer(cur.begin(), cur.begin() + s);
            outer.insert(outer.end(), cur.begin() + t, cur.end());
            cur = std::move(outer);
          }
        }
      }
    }
  }
  return std::nullopt;
}

// Kleene star M* = I v M v ... v M^{n-1} by repeated squaring of (I v M),
// with the diagonal positivity check cutting positive-circuit instances.
inline TropMat kleene_star(const TropMat& M) {
  if (M.rows != M.cols) throw TropError(Errc::dimension_mismatch, "kleene_star: not square");
  const int n = M.rows;
  auto fail = [&]() -> TropError {
    auto wit = find_positive_circuit(M);
    std::vector<int> w = wit ? *wit : std::vector<int>{};
    return TropError(Errc::positive_circuit, "kleene_star: circuit of positive weight", w);
  };
  for (int i = 0; i < n; ++i)
    if (M.at(i, i) > ExtScalar::zero()) throw fail();
  TropMat S = trop_sup(TropMat::identity(n), M);
  long len = 1;
  while (len < n - 1) {
    S = trop_matmul(S, S);
    len *= 2;
    for (int i = 0; i < n; ++i)
      if (S.at(i, i) > ExtScalar::zero()) throw fail();
  }
  // One more squaring certifies stability (catches positive circuits longer
  // than covered when n-1 is not a power of two, and asserts idempotency).
  TropMat S2 = trop_matmul(S, S);
  if (S2 != S) {
    for (int i = 0; i < n; ++i)
      if (S2.at(i, i) > ExtScalar::zero()) throw fail();
    S = std::move(S2);
    TropMat S3 = trop_matmul(S, S);
    if (S3 != S) throw fail();
  }
  return S;
}

// Residuation (A# y)_k = min_{i} (-A_ik + y_i); Galois adjoint of x -> Ax.
inline RatVec adjoint_apply(const TropMat& A, const RatVec& y) {
  if (A.rows != static_cast<int>(y.size()))
    throw TropError(Errc::dimension_mismatch, "adjoint_apply: size mismatch");
  RatVec r(A.cols);
  for (int k = 0; k < A.cols; ++k) {
    bool seen = false;
    Rat best;
    for (int i = 0; i < A.rows; ++i) {
      const ExtScalar& aik = A.at(i, k);
      if (!aik.is_finite()) {
        if (aik.is_pos_inf()) {
          // -(+inf) + finite = -inf dominates the min; such a column cannot
          // residuate into R.
          throw TropError(Errc::improper_matrix, "adjoint_apply: +inf entry");
        }
        continue;
      }
      Rat v = y[i] - aik.rat();
      if (!seen || v < best) {
        best = v;
        seen = true;
      }
    }
    if (!seen)
      throw TropError(Errc::improper_matrix, "adjoint_apply: identically -inf column");
    r[k] = best;
  }
  return r;
}

inline Rat top(const RatVec& x) {
  if (x.empty()) throw TropError(Errc::empty_input, "top: empty vector");
  Rat m = x[0];
  for (std::size_t i = 1; i < x.size(); ++i)
    if (m < x[i]) m = x[i];
  return m;
}

inline Rat bottom(const RatVec& x) {
  if (x.empty()) throw TropError(Errc::empty_input, "bottom: empty vector");
  Rat m = x[0];
  for (std::size_t i = 1; i < x.size(); ++i)
    if (x[i] < m) m = x[i];
  return m;
}

inline Rat hilbert_seminorm(const RatVec& x) { return top(x) - bottom(x); }

inline Rat sup_norm(const RatVec& x) {
  if (x.empty()) throw TropError(Errc::empty_input, "sup_norm: empty vector");
  Rat m = rat_abs(x[0]);
  for (std::size_t i = 1; i < x.size(); ++i) {
    Rat v = rat_abs(x[i]);
    if (m < v) m = v;
  }
  return m;
}

inline Rat sup_dist(const RatVec& x, const RatVec& y) {
  if (x.size() != y.size()) throw TropError(Errc::dimension_mismatch, "sup_dist");
  Rat m(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rat v = rat_abs(x[i] - y[i]);
    if (m < v) m = v;
  }
  return m;
}

inline Rat hilbert_dist(const RatVec& x, const RatVec& y) {
  if (x.size() != y.size()) throw TropError(Errc::dimension_mismatch, "hilbert_dist");
  RatVec d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return hilbert_seminorm(d);
}

inline RatVec vec_add_const(const RatVec& x, const Rat& c) {
  RatVec r = x;
  for (Rat& v : r) v += c;
  return r;
}

inline RatVec vec_sup(const RatVec& x, const RatVec& y) {
  if (x.size() != y.size()) throw TropError(Errc::dimension_mismatch, "vec_sup");
  RatVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = rat_max(x[i], y[i]);
  return r;
}

inline RatVec vec_inf(const RatVec& x, const RatVec& y) {
  if (x.size() != y.size()) throw TropError(Errc::dimension_mismatch, "vec_inf");
  RatVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = rat_min(x[i], y[i]);
  return r;
}

inline bool vec_leq(const RatVec& x, const RatVec& y) {
  if (x.size() != y.size()) throw TropError(Errc::dimension_mismatch, "vec_leq");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (y[i] < x[i]) return false;
  return true;
}

}  // namespace ambitrop

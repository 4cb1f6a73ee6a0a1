#pragma once

// Deterministic mean-payoff games from proper pairs (A, B): value iteration,
// the eigenproblem, calibrated policy extraction and verification, and the
// polyhedral complex of the fixed-point set with cells indexed by
// nondeterministic policy pairs.

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ambitrop/alcoved.hpp"
#include "ambitrop/minmax.hpp"
#include "ambitrop/tropical.hpp"

namespace ambitrop {

struct MeanPayoffGame {
  TropMat A;  // m x n, payments received by Min, no identically -inf column
  TropMat B;  // m x n, payments received by Max, no identically -inf row
  int n = 0;
  int m = 0;
};

inline MeanPayoffGame make_game(TropMat A, TropMat B) {
  if (A.rows != B.rows || A.cols != B.cols)
    throw TropError(Errc::dimension_mismatch, "game: A and B must both be m x n");
  ProperPair pp{A, B};
  validate_proper(pp);
  MeanPayoffGame g;
  g.n = A.cols;
  g.m = A.rows;
  g.A = std::move(A);
  g.B = std::move(B);
  return g;
}

inline MeanPayoffGame make_game(const ProperPair& pp) {
  return make_game(pp.A, pp.B);
}

// T(x) = A#(Bx).
inline RatVec game_eval(const MeanPayoffGame& G, const RatVec& x) {
  TropVec bx = trop_apply(G.B, to_trop(x));
  return adjoint_apply(G.A, to_finite(bx));
}

inline RatVec value_iteration(const MeanPayoffGame& G, long horizon) {
  RatVec v(G.n, Rat(0));
  for (long k = 0; k < horizon; ++k) v = game_eval(G, v);
  return v;
}

inline bool check_eigen(const MeanPayoffGame& G, const RatVec& u, const Rat& lambda) {
  if (static_cast<int>(u.size()) != G.n)
    throw TropError(Errc::dimension_mismatch, "check_eigen");
  RatVec tu = game_eval(G, u);
  for (int i = 0; i < G.n; ++i)
    if (tu[i] != lambda + u[i]) return false;
  return true;
}

// Krasnoselskii-style normalized iteration w <- T(w) - t(T(w) - w), stopped
// when the residual is a constant vector (then (w, residual) is an eigenpair)
// or when a normalized iterate repeats.
inline std::optional<std::pair<RatVec, Rat>> find_eigen(const MeanPayoffGame& G,
                                                        long max_iters = 10000) {
  RatVec w(G.n, Rat(0));
  std::set<std::string> seen;
  auto key = [](const RatVec& x) {
    Rat b = bottom(x);
    std::string k;
    for (const Rat& v : x) {
      k += Rat(v - b).get_str();
      k += ';';
    }
    return k;
  };
  seen.insert(key(w));
  for (long it = 0; it < max_iters; ++it) {
    RatVec tw = game_eval(G, w);
    RatVec r(G.n);
    for (int i = 0; i < G.n; ++i) r[i] = tw[i] - w[i];
    Rat t = top(r);
    if (bottom(r) == t) {
      if (!check_eigen(G, w, t)) return std::nullopt;
      return std::make_pair(w, t);
    }
    for (int i = 0; i < G.n; ++i) w[i] = tw[i] - t;
    if (!seen.insert(key(w)).second) return std::nullopt;
  }
  return std::nullopt;
}

struct PolicyPair {
  std::vector<std::vector<int>> sigma;  // Min: state i -> set of rows j
  std::vector<std::vector<int>> pi;     // Max: row j -> set of states k
};

inline void validate_policies(const MeanPayoffGame& G, const PolicyPair& pol) {
  if (static_cast<int>(pol.sigma.size()) != G.n || static_cast<int>(pol.pi.size()) != G.m)
    throw TropError(Errc::dimension_mismatch, "policy pair: wrong sizes");
  for (int i = 0; i < G.n; ++i) {
    if (pol.sigma[i].empty())
      throw TropError(Errc::empty_input, "policy pair: empty sigma set");
    for (int j : pol.sigma[i])
      if (j < 0 || j >= G.m || !G.A.at(j, i).is_finite())
        throw TropError(Errc::parse_error, "policy pair: sigma selects a -inf arc");
  }
  for (int j = 0; j < G.m; ++j) {
    if (pol.pi[j].empty()) throw TropError(Errc::empty_input, "policy pair: empty pi set");
    for (int k : pol.pi[j])
      if (k < 0 || k >= G.n || !G.B.at(j, k).is_finite())
        throw TropError(Errc::parse_error, "policy pair: pi selects a -inf arc");
  }
}

// sigma*(i) = argmin_j (-A_ji + (Bu)_j), pi*(j) = argmax_k (B_jk + u_k),
// as full attainment sets.
inline PolicyPair calibrated_policies(const MeanPayoffGame& G, const RatVec& u,
                                      const Rat& lambda) {
  if (!check_eigen(G, u, lambda))
    throw TropError(Errc::not_an_eigenvector, "calibrated_policies: T(u) != lambda + u");
  RatVec bu = to_finite(trop_apply(G.B, to_trop(u)));
  PolicyPair pol;
  pol.sigma.resize(G.n);
  pol.pi.resize(G.m);
  for (int i = 0; i < G.n; ++i) {
    bool first = true;
    Rat best;
    for (int j = 0; j < G.m; ++j) {
      if (!G.A.at(j, i).is_finite()) continue;
      Rat v = bu[j] - G.A.at(j, i).rat();
      if (first || v < best) {
        best = v;
        first = false;
      }
    }
    for (int j = 0; j < G.m; ++j) {
      if (!G.A.at(j, i).is_finite()) continue;
      if (bu[j] - G.A.at(j, i).rat() == best) pol.sigma[i].push_back(j);
    }
  }
  for (int j = 0; j < G.m; ++j) {
    bool first = true;
    Rat best;
    for (int k = 0; k < G.n; ++k) {
      if (!G.B.at(j, k).is_finite()) continue;
      Rat v = G.B.at(j, k).rat() + u[k];
      if (first || best < v) {
        best = v;
        first = false;
      }
    }
    for (int k = 0; k < G.n; ++k) {
      if (!G.B.at(j, k).is_finite()) continue;
      if (G.B.at(j, k).rat() + u[k] == best) pol.pi[j].push_back(k);
    }
  }
  return pol;
}

// Exhaustively enumerates every play of every horizon up to `horizon` with
// one side restricted to its policy and checks the calibration inequalities
//   payoff <= u_{i0} - u_{ik} + k*lambda   (Min side)
//   payoff >= u_{i0} - u_{ik} + k*lambda   (Max side)
inline bool verify_calibrated(const MeanPayoffGame& G, const RatVec& u, const Rat& lambda,
                              const PolicyPair& pol, int horizon, int horizon_cap = 12) {
  if (horizon > horizon_cap)
    throw TropError(Errc::horizon_too_large, "verify_calibrated: horizon above cap");
  validate_policies(G, pol);

  // side: true = primal (Min plays sigma, payoff bounded above),
  //       false = dual (Max plays pi, payoff bounded below).
  auto explore = [&](bool primal) {
    struct Frame {
      int state;
      Rat payoff;
      int depth;
    };
    for (int i0 = 0; i0 < G.n; ++i0) {
      std::vector<Frame> stack{{i0, Rat(0), 0}};
      while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.depth == horizon) continue;
        std::vector<int> rows;
        if (primal) {
          rows = pol.sigma[f.state];
        } else {
          for (int j = 0; j < G.m; ++j)
            if (G.A.at(j, f.state).is_finite()) rows.push_back(j);
        }
        for (int j : rows) {
          Rat mid = f.payoff - G.A.at(j, f.state).rat();
          std::vector<int> nexts;
          if (primal) {
            for (int k = 0; k < G.n; ++k)
              if (G.B.at(j, k).is_finite()) nexts.push_back(k);
          } else {
            nexts = pol.pi[j];
          }
          for (int k : nexts) {
            Rat pay = mid + G.B.at(j, k).rat();
            Rat bound = u[i0] - u[k] + Rat(f.depth + 1) * lambda;
            if (primal ? pay > bound : pay < bound) return false;
            stack.push_back({k, pay, f.depth + 1});
          }
        }
      }
    }
    return true;
  };
  return explore(true) && explore(false);
}

// ---- fixed-point cell complex ---------------------------------------------------

// Type of a point: full attainment pattern of (A v B)x <= B_jk + x_k and
// (A v B)x <= A_ji + x_i. Proper iff both sides cover every position.
inline PolicyPair type_of(const MeanPayoffGame& G, const RatVec& x) {
  if (static_cast<int>(x.size()) != G.n) throw TropError(Errc::dimension_mismatch, "type_of");
  PolicyPair t;
  t.sigma.assign(G.n, {});
  t.pi.assign(G.m, {});
  for (int j = 0; j < G.m; ++j) {
    bool first = true;
    Rat w;
    for (int l = 0; l < G.n; ++l) {
      ExtScalar ab = trop_max(G.A.at(j, l), G.B.at(j, l));
      if (!ab.is_finite()) continue;
      Rat v = ab.rat() + x[l];
      if (first || w < v) {
        w = v;
        first = false;
      }
    }
    for (int k = 0; k < G.n; ++k)
      if (G.B.at(j, k).is_finite() && G.B.at(j, k).rat() + x[k] >= w) t.pi[j].push_back(k);
    for (int i = 0; i < G.n; ++i)
      if (G.A.at(j, i).is_finite() && G.A.at(j, i).rat() + x[i] >= w) t.sigma[i].push_back(j);
  }
  return t;
}

inline bool type_proper(const PolicyPair& t) {
  for (const auto& s : t.sigma)
    if (s.empty()) return false;
  for (const auto& s : t.pi)
    if (s.empty()) return false;
  return true;
}

// Alcoved constraint matrix of the cell X_tau; nullopt when infeasible.
inline std::optional<AlcovedPoly> cell_of_type(const MeanPayoffGame& G, const PolicyPair& tau) {
  validate_policies(G, tau);
  TropMat N(G.n, G.n);
  auto add = [&](int target, int j, const Rat& offset) -> bool {
    // [(A v B)x]_j <= offset + x_target: for all l, x_target >= (AvB)_jl - offset + x_l.
    for (int l = 0; l < G.n; ++l) {
      ExtScalar ab = trop_max(G.A.at(j, l), G.B.at(j, l));
      if (!ab.is_finite()) continue;
      Rat c = ab.rat() - offset;
      if (l == target && c > 0) return false;  // positive self-loop
      if (N.at(target, l) < ExtScalar(c)) N.at(target, l) = ExtScalar(c);
    }
    return true;
  };
  for (int j = 0; j < G.m; ++j)
    for (int k : tau.pi[j])
      if (!add(k, j, G.B.at(j, k).rat())) return std::nullopt;
  for (int i = 0; i < G.n; ++i)
    for (int j : tau.sigma[i])
      if (!add(i, j, G.A.at(j, i).rat())) return std::nullopt;
  try {
    return alcoved_new(N);
  } catch (const TropError& e) {
    if (e.code() == Errc::empty_polyhedron) return std::nullopt;
    throw;
  }
}

struct Cell {
  TropMat star;
  PolicyPair type;  // maximal type: union of all deterministic types containing the cell
  int dim = 0;
};

struct CellComplex {
  int n = 0;
  std::vector<Cell> cells;
  // Hasse edges of the face lattice: (face index, containing cell index).
  std::vector<std::pair<int, int>> faces;
  // Fixed points are taken at lambda = 0; a game with a nonzero eigenvalue is
  // re-centered by subtracting it from every B entry.
  Rat lambda = Rat(0);
  bool recentered = false;
  // When no eigenpair was found and no cell exists, the smallest Hilbert
  // seminorm of T(x) - x seen along the search is reported; emptiness is not
  // decided exactly.
  std::optional<Rat> empty_certificate;
};

namespace detail {

inline std::string star_key(const TropMat& s) {
  std::string k;
  for (const ExtScalar& e : s.a) {
    k += e.str();
    k += ';';
  }
  return k;
}

struct DetLeaf {
  std::vector<int> min_choice;  // sigma_d(i)
  std::vector<int> max_choice;  // pi_d(j)
  TropMat star;
};

struct Pos {
  bool min_side;
  int idx;
  std::vector<int> options;
};

inline std::optional<TropMat> add_type_constraints(const MeanPayoffGame& G, TropMat N,
                                                   bool min_side, int idx, int choice) {
  int j = min_side ? choice : idx;
  Rat offset = min_side ? G.A.at(choice, idx).rat() : G.B.at(idx, choice).rat();
  int target = min_side ? idx : choice;
  for (int l = 0; l < G.n; ++l) {
    ExtScalar ab = trop_max(G.A.at(j, l), G.B.at(j, l));
    if (!ab.is_finite()) continue;
    Rat c = ab.rat() - offset;
    if (l == target && c > 0) return std::nullopt;
    if (N.at(target, l) < ExtScalar(c)) N.at(target, l) = ExtScalar(c);
  }
  return N;
}

inline std::optional<TropMat> feasible_star(const TropMat& N) {
  try {
    return kleene_star(N);
  } catch (const TropError& e) {
    if (e.code() != Errc::positive_circuit) throw;
    return std::nullopt;
  }
}

// Depth-first product over deterministic choices, positions ordered largest
// attainment set first, subtrees cut as soon as the partial constraint
// system develops a positive circuit. The top-level options are split over a
// small worker pool; workers share nothing but the leaf counter.
inline void enumerate_deterministic(const MeanPayoffGame& G, long leaf_cap, int threads,
                                    std::vector<DetLeaf>& out) {
  std::vector<Pos> positions;
  for (int i = 0; i < G.n; ++i) {
    std::vector<int> opt;
    for (int j = 0; j < G.m; ++j)
      if (G.A.at(j, i).is_finite()) opt.push_back(j);
    positions.push_back({true, i, std::move(opt)});
  }
  for (int j = 0; j < G.m; ++j) {
    std::vector<int> opt;
    for (int k = 0; k < G.n; ++k)
      if (G.B.at(j, k).is_finite()) opt.push_back(k);
    positions.push_back({false, j, std::move(opt)});
  }
  std::stable_sort(positions.begin(), positions.end(),
                   [](const Pos& a, const Pos& b) { return a.options.size() > b.options.size(); });

  std::atomic<long> leaves{0};
  std::atomic<bool> over_cap{false};

  struct Worker {
    const MeanPayoffGame& G;
    const std::vector<Pos>& positions;
    std::atomic<long>& leaves;
    std::atomic<bool>& over_cap;
    long leaf_cap;
    std::vector<int> min_choice, max_choice;
    std::vector<DetLeaf> local;

    void dfs(std::size_t pos, const TropMat& N) {
      if (over_cap.load(std::memory_order_relaxed)) return;
      if (pos == positions.size()) {
        if (leaves.fetch_add(1) + 1 > leaf_cap) {
          over_cap.store(true);
          return;
        }
        if (auto star = feasible_star(N)) local.push_back(DetLeaf{min_choice, max_choice, *star});
        return;
      }
      const Pos& p = positions[pos];
      for (int choice : p.options) {
        std::optional<TropMat> next = add_type_constraints(G, N, p.min_side, p.idx, choice);
        if (!next || !feasible_star(*next)) continue;
        (p.min_side ? min_choice[p.idx] : max_choice[p.idx]) = choice;
        dfs(pos + 1, *next);
        (p.min_side ? min_choice[p.idx] : max_choice[p.idx]) = -1;
      }
    }
  };

  const std::vector<int>& first = positions[0].options;
  int workers = std::max(1, std::min<int>(threads, static_cast<int>(first.size())));
  std::vector<Worker> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.push_back(Worker{G, positions, leaves, over_cap, leaf_cap,
                          std::vector<int>(G.n, -1), std::vector<int>(G.m, -1), {}});
  auto run = [&](int w) {
    const Pos& p = positions[0];
    for (std::size_t t = w; t < first.size(); t += workers) {
      int choice = first[t];
      std::optional<TropMat> next =
          add_type_constraints(G, TropMat(G.n, G.n), p.min_side, p.idx, choice);
      if (!next || !feasible_star(*next)) continue;
      (p.min_side ? pool[w].min_choice[p.idx] : pool[w].max_choice[p.idx]) = choice;
      pool[w].dfs(1, *next);
      (p.min_side ? pool[w].min_choice[p.idx] : pool[w].max_choice[p.idx]) = -1;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> ts;
    for (int w = 0; w < workers; ++w) ts.emplace_back(run, w);
    for (std::thread& t : ts) t.join();
  }
  if (over_cap.load())
    throw TropError(Errc::size_cap, "enumerate_cells: deterministic pair cap exceeded");
  for (Worker& w : pool)
    for (DetLeaf& leaf : w.local) out.push_back(std::move(leaf));
}

}  // namespace detail

// Enumerates the cells X_tau of the fixed-point complex: nonempty cells of
// deterministic policy pairs, closed under intersection (type merging). A
// game with eigenvalue lambda != 0 is re-centered first.
inline CellComplex enumerate_cells(const MeanPayoffGame& G0, int state_cap = 14,
                                   long leaf_cap = 200000, int threads = 1) {
  if (G0.n + G0.m > state_cap)
    throw TropError(Errc::size_cap, "enumerate_cells: n + m above the configured cap");

  MeanPayoffGame G = G0;
  Rat lambda(0);
  bool recentered = false;
  auto eig = find_eigen(G0);
  if (eig && eig->second != 0) {
    lambda = eig->second;
    recentered = true;
    for (ExtScalar& e : G.B.a)
      if (e.is_finite()) e = ExtScalar(Rat(e.rat() - lambda));
  }

  std::vector<detail::DetLeaf> leaves;
  detail::enumerate_deterministic(G, leaf_cap, threads, leaves);

  CellComplex complex;
  complex.n = G.n;
  complex.lambda = lambda;
  complex.recentered = recentered;
  std::map<std::string, int> index;
  std::vector<TropMat> stars;
  auto add_star = [&](const TropMat& s) -> bool {
    std::string k = detail::star_key(s);
    if (index.count(k)) return false;
    index[k] = static_cast<int>(stars.size());
    stars.push_back(s);
    return true;
  };
  for (const auto& leaf : leaves) add_star(leaf.star);

  // Close under pairwise intersection: Q(S1) cap Q(S2) = Q(star(S1 v S2)).
  for (std::size_t a = 0; a < stars.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) {
      TropMat joined = trop_sup(stars[a], stars[b]);
      try {
        add_star(kleene_star(joined));
      } catch (const TropError& e) {
        if (e.code() != Errc::positive_circuit) throw;
      }
    }

  // Maximal type of each cell: union of the deterministic types whose cell
  // contains it (star >= det star entrywise).
  for (const TropMat& s : stars) {
    PolicyPair type;
    type.sigma.assign(G.n, {});
    type.pi.assign(G.m, {});
    std::vector<std::set<int>> sig(G.n), pi(G.m);
    for (const auto& leaf : leaves) {
      if (!leq(leaf.star, s)) continue;
      for (int i = 0; i < G.n; ++i) sig[i].insert(leaf.min_choice[i]);
      for (int j = 0; j < G.m; ++j) pi[j].insert(leaf.max_choice[j]);
    }
    for (int i = 0; i < G.n; ++i) type.sigma[i].assign(sig[i].begin(), sig[i].end());
    for (int j = 0; j < G.m; ++j) type.pi[j].assign(pi[j].begin(), pi[j].end());
    AlcovedPoly P{G.n, s, s};
    complex.cells.push_back(Cell{s, std::move(type), alcoved_dimension(P)});
  }

  // Deterministic ordering: dimension descending, then star key.
  std::vector<int> order(complex.cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (complex.cells[a].dim != complex.cells[b].dim)
      return complex.cells[a].dim > complex.cells[b].dim;
    return detail::star_key(complex.cells[a].star) < detail::star_key(complex.cells[b].star);
  });
  std::vector<Cell> sorted;
  sorted.reserve(order.size());
  for (int i : order) sorted.push_back(std::move(complex.cells[i]));
  complex.cells = std::move(sorted);

  // Face lattice as Hasse edges: strict containments with nothing in between.
  const std::size_t c = complex.cells.size();
  std::vector<std::vector<bool>> below(c, std::vector<bool>(c, false));
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b)
      if (a != b && leq(complex.cells[b].star, complex.cells[a].star))
        below[a][b] = true;  // cell a is a face of cell b
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b) {
      if (!below[a][b]) continue;
      bool immediate = true;
      for (std::size_t mid = 0; mid < c && immediate; ++mid)
        if (mid != a && mid != b && below[a][mid] && below[mid][b]) immediate = false;
      if (immediate) complex.faces.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }

  if (!eig && complex.cells.empty()) {
    // Sampled certificate that the fixed-point set looks empty: the smallest
    // Hilbert residual along a short normalized orbit.
    RatVec w(G.n, Rat(0));
    std::optional<Rat> best;
    for (int it = 0; it < 200; ++it) {
      RatVec tw = game_eval(G, w);
      RatVec r(G.n);
      for (int i = 0; i < G.n; ++i) r[i] = tw[i] - w[i];
      Rat res = hilbert_seminorm(r);
      if (!best || res < *best) best = res;
      Rat t = top(r);
      for (int i = 0; i < G.n; ++i) w[i] = tw[i] - t;
    }
    complex.empty_certificate = best;
  }
  return complex;
}

// Membership of a finite point in a cell given by its star matrix.
inline bool cell_contains(const TropMat& star, const RatVec& x) {
  for (int i = 0; i < star.rows; ++i)
    for (int j = 0; j < star.cols; ++j) {
      const ExtScalar& s = star.at(i, j);
      if (s.is_neg_inf()) continue;
      if (x[i] < s.rat() + x[j]) return false;
    }
  return true;
}

}  // namespace ambitrop

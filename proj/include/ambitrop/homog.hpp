#pragma once

// Homogeneous ambitropical polyhedra: skeletons in {0,1}^n, lattice
// verification, reconstruction of the monotone Boolean retraction from a
// lattice, Weyl-cell fans from chains, and tangent/recession cones.
//
// 0/1 vectors are stored as bitmasks with coordinate i (0-based) at bit i.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ambitrop/alcoved.hpp"
#include "ambitrop/minmax.hpp"

namespace ambitrop {

using CubePoint = std::uint32_t;

struct HypercubeLattice {
  int n = 0;
  std::vector<CubePoint> elems;  // sorted, unique
};

inline RatVec cube_to_vec(CubePoint u, int n) {
  RatVec x(n);
  for (int i = 0; i < n; ++i) x[i] = Rat((u >> i) & 1u);
  return x;
}

inline bool cube_leq(CubePoint a, CubePoint b) { return (a & ~b) == 0; }

constexpr int kCubeScanCap = 20;

// Homogeneity is certified on samples: recession(T) must agree with T on the
// cube corners and a handful of integer points.
inline void require_homogeneous(const ShapleyOp& T) {
  if (!T.deterministic())
    throw TropError(Errc::not_deterministic, "skeleton: stochastic operator");
  if (!T.square()) throw TropError(Errc::dimension_mismatch, "skeleton: operator not square");
  ShapleyOp R = recession(T);
  const int n = T.n_in;
  auto differ = [&](const RatVec& x) { return eval(T, x) != eval(R, x); };
  for (int s = 0; s < 16; ++s) {
    RatVec x(n);
    for (int i = 0; i < n; ++i) x[i] = Rat(((s * 7919 + i * 104729) % 13) - 6);
    if (differ(x))
      throw TropError(Errc::not_homogeneous, "operator has nonzero shifts");
  }
  if (n <= kCubeScanCap) {
    for (CubePoint u = 0; u < (CubePoint{1} << n); ++u)
      if (differ(cube_to_vec(u, n)))
        throw TropError(Errc::not_homogeneous, "operator has nonzero shifts");
  }
}

// Sk(C) = fixed 0/1 points of a homogeneous deterministic operator.
inline std::vector<CubePoint> skeleton(const ShapleyOp& T) {
  require_homogeneous(T);
  const int n = T.n_in;
  if (n > kCubeScanCap) throw TropError(Errc::size_cap, "skeleton: n above hypercube cap");
  std::vector<CubePoint> out;
  for (CubePoint u = 0; u < (CubePoint{1} << n); ++u) {
    RatVec x = cube_to_vec(u, n);
    if (eval(T, x) == x) out.push_back(u);
  }
  return out;
}

struct LatticeVerdict {
  bool ok = true;
  bool missing_bottom = false;
  bool missing_top = false;
  CubePoint a = 0, b = 0;              // offending pair
  std::vector<CubePoint> candidates;   // its minimal upper (or maximal lower) bounds
  bool upper_failure = true;           // false: maximal lower bounds failed
};

inline LatticeVerdict is_lattice(int n, const std::vector<CubePoint>& elems) {
  LatticeVerdict v;
  const CubePoint top_el = (n == 32) ? ~CubePoint{0} : ((CubePoint{1} << n) - 1);
  std::set<CubePoint> S(elems.begin(), elems.end());
  if (!S.count(0)) {
    v.ok = false;
    v.missing_bottom = true;
    return v;
  }
  if (!S.count(top_el)) {
    v.ok = false;
    v.missing_top = true;
    return v;
  }
  std::vector<CubePoint> el(S.begin(), S.end());
  for (std::size_t p = 0; p < el.size(); ++p)
    for (std::size_t q = p + 1; q < el.size(); ++q) {
      std::vector<CubePoint> ub, lb;
      for (CubePoint w : el) {
        if (cube_leq(el[p], w) && cube_leq(el[q], w)) ub.push_back(w);
        if (cube_leq(w, el[p]) && cube_leq(w, el[q])) lb.push_back(w);
      }
      std::vector<CubePoint> mins, maxs;
      for (CubePoint w : ub) {
        bool minimal = true;
        for (CubePoint z : ub)
          if (z != w && cube_leq(z, w)) minimal = false;
        if (minimal) mins.push_back(w);
      }
      for (CubePoint w : lb) {
        bool maximal = true;
        for (CubePoint z : lb)
          if (z != w && cube_leq(w, z)) maximal = false;
        if (maximal) maxs.push_back(w);
      }
      if (mins.size() != 1) {
        v.ok = false;
        v.a = el[p];
        v.b = el[q];
        v.candidates = mins;
        v.upper_failure = true;
        return v;
      }
      if (maxs.size() != 1) {
        v.ok = false;
        v.a = el[p];
        v.b = el[q];
        v.candidates = maxs;
        v.upper_failure = false;
        return v;
      }
    }
  return v;
}

inline HypercubeLattice make_lattice(int n, std::vector<CubePoint> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  LatticeVerdict v = is_lattice(n, elems);
  if (!v.ok) throw TropError(Errc::not_a_lattice, "set is not a lattice in {0,1}^n");
  return HypercubeLattice{n, std::move(elems)};
}

// Join within the lattice (unique minimal upper bound).
inline CubePoint lattice_join(const HypercubeLattice& S, CubePoint a, CubePoint b) {
  std::optional<CubePoint> best;
  for (CubePoint w : S.elems) {
    if (!cube_leq(a, w) || !cube_leq(b, w)) continue;
    if (!best || cube_leq(w, *best)) best = w;
  }
  return *best;  // verified lattice: exists and unique
}

// The retraction P(x) = sup_S { u in S : u <= x } tabulated over the cube,
// then each coordinate synthesized as a monotone DNF over its minimal true
// points.
inline ShapleyOp operator_from_lattice(const HypercubeLattice& S) {
  const int n = S.n;
  if (n > kCubeScanCap)
    throw TropError(Errc::size_cap, "operator_from_lattice: n above hypercube cap");
  const CubePoint size = CubePoint{1} << n;
  std::vector<CubePoint> P(size, 0);
  for (CubePoint x = 0; x < size; ++x) {
    CubePoint acc = 0;  // bottom
    for (CubePoint u : S.elems)
      if (cube_leq(u, x)) acc = lattice_join(S, acc, u);
    P[x] = acc;
  }
  ShapleyOp T;
  T.n_in = n;
  for (int i = 0; i < n; ++i) {
    std::vector<CubePoint> truths;
    for (CubePoint x = 0; x < size; ++x)
      if ((P[x] >> i) & 1u) truths.push_back(x);
    // Antichain of minimal true points.
    std::vector<CubePoint> minimal;
    for (CubePoint x : truths) {
      bool is_min = true;
      for (CubePoint y : truths)
        if (y != x && cube_leq(y, x)) is_min = false;
      if (is_min) minimal.push_back(x);
    }
    std::vector<MinMaxTerm> clauses;
    for (CubePoint x : minimal) {
      std::vector<MinMaxTerm> vars;
      for (int j = 0; j < n; ++j)
        if ((x >> j) & 1u) vars.push_back(MinMaxTerm::var(j));
      clauses.push_back(MinMaxTerm::min_of(std::move(vars)));
    }
    T.coords.push_back(MinMaxTerm::max_of(std::move(clauses)));
  }
  return T;
}

struct WeylCell {
  std::vector<CubePoint> chain;           // bottom ... top, strictly increasing
  std::vector<std::vector<int>> blocks;   // ordered partition, lowest block first
  int dim = 0;                            // = number of blocks
  TropMat star;                           // canonical alcoved form of the cell
};

inline TropMat weyl_star(int n, const std::vector<std::vector<int>>& blocks) {
  TropMat M(n, n);
  for (std::size_t r = 0; r < blocks.size(); ++r)
    for (std::size_t s = r; s < blocks.size(); ++s)
      for (int i : blocks[r])
        for (int j : blocks[s]) M.at(j, i) = ExtScalar::zero();  // x_j >= x_i
  return kleene_star(M);
}

// Chains through bottom and top of the lattice, each mapped to its ordered
// partition I_s = supp(c_{S-s+1}) \ supp(c_{S-s}) and the Weyl cell
// { x : i in I_r, j in I_s, r <= s  =>  x_i <= x_j }.
inline std::vector<WeylCell> chains_to_fan(const HypercubeLattice& S) {
  const CubePoint top_el =
      (S.n == 32) ? ~CubePoint{0} : ((CubePoint{1} << S.n) - 1);
  std::vector<WeylCell> out;
  std::vector<CubePoint> chain{0};
  auto emit = [&]() {
    const std::size_t len = chain.size();  // S+1
    std::vector<std::vector<int>> blocks;
    for (std::size_t s = 1; s < len; ++s) {
      // I_s from the top: supp(c_{len-s}) \ supp(c_{len-s-1}).
      CubePoint diff = chain[len - s] & ~chain[len - s - 1];
      std::vector<int> blk;
      for (int i = 0; i < S.n; ++i)
        if ((diff >> i) & 1u) blk.push_back(i);
      blocks.push_back(std::move(blk));
    }
    WeylCell c;
    c.chain = chain;
    c.dim = static_cast<int>(blocks.size());
    c.star = weyl_star(S.n, blocks);
    c.blocks = std::move(blocks);
    out.push_back(std::move(c));
  };
  std::function<void(CubePoint)> dfs = [&](CubePoint cur) {
    if (cur == top_el) {
      emit();
      return;
    }
    for (CubePoint next : S.elems) {
      if (next == cur || !cube_leq(cur, next)) continue;
      chain.push_back(next);
      dfs(next);
      chain.pop_back();
    }
  };
  dfs(0);
  return out;
}

inline ShapleyOp tangent_cone(const ShapleyOp& T, const RatVec& u) {
  if (eval(T, u) != u)
    throw TropError(Errc::not_a_fixed_point, "tangent_cone: point not fixed");
  return semiderivative(T, u);
}

inline ShapleyOp recession_cone(const ShapleyOp& T) {
  if (!T.deterministic())
    throw TropError(Errc::not_deterministic, "recession_cone: stochastic operator");
  return recession(T);
}

// Bitstring I/O, index 1 = leftmost character.
inline std::string cube_to_string(CubePoint u, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i)
    if ((u >> i) & 1u) s[i] = '1';
  return s;
}

inline CubePoint cube_from_string(const std::string& s) {
  if (s.size() > 32) throw TropError(Errc::size_cap, "bitstring longer than 32");
  CubePoint u = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      u |= CubePoint{1} << i;
    else if (s[i] != '0')
      throw TropError(Errc::parse_error, "bitstring must be over {0,1}");
  }
  return u;
}

}  // namespace ambitrop

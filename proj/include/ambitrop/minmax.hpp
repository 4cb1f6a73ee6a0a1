#pragma once

// Finitely generated Shapley operators as min-max expression trees:
// evaluation, two-level normal forms, the A# o B representation, lattice and
// composition combinators, semiderivatives and recession functions.
//
// Affine leaves (r + p.x with a probability row p) extend the deterministic
// grammar so that stochastic examples can be evaluated and iterated; they are
// excluded from normal forms, proper pairs and cell complexes.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ambitrop/tropical.hpp"

namespace ambitrop {

struct MinMaxTerm {
  enum class Op : std::uint8_t { var, shift, max_of, min_of, affine };

  Op op = Op::var;
  int index = 0;                  // var: 0-based coordinate
  Rat c;                          // shift constant / affine r
  std::vector<Rat> p;             // affine probability row
  std::vector<MinMaxTerm> args;   // children (shift: exactly one)

  static MinMaxTerm var(int i) {
    MinMaxTerm t;
    t.op = Op::var;
    t.index = i;
    return t;
  }
  static MinMaxTerm shift(Rat amount, MinMaxTerm child) {
    MinMaxTerm t;
    t.op = Op::shift;
    t.c = std::move(amount);
    t.args.push_back(std::move(child));
    return t;
  }
  static MinMaxTerm max_of(std::vector<MinMaxTerm> children) {
    if (children.empty()) throw TropError(Errc::empty_input, "max_of: no children");
    if (children.size() == 1) return std::move(children[0]);
    MinMaxTerm t;
    t.op = Op::max_of;
    t.args = std::move(children);
    return t;
  }
  static MinMaxTerm min_of(std::vector<MinMaxTerm> children) {
    if (children.empty()) throw TropError(Errc::empty_input, "min_of: no children");
    if (children.size() == 1) return std::move(children[0]);
    MinMaxTerm t;
    t.op = Op::min_of;
    t.args = std::move(children);
    return t;
  }
  static MinMaxTerm affine(Rat r, std::vector<Rat> prob) {
    Rat s(0);
    for (const Rat& q : prob) {
      if (q < 0) throw TropError(Errc::parse_error, "affine: negative probability");
      s += q;
    }
    if (s != 1) throw TropError(Errc::parse_error, "affine: probabilities must sum to 1");
    MinMaxTerm t;
    t.op = Op::affine;
    t.c = std::move(r);
    t.p = std::move(prob);
    return t;
  }

  bool deterministic() const {
    if (op == Op::affine) return false;
    for (const MinMaxTerm& a : args)
      if (!a.deterministic()) return false;
    return true;
  }

  int max_var() const {
    int m = op == Op::var ? index : -1;
    if (op == Op::affine) m = static_cast<int>(p.size()) - 1;
    for (const MinMaxTerm& a : args) m = std::max(m, a.max_var());
    return m;
  }
};

inline Rat eval_term(const MinMaxTerm& t, const RatVec& x) {
  switch (t.op) {
    case MinMaxTerm::Op::var:
      if (t.index < 0 || t.index >= static_cast<int>(x.size()))
        throw TropError(Errc::dimension_mismatch, "eval: variable index out of range");
      return x[t.index];
    case MinMaxTerm::Op::shift:
      return t.c + eval_term(t.args[0], x);
    case MinMaxTerm::Op::max_of: {
      Rat m = eval_term(t.args[0], x);
      for (std::size_t i = 1; i < t.args.size(); ++i)
        m = rat_max(m, eval_term(t.args[i], x));
      return m;
    }
    case MinMaxTerm::Op::min_of: {
      Rat m = eval_term(t.args[0], x);
      for (std::size_t i = 1; i < t.args.size(); ++i)
        m = rat_min(m, eval_term(t.args[i], x));
      return m;
    }
    case MinMaxTerm::Op::affine: {
      if (t.p.size() != x.size())
        throw TropError(Errc::dimension_mismatch, "eval: affine row length");
      Rat s = t.c;
      for (std::size_t j = 0; j < x.size(); ++j)
        if (t.p[j] != 0) s += t.p[j] * x[j];
      return s;
    }
  }
  throw TropError(Errc::parse_error, "eval: bad node");
}

struct ShapleyOp {
  int n_in = 0;
  std::vector<MinMaxTerm> coords;

  int n_out() const { return static_cast<int>(coords.size()); }
  bool square() const { return n_in == n_out(); }
  bool deterministic() const {
    for (const MinMaxTerm& t : coords)
      if (!t.deterministic()) return false;
    return true;
  }

  static ShapleyOp identity(int n) {
    ShapleyOp T;
    T.n_in = n;
    for (int i = 0; i < n; ++i) T.coords.push_back(MinMaxTerm::var(i));
    return T;
  }
};

inline RatVec eval(const ShapleyOp& T, const RatVec& x) {
  if (static_cast<int>(x.size()) != T.n_in)
    throw TropError(Errc::dimension_mismatch, "eval: input size");
  RatVec y;
  y.reserve(T.coords.size());
  for (const MinMaxTerm& t : T.coords) y.push_back(eval_term(t, x));
  return y;
}

// ---- two-level normal forms -------------------------------------------------
//
// Cnf rows r over R_max: f = /\_rows \/_i (r_i + x_i); Dnf rows over R_min.

struct NormalForm {
  int n = 0;
  std::vector<TropVec> rows;
};

namespace detail {

inline void check_blowup(std::size_t have, std::size_t cap) {
  if (have > cap)
    throw TropError(Errc::size_blowup, "normal form exceeds row cap");
}

// Drops rows that another row dominates: in a CNF (min of max-rows) a row
// entrywise above another can never win the min; dually for DNF.
inline void prune_rows(std::vector<TropVec>& rows, bool cnf) {
  std::vector<TropVec> kept;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    bool redundant = false;
    for (std::size_t s = 0; s < rows.size() && !redundant; ++s) {
      if (r == s) continue;
      bool dominates = true;
      for (std::size_t i = 0; i < rows[r].size() && dominates; ++i)
        dominates = cnf ? rows[s][i] <= rows[r][i] : rows[r][i] <= rows[s][i];
      if (dominates && (rows[r] != rows[s] || s < r)) redundant = true;
    }
    if (!redundant) kept.push_back(rows[r]);
  }
  rows = std::move(kept);
}

// CNF and DNF recursion are mutually dual; `cnf` selects which one.
inline std::vector<TropVec> normal_rows(const MinMaxTerm& t, int n, bool cnf, std::size_t cap) {
  const ExtScalar absent = cnf ? ExtScalar::neg_inf() : ExtScalar::pos_inf();
  switch (t.op) {
    case MinMaxTerm::Op::var: {
      TropVec row(n, absent);
      row[t.index] = ExtScalar::zero();
      return {row};
    }
    case MinMaxTerm::Op::shift: {
      std::vector<TropVec> rows = normal_rows(t.args[0], n, cnf, cap);
      for (TropVec& r : rows)
        for (ExtScalar& e : r)
          if (e.is_finite()) e = ExtScalar(Rat(e.rat() + t.c));
      return rows;
    }
    case MinMaxTerm::Op::max_of:
    case MinMaxTerm::Op::min_of: {
      const bool concat = cnf ? (t.op == MinMaxTerm::Op::min_of)
                              : (t.op == MinMaxTerm::Op::max_of);
      std::vector<std::vector<TropVec>> parts;
      for (const MinMaxTerm& a : t.args) parts.push_back(normal_rows(a, n, cnf, cap));
      if (concat) {
        std::vector<TropVec> rows;
        for (auto& p : parts) {
          check_blowup(rows.size() + p.size(), cap);
          for (TropVec& r : p) rows.push_back(std::move(r));
        }
        prune_rows(rows, cnf);
        return rows;
      }
      // Distribute: pointwise join (CNF) / meet (DNF) over the product.
      std::vector<TropVec> rows = std::move(parts[0]);
      for (std::size_t k = 1; k < parts.size(); ++k) {
        check_blowup(rows.size() * parts[k].size(), cap);
        std::vector<TropVec> next;
        next.reserve(rows.size() * parts[k].size());
        for (const TropVec& r : rows)
          for (const TropVec& s : parts[k]) {
            TropVec m(n);
            for (int i = 0; i < n; ++i)
              m[i] = cnf ? trop_max(r[i], s[i]) : trop_min(r[i], s[i]);
            next.push_back(std::move(m));
          }
        rows = std::move(next);
        prune_rows(rows, cnf);
      }
      return rows;
    }
    case MinMaxTerm::Op::affine:
      throw TropError(Errc::not_deterministic, "normal form of a stochastic term");
  }
  throw TropError(Errc::parse_error, "normal form: bad node");
}

}  // namespace detail

inline NormalForm cnf(const MinMaxTerm& t, int n, std::size_t cap = 1000000) {
  return NormalForm{n, detail::normal_rows(t, n, true, cap)};
}

inline NormalForm dnf(const MinMaxTerm& t, int n, std::size_t cap = 1000000) {
  return NormalForm{n, detail::normal_rows(t, n, false, cap)};
}

inline Rat eval_cnf(const NormalForm& f, const RatVec& x) {
  bool first = true;
  Rat out;
  for (const TropVec& row : f.rows) {
    bool seen = false;
    Rat m;
    for (int i = 0; i < f.n; ++i) {
      if (!row[i].is_finite()) continue;
      Rat v = row[i].rat() + x[i];
      if (!seen || m < v) {
        m = v;
        seen = true;
      }
    }
    if (!seen) throw TropError(Errc::improper_matrix, "cnf row with empty support");
    if (first || m < out) {
      out = m;
      first = false;
    }
  }
  if (first) throw TropError(Errc::empty_input, "empty cnf");
  return out;
}

inline Rat eval_dnf(const NormalForm& f, const RatVec& x) {
  bool first = true;
  Rat out;
  for (const TropVec& row : f.rows) {
    bool seen = false;
    Rat m;
    for (int i = 0; i < f.n; ++i) {
      if (!row[i].is_finite()) continue;
      Rat v = row[i].rat() + x[i];
      if (!seen || v < m) {
        m = v;
        seen = true;
      }
    }
    if (!seen) throw TropError(Errc::improper_matrix, "dnf row with empty support");
    if (first || out < m) {
      out = m;
      first = false;
    }
  }
  if (first) throw TropError(Errc::empty_input, "empty dnf");
  return out;
}

// ---- the A# o B representation ---------------------------------------------

struct ProperPair {
  TropMat A;  // m x p, no identically -inf column; here entries in {0, -inf}
  TropMat B;  // m x n, no identically -inf row
};

inline void validate_proper(const ProperPair& pp) {
  if (pp.A.rows != pp.B.rows)
    throw TropError(Errc::dimension_mismatch, "proper pair: row counts differ");
  for (int k = 0; k < pp.A.cols; ++k) {
    bool any = false;
    for (int i = 0; i < pp.A.rows && !any; ++i) any = !pp.A.at(i, k).is_neg_inf();
    if (!any) throw TropError(Errc::improper_matrix, "A has an identically -inf column");
  }
  for (int i = 0; i < pp.B.rows; ++i) {
    bool any = false;
    for (int j = 0; j < pp.B.cols && !any; ++j) any = !pp.B.at(i, j).is_neg_inf();
    if (!any) throw TropError(Errc::improper_matrix, "B has an identically -inf row");
  }
}

// T = A# o B from the per-coordinate CNFs: B stacks all rows, column i of A
// selects (with weight 0) the rows belonging to coordinate i.
inline ProperPair to_proper_pair(const ShapleyOp& T, std::size_t cap = 1000000) {
  if (!T.deterministic())
    throw TropError(Errc::not_deterministic, "to_proper_pair: stochastic operator");
  std::vector<NormalForm> forms;
  std::size_t m = 0;
  for (const MinMaxTerm& t : T.coords) {
    forms.push_back(cnf(t, T.n_in, cap));
    m += forms.back().rows.size();
  }
  ProperPair pp{TropMat(static_cast<int>(m), T.n_out()),
                TropMat(static_cast<int>(m), T.n_in)};
  int r = 0;
  for (int i = 0; i < T.n_out(); ++i)
    for (const TropVec& row : forms[i].rows) {
      pp.A.at(r, i) = ExtScalar::zero();
      for (int j = 0; j < T.n_in; ++j) pp.B.at(r, j) = row[j];
      ++r;
    }
  validate_proper(pp);
  return pp;
}

inline RatVec eval(const ProperPair& pp, const RatVec& x) {
  TropVec bx = trop_apply(pp.B, to_trop(x));
  return adjoint_apply(pp.A, to_finite(bx));
}

// ---- combinators -------------------------------------------------------------

namespace detail {
inline MinMaxTerm substitute(const MinMaxTerm& t, const std::vector<MinMaxTerm>& repl) {
  switch (t.op) {
    case MinMaxTerm::Op::var:
      return repl[t.index];
    case MinMaxTerm::Op::shift:
      return MinMaxTerm::shift(t.c, substitute(t.args[0], repl));
    case MinMaxTerm::Op::max_of:
    case MinMaxTerm::Op::min_of: {
      std::vector<MinMaxTerm> ch;
      ch.reserve(t.args.size());
      for (const MinMaxTerm& a : t.args) ch.push_back(substitute(a, repl));
      return t.op == MinMaxTerm::Op::max_of ? MinMaxTerm::max_of(std::move(ch))
                                            : MinMaxTerm::min_of(std::move(ch));
    }
    case MinMaxTerm::Op::affine:
      throw TropError(Errc::not_deterministic, "compose through a stochastic leaf");
  }
  throw TropError(Errc::parse_error, "substitute: bad node");
}
}  // namespace detail

inline ShapleyOp compose(const ShapleyOp& T1, const ShapleyOp& T2) {
  if (T1.n_in != T2.n_out())
    throw TropError(Errc::dimension_mismatch, "compose: dimensions incompatible");
  ShapleyOp r;
  r.n_in = T2.n_in;
  for (const MinMaxTerm& t : T1.coords)
    r.coords.push_back(detail::substitute(t, T2.coords));
  return r;
}

inline ShapleyOp join(const ShapleyOp& T1, const ShapleyOp& T2) {
  if (T1.n_in != T2.n_in || T1.n_out() != T2.n_out())
    throw TropError(Errc::dimension_mismatch, "join: dimensions incompatible");
  ShapleyOp r;
  r.n_in = T1.n_in;
  for (int i = 0; i < T1.n_out(); ++i)
    r.coords.push_back(MinMaxTerm::max_of({T1.coords[i], T2.coords[i]}));
  return r;
}

inline ShapleyOp meet(const ShapleyOp& T1, const ShapleyOp& T2) {
  if (T1.n_in != T2.n_in || T1.n_out() != T2.n_out())
    throw TropError(Errc::dimension_mismatch, "meet: dimensions incompatible");
  ShapleyOp r;
  r.n_in = T1.n_in;
  for (int i = 0; i < T1.n_out(); ++i)
    r.coords.push_back(MinMaxTerm::min_of({T1.coords[i], T2.coords[i]}));
  return r;
}

// ---- semiderivative and recession --------------------------------------------

namespace detail {
inline MinMaxTerm semiderivative_term(const MinMaxTerm& t, const RatVec& u) {
  switch (t.op) {
    case MinMaxTerm::Op::var:
      return t;
    case MinMaxTerm::Op::shift:
      return semiderivative_term(t.args[0], u);
    case MinMaxTerm::Op::max_of:
    case MinMaxTerm::Op::min_of: {
      // Keep exactly the children active at u; ties keep every tied child.
      std::vector<Rat> vals;
      vals.reserve(t.args.size());
      for (const MinMaxTerm& a : t.args) vals.push_back(eval_term(a, u));
      Rat sel = vals[0];
      for (const Rat& v : vals)
        sel = t.op == MinMaxTerm::Op::max_of ? rat_max(sel, v) : rat_min(sel, v);
      std::vector<MinMaxTerm> ch;
      for (std::size_t i = 0; i < t.args.size(); ++i)
        if (vals[i] == sel) ch.push_back(semiderivative_term(t.args[i], u));
      return t.op == MinMaxTerm::Op::max_of ? MinMaxTerm::max_of(std::move(ch))
                                            : MinMaxTerm::min_of(std::move(ch));
    }
    case MinMaxTerm::Op::affine:
      return MinMaxTerm::affine(Rat(0), t.p);
  }
  throw TropError(Errc::parse_error, "semiderivative: bad node");
}

inline MinMaxTerm recession_term(const MinMaxTerm& t) {
  switch (t.op) {
    case MinMaxTerm::Op::var:
      return t;
    case MinMaxTerm::Op::shift:
      return recession_term(t.args[0]);
    case MinMaxTerm::Op::max_of:
    case MinMaxTerm::Op::min_of: {
      std::vector<MinMaxTerm> ch;
      ch.reserve(t.args.size());
      for (const MinMaxTerm& a : t.args) ch.push_back(recession_term(a));
      return t.op == MinMaxTerm::Op::max_of ? MinMaxTerm::max_of(std::move(ch))
                                            : MinMaxTerm::min_of(std::move(ch));
    }
    case MinMaxTerm::Op::affine:
      return MinMaxTerm::affine(Rat(0), t.p);
  }
  throw TropError(Errc::parse_error, "recession: bad node");
}
}  // namespace detail

inline ShapleyOp semiderivative(const ShapleyOp& T, const RatVec& u) {
  if (static_cast<int>(u.size()) != T.n_in)
    throw TropError(Errc::dimension_mismatch, "semiderivative: base point size");
  ShapleyOp r;
  r.n_in = T.n_in;
  for (const MinMaxTerm& t : T.coords)
    r.coords.push_back(detail::semiderivative_term(t, u));
  return r;
}

inline ShapleyOp recession(const ShapleyOp& T) {
  ShapleyOp r;
  r.n_in = T.n_in;
  for (const MinMaxTerm& t : T.coords) r.coords.push_back(detail::recession_term(t));
  return r;
}

// First breakpoint of s -> eval(T, u + s h) on s > 0; +inf (nullopt) if the
// map is affine on the whole ray. Semiderivative expansions are exact on
// [0, s*] for any s* below every coordinate's breakpoint.
namespace detail {
// Returns (value at u, slope at 0+, first breakpoint or nullopt).
struct RaySlice {
  Rat value;
  Rat slope;
  std::optional<Rat> breakpoint;
};

inline RaySlice ray_slice(const MinMaxTerm& t, const RatVec& u, const RatVec& h) {
  switch (t.op) {
    case MinMaxTerm::Op::var:
      return {u[t.index], h[t.index], std::nullopt};
    case MinMaxTerm::Op::shift: {
      RaySlice r = ray_slice(t.args[0], u, h);
      r.value += t.c;
      return r;
    }
    case MinMaxTerm::Op::affine: {
      Rat v = t.c, s(0);
      for (std::size_t j = 0; j < t.p.size(); ++j)
        if (t.p[j] != 0) {
          v += t.p[j] * u[j];
          s += t.p[j] * h[j];
        }
      return {v, s, std::nullopt};
    }
    case MinMaxTerm::Op::max_of:
    case MinMaxTerm::Op::min_of: {
      const bool is_max = t.op == MinMaxTerm::Op::max_of;
      std::vector<RaySlice> ch;
      ch.reserve(t.args.size());
      for (const MinMaxTerm& a : t.args) ch.push_back(ray_slice(a, u, h));
      Rat val = ch[0].value;
      for (const RaySlice& r : ch) val = is_max ? rat_max(val, r.value) : rat_min(val, r.value);
      Rat slope;
      bool first = true;
      std::optional<Rat> bp;
      auto tighten = [&](const Rat& b) {
        if (!bp || b < *bp) bp = b;
      };
      for (const RaySlice& r : ch) {
        if (r.breakpoint) tighten(*r.breakpoint);
        if (r.value == val) {
          if (first || (is_max ? slope < r.slope : r.slope < slope)) slope = r.slope;
          first = false;
        }
      }
      // Crossings where a currently dominated child catches up.
      for (const RaySlice& r : ch) {
        if (r.value == val) continue;
        // val + s*slope vs r.value + s*r.slope; they meet at positive s iff
        // the dominated child gains.
        Rat gain = is_max ? r.slope - slope : slope - r.slope;
        if (gain > 0) {
          Rat gap = is_max ? val - r.value : r.value - val;
          tighten(gap / gain);
        }
      }
      return {val, slope, bp};
    }
  }
  throw TropError(Errc::parse_error, "ray_slice: bad node");
}
}  // namespace detail

inline std::optional<Rat> first_breakpoint(const ShapleyOp& T, const RatVec& u,
                                           const RatVec& h) {
  std::optional<Rat> bp;
  for (const MinMaxTerm& t : T.coords) {
    detail::RaySlice r = detail::ray_slice(t, u, h);
    if (r.breakpoint && (!bp || *r.breakpoint < *bp)) bp = r.breakpoint;
  }
  return bp;
}

// ---- axiom checker -------------------------------------------------------------

struct AxiomReport {
  bool pass = true;
  std::string violated;  // "monotonicity" | "homogeneity" | "top-nonexpansive"
  RatVec x, y;
  Rat lambda;
};

template <typename Map, typename Rng>
AxiomReport check_map_axioms(Map&& T, int n, int trials, Rng&& rand_rat) {
  AxiomReport rep;
  for (int t = 0; t < trials; ++t) {
    RatVec x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rand_rat();
      y[i] = x[i] + rat_abs(rand_rat());  // y >= x
    }
    Rat lam = rand_rat();
    RatVec tx = T(x), ty = T(y);
    if (!vec_leq(tx, ty)) {
      rep = {false, "monotonicity", x, y, lam};
      return rep;
    }
    RatVec shifted = T(vec_add_const(x, lam));
    if (shifted != vec_add_const(tx, lam)) {
      rep = {false, "homogeneity", x, y, lam};
      return rep;
    }
    // t(T(x) - T(y)) <= t(x - y) on an arbitrary (not ordered) pair.
    RatVec z(n);
    for (int i = 0; i < n; ++i) z[i] = rand_rat();
    RatVec tz = T(z);
    const std::size_t p = tx.size();
    RatVec d1(p), d2(n);
    for (std::size_t i = 0; i < p; ++i) d1[i] = tx[i] - tz[i];
    for (int i = 0; i < n; ++i) d2[i] = x[i] - z[i];
    if (top(d1) > top(d2)) {
      rep = {false, "top-nonexpansive", x, z, lam};
      return rep;
    }
  }
  return rep;
}

template <typename Rng>
AxiomReport check_shapley_axioms(const ShapleyOp& T, int trials, Rng&& rand_rat) {
  return check_map_axioms([&](const RatVec& x) { return eval(T, x); }, T.n_in, trials,
                          rand_rat);
}

}  // namespace ambitrop

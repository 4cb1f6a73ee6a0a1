#pragma once

// JSON document formats. Scalars travel as canonical strings ("p/q", integer
// string, "-inf", "+inf"); parsers also accept JSON numbers, with floats
// converted to their exact binary rationals. Variable and state indices are
// 1-based in files.

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "ambitrop/alcoved.hpp"
#include "ambitrop/games.hpp"
#include "ambitrop/homog.hpp"
#include "ambitrop/minmax.hpp"
#include "ambitrop/retract.hpp"
#include "ambitrop/tropical.hpp"

namespace ambitrop::io {

using nlohmann::json;

inline json scalar_to_json(const ExtScalar& s) { return s.str(); }

inline ExtScalar scalar_from_json(const json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned())
    return parse_scalar(j.dump());  // integers of any width, exactly
  if (j.is_number_float()) {
    Rat q(j.get<double>());
    q.canonicalize();
    return ExtScalar(q);
  }
  throw TropError(Errc::parse_error, "scalar: expected string or number");
}

inline json rat_to_json(const Rat& q) { return q.get_str(); }

inline Rat rat_from_json(const json& j) {
  ExtScalar s = scalar_from_json(j);
  if (!s.is_finite()) throw TropError(Errc::parse_error, "expected a finite rational");
  return s.rat();
}

inline json vec_to_json(const TropVec& v) {
  json a = json::array();
  for (const ExtScalar& s : v) a.push_back(scalar_to_json(s));
  return a;
}

inline json vec_to_json(const RatVec& v) {
  json a = json::array();
  for (const Rat& q : v) a.push_back(rat_to_json(q));
  return a;
}

inline TropVec vec_from_json(const json& j) {
  if (!j.is_array()) throw TropError(Errc::parse_error, "vector: expected array");
  TropVec v;
  v.reserve(j.size());
  for (const json& e : j) v.push_back(scalar_from_json(e));
  return v;
}

inline RatVec finite_vec_from_json(const json& j) { return to_finite(vec_from_json(j)); }

inline json mat_to_json(const TropMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json r = json::array();
    for (int jx = 0; jx < m.cols; ++jx) r.push_back(scalar_to_json(m.at(i, jx)));
    rows.push_back(std::move(r));
  }
  return json{{"rows", m.rows}, {"cols", m.cols}, {"data", std::move(rows)}};
}

inline TropMat mat_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw TropError(Errc::parse_error, "matrix: expected {rows, cols, data}");
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  if (rows < 0 || cols < 0) throw TropError(Errc::parse_error, "matrix: negative shape");
  const json& data = j.at("data");
  if (!data.is_array() || static_cast<int>(data.size()) != rows)
    throw TropError(Errc::parse_error, "matrix: data has wrong row count");
  TropMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& r = data[i];
    if (!r.is_array() || static_cast<int>(r.size()) != cols)
      throw TropError(Errc::parse_error, "matrix: ragged row");
    for (int k = 0; k < cols; ++k) m.at(i, k) = scalar_from_json(r[k]);
  }
  return m;
}

// ---- min-max terms and operators ----------------------------------------------

inline json term_to_json(const MinMaxTerm& t) {
  switch (t.op) {
    case MinMaxTerm::Op::var:
      return json{{"op", "var"}, {"i", t.index + 1}};
    case MinMaxTerm::Op::shift:
      return json{{"op", "shift"}, {"c", t.c.get_str()}, {"arg", term_to_json(t.args[0])}};
    case MinMaxTerm::Op::max_of:
    case MinMaxTerm::Op::min_of: {
      json args = json::array();
      for (const MinMaxTerm& a : t.args) args.push_back(term_to_json(a));
      return json{{"op", t.op == MinMaxTerm::Op::max_of ? "max" : "min"},
                  {"args", std::move(args)}};
    }
    case MinMaxTerm::Op::affine: {
      json p = json::array();
      for (const Rat& q : t.p) p.push_back(q.get_str());
      return json{{"op", "affine"}, {"r", t.c.get_str()}, {"p", std::move(p)}};
    }
  }
  throw TropError(Errc::parse_error, "term: bad node");
}

inline MinMaxTerm term_from_json(const json& j) {
  if (!j.is_object() || !j.contains("op"))
    throw TropError(Errc::parse_error, "term: expected {op, ...}");
  std::string op = j.at("op").get<std::string>();
  if (op == "var") {
    int i = j.at("i").get<int>();
    if (i < 1) throw TropError(Errc::parse_error, "term: var index must be >= 1");
    return MinMaxTerm::var(i - 1);
  }
  if (op == "shift")
    return MinMaxTerm::shift(rat_from_json(j.at("c")), term_from_json(j.at("arg")));
  if (op == "max" || op == "min") {
    std::vector<MinMaxTerm> args;
    for (const json& a : j.at("args")) args.push_back(term_from_json(a));
    return op == "max" ? MinMaxTerm::max_of(std::move(args))
                       : MinMaxTerm::min_of(std::move(args));
  }
  if (op == "affine") {
    std::vector<Rat> p;
    for (const json& q : j.at("p")) p.push_back(rat_from_json(q));
    return MinMaxTerm::affine(rat_from_json(j.at("r")), std::move(p));
  }
  throw TropError(Errc::parse_error, "term: unknown op '" + op + "'");
}

inline json op_to_json(const ShapleyOp& T) {
  json coords = json::array();
  for (const MinMaxTerm& t : T.coords) coords.push_back(term_to_json(t));
  return json{{"n_in", T.n_in}, {"coords", std::move(coords)}};
}

inline ShapleyOp op_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n_in") || !j.contains("coords"))
    throw TropError(Errc::parse_error, "operator: expected {n_in, coords}");
  ShapleyOp T;
  T.n_in = j.at("n_in").get<int>();
  for (const json& c : j.at("coords")) T.coords.push_back(term_from_json(c));
  for (const MinMaxTerm& t : T.coords)
    if (t.max_var() >= T.n_in)
      throw TropError(Errc::parse_error, "operator: variable index beyond n_in");
  return T;
}

// ---- documents -----------------------------------------------------------------

inline json alcoved_to_json(const AlcovedPoly& P) {
  return json{{"type", "alcoved"}, {"M", mat_to_json(P.M)}};
}

inline AlcovedPoly alcoved_from_json(const json& j) {
  if (j.value("type", "") != "alcoved" || !j.contains("M"))
    throw TropError(Errc::parse_error, "expected {type:\"alcoved\", M}");
  return alcoved_new(mat_from_json(j.at("M")));
}

inline json generators_to_json(const GeneratorSet& E) {
  json mx = json::array(), mn = json::array();
  for (const TropVec& g : E.max_gens) mx.push_back(vec_to_json(g));
  for (const TropVec& h : E.min_gens) mn.push_back(vec_to_json(h));
  return json{{"type", "generators"}, {"n", E.n}, {"max_gens", std::move(mx)},
              {"min_gens", std::move(mn)}};
}

inline GeneratorSet generators_from_json(const json& j) {
  if (j.value("type", "") != "generators")
    throw TropError(Errc::parse_error, "expected {type:\"generators\", ...}");
  int n = j.at("n").get<int>();
  std::vector<TropVec> mx, mn;
  for (const json& g : j.at("max_gens")) mx.push_back(vec_from_json(g));
  for (const json& h : j.at("min_gens")) mn.push_back(vec_from_json(h));
  return make_generator_set(n, std::move(mx), std::move(mn));
}

inline json points_to_json(const std::vector<RatVec>& pts) {
  json a = json::array();
  for (const RatVec& p : pts) a.push_back(vec_to_json(p));
  return json{{"type", "points"}, {"n", pts.empty() ? 0 : static_cast<int>(pts[0].size())},
              {"points", std::move(a)}};
}

inline std::vector<RatVec> points_from_json(const json& j) {
  if (j.value("type", "") != "points")
    throw TropError(Errc::parse_error, "expected {type:\"points\", ...}");
  std::vector<RatVec> pts;
  for (const json& p : j.at("points")) pts.push_back(finite_vec_from_json(p));
  return pts;
}

inline json game_to_json(const MeanPayoffGame& G) {
  return json{{"type", "game"}, {"A", mat_to_json(G.A)}, {"B", mat_to_json(G.B)}};
}

inline MeanPayoffGame game_from_json(const json& j) {
  if (j.value("type", "") != "game" || !j.contains("A") || !j.contains("B"))
    throw TropError(Errc::parse_error, "expected {type:\"game\", A, B}");
  return make_game(mat_from_json(j.at("A")), mat_from_json(j.at("B")));
}

inline json lattice_to_json(int n, const std::vector<CubePoint>& elems) {
  json a = json::array();
  for (CubePoint u : elems) a.push_back(cube_to_string(u, n));
  return json{{"type", "lattice01"}, {"n", n}, {"elements", std::move(a)}};
}

// Parses the element list without verifying the lattice property (the check
// subcommand reports on it).
inline std::pair<int, std::vector<CubePoint>> lattice_elems_from_json(const json& j) {
  if (j.value("type", "") != "lattice01")
    throw TropError(Errc::parse_error, "expected {type:\"lattice01\", ...}");
  int n = j.at("n").get<int>();
  if (n < 1 || n > 32) throw TropError(Errc::size_cap, "lattice01: n out of range");
  std::vector<CubePoint> elems;
  for (const json& e : j.at("elements")) {
    std::string s = e.get<std::string>();
    if (static_cast<int>(s.size()) != n)
      throw TropError(Errc::parse_error, "lattice01: bitstring of wrong width");
    elems.push_back(cube_from_string(s));
  }
  return {n, std::move(elems)};
}

inline json policy_to_json(const std::vector<std::vector<int>>& pol) {
  json a = json::array();
  for (const auto& s : pol) {
    json set = json::array();
    for (int v : s) set.push_back(v + 1);
    a.push_back(std::move(set));
  }
  return a;
}

inline json complex_to_json(const CellComplex& complex, int m) {
  json cells = json::array();
  for (const Cell& c : complex.cells) {
    cells.push_back(json{{"star", mat_to_json(c.star)},
                         {"dim", c.dim},
                         {"sigma", policy_to_json(c.type.sigma)},
                         {"pi", policy_to_json(c.type.pi)}});
  }
  json faces = json::array();
  for (auto [a, b] : complex.faces) faces.push_back(json::array({a, b}));
  json out{{"type", "complex"}, {"n", complex.n}, {"m", m},
           {"cells", std::move(cells)}, {"faces", std::move(faces)},
           {"lambda", complex.lambda.get_str()}, {"recentered", complex.recentered}};
  if (complex.empty_certificate)
    out["empty_certificate"] = complex.empty_certificate->get_str();
  return out;
}

inline std::string dump(const json& j) { return j.dump() + "\n"; }

}  // namespace ambitrop::io

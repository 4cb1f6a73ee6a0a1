// Command-line front end: every capability of the library over JSON
// documents, plus SVG rendering and an end-to-end selfcheck of the worked
// examples. Exit codes: 0 success, 1 domain errors, 2 usage/parse errors.
// Machine-readable errors go to the output stream as {"error": code, ...};
// human diagnostics go to stderr.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ambitrop/json_io.hpp"
#include "ambitrop/svg_plot.hpp"

using namespace ambitrop;
using ambitrop::io::json;

namespace {

std::string read_stream(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw TropError(Errc::parse_error, "cannot open input '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_stream(path));
  } catch (const json::parse_error& e) {
    throw TropError(Errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
}

void write_out(const std::string& path, const std::string& payload) {
  if (path == "-" || path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(path);
  if (!f) throw TropError(Errc::parse_error, "cannot open output '" + path + "'");
  f << payload;
}

json error_payload(const TropError& e) {
  json out{{"error", e.code_name()}};
  if (!e.witness().empty()) {
    json w = json::array();
    for (int v : e.witness()) w.push_back(v + 1);  // 1-based in files
    out["witness"] = std::move(w);
  } else {
    out["detail"] = e.what();
  }
  return out;
}

RatVec read_point(const std::string& path) { return io::finite_vec_from_json(read_json(path)); }

// ---- selfcheck ------------------------------------------------------------------

MinMaxTerm V(int i) { return MinMaxTerm::var(i); }

ShapleyOp butterfly_op() {
  ShapleyOp T;
  T.n_in = 3;
  T.coords.push_back(MinMaxTerm::max_of({MinMaxTerm::min_of({V(0), V(1)}),
                                         MinMaxTerm::min_of({V(0), V(2)}),
                                         MinMaxTerm::min_of({V(1), V(2)})}));
  T.coords.push_back(V(1));
  T.coords.push_back(V(2));
  return T;
}

GeneratorSet butterfly_gens() {
  TropMat M1(3, 3), M2(3, 3);
  M1.at(1, 0) = ExtScalar(0);
  M1.at(0, 2) = ExtScalar(0);
  M2.at(2, 0) = ExtScalar(0);
  M2.at(0, 1) = ExtScalar(0);
  return generators_of_union({alcoved_new(M1), alcoved_new(M2)});
}

MeanPayoffGame one_player_game() {
  TropMat B(4, 4);
  B.at(0, 1) = ExtScalar(-1);
  B.at(0, 2) = ExtScalar(0);
  B.at(1, 1) = ExtScalar(-1);
  B.at(1, 3) = ExtScalar(-1);
  B.at(2, 2) = ExtScalar(0);
  B.at(2, 3) = ExtScalar(0);
  B.at(3, 3) = ExtScalar(1);
  return make_game(TropMat::identity(4), B);
}

RatVec anchor_last(const RatVec& x) {
  RatVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - x.back();
  return r;
}

int run_selfcheck() {
  int failures = 0;
  auto report = [&](bool ok, const std::string& label) {
    std::cout << (ok ? "ok - " : "FAIL - ") << label << "\n";
    if (!ok) ++failures;
  };

  {  // eigenproblem of the one-player example
    MeanPayoffGame F = one_player_game();
    RatVec u{Rat(-2), Rat(-2), Rat(-1), Rat(0)};
    bool ok = check_eigen(F, u, Rat(1));
    auto found = find_eigen(F);
    ok = ok && found && found->second == 1;
    if (ok) {
      RatVec anchored(4);
      Rat t = top(found->first);
      for (int i = 0; i < 4; ++i) anchored[i] = found->first[i] - t;
      ok = anchored == u;
    }
    PolicyPair pol = calibrated_policies(F, u, Rat(1));
    ok = ok && pol.pi[0] == std::vector<int>{2} && pol.pi[1] == std::vector<int>{3} &&
         pol.pi[2] == std::vector<int>{3} && pol.pi[3] == std::vector<int>{3};
    RatVec v = value_iteration(F, 50);
    for (int i = 0; i < 4; ++i) ok = ok && rat_abs(v[i] / 50 - 1) <= Rat(4, 50);
    report(ok, "one-player eigenpair, calibrated arcs, value iteration");
  }

  {  // butterfly closed-form projections
    GeneratorSet B = butterfly_gens();
    bool ok = true;
    for (int a = -3; a <= 3 && ok; ++a)
      for (int b = -3; b <= 3 && ok; ++b)
        for (int c = -3; c <= 3 && ok; ++c) {
          RatVec x{Rat(a), Rat(2 * b + 1, 2), Rat(3 * c + 1, 3)};
          ok = p_max(B, x) == RatVec{rat_min(x[0], rat_max(x[1], x[2])), x[1], x[2]} &&
               p_min(B, x) == RatVec{rat_max(x[0], rat_min(x[1], x[2])), x[1], x[2]};
        }
    report(ok, "butterfly projection closed forms");
  }

  {  // shifted butterfly retraction formula
    TropMat MA(3, 3), MB(3, 3);
    MA.at(1, 0) = ExtScalar(0);
    MA.at(0, 2) = ExtScalar(0);
    MA.at(2, 1) = ExtScalar(-1);
    MB.at(2, 0) = ExtScalar(0);
    MB.at(0, 1) = ExtScalar(0);
    MB.at(1, 2) = ExtScalar(-1);
    GeneratorSet E = generators_of_union({alcoved_new(MA), alcoved_new(MB)});
    bool ok = true;
    Rat one(1);
    for (int a = -3; a <= 3 && ok; ++a)
      for (int b = -3; b <= 3 && ok; ++b)
        for (int c = -3; c <= 3 && ok; ++c) {
          RatVec x{Rat(2 * a + 1, 2), Rat(b), Rat(4 * c - 1, 4)};
          RatVec q = q_minus(E, x);
          Rat c1 = rat_max(rat_max(rat_min(rat_min(x[0], x[1]), one + x[2]),
                                   rat_min(rat_min(x[0], one + x[1]), x[2])),
                           rat_min(rat_min(x[1], x[2]), one + x[0]));
          Rat c2 = rat_min(rat_min(x[1], one + x[0]), one + x[2]);
          Rat c3 = rat_min(rat_min(x[2], one + x[1]), one + x[0]);
          ok = q == RatVec{c1, c2, c3};
        }
    report(ok, "shifted-butterfly canonical retraction formula");
  }

  {  // segment counterexample: projection values and sunny failure
    std::vector<RatVec> pts;
    for (int k = 0; k <= 100; ++k) {
      Rat t = (k == 81) ? Rat(13, 16) : Rat(k, 100);
      t.canonicalize();
      pts.push_back(RatVec{t, Rat(1) - t, Rat(0)});
    }
    GeneratorSet E = points_as_generators(pts);
    RatVec x{Rat(2), Rat(1, 2), Rat(0)};
    RatVec u = p_max(E, x);
    RatVec y = anchor_last(p_min(E, u));
    RatVec xp(3);
    for (int i = 0; i < 3; ++i) xp[i] = (y[i] + x[i]) / 2;
    RatVec yp = anchor_last(p_min(E, p_max(E, xp)));
    bool ok = u == RatVec{Rat(1), Rat(1, 2), Rat(0)} &&
              y == RatVec{Rat(3, 4), Rat(1, 4), Rat(0)} &&
              yp == RatVec{Rat(13, 16), Rat(3, 16), Rat(0)} && yp != y;
    report(ok, "segment counterexample: retraction is not sunny");
  }

  {  // butterfly cell complex
    MeanPayoffGame G = make_game(to_proper_pair(butterfly_op()));
    CellComplex complex = enumerate_cells(G);
    TropMat W1(3, 3), W2(3, 3);
    W1.at(1, 0) = ExtScalar(0);
    W1.at(0, 2) = ExtScalar(0);
    W2.at(2, 0) = ExtScalar(0);
    W2.at(0, 1) = ExtScalar(0);
    TropMat E1 = kleene_star(W1), E2 = kleene_star(W2);
    int dim3 = 0;
    bool saw1 = false, saw2 = false;
    for (const Cell& c : complex.cells) {
      if (c.dim == 3) {
        ++dim3;
        saw1 = saw1 || c.star == E1;
        saw2 = saw2 || c.star == E2;
      }
    }
    report(dim3 == 2 && saw1 && saw2, "butterfly complex: two maximal cells");
  }

  {  // skeleton and the lattice correspondence
    std::vector<CubePoint> sk = skeleton(butterfly_op());
    std::vector<CubePoint> want{cube_from_string("000"), cube_from_string("010"),
                                cube_from_string("110"), cube_from_string("001"),
                                cube_from_string("101"), cube_from_string("111")};
    std::sort(want.begin(), want.end());
    bool ok = sk == want;

    HypercubeLattice S = make_lattice(3, sk);
    std::vector<WeylCell> fan = chains_to_fan(S);
    int card4 = 0;
    for (const WeylCell& c : fan)
      if (c.chain.size() == 4) ++card4;
    ok = ok && card4 == 2;
    report(ok, "butterfly skeleton and its two maximal chains");
  }

  {  // lattice example and its non-lattice projection
    std::vector<CubePoint> L;
    for (const char* s : {"00000", "11111", "01001", "00101", "01110", "11101"})
      L.push_back(cube_from_string(s));
    bool ok = is_lattice(5, L).ok;
    std::vector<CubePoint> proj;
    for (CubePoint u : L) proj.push_back(u & 0b1111u);
    LatticeVerdict v = is_lattice(4, proj);
    ok = ok && !v.ok && v.candidates.size() == 2;
    if (ok) {
      std::vector<CubePoint> mubs = v.candidates;
      std::sort(mubs.begin(), mubs.end());
      std::vector<CubePoint> want{cube_from_string("0111"), cube_from_string("1110")};
      std::sort(want.begin(), want.end());
      ok = mubs == want;
    }
    report(ok, "5-cube lattice and its non-lattice projection");
  }

  {  // hulls
    AmbiCone pair = ambitropical_hull({RatVec{Rat(1), Rat(0), Rat(0)},
                                       RatVec{Rat(0), Rat(1), Rat(0)}});
    bool ok = pair.fixes_qplus(RatVec{Rat(1), Rat(0), Rat(0)}) &&
              pair.fixes_qplus(RatVec{Rat(0), Rat(1), Rat(0)}) &&
              pair.fixes_qplus(RatVec{Rat(1), Rat(1), Rat(0)}) &&
              !pair.fixes_qplus(RatVec{Rat(1, 2), Rat(1, 2), Rat(0)});
    std::vector<RatVec> nine{{Rat(4), Rat(0), Rat(0)},  {Rat(5), Rat(2), Rat(0)},
                             {Rat(3), Rat(4), Rat(0)},  {Rat(1), Rat(3), Rat(0)},
                             {Rat(0), Rat(4), Rat(2)},  {Rat(0), Rat(2), Rat(4)},
                             {Rat(0), Rat(2), Rat(2)},  {Rat(0), Rat(-1), Rat(0)},
                             {Rat(4), Rat(0), Rat(3)}};
    AmbiCone hull = ambitropical_hull(nine);
    for (const RatVec& a : nine) ok = ok && hull.fixes_qplus(a);
    report(ok, "two-point and nine-point ambitropical hulls");
  }

  std::cout << (failures == 0 ? "selfcheck passed\n" : "selfcheck FAILED\n");
  return failures == 0 ? 0 : 1;
}

// ---- subcommand bodies ----------------------------------------------------------

struct Options {
  std::string in, out = "-", point, from, to, balls, map = "qminus", u_path, lambda;
  long horizon = 1;
  long max_iters = 10000;
  int samples = 33;
  int cap = 14;
  long leaf_cap = 200000;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  std::string box;
};

json cmd_star(const Options& o) {
  TropMat M = io::mat_from_json(read_json(o.in));
  return json{{"star", io::mat_to_json(kleene_star(M))}};
}

json cmd_alcoved(const Options& o) {
  AlcovedPoly P = io::alcoved_from_json(read_json(o.in));
  json out{{"star", io::mat_to_json(P.star)}, {"dimension", alcoved_dimension(P)}};
  json gens = json::array(), duals = json::array();
  for (const TropVec& g : alcoved_generators(P)) gens.push_back(io::vec_to_json(g));
  for (const TropVec& h : alcoved_dual_generators(P)) duals.push_back(io::vec_to_json(h));
  out["generators"] = std::move(gens);
  out["dual_generators"] = std::move(duals);
  if (!o.point.empty()) {
    RatVec x = read_point(o.point);
    out["contains"] = alcoved_contains(P, x);
    out["project_up"] = io::vec_to_json(project_up(P, x));
    out["project_down"] = io::vec_to_json(project_down(P, x));
  }
  return out;
}

json cmd_eval(const Options& o) {
  ShapleyOp T = io::op_from_json(read_json(o.in));
  RatVec x = read_point(o.point);
  return json{{"value", io::vec_to_json(eval(T, x))}};
}

json cmd_hull(const Options& o) {
  std::vector<RatVec> pts = io::points_from_json(read_json(o.in));
  AmbiCone hull = ambitropical_hull(pts);
  json out = io::generators_to_json(hull.gens);
  out["hilbert_bound"] = generator_hilbert_bound(hull.gens).get_str();
  return out;
}

RatVec apply_map(const GeneratorSet& E, const std::string& map, const RatVec& x) {
  if (map == "qminus") return q_minus(E, x);
  if (map == "qplus") return q_plus(E, x);
  if (map == "pmax") return p_max(E, x);
  if (map == "pmin") return p_min(E, x);
  throw TropError(Errc::parse_error, "unknown map '" + map + "'");
}

json cmd_project(const Options& o) {
  GeneratorSet E = io::generators_from_json(read_json(o.in));
  RatVec x = read_point(o.point);
  RatVec y = apply_map(E, o.map, x);
  return json{{"image", io::vec_to_json(y)}, {"fixed", y == x}};
}

json cmd_interval(const Options& o) {
  GeneratorSet E = io::generators_from_json(read_json(o.in));
  RatVec z = read_point(o.point);
  auto [lo, hi] = co_approximation_interval(E, z);
  return json{{"lo", io::vec_to_json(lo)}, {"hi", io::vec_to_json(hi)}};
}

json cmd_witness(const Options& o) {
  GeneratorSet E = io::generators_from_json(read_json(o.in));
  json doc = read_json(o.balls);
  std::vector<RatVec> centers;
  std::vector<Rat> radii;
  for (const json& c : doc.at("centers")) centers.push_back(io::finite_vec_from_json(c));
  for (const json& r : doc.at("radii")) radii.push_back(io::rat_from_json(r));
  RatVec w = hyperconvexity_witness(E, centers, radii);
  json dists = json::array();
  for (const RatVec& c : centers) dists.push_back(sup_dist(w, c).get_str());
  return json{{"witness", io::vec_to_json(w)}, {"distances", std::move(dists)}};
}

json cmd_geodesic(const Options& o) {
  GeneratorSet E = io::generators_from_json(read_json(o.in));
  RatVec a = read_point(o.from), b = read_point(o.to);
  auto Q = [&](const RatVec& v) { return apply_map(E, o.map, v); };
  std::vector<RatVec> line = geodesic(Q, a, b, o.samples);
  json pts = json::array();
  for (const RatVec& p : line) pts.push_back(io::vec_to_json(p));
  return json{{"polyline", std::move(pts)},
              {"sup_additive", polyline_additive_sup(line)},
              {"hilbert_additive", polyline_additive_hilbert(line)}};
}

json cmd_mpg_value(const Options& o) {
  MeanPayoffGame G = io::game_from_json(read_json(o.in));
  RatVec v = value_iteration(G, o.horizon);
  RatVec chi(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) chi[i] = v[i] / Rat(o.horizon > 0 ? o.horizon : 1);
  return json{{"chi", io::vec_to_json(chi)}, {"horizon", o.horizon}, {"v", io::vec_to_json(v)}};
}

json cmd_mpg_eigen(const Options& o) {
  MeanPayoffGame G = io::game_from_json(read_json(o.in));
  auto found = find_eigen(G, o.max_iters);
  if (!found) return json{{"error", "NoEigenpair"}, {"max_iters", o.max_iters}};
  RatVec u = found->first;
  Rat t = top(u);
  for (Rat& x : u) x -= t;  // anchor the top at 0
  return json{{"lambda", found->second.get_str()}, {"u", io::vec_to_json(u)}};
}

json cmd_mpg_calibrated(const Options& o) {
  MeanPayoffGame G = io::game_from_json(read_json(o.in));
  RatVec u;
  Rat lambda;
  if (!o.u_path.empty()) {
    u = read_point(o.u_path);
    if (o.lambda.empty())
      throw TropError(Errc::parse_error, "--lambda is required with --u");
    lambda = io::rat_from_json(json(o.lambda));
  } else {
    auto found = find_eigen(G, o.max_iters);
    if (!found)
      throw TropError(Errc::not_an_eigenvector, "no eigenpair found within budget");
    u = found->first;
    lambda = found->second;
  }
  PolicyPair pol = calibrated_policies(G, u, lambda);
  return json{{"lambda", lambda.get_str()},
              {"pi", io::policy_to_json(pol.pi)},
              {"sigma", io::policy_to_json(pol.sigma)},
              {"u", io::vec_to_json(u)}};
}

json cmd_mpg_cells(const Options& o) {
  MeanPayoffGame G = io::game_from_json(read_json(o.in));
  CellComplex complex = enumerate_cells(G, o.cap, o.leaf_cap, std::max(1, o.threads));
  return io::complex_to_json(complex, G.m);
}

json cmd_lattice_check(const Options& o) {
  auto [n, elems] = io::lattice_elems_from_json(read_json(o.in));
  LatticeVerdict v = is_lattice(n, elems);
  if (v.ok) return json{{"lattice", true}};
  json out{{"lattice", false}};
  if (v.missing_bottom) out["missing"] = "bottom";
  if (v.missing_top) out["missing"] = "top";
  if (!v.missing_bottom && !v.missing_top) {
    out["pair"] = json::array({cube_to_string(v.a, n), cube_to_string(v.b, n)});
    json cands = json::array();
    for (CubePoint u : v.candidates) cands.push_back(cube_to_string(u, n));
    out[v.upper_failure ? "minimal_upper_bounds" : "maximal_lower_bounds"] = std::move(cands);
  }
  return out;
}

json cmd_lattice_to_op(const Options& o) {
  auto [n, elems] = io::lattice_elems_from_json(read_json(o.in));
  HypercubeLattice S = make_lattice(n, elems);
  return io::op_to_json(operator_from_lattice(S));
}

json cmd_lattice_fan(const Options& o) {
  auto [n, elems] = io::lattice_elems_from_json(read_json(o.in));
  HypercubeLattice S = make_lattice(n, elems);
  json cells = json::array();
  for (const WeylCell& c : chains_to_fan(S)) {
    json chain = json::array();
    for (CubePoint u : c.chain) chain.push_back(cube_to_string(u, n));
    json blocks = json::array();
    for (const auto& blk : c.blocks) {
      json b = json::array();
      for (int i : blk) b.push_back(i + 1);
      blocks.push_back(std::move(b));
    }
    cells.push_back(json{{"chain", std::move(chain)},
                         {"partition", std::move(blocks)},
                         {"dim", c.dim},
                         {"star", io::mat_to_json(c.star)}});
  }
  return json{{"type", "fan"}, {"n", n}, {"cells", std::move(cells)}};
}

json cmd_skeleton(const Options& o) {
  ShapleyOp T = io::op_from_json(read_json(o.in));
  std::vector<CubePoint> sk = skeleton(T);
  return io::lattice_to_json(T.n_in, sk);
}

std::string cmd_plot(const Options& o) {
  json doc = read_json(o.in);
  std::string type = doc.value("type", "");
  std::optional<Rat> box;
  if (!o.box.empty()) box = io::rat_from_json(json(o.box));
  std::vector<svg::Shape> shapes;
  if (type == "alcoved") {
    AlcovedPoly P = io::alcoved_from_json(doc);
    if (P.n != 3) throw TropError(Errc::unsupported_dimension, "plot: n must be 3");
    Rat R = box ? *box : svg::default_radius_from_star(P.star);
    shapes = svg::shapes_of_alcoved(P, R);
  } else if (type == "generators" || type == "points") {
    GeneratorSet E = type == "points"
                         ? points_as_generators(io::points_from_json(doc))
                         : io::generators_from_json(doc);
    if (E.n != 3) throw TropError(Errc::unsupported_dimension, "plot: n must be 3");
    shapes = svg::shapes_of_generators(E, o.samples);
  } else if (type == "complex") {
    if (doc.at("n").get<int>() != 3)
      throw TropError(Errc::unsupported_dimension, "plot: n must be 3");
    CellComplex complex;
    complex.n = 3;
    Rat R(1);
    for (const json& c : doc.at("cells")) {
      Cell cell;
      cell.star = io::mat_from_json(c.at("star"));
      cell.dim = c.at("dim").get<int>();
      complex.cells.push_back(std::move(cell));
      R = rat_max(R, svg::default_radius_from_star(complex.cells.back().star));
    }
    if (box) R = *box;
    shapes = svg::shapes_of_complex(complex, R);
  } else {
    throw TropError(Errc::parse_error, "plot: expected alcoved, generators, points or complex");
  }
  return svg::render(std::move(shapes));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropical cones, canonical retractions, mean-payoff games"};
  app.require_subcommand(1);
  Options o;

  auto add_io = [&](CLI::App* cmd, bool need_in = true) {
    auto* in = cmd->add_option("--in", o.in, "input document (- for stdin)");
    if (need_in) in->required();
    cmd->add_option("--out", o.out, "output path (- for stdout)");
  };

  auto* star = app.add_subcommand("star", "Kleene star of a matrix");
  add_io(star);
  auto* alc = app.add_subcommand("alcoved", "star, generators and membership of Q(M)");
  add_io(alc);
  alc->add_option("--point", o.point, "vector document to test");
  auto* ev = app.add_subcommand("eval", "evaluate an operator at a point");
  add_io(ev);
  ev->add_option("--point", o.point, "vector document")->required();
  auto* hull = app.add_subcommand("hull", "ambitropical hull of a point set");
  add_io(hull);
  auto* project = app.add_subcommand("project", "apply a projection or retraction");
  add_io(project);
  project->add_option("--point", o.point)->required();
  project->add_option("--map", o.map, "qminus | qplus | pmax | pmin");
  auto* interval = app.add_subcommand("interval", "best co-approximation interval");
  add_io(interval);
  interval->add_option("--point", o.point)->required();
  auto* witness = app.add_subcommand("witness", "hyperconvexity witness for a ball family");
  add_io(witness);
  witness->add_option("--balls", o.balls, "{centers, radii} document")->required();
  auto* geo = app.add_subcommand("geodesic", "retraction image of a segment");
  add_io(geo);
  geo->add_option("--from", o.from)->required();
  geo->add_option("--to", o.to)->required();
  geo->add_option("--samples", o.samples);
  geo->add_option("--map", o.map);

  auto* mpg = app.add_subcommand("mpg", "mean-payoff game analysis");
  mpg->require_subcommand(1);
  auto* value = mpg->add_subcommand("value", "finite-horizon values");
  add_io(value);
  value->add_option("--horizon", o.horizon)->required();
  auto* eigen = mpg->add_subcommand("eigen", "search for T(u) = lambda + u");
  add_io(eigen);
  eigen->add_option("--max-iters", o.max_iters);
  auto* calib = mpg->add_subcommand("calibrated", "calibrated policy pair");
  add_io(calib);
  calib->add_option("--u", o.u_path, "eigenvector document");
  calib->add_option("--lambda", o.lambda, "eigenvalue (with --u)");
  calib->add_option("--max-iters", o.max_iters);
  auto* mcells = mpg->add_subcommand("cells", "fixed-point cell complex");
  add_io(mcells);
  mcells->add_option("--cap", o.cap, "state cap on n+m");
  mcells->add_option("--leaf-cap", o.leaf_cap);
  mcells->add_option("--threads", o.threads);

  auto* cells = app.add_subcommand("cells", "fixed-point cell complex of a game");
  add_io(cells);
  cells->add_option("--cap", o.cap);
  cells->add_option("--leaf-cap", o.leaf_cap);
  cells->add_option("--threads", o.threads);

  auto* lattice = app.add_subcommand("lattice", "hypercube lattice tools");
  lattice->require_subcommand(1);
  auto* lcheck = lattice->add_subcommand("check", "verify the lattice property");
  add_io(lcheck);
  auto* ltoop = lattice->add_subcommand("to-op", "monotone retraction of a lattice");
  add_io(ltoop);
  auto* lfan = lattice->add_subcommand("fan", "Weyl cells of the chains");
  add_io(lfan);

  auto* skel = app.add_subcommand("skeleton", "0/1 fixed points of a homogeneous operator");
  add_io(skel);

  auto* plot = app.add_subcommand("plot", "SVG cross-section of a 3-dimensional document");
  add_io(plot);
  plot->add_option("--box", o.box, "bounding Hilbert radius (rational)");
  plot->add_option("--samples", o.samples, "hull polyline samples");

  auto* self = app.add_subcommand("selfcheck", "run the built-in worked examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (self->parsed()) return run_selfcheck();
    std::string payload;
    if (star->parsed()) payload = io::dump(cmd_star(o));
    else if (alc->parsed()) payload = io::dump(cmd_alcoved(o));
    else if (ev->parsed()) payload = io::dump(cmd_eval(o));
    else if (hull->parsed()) payload = io::dump(cmd_hull(o));
    else if (project->parsed()) payload = io::dump(cmd_project(o));
    else if (interval->parsed()) payload = io::dump(cmd_interval(o));
    else if (witness->parsed()) payload = io::dump(cmd_witness(o));
    else if (geo->parsed()) payload = io::dump(cmd_geodesic(o));
    else if (value->parsed()) payload = io::dump(cmd_mpg_value(o));
    else if (eigen->parsed()) {
      json out = cmd_mpg_eigen(o);
      payload = io::dump(out);
      write_out(o.out, payload);
      return out.contains("error") ? 1 : 0;
    }
    else if (calib->parsed()) payload = io::dump(cmd_mpg_calibrated(o));
    else if (mcells->parsed() || cells->parsed()) payload = io::dump(cmd_mpg_cells(o));
    else if (lcheck->parsed()) payload = io::dump(cmd_lattice_check(o));
    else if (ltoop->parsed()) payload = io::dump(cmd_lattice_to_op(o));
    else if (lfan->parsed()) payload = io::dump(cmd_lattice_fan(o));
    else if (skel->parsed()) payload = io::dump(cmd_skeleton(o));
    else if (plot->parsed()) payload = cmd_plot(o);
    write_out(o.out, payload);
    return 0;
  } catch (const TropError& e) {
    std::cerr << "error: " << e.what() << "\n";
    try {
      write_out(o.out, io::dump(error_payload(e)));
    } catch (...) {
      std::cout << io::dump(error_payload(e));
    }
    return e.code() == Errc::parse_error ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ambitrop/json_io.hpp"
#include "test_util.hpp"

using namespace ambitrop;
using ambitrop::io::json;

namespace {

MinMaxTerm V(int i) { return MinMaxTerm::var(i); }

MinMaxTerm random_term(testutil::Rng& rng, int n, int depth) {
  if (depth == 0 || rng.chance(1, 4)) {
    if (rng.chance(1, 5)) {
      std::vector<Rat> p(n, Rat(0));
      p[rng.integer(0, n - 1)] = Rat(1, 2);
      p[0] += Rat(1, 2);
      return MinMaxTerm::affine(rng.rational(-2, 2, 4), p);
    }
    return V(static_cast<int>(rng.integer(0, n - 1)));
  }
  std::vector<MinMaxTerm> ch;
  for (int i = 0; i < 2; ++i) ch.push_back(random_term(rng, n, depth - 1));
  MinMaxTerm node = rng.chance(1, 2) ? MinMaxTerm::max_of(std::move(ch))
                                     : MinMaxTerm::min_of(std::move(ch));
  if (rng.chance(1, 3)) return MinMaxTerm::shift(rng.rational(-2, 2, 4), node);
  return node;
}

}  // namespace

TEST_CASE("scalar encoding: strings out, strings/numbers/floats in") {
  CHECK(io::scalar_to_json(ExtScalar(Rat(-7, 2))) == json("-7/2"));
  CHECK(io::scalar_to_json(ExtScalar(3)) == json("3"));
  CHECK(io::scalar_to_json(ExtScalar::neg_inf()) == json("-inf"));
  CHECK(io::scalar_to_json(ExtScalar::pos_inf()) == json("+inf"));

  CHECK(io::scalar_from_json(json("-7/2")) == ExtScalar(Rat(-7, 2)));
  CHECK(io::scalar_from_json(json(5)) == ExtScalar(5));
  CHECK(io::scalar_from_json(json(-5)) == ExtScalar(-5));
  CHECK(io::scalar_from_json(json(0.25)) == ExtScalar(Rat(1, 4)));
  CHECK(io::scalar_from_json(json(0.1)) != ExtScalar(Rat(1, 10)));  // exact binary
  CHECK(io::scalar_from_json(json("0.1")) == ExtScalar(Rat(1, 10)));
  CHECK_THROWS_AS(io::scalar_from_json(json("nonsense")), TropError);
  CHECK_THROWS_AS(io::scalar_from_json(json::object()), TropError);
}

TEST_CASE("round trips are bit-exact") {
  testutil::Rng rng(503);

  for (int t = 0; t < 50; ++t) {
    // Matrices with infinities.
    TropMat M(3, 4);
    for (auto& e : M.a) {
      long pick = rng.integer(0, 9);
      if (pick == 0)
        e = ExtScalar::neg_inf();
      else if (pick == 1)
        e = ExtScalar::pos_inf();
      else
        e = ExtScalar(rng.rational(-20, 20, 7));
    }
    CHECK(io::mat_from_json(io::mat_to_json(M)) == M);

    // Vectors.
    TropVec v;
    for (int i = 0; i < 5; ++i) v.push_back(ExtScalar(rng.rational(-9, 9, 11)));
    CHECK(io::vec_from_json(io::vec_to_json(v)) == v);

    // Terms / operators (evaluation equality after reparse).
    ShapleyOp T;
    T.n_in = 3;
    for (int i = 0; i < 3; ++i) T.coords.push_back(random_term(rng, 3, 3));
    ShapleyOp T2 = io::op_from_json(io::op_to_json(T));
    for (int s = 0; s < 20; ++s) {
      RatVec x = rng.vec(3, -6, 6);
      CHECK(eval(T, x) == eval(T2, x));
    }
    // And the serialized forms agree byte for byte.
    CHECK(io::op_to_json(T).dump() == io::op_to_json(T2).dump());
  }
}

TEST_CASE("document round trips") {
  TropMat M(2, 2);
  M.at(0, 1) = ExtScalar(0);
  AlcovedPoly P = alcoved_new(M);
  AlcovedPoly P2 = io::alcoved_from_json(io::alcoved_to_json(P));
  CHECK(P2.star == P.star);

  std::vector<RatVec> pts{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  GeneratorSet E = points_as_generators(pts);
  GeneratorSet E2 = io::generators_from_json(io::generators_to_json(E));
  CHECK(E2.max_gens == E.max_gens);
  CHECK(E2.min_gens == E.min_gens);

  CHECK(io::points_from_json(io::points_to_json(pts)) == pts);

  TropMat B(2, 2);
  B.at(0, 0) = ExtScalar(Rat(1, 3));
  B.at(1, 1) = ExtScalar(Rat(-2));
  MeanPayoffGame G = make_game(TropMat::identity(2), B);
  MeanPayoffGame G2 = io::game_from_json(io::game_to_json(G));
  CHECK(G2.A == G.A);
  CHECK(G2.B == G.B);

  std::vector<CubePoint> elems{0u, 0b10010u, 0b11111u};
  json lat = io::lattice_to_json(5, elems);
  auto [n, parsed] = io::lattice_elems_from_json(lat);
  CHECK(n == 5);
  CHECK(parsed == elems);
  CHECK(lat.at("elements")[1] == json("01001"));
}

TEST_CASE("1-based variable indices in files") {
  json var = io::term_to_json(V(0));
  CHECK(var.at("i") == json(1));
  MinMaxTerm back = io::term_from_json(var);
  CHECK(back.index == 0);
  CHECK_THROWS_AS(io::term_from_json(json{{"op", "var"}, {"i", 0}}), TropError);
}

TEST_CASE("malformed documents raise ParseError") {
  CHECK_THROWS_AS(io::mat_from_json(json{{"rows", 2}, {"cols", 2}}), TropError);
  CHECK_THROWS_AS(io::game_from_json(json{{"type", "alcoved"}}), TropError);
  json ragged{{"rows", 2}, {"cols", 2}, {"data", json::array({json::array({"0"})})}};
  CHECK_THROWS_AS(io::mat_from_json(ragged), TropError);
  CHECK_THROWS_AS(io::op_from_json(json{{"n_in", 1},
                                        {"coords", json::array({io::term_to_json(V(3))})}}),
                  TropError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ambitrop/tropical.hpp"
#include "test_util.hpp"

using namespace ambitrop;

namespace {

ExtScalar ni() { return ExtScalar::neg_inf(); }

TropMat mat(int r, int c, std::vector<ExtScalar> entries) {
  TropMat m(r, c);
  m.a = std::move(entries);
  return m;
}

// Independent oracle: best weight over all explicit paths i -> j of length
// 0..max_len, enumerated one arc at a time.
ExtScalar path_sup(const TropMat& M, int i, int j, int max_len) {
  ExtScalar best = (i == j) ? ExtScalar::zero() : ni();
  std::vector<std::pair<int, ExtScalar>> frontier{{i, ExtScalar::zero()}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::pair<int, ExtScalar>> next;
    for (const auto& [v, w] : frontier)
      for (int u = 0; u < M.cols; ++u) {
        if (M.at(v, u).is_neg_inf()) continue;
        ExtScalar nw = w + M.at(v, u);
        next.emplace_back(u, nw);
        if (u == j && best < nw) best = nw;
      }
    frontier = std::move(next);
  }
  return best;
}

TropMat random_matrix(testutil::Rng& rng, int n, long lo, long hi, int inf_num, int inf_den) {
  TropMat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!rng.chance(inf_num, inf_den)) M.at(i, j) = ExtScalar(rng.rational(lo, hi, 4));
  return M;
}

}  // namespace

TEST_CASE("extended scalars: order and sums") {
  ExtScalar a(Rat(1, 3)), b(Rat(2, 6));
  CHECK(a == b);
  CHECK(ni() < a);
  CHECK(a < ExtScalar::pos_inf());
  CHECK((a + ExtScalar(Rat(1))).rat() == Rat(4, 3));
  CHECK((ni() + a).is_neg_inf());
  CHECK((ExtScalar::pos_inf() + a).is_pos_inf());
  CHECK_THROWS_AS(ni() + ExtScalar::pos_inf(), TropError);
  CHECK(parse_scalar("-7/2").rat() == Rat(-7, 2));
  CHECK(parse_scalar("0.25").rat() == Rat(1, 4));
  CHECK(parse_scalar("-inf").is_neg_inf());
  CHECK_THROWS_AS(parse_scalar("1/0"), TropError);
}

TEST_CASE("trop_matmul: identity and the 1x2 example") {
  testutil::Rng rng(7);
  TropMat I = TropMat::identity(2);
  TropMat B = random_matrix(rng, 2, -3, 3, 1, 4);
  CHECK(trop_matmul(I, B) == B);
  CHECK(trop_matmul(B, I) == B);

  TropMat A = mat(1, 2, {ExtScalar(-1), ExtScalar(0)});
  TropMat C = mat(2, 1, {ExtScalar(0), ExtScalar(-1)});
  TropMat P = trop_matmul(A, C);
  CHECK(P.at(0, 0) == ExtScalar(-1));  // max(-1+0, 0-1)
}

TEST_CASE("trop_matmul: brute-force entry oracle on random 4x4") {
  testutil::Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    TropMat A = random_matrix(rng, 4, -5, 5, 1, 3);
    TropMat B = random_matrix(rng, 4, -5, 5, 1, 3);
    TropMat C = trop_matmul(A, B);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        ExtScalar best = ni();
        for (int k = 0; k < 4; ++k) {
          if (A.at(i, k).is_neg_inf() || B.at(k, j).is_neg_inf()) continue;
          best = trop_max(best, A.at(i, k) + B.at(k, j));
        }
        CHECK(C.at(i, j) == best);
      }
  }
}

TEST_CASE("trop_matmul: associativity and identity over {-inf,-1,0,1}") {
  // Identity on every 3x3 matrix over the four values.
  std::vector<ExtScalar> vals{ni(), ExtScalar(-1), ExtScalar(0), ExtScalar(1)};
  TropMat I3 = TropMat::identity(3);
  long count = 0;
  for (long code = 0; code < 262144; code += 97) {  // deterministic stride sample
    long c = code;
    TropMat M(3, 3);
    for (int k = 0; k < 9; ++k) {
      M.a[k] = vals[c % 4];
      c /= 4;
    }
    CHECK(trop_matmul(I3, M) == M);
    CHECK(trop_matmul(M, I3) == M);
    ++count;
  }
  CHECK(count > 2000);

  // Associativity on all 1x1 triples and sampled 2x2 triples.
  for (const ExtScalar& a : vals)
    for (const ExtScalar& b : vals)
      for (const ExtScalar& c : vals) {
        TropMat A = mat(1, 1, {a}), B = mat(1, 1, {b}), C = mat(1, 1, {c});
        CHECK(trop_matmul(trop_matmul(A, B), C) == trop_matmul(A, trop_matmul(B, C)));
      }
  testutil::Rng rng(13);
  for (int t = 0; t < 2000; ++t) {
    TropMat A(2, 2), B(2, 2), C(2, 2);
    for (int k = 0; k < 4; ++k) {
      A.a[k] = vals[rng.integer(0, 3)];
      B.a[k] = vals[rng.integer(0, 3)];
      C.a[k] = vals[rng.integer(0, 3)];
    }
    CHECK(trop_matmul(trop_matmul(A, B), C) == trop_matmul(A, trop_matmul(B, C)));
  }
}

TEST_CASE("kleene_star: two-node example against the path oracle") {
  TropMat M = mat(2, 2, {ni(), ExtScalar(-1), ExtScalar(-1), ni()});
  TropMat S = kleene_star(M);
  CHECK(S == mat(2, 2, {ExtScalar(0), ExtScalar(-1), ExtScalar(-1), ExtScalar(0)}));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(S.at(i, j) == path_sup(M, i, j, 1));
}

TEST_CASE("kleene_star: positive self-loop is rejected with a witness") {
  TropMat M = mat(1, 1, {ExtScalar(1)});
  try {
    kleene_star(M);
    FAIL("expected PositiveCircuit");
  } catch (const TropError& e) {
    CHECK(e.code() == Errc::positive_circuit);
    REQUIRE(e.witness().size() == 1);
    CHECK(e.witness()[0] == 0);
  }
}

TEST_CASE("kleene_star: random 5x5 against exhaustive path enumeration") {
  testutil::Rng rng(17);
  int rejected = 0;
  for (int t = 0; t < 60; ++t) {
    TropMat M = random_matrix(rng, 5, -3, 0, 1, 3);
    // Sprinkle in occasionally positive entries to hit rejection paths.
    if (t % 5 == 0) M.at(rng.integer(0, 4), rng.integer(0, 4)) = ExtScalar(rng.rational(0, 1, 4));
    try {
      TropMat S = kleene_star(M);
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(S.at(i, j) == path_sup(M, i, j, 4));
      // Idempotency and dominance over the identity.
      CHECK(trop_matmul(S, S) == S);
      CHECK(leq(TropMat::identity(5), S));
    } catch (const TropError& e) {
      REQUIRE(e.code() == Errc::positive_circuit);
      const auto& cyc = e.witness();
      REQUIRE(!cyc.empty());
      Rat w(0);
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        const ExtScalar& arc = M.at(cyc[k], cyc[(k + 1) % cyc.size()]);
        REQUIRE(arc.is_finite());
        w += arc.rat();
      }
      CHECK(w > 0);
      ++rejected;
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("kleene_star fixed point: S(Sx) = Sx") {
  testutil::Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    TropMat M = random_matrix(rng, 4, -3, 0, 1, 3);
    TropMat S;
    try {
      S = kleene_star(M);
    } catch (const TropError&) {
      continue;
    }
    TropVec x = to_trop(rng.vec(4, -5, 5));
    TropVec sx = trop_apply(S, x);
    CHECK(trop_apply(S, sx) == sx);
  }
}

TEST_CASE("adjoint_apply: identity, single row, and the Galois property") {
  TropMat I = TropMat::identity(3);
  RatVec y{Rat(2), Rat(-1), Rat(0)};
  CHECK(adjoint_apply(I, y) == y);

  TropMat row = mat(1, 2, {ExtScalar(0), ExtScalar(0)});
  RatVec single{Rat(3)};
  CHECK(adjoint_apply(row, single) == RatVec{Rat(3), Rat(3)});

  testutil::Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    TropMat A = random_matrix(rng, 3, -4, 4, 1, 4);
    for (int k = 0; k < 3; ++k) {  // keep every column proper
      bool any = false;
      for (int i = 0; i < 3; ++i) any = any || !A.at(i, k).is_neg_inf();
      if (!any) A.at(0, k) = ExtScalar(0);
    }
    RatVec yy = rng.vec(3, -6, 6);
    RatVec ay = adjoint_apply(A, yy);
    for (int s = 0; s < 100; ++s) {
      RatVec x = rng.vec(3, -8, 8);
      bool ax_leq_y = true;
      for (int i = 0; i < 3; ++i) {
        ExtScalar axi = ni();
        for (int j = 0; j < 3; ++j)
          if (!A.at(i, j).is_neg_inf()) axi = trop_max(axi, A.at(i, j) + ExtScalar(x[j]));
        if (!axi.is_neg_inf() && axi.rat() > yy[i]) ax_leq_y = false;
      }
      CHECK(ax_leq_y == vec_leq(x, ay));
    }
  }
}

TEST_CASE("adjoint_apply rejects an identically -inf column") {
  TropMat A(2, 2);
  A.at(0, 0) = ExtScalar(0);
  A.at(1, 0) = ExtScalar(1);
  CHECK_THROWS_AS(adjoint_apply(A, RatVec{Rat(0), Rat(0)}), TropError);
}

TEST_CASE("hemi-norms") {
  RatVec z{Rat(0), Rat(0), Rat(0)};
  CHECK(top(z) == 0);
  CHECK(bottom(z) == 0);
  CHECK(hilbert_seminorm(z) == 0);
  RatVec x{Rat(1), Rat(0), Rat(0)};
  CHECK(top(x) == 1);
  CHECK(bottom(x) == 0);
  CHECK(hilbert_seminorm(x) == 1);
  RatVec y{Rat(-2), Rat(-2), Rat(-1), Rat(0)};
  CHECK(top(y) == 0);
  CHECK(bottom(y) == -2);
  CHECK(hilbert_seminorm(y) == 2);

  testutil::Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    RatVec v = rng.vec(4, -9, 9);
    Rat lam = rng.rational(-5, 5);
    CHECK(hilbert_seminorm(vec_add_const(v, lam)) == hilbert_seminorm(v));
  }
}

TEST_CASE("dimension mismatches are rejected") {
  TropMat A(2, 3), B(2, 2);
  CHECK_THROWS_AS(trop_matmul(A, B), TropError);
  CHECK_THROWS_AS(kleene_star(A), TropError);
}

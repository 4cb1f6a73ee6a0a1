// Solves the one-player mean-payoff example: eigenpair, calibrated arcs, and
// the cells of a two-player fixed-point complex.

#include <iostream>

#include "ambitrop/games.hpp"

using namespace ambitrop;

int main() {
  TropMat B(4, 4);
  B.at(0, 1) = ExtScalar(-1);
  B.at(0, 2) = ExtScalar(0);
  B.at(1, 1) = ExtScalar(-1);
  B.at(1, 3) = ExtScalar(-1);
  B.at(2, 2) = ExtScalar(0);
  B.at(2, 3) = ExtScalar(0);
  B.at(3, 3) = ExtScalar(1);
  MeanPayoffGame G = make_game(TropMat::identity(4), B);

  auto eig = find_eigen(G);
  if (!eig) {
    std::cout << "no eigenpair found\n";
    return 1;
  }
  std::cout << "lambda = " << eig->second.get_str() << ", u = (";
  for (int i = 0; i < 4; ++i)
    std::cout << eig->first[i].get_str() << (i < 3 ? ", " : ")\n");

  PolicyPair pol = calibrated_policies(G, eig->first, eig->second);
  std::cout << "calibrated Max arcs:";
  for (int j = 0; j < G.m; ++j)
    for (int k : pol.pi[j]) std::cout << " " << j + 1 << "->" << k + 1;
  std::cout << "\n";
  std::cout << "verified over horizon 4: "
            << (verify_calibrated(G, eig->first, eig->second, pol, 4) ? "yes" : "no")
            << "\n";
  return 0;
}

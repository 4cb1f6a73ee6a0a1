// Builds the ambitropical hull of a handful of points, checks a few
// memberships, and walks a geodesic between two of them.

#include <iostream>

#include "ambitrop/retract.hpp"

using namespace ambitrop;

int main() {
  std::vector<RatVec> pts{{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}};
  AmbiCone hull = ambitropical_hull(pts);

  auto show = [&](const RatVec& x) {
    std::cout << "(";
    for (std::size_t i = 0; i < x.size(); ++i)
      std::cout << x[i].get_str() << (i + 1 < x.size() ? ", " : ")");
    return "";
  };

  std::cout << "hull of (1,0,0) and (0,1,0):\n";
  for (const RatVec& p :
       {RatVec{Rat(1), Rat(1), Rat(0)}, RatVec{Rat(1, 2), Rat(1, 2), Rat(0)}}) {
    std::cout << "  ";
    show(p);
    std::cout << (hull.fixes_qplus(p) ? " is in the hull\n" : " is not in the hull\n");
  }

  auto Q = [&](const RatVec& v) { return q_plus(hull.gens, v); };
  std::cout << "geodesic from (1,0,0) to (0,1,0):\n";
  for (const RatVec& p : geodesic(Q, pts[0], pts[1], 5)) {
    std::cout << "  ";
    show(p);
    std::cout << "\n";
  }
  return 0;
}

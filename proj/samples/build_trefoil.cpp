// Builds the trefoil from its 5-chord presentation and prints the certificate.

#include "stickbound/construct.hpp"

#include <iostream>

int main() {
  using namespace stickbound;
  ArcPresentation trefoil{{{1, 3}, {2, 4}, {3, 5}, {1, 4}, {2, 5}}};
  BuildResult r = build_full(trefoil);
  const Certificate& c = r.cert;

  std::cout << "beta: " << c.beta.beta1 << ' ' << c.beta.beta2 << ' ' << c.beta.beta3 << '\n';
  std::cout << "sticks K1 -> K2 -> reduced -> K3: " << c.sticks_k1 << " -> " << c.sticks_k2 << " -> "
            << c.sticks_reduced << " -> " << c.sticks_k3 << '\n';
  std::cout << "bound 3(n-1)/2 = " << to_string(c.bound) << (c.bound_satisfied ? " (ok)" : " (violated)")
            << '\n';
  std::cout << "top reduction: " << c.top_reduction_label() << '\n';
  std::cout << "determinant " << c.determinant << ", alexander " << c.alexander.str() << '\n';
  for (std::size_t k = 0; k < r.knot.size(); ++k)
    std::cout << "  " << r.knot.vertices[k] << "  " << to_string(r.knot.roles[k]) << '\n';
  return c.invariants_match && c.bound_satisfied ? 0 : 1;
}

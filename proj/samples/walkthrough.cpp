// Builds the 2x2 ordered example, classifies it, prints its weight
// distribution both ways and checks the interval picture of its points.

#include <iostream>

#include "poset_codes.hpp"

using namespace poset_codes;

int main() {
  auto code = construct_n2(2, 2, 1, 1, {1, 0}, {1, 0});
  auto cls = classify(code);
  std::cout << "[" << cls.n << "," << cls.k << "," << cls.d << "] " << cls.label() << ", d_dual=" << cls.dual_d
            << "\n";

  auto brute = weight_dist_bruteforce(code);
  OrderedSpace space{2, 2, 2};
  auto analytic = weight_dist_nmds_ordered(space, code.k(), cls.d, shape_seed(code, space, cls.d));
  for (int s = 0; s <= code.n(); ++s) {
    std::cout << "A_" << s << " = " << brute.by_size[s] << " (formula " << analytic.by_size[s] << ")\n";
  }

  write_points_csv(std::cout, code_to_points(code));
  auto rep = verify_nmds_distribution(code);
  std::cout << "interval check: " << (rep.passed() ? "pass" : "fail") << "\n";

  // Any poset works; the bowtie below has 1,2 < 3 < 4,5.
  auto bowtie = Poset::from_cover_relations(5, std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {3, 4}, {3, 5}});
  auto hit = search_random_nmds(bowtie, 3, 2, 1, 1000);
  if (hit.code) {
    std::cout << "bowtie search: NMDS after " << hit.trials << " trials\n";
    write_code(std::cout, *hit.code, "bowtie.poset");
  } else {
    std::cout << "bowtie search: nothing after " << hit.trials << " trials\n";
  }
}

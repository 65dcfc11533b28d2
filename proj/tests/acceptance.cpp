#include "walkent/reproduce.hpp"

#include <iostream>

int main() {
  const auto results = walkent::run_acceptance();
  walkent::print_acceptance(std::cout, results);
  for (const auto& r : results)
    if (!r.passed()) return 1;
  return 0;
}

// Runs the nine acceptance criteria at full size, one PASS/FAIL line each.

#include <iostream>

#include "heatcoef/acceptance.hpp"

int main() {
  const auto results = heatcoef::run_acceptance(heatcoef::AcceptanceBounds::full());
  int failed = 0;
  for (const auto& r : results) {
    std::cout << heatcoef::summary_line(r) << '\n';
    if (!r.pass) ++failed;
  }
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

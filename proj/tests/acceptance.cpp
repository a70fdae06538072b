#include <iostream>

#include "acceptance_suite.hpp"

int main() {
  bool ok = true;
  acceptance::run_all([&](const acceptance::Criterion& c) {
    std::cout << acceptance::format(c) << std::endl;
    ok = ok && c.passed;
  });
  return ok ? 0 : 1;
}

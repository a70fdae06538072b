#pragma once

// The acceptance criteria 1-8, shared by the acceptance binary and `aq accept`.

#include <functional>
#include <string>
#include <vector>

namespace acceptance {

struct Criterion {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no time limit
  std::string detail;
};

// on_done is called after each criterion.
std::vector<Criterion> run_all(const std::function<void(const Criterion&)>& on_done = {});
// "PASS criterion N (name): detail [t s / limit s]"
std::string format(const Criterion& c);

}  // namespace acceptance

#pragma once

#include <string>
#include <vector>

namespace dissipgen {

// One invariant check: `residual` is the measured defect, `threshold` the
// accepted bound. Informational items set pass = true with threshold < 0.
struct CheckItem {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = true;
};

inline bool all_pass(const std::vector<CheckItem>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace dissipgen

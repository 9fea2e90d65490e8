#pragma once

#include <string>
#include <vector>

namespace netregret {

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick invariant suite behind the `selftest` subcommand.
std::vector<SelfTestResult> run_selftest();

}  // namespace netregret

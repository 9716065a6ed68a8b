#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace takagi {

struct CriterionResult {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr std::uint64_t kAcceptanceSeed = 20090417;

/// Runs every acceptance criterion; each result carries its own timing.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kAcceptanceSeed);

}  // namespace takagi

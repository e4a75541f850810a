#pragma once
#include <string>
#include <vector>

#include "va/presets.hpp"

namespace va {

struct CheckResult {
  std::string id;
  std::string kind;
  bool pass = false;
  std::string message;  // failure detail / residual, or short success note
  double seconds = 0;
};

struct ManifestReport {
  std::vector<CheckResult> results;
  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

/// Executes every check in a manifest file. Checks are independent tasks;
/// results come back in manifest order regardless of thread count.
ManifestReport run_manifest(const std::string& path, int threads = 1);

std::string report_to_text(const ManifestReport& rep);
std::string report_to_json(const ManifestReport& rep);

}  // namespace va

#pragma once

// Invariant batteries run by `qhball verify`.

#include <string>
#include <vector>

namespace qhball {

struct CheckResult {
  std::string name;
  bool passed;
  /// Distance from the failure threshold; negative when failed.
  double margin;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::string text() const;
};

struct VerifyOptions {
  double spacing = 0.01;
  int stencil_radius = 3;
};

/// `metric`, `shape`, `grid`, `bounds` or `all`.
VerifyReport run_verify(const std::string& suite, const VerifyOptions& options = {});

}  // namespace qhball

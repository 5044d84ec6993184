#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chebdiff/diffop.hpp"

namespace chebdiff {

struct ValidationOptions {
  double zeta0 = kZeta0;  // constant under test in the derivative checks
  std::uint64_t seed = 20240611;
};

struct CheckResult {
  std::string name;
  std::string module;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  double oracle_zeta0 = 0.0;  // T_0 weight recovered from finite differences

  bool all_passed() const;
  const CheckResult* find(const std::string& name) const;
};

/// Runs the invariant checks of every module. Failures are entries, never
/// exceptions.
ValidationReport validate_suite(const ValidationOptions& options = {});

void write_validation_text(std::ostream& out, const ValidationReport& report);
void write_validation_json(std::ostream& out, const ValidationReport& report);

}  // namespace chebdiff

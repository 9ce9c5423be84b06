#pragma once

#include <string>
#include <vector>

#include "zetaforms/params.hpp"
#include "zetaforms/report.hpp"

namespace zf {

struct CheckResult {
  std::string name;
  bool passed;
  Json detail;
  bool numeric_error = false;  // the check could not be evaluated
};

struct VerifyReport {
  Params params;
  long bits;
  std::vector<CheckResult> checks;
  bool all_passed() const;
  bool any_numeric_error() const;
  Json body() const;
};

// Runs every module contract on one parameter tuple.  Numeric failures inside
// a check are recorded as failed checks with the message in the detail.
VerifyReport verify_all(const Params& p, long bits, unsigned jobs = 1);

}  // namespace zf

#pragma once

// The invariant battery behind `simdiff verify`.

#include <string>
#include <vector>

namespace simdiff::app {

struct VerifyOptions {
  std::string only;       ///< substring filter on check names; empty runs all
  double perturb = 0.0;   ///< bias added to the exotic p = 0 profile (sensitivity hook)
  double tol_scale = 1.0;
  unsigned threads = 0;   ///< 0: hardware concurrency
};

struct VerifyRecord {
  std::string name;
  std::string paper_ref;  ///< plain statement of the checked relation
  double max_residual;
  double tolerance;
  bool pass;
};

struct VerifyReport {
  std::vector<VerifyRecord> records;
  bool pass = true;
};

std::vector<std::string> check_names();

/// Records come back in check_names() order. An exception inside a check
/// becomes a failing record with an infinite residual.
VerifyReport run_verify(const VerifyOptions& options);

/// {"schema": 1, "records": [...], "pass": bool}
std::string report_json(const VerifyReport& report);

/// SIMDIFF_TOL_SCALE, default 1. Throws std::invalid_argument unless it parses
/// as a positive finite number.
double tol_scale_from_env();

}  // namespace simdiff::app

#pragma once

// Oracle checks shared by `casimir verify` and the acceptance binary.

#include <string>
#include <vector>

#include "casimir/core_model.hpp"

namespace casimir {

struct CheckResult {
  std::string id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Multiplies every tolerance. Values below one tighten the checks; the
  /// failure-path test uses a tiny value.
  double tolerance_scale = 1.0;
};

/// omega0 = 0.057/137.036, alpha0 = 1, c = 1: the parameters of the
/// R = 3000 transient presets.
AtomParams figure_params();

CheckResult check_far_field(const VerifyOptions& opt);
CheckResult check_near_field(const VerifyOptions& opt);
CheckResult check_representation(const VerifyOptions& opt);
CheckResult check_transient_spike(const VerifyOptions& opt);
CheckResult check_snapshot_spike(const VerifyOptions& opt);
CheckResult check_factor_two(const VerifyOptions& opt);
CheckResult check_nested_identities(const VerifyOptions& opt);
CheckResult check_recursion_order(const VerifyOptions& opt);
CheckResult check_momentum_force(const VerifyOptions& opt);
CheckResult check_invariants(const VerifyOptions& opt);

/// Release from r0 = 2: the nested terms against 2^-n dF and against the
/// Taylor-remainder form. Informational, always passes.
CheckResult nested_near_release_diagnostic();

/// The checks run by `casimir verify` (everything except the two transient
/// figure checks).
std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt);

/// Times `fn` and stores the wall-clock duration in the result.
template <class Fn>
CheckResult timed(Fn&& fn);

}  // namespace casimir

#include <chrono>

namespace casimir {

template <class Fn>
CheckResult timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r = fn();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace casimir

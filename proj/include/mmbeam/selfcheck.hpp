// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace mmbeam {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast release-gate invariant suite (runs in seconds, needs no config):
// noiseless LS exactness, the dual-form cost identity, the amplitude-bound
// inequality, and tiny-codebook search equivalence against an independent
// brute-force sweep.
std::vector<CheckResult> run_selfcheck();

}  // namespace mmbeam

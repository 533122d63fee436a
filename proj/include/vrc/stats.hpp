#pragma once

#include <cstddef>
#include <vector>

namespace vrc {

// 1-based ranks with ties averaged.
std::vector<double> average_ranks(const std::vector<double>& values);

struct ShapiroWilkResult {
  double w = 0.0;
  double p = 1.0;
};

// Royston's approximation for 3 <= n <= 50. Throws on a constant sample.
ShapiroWilkResult shapiro_wilk(std::vector<double> sample);

struct WilcoxonResult {
  double statistic = 0.0;  // signed z; negative when the positive-rank sum is low
  double p = 1.0;
  double w_plus = 0.0;
  double w_minus = 0.0;
  int n_eff = 0;       // pairs left after dropping zero differences
  bool exact = false;  // p came from full sign-flip enumeration
};

// Two-sided signed-rank test on paired differences. Zeros are dropped and
// tied absolute values share average ranks. Up to 12 effective pairs every
// sign assignment is enumerated; larger samples use the tie-corrected
// normal approximation with a 0.5 continuity correction.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& diffs);

struct PairedTResult {
  double statistic = 0.0;
  int df = 0;
  double p = 1.0;
};

// One-sample t test on paired differences. Throws when the differences have
// zero variance.
PairedTResult paired_t(const std::vector<double>& diffs);

struct SpearmanResult {
  double rho = 0.0;
  double p = 1.0;
  size_t n = 0;
};

// Rank correlation; p from the t approximation with n - 2 dof.
SpearmanResult spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace vrc

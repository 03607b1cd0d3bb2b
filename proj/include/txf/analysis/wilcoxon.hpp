#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace txf::analysis {

enum class PValueMethod { Auto, Exact, Normal };

struct WilcoxonOptions {
  PValueMethod method = PValueMethod::Auto;
  /// Auto uses the exact null distribution up to this many nonzero pairs.
  std::size_t exact_max_n = 25;
};

struct ComparisonResult {
  std::size_t n_pairs = 0;
  std::size_t n_used = 0;  // pairs with a nonzero difference
  std::size_t wins_a = 0;
  std::size_t wins_b = 0;
  std::size_t zeros = 0;   // ties left after tie-breaking
  double w_plus = 0.0;     // rank sum where a is better
  double w_minus = 0.0;
  double statistic = 0.0;  // min(w_plus, w_minus)
  double p_value = 1.0;    // two-sided
  bool exact = false;
  std::vector<double> differences;  // normalized, positive when a is better
};

/// (a - b) / |mean(a, b)|, negated when lower is better; 0 when a == b.
/// The absolute mean keeps the sign meaningful for negative scores such as
/// correlations.
double normalized_difference(double a, double b, bool lower_is_better);

/// Paired Wilcoxon signed-rank test of a against b over tasks.
///
/// Zero differences are dropped; tied |d| get average ranks. The p-value is
/// two-sided, from the exact null distribution (exact under rank ties too,
/// via doubled ranks) or from the normal approximation with tie-corrected
/// variance and a 0.5 continuity correction. All-zero input gives p = 1.
///
/// `tie_break`, when given, holds +1 / -1 / 0 per pair and only decides
/// which side wins a zero difference in the win counts; such pairs still
/// carry no rank. Throws std::invalid_argument for length mismatches or
/// fewer than 5 pairs.
ComparisonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                      const std::vector<bool>& lower_is_better, const WilcoxonOptions& options = {},
                                      std::span<const int> tie_break = {});

/// Two-sided exact p for rank sum `statistic` = min(W+, W-) over the given
/// ranks (average ranks allowed), by counting sign assignments.
double exact_signed_rank_p(std::span<const double> ranks, double statistic);

/// Two-sided normal-approximation p with tie correction and continuity
/// correction.
double normal_signed_rank_p(std::span<const double> ranks, double statistic);

}  // namespace txf::analysis

#include "txf/analysis/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "txf/eval/metrics.hpp"

namespace txf::analysis {

double normalized_difference(double a, double b, bool lower_is_better) {
  if (a == b) return 0.0;
  const double scale = std::abs((a + b) / 2.0);
  // opposite signs of equal size: fall back to the raw difference
  const double d = scale == 0.0 ? a - b : (a - b) / scale;
  return lower_is_better ? -d : d;
}

double exact_signed_rank_p(std::span<const double> ranks, double statistic) {
  if (ranks.empty()) return 1.0;
  // average ranks are multiples of 1/2, so doubled ranks are integers
  std::vector<long> doubled;
  long total = 0;
  for (double r : ranks) {
    doubled.push_back(std::lround(2.0 * r));
    total += doubled.back();
  }
  std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
  counts[0] = 1.0;
  long reach = 0;
  for (long r : doubled) {
    reach += r;
    for (long s = reach; s >= r; --s) counts[static_cast<std::size_t>(s)] += counts[static_cast<std::size_t>(s - r)];
  }
  const long limit = std::lround(2.0 * statistic);
  double tail = 0.0;
  for (long s = 0; s <= limit && s <= total; ++s) tail += counts[static_cast<std::size_t>(s)];
  const double p = 2.0 * tail / std::ldexp(1.0, static_cast<int>(ranks.size()));
  return std::min(1.0, p);
}

double normal_signed_rank_p(std::span<const double> ranks, double statistic) {
  const auto n = static_cast<double>(ranks.size());
  if (n == 0) return 1.0;
  std::map<double, double> ties;
  for (double r : ranks) ties[r] += 1;
  double correction = 0.0;
  for (const auto& [rank, t] : ties) correction += t * t * t - t;
  const double mean = n * (n + 1) / 4.0;
  const double variance = n * (n + 1) * (2 * n + 1) / 24.0 - correction / 48.0;
  if (variance <= 0) return 1.0;
  const double z = std::max(0.0, std::abs(statistic - mean) - 0.5) / std::sqrt(variance);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

ComparisonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                      const std::vector<bool>& lower_is_better, const WilcoxonOptions& options,
                                      std::span<const int> tie_break) {
  if (a.size() != b.size() || a.size() != lower_is_better.size()) {
    throw std::invalid_argument("paired inputs differ in length");
  }
  if (!tie_break.empty() && tie_break.size() != a.size()) throw std::invalid_argument("tie-break length mismatch");
  if (a.size() < 5) throw std::invalid_argument("at least 5 pairs are needed");

  ComparisonResult out;
  out.n_pairs = a.size();
  std::vector<double> magnitudes;
  std::vector<bool> positive;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = normalized_difference(a[i], b[i], lower_is_better[i]);
    out.differences.push_back(d);
    if (d == 0.0) {
      const int side = tie_break.empty() ? 0 : tie_break[i];
      if (side > 0) {
        ++out.wins_a;
      } else if (side < 0) {
        ++out.wins_b;
      } else {
        ++out.zeros;
      }
      continue;
    }
    ++(d > 0 ? out.wins_a : out.wins_b);
    magnitudes.push_back(std::abs(d));
    positive.push_back(d > 0);
  }
  out.n_used = magnitudes.size();
  if (out.n_used == 0) return out;

  const std::vector<double> ranks = eval::average_ranks(magnitudes);
  for (std::size_t i = 0; i < ranks.size(); ++i) (positive[i] ? out.w_plus : out.w_minus) += ranks[i];
  out.statistic = std::min(out.w_plus, out.w_minus);
  out.exact = options.method == PValueMethod::Exact ||
              (options.method == PValueMethod::Auto && out.n_used <= options.exact_max_n);
  out.p_value = out.exact ? exact_signed_rank_p(ranks, out.statistic) : normal_signed_rank_p(ranks, out.statistic);
  return out;
}

}  // namespace txf::analysis

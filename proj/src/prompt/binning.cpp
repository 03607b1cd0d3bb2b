#include "txf/prompt/binning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace txf::prompt {
namespace {

void check(const BinningSpec& spec) {
  if (!(spec.min < spec.max) || !std::isfinite(spec.min) || !std::isfinite(spec.max)) {
    throw std::invalid_argument("binning range needs finite min < max");
  }
  if (spec.levels < 1) throw std::invalid_argument("binning needs at least one level");
}

}  // namespace

BinnedLabel bin_label(double y, const BinningSpec& spec) {
  check(spec);
  if (std::isnan(y)) throw std::invalid_argument("cannot bin NaN");
  const double clamped = std::clamp(y, spec.min, spec.max);
  const double scaled = static_cast<double>(spec.levels) * (clamped - spec.min) / (spec.max - spec.min);
  const int bin = std::clamp(static_cast<int>(std::lround(scaled)), 0, spec.levels);
  return {bin, render_bin(bin)};
}

std::string render_bin(int bin) {
  std::string digits = std::to_string(bin);
  if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
  return digits;
}

double unbin_label(int bin, const BinningSpec& spec) {
  check(spec);
  if (bin < 0 || bin > spec.levels) throw std::out_of_range("bin " + std::to_string(bin) + " outside 0.." +
                                                            std::to_string(spec.levels));
  return spec.min + static_cast<double>(bin) / static_cast<double>(spec.levels) * (spec.max - spec.min);
}

}  // namespace txf::prompt

#pragma once

#include <string>

namespace txf::prompt {

/// Uniform bins over [min, max]; labels are integers 0..levels.
struct BinningSpec {
  double min = 0.0;
  double max = 1.0;
  int levels = 1000;
};

struct BinnedLabel {
  int bin = 0;
  std::string text;  // zero-padded to three digits
};

/// round(levels * (clamp(y) - min) / (max - min)). Throws
/// std::invalid_argument for NaN or an invalid spec.
BinnedLabel bin_label(double y, const BinningSpec& spec);

/// "000".."999", then plain digits.
std::string render_bin(int bin);

/// min + bin / levels * (max - min). Throws std::out_of_range outside
/// 0..levels.
double unbin_label(int bin, const BinningSpec& spec);

}  // namespace txf::prompt

#include "txf/eval/answers.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace txf::eval {

BinaryAnswer parse_binary_answer(std::string_view completion, const std::map<std::string, double>& option_scores) {
  BinaryAnswer out;
  const auto a = completion.find("(A)");
  const auto b = completion.find("(B)");
  if (a != std::string_view::npos || b != std::string_view::npos) {
    out.valid = true;
    out.positive = b < a;
  }
  auto it = option_scores.find("(B)");
  if (it == option_scores.end()) it = option_scores.find("B");
  if (it != option_scores.end() && std::isfinite(it->second)) {
    out.score = it->second;
  } else if (out.valid) {
    out.score = out.positive ? 1.0 : 0.0;
  }
  return out;
}

RegressionAnswer parse_regression_answer(std::string_view completion, const prompt::BinningSpec& spec) {
  RegressionAnswer out;
  out.bin = spec.levels / 2;
  for (std::size_t i = 0; i < completion.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(completion[i]))) continue;
    std::size_t j = i;
    while (j < completion.size() && std::isdigit(static_cast<unsigned char>(completion[j]))) ++j;
    const bool negative = i > 0 && completion[i - 1] == '-';
    long long v = 0;
    const auto res = std::from_chars(completion.data() + i, completion.data() + j, v);
    // overflowing digit runs are simply very large
    if (res.ec == std::errc::result_out_of_range) v = spec.levels;
    if (negative) v = -v;
    out.bin = static_cast<int>(std::clamp<long long>(v, 0, spec.levels));
    out.valid = true;
    break;
  }
  out.value = prompt::unbin_label(out.bin, spec);
  return out;
}

bool target_is_positive(std::string_view target) { return target.find("(B)") != std::string_view::npos; }

}  // namespace txf::eval

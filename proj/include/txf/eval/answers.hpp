#pragma once

#include <map>
#include <string>
#include <string_view>

#include "txf/prompt/binning.hpp"

namespace txf::eval {

struct BinaryAnswer {
  bool positive = false;  // class (B)
  double score = 0.5;     // ranking score for (B)
  bool valid = false;
};

/// The first "(A)" or "(B)" in the completion decides the class. The
/// ranking score is the model's score for "(B)" when `option_scores` has
/// one (keys "(B)" or "B"), else 1 or 0 from the class. An unparseable
/// completion is invalid, predicts (A) and scores 0.5.
BinaryAnswer parse_binary_answer(std::string_view completion, const std::map<std::string, double>& option_scores = {});

struct RegressionAnswer {
  double value = 0.0;
  int bin = 0;
  bool valid = false;
};

/// The first integer in the completion, clamped to 0..levels and unbinned.
/// Unparseable completions are invalid and predict the middle bin.
RegressionAnswer parse_regression_answer(std::string_view completion, const prompt::BinningSpec& spec);

/// True when a binary target text names option (B).
bool target_is_positive(std::string_view target);

}  // namespace txf::eval

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace txf {

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string to_lower(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Strict full-string parses; surrounding whitespace is allowed.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);
std::optional<bool> parse_bool(std::string_view s);

/// Replaces every "{name}" with the looked-up value. Unknown names are
/// collected into `missing` and left in place.
std::string fill_template(std::string_view tmpl,
                          const std::vector<std::pair<std::string, std::string>>& values,
                          std::vector<std::string>* missing = nullptr);

/// Names of all "{name}" placeholders in order of appearance.
std::vector<std::string> template_placeholders(std::string_view tmpl);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// Shortest text that parses back to exactly `value`.
std::string format_double(double value);
/// Fixed notation with the given number of decimals.
std::string format_fixed(double value, int decimals);

}  // namespace txf

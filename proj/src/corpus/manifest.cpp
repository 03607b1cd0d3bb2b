#include "txf/corpus/manifest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "txf/common/strings.hpp"

namespace txf::corpus {
namespace {

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<std::string_view, E>, N>& table, std::string_view s) {
  for (const auto& [name, value] : table) {
    if (name == s) return value;
  }
  return std::nullopt;
}

template <class E, std::size_t N>
std::string_view name_of(const std::array<std::pair<std::string_view, E>, N>& table, E value) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::array<std::pair<std::string_view, TaskKind>, 3> kKinds{{
    {"binary", TaskKind::Binary}, {"regression", TaskKind::Regression}, {"generation", TaskKind::Generation}}};
constexpr std::array<std::pair<std::string_view, FeatureType>, 4> kTypes{{{"smiles", FeatureType::Smiles},
                                                                          {"amino_acid", FeatureType::AminoAcid},
                                                                          {"nucleotide", FeatureType::Nucleotide},
                                                                          {"text", FeatureType::Text}}};
constexpr std::array<std::pair<std::string_view, SplitMethod>, 5> kSplits{{{"random", SplitMethod::Random},
                                                                           {"scaffold", SplitMethod::Scaffold},
                                                                           {"cold_start", SplitMethod::ColdStart},
                                                                           {"combination", SplitMethod::Combination},
                                                                           {"temporal", SplitMethod::Temporal}}};
constexpr std::array<std::pair<std::string_view, Metric>, 8> kMetrics{{{"auroc", Metric::Auroc},
                                                                       {"auprc", Metric::Auprc},
                                                                       {"accuracy", Metric::Accuracy},
                                                                       {"spearman", Metric::Spearman},
                                                                       {"pearson", Metric::Pearson},
                                                                       {"mae", Metric::Mae},
                                                                       {"mse", Metric::Mse},
                                                                       {"set_accuracy", Metric::SetAccuracy}}};

std::string unescape(std::string_view v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == '\\' && i + 1 < v.size()) {
      const char c = v[++i];
      if (c == 'n') {
        out += '\n';
      } else if (c == 't') {
        out += '\t';
      } else {
        out += c;
      }
    } else {
      out += v[i];
    }
  }
  return out;
}

std::string escape(std::string_view v) {
  std::string out;
  for (char c : v) {
    if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else if (c == '\\') {
      out += "\\\\";
    } else {
      out += c;
    }
  }
  // keep significant edge whitespace from being trimmed on reload
  if (!out.empty() && (out.front() == ' ' || out.back() == ' ')) {
    std::string guarded;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i] == ' ' && (i == 0 || i + 1 == out.size())) {
        guarded += "\\ ";
      } else {
        guarded += out[i];
      }
    }
    return guarded;
  }
  return out;
}

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  for (const auto& part : split(v, ',')) {
    const auto t = trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

}  // namespace

std::string_view to_string(TaskKind kind) { return name_of(kKinds, kind); }
std::string_view to_string(FeatureType type) { return name_of(kTypes, type); }
std::string_view to_string(SplitMethod method) { return name_of(kSplits, method); }
std::string_view to_string(Metric metric) { return name_of(kMetrics, metric); }
std::optional<TaskKind> parse_task_kind(std::string_view s) { return lookup(kKinds, s); }
std::optional<FeatureType> parse_feature_type(std::string_view s) { return lookup(kTypes, s); }
std::optional<SplitMethod> parse_split_method(std::string_view s) { return lookup(kSplits, s); }
std::optional<Metric> parse_metric(std::string_view s) { return lookup(kMetrics, s); }

bool metric_lower_is_better(Metric metric) { return metric == Metric::Mae || metric == Metric::Mse; }

const Role* TaskManifest::find_role(std::string_view name) const {
  for (const auto& r : roles) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const Role* TaskManifest::similarity_role() const {
  for (const auto& r : roles) {
    if (r.type != FeatureType::Text) return &r;
  }
  return nullptr;
}

std::string feature_category(const TaskManifest& manifest) {
  // the order used by the published category names, e.g. "Amino acid + SMILES"
  static constexpr std::array<std::pair<FeatureType, std::string_view>, 4> kOrder{{{FeatureType::Nucleotide, "Nucleotide"},
                                                                                  {FeatureType::AminoAcid, "Amino acid"},
                                                                                  {FeatureType::Smiles, "SMILES"},
                                                                                  {FeatureType::Text, "Text"}}};
  std::vector<std::string> parts;
  for (const auto& [type, label] : kOrder) {
    const bool present = std::any_of(manifest.roles.begin(), manifest.roles.end(),
                                     [type = type](const Role& r) { return r.type == type; });
    if (present) parts.emplace_back(label);
  }
  return join(parts, " + ");
}

TaskManifest parse_manifest(std::string_view text) {
  TaskManifest m;
  bool lower_set = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ManifestError("expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value = unescape(trim(line.substr(eq + 1)));
    auto bad = [&](const std::string& what) { throw ManifestError(what + " for '" + key + "'", line_no); };

    if (key == "task") {
      m.task = value;
    } else if (key == "kind") {
      const auto k = parse_task_kind(value);
      if (!k) bad("unknown task kind '" + value + "'");
      m.kind = *k;
    } else if (key == "metric") {
      const auto k = parse_metric(value);
      if (!k) bad("unknown metric '" + value + "'");
      m.metric = *k;
    } else if (key == "lower_is_better") {
      const auto b = parse_bool(value);
      if (!b) bad("expected true or false");
      m.lower_is_better = *b;
      lower_set = true;
    } else if (key == "data") {
      m.data = value;
    } else if (key == "id_column") {
      m.id_column = value;
    } else if (key == "label_column") {
      m.label_column = value;
    } else if (key.rfind("role.", 0) == 0) {
      const auto dot = key.rfind('.');
      if (dot <= 5) bad("expected role.<name>.<field>");
      const std::string name = key.substr(5, dot - 5);
      const std::string field = key.substr(dot + 1);
      if (!is_identifier(name)) bad("invalid role name");
      auto it = std::find_if(m.roles.begin(), m.roles.end(), [&](const Role& r) { return r.name == name; });
      if (it == m.roles.end()) {
        m.roles.push_back(Role{name, FeatureType::Text, "", ""});
        it = m.roles.end() - 1;
      }
      if (field == "type") {
        const auto t = parse_feature_type(value);
        if (!t) bad("unknown feature type '" + value + "'");
        it->type = *t;
      } else if (field == "column") {
        it->column = value;
      } else if (field == "label") {
        it->label = value;
      } else {
        bad("unknown role field '" + field + "'");
      }
    } else if (key == "instructions") {
      m.instructions = value;
    } else if (key == "context") {
      m.context = value;
    } else if (key.rfind("context.", 0) == 0) {
      m.subtask_context[key.substr(8)] = value;
    } else if (key == "question") {
      m.question = value;
    } else if (key == "option.a") {
      m.option_a = value;
    } else if (key == "option.b") {
      m.option_b = value;
    } else if (key == "answer_template") {
      m.answer_template = value;
    } else if (key == "label_range") {
      if (value == "fit") {
        m.fit_label_range = true;
        m.label_range.reset();
      } else {
        const auto parts = split_list(value);
        std::optional<double> lo, hi;
        if (parts.size() == 2) {
          lo = parse_double(parts[0]);
          hi = parse_double(parts[1]);
        }
        if (!lo || !hi) bad("expected 'min, max' or 'fit'");
        m.label_range = LabelRange{*lo, *hi};
        m.fit_label_range = false;
      }
    } else if (key == "levels") {
      const auto v = parse_int(value);
      if (!v) bad("expected an integer");
      m.levels = static_cast<int>(*v);
    } else if (key == "split") {
      const auto s = parse_split_method(value);
      if (!s) bad("unknown split method '" + value + "'");
      m.split = *s;
    } else if (key == "split_key") {
      m.split_key = split_list(value);
    } else if (key == "timestamp_column") {
      m.timestamp_column = value;
    } else if (key == "fractions") {
      const auto parts = split_list(value);
      if (parts.size() != 3) bad("expected three fractions");
      for (std::size_t i = 0; i < 3; ++i) {
        const auto f = parse_double(parts[i]);
        if (!f) bad("expected a number");
        m.fractions[i] = *f;
      }
    } else if (key == "subtask_column") {
      m.subtask_column = value;
    } else {
      bad("unknown key");
    }
    if (end == text.size()) break;
  }
  if (!lower_set) m.lower_is_better = metric_lower_is_better(m.metric);
  return m;
}

TaskManifest load_manifest(const std::string& path) {
  try {
    return parse_manifest(read_file(path));
  } catch (const ManifestError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string serialize_manifest(const TaskManifest& m) {
  std::ostringstream out;
  auto put = [&](std::string_view key, std::string_view value) {
    out << key << " = " << escape(value) << '\n';
  };
  put("task", m.task);
  put("kind", to_string(m.kind));
  put("metric", to_string(m.metric));
  put("lower_is_better", m.lower_is_better ? "true" : "false");
  if (!m.data.empty()) put("data", m.data);
  if (!m.id_column.empty()) put("id_column", m.id_column);
  put("label_column", m.label_column);
  for (const auto& r : m.roles) {
    put("role." + r.name + ".type", to_string(r.type));
    put("role." + r.name + ".column", r.column);
    put("role." + r.name + ".label", r.label);
  }
  put("instructions", m.instructions);
  put("context", m.context);
  for (const auto& [subtask, text] : m.subtask_context) put("context." + subtask, text);
  put("question", m.question);
  if (!m.option_a.empty()) put("option.a", m.option_a);
  if (!m.option_b.empty()) put("option.b", m.option_b);
  put("answer_template", m.answer_template);
  if (m.label_range) {
    put("label_range", format_double(m.label_range->min) + ", " + format_double(m.label_range->max));
  } else if (m.fit_label_range) {
    put("label_range", "fit");
  }
  put("levels", std::to_string(m.levels));
  put("split", to_string(m.split));
  if (!m.split_key.empty()) put("split_key", join(m.split_key, ", "));
  if (!m.timestamp_column.empty()) put("timestamp_column", m.timestamp_column);
  put("fractions", format_double(m.fractions[0]) + ", " + format_double(m.fractions[1]) + ", " +
                       format_double(m.fractions[2]));
  if (!m.subtask_column.empty()) put("subtask_column", m.subtask_column);
  return out.str();
}

std::vector<std::string> validate_manifest(const TaskManifest& m) {
  std::vector<std::string> v;
  if (m.task.empty()) v.emplace_back("task id is empty");
  if (m.label_column.empty()) v.emplace_back("label_column is missing");
  if (m.roles.empty()) v.emplace_back("no roles declared");
  for (const auto& r : m.roles) {
    if (r.column.empty()) v.push_back("role '" + r.name + "' has no column");
    if (r.label.empty()) v.push_back("role '" + r.name + "' has no label");
  }

  const bool binary_metric = m.metric == Metric::Auroc || m.metric == Metric::Auprc || m.metric == Metric::Accuracy;
  const bool regression_metric = m.metric == Metric::Spearman || m.metric == Metric::Pearson ||
                                 m.metric == Metric::Mae || m.metric == Metric::Mse;
  if ((m.kind == TaskKind::Binary && !binary_metric) || (m.kind == TaskKind::Regression && !regression_metric) ||
      (m.kind == TaskKind::Generation && m.metric != Metric::SetAccuracy)) {
    v.push_back("metric '" + std::string(to_string(m.metric)) + "' does not fit a " + std::string(to_string(m.kind)) +
                " task");
  }
  if (m.lower_is_better != metric_lower_is_better(m.metric)) {
    v.push_back("lower_is_better disagrees with metric '" + std::string(to_string(m.metric)) + "'");
  }

  if (m.kind == TaskKind::Binary && (m.option_a.empty() || m.option_b.empty())) {
    v.emplace_back("binary task needs option.a and option.b");
  }
  if (m.kind == TaskKind::Regression) {
    if (m.label_range) {
      const auto& r = *m.label_range;
      if (!std::isfinite(r.min) || !std::isfinite(r.max) || !(r.min < r.max)) {
        v.emplace_back("label_range must be finite with min < max");
      }
    } else if (!m.fit_label_range) {
      v.emplace_back("regression task needs label_range ('min, max' or 'fit')");
    }
    if (m.levels < 1) v.emplace_back("levels must be at least 1");
  }

  auto check_placeholders = [&](std::string_view field, std::string_view text, bool allow_answer) {
    for (const auto& name : template_placeholders(text)) {
      if (allow_answer && name == "answer") continue;
      if (!m.find_role(name)) v.push_back(std::string(field) + " references undeclared role '" + name + "'");
    }
  };
  check_placeholders("instructions", m.instructions, false);
  check_placeholders("context", m.context, false);
  for (const auto& [subtask, text] : m.subtask_context) check_placeholders("context." + subtask, text, false);
  check_placeholders("question", m.question, false);
  check_placeholders("answer_template", m.answer_template, true);
  if (m.question.empty()) v.emplace_back("question is empty");

  switch (m.split) {
    case SplitMethod::Random:
      break;
    case SplitMethod::Scaffold:
      if (std::none_of(m.roles.begin(), m.roles.end(), [](const Role& r) { return r.type == FeatureType::Smiles; })) {
        v.emplace_back("scaffold split needs a smiles role");
      }
      break;
    case SplitMethod::ColdStart:
      if (m.split_key.size() != 1 || !m.find_role(m.split_key[0])) {
        v.emplace_back("cold_start split needs split_key naming one declared role");
      }
      break;
    case SplitMethod::Combination: {
      const bool ok = m.split_key.empty() ? m.roles.size() >= 2
                                          : m.split_key.size() == 2 && m.find_role(m.split_key[0]) &&
                                                m.find_role(m.split_key[1]) && m.split_key[0] != m.split_key[1];
      if (!ok) v.emplace_back("combination split needs two distinct roles");
      break;
    }
    case SplitMethod::Temporal:
      if (m.timestamp_column.empty()) v.emplace_back("temporal split needs timestamp_column");
      break;
  }

  const double sum = m.fractions[0] + m.fractions[1] + m.fractions[2];
  if (!(m.fractions[0] > 0 && m.fractions[1] > 0 && m.fractions[2] > 0) || std::abs(sum - 1.0) > 1e-9) {
    v.emplace_back("split fractions must be positive and sum to 1");
  }
  return v;
}

}  // namespace txf::corpus

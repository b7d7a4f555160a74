#include "costens/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "costens/error.hpp"
#include "costens/rng.hpp"
#include "costens/text.hpp"

namespace costens {

const char* label_name(Label y) { return y == Label::Favor ? "favor" : "dislike"; }

SurveyTable::SurveyTable(std::vector<std::string> column_names, std::vector<Cell> cells)
    : column_names_(std::move(column_names)), cells_(std::move(cells)) {
  if (column_names_.empty()) throw Error(ErrorCode::MalformedHeader, "no columns");
  if (cells_.size() % column_names_.size() != 0) {
    throw Error(ErrorCode::LengthMismatch, "cell count is not a multiple of the column count");
  }
  for (const auto& c : cells_) {
    if (c && (*c < 1 || *c > 5)) {
      throw Error(ErrorCode::ValueOutOfRange, "cell value " + std::to_string(*c) + " outside [1, 5]");
    }
  }
  n_rows_ = cells_.size() / column_names_.size();
}

std::optional<std::size_t> SurveyTable::column_index(const std::string& name) const {
  auto it = std::find(column_names_.begin(), column_names_.end(), name);
  if (it == column_names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - column_names_.begin());
}

BinaryDataset::BinaryDataset(std::vector<std::string> feature_names, std::vector<double> features,
                             std::vector<Label> labels, std::string target_name,
                             std::size_t dropped_rows)
    : feature_names_(std::move(feature_names)),
      features_(std::move(features)),
      labels_(std::move(labels)),
      target_name_(std::move(target_name)),
      dropped_rows_(dropped_rows) {
  if (feature_names_.empty()) throw Error(ErrorCode::EmptyData, "dataset needs at least one feature");
  if (labels_.empty()) throw Error(ErrorCode::EmptyDataset, "dataset needs at least one row");
  if (features_.size() != labels_.size() * feature_names_.size()) {
    throw Error(ErrorCode::LengthMismatch, "feature matrix size does not match n x d");
  }
  for (double v : features_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite feature value");
  }
}

std::array<std::size_t, 2> BinaryDataset::class_counts() const {
  std::array<std::size_t, 2> counts{};
  for (Label y : labels_) ++counts[class_index(y)];
  return counts;
}

BinaryDataset BinaryDataset::subset(std::span<const std::size_t> rows) const {
  std::vector<double> f;
  std::vector<Label> y;
  f.reserve(rows.size() * d());
  y.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= n()) throw Error(ErrorCode::InvalidArgument, "row index out of range");
    auto src = row(r);
    f.insert(f.end(), src.begin(), src.end());
    y.push_back(labels_[r]);
  }
  return BinaryDataset(feature_names_, std::move(f), std::move(y), target_name_, 0);
}

BinaryDataset BinaryDataset::with_features(std::span<const std::string> names) const {
  std::vector<std::size_t> cols;
  std::string missing;
  for (const auto& name : names) {
    auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
    if (it == feature_names_.end()) {
      missing += (missing.empty() ? "" : ", ") + name;
    } else {
      cols.push_back(static_cast<std::size_t>(it - feature_names_.begin()));
    }
  }
  if (!missing.empty()) throw Error(ErrorCode::SchemaMismatch, "missing features: " + missing);
  std::vector<double> f;
  f.reserve(n() * cols.size());
  for (std::size_t i = 0; i < n(); ++i) {
    for (std::size_t c : cols) f.push_back(at(i, c));
  }
  return BinaryDataset(std::vector<std::string>(names.begin(), names.end()), std::move(f), labels_,
                       target_name_, dropped_rows_);
}

BinaryDataset BinaryDataset::with_column(std::size_t j, std::span<const double> values) const {
  if (j >= d() || values.size() != n()) throw Error(ErrorCode::DimensionMismatch, "bad column replacement");
  auto f = features_;
  for (std::size_t i = 0; i < n(); ++i) f[i * d() + j] = values[i];
  return BinaryDataset(feature_names_, std::move(f), labels_, target_name_, dropped_rows_);
}

std::vector<std::size_t> SplitPlan::train_rows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_assignment.size(); ++i) {
    if (fold_assignment[i] != fold) rows.push_back(i);
  }
  return rows;
}

std::vector<std::size_t> SplitPlan::test_rows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_assignment.size(); ++i) {
    if (fold_assignment[i] == fold) rows.push_back(i);
  }
  return rows;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

SurveyTable load_survey_csv(const std::filesystem::path& path, const std::string& target_column) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  return parse_survey_csv(in, target_column);
}

SurveyTable parse_survey_csv(std::istream& in, const std::string& target_column) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedHeader, "missing header row");
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

  std::vector<std::string> names;
  std::set<std::string> seen;
  for (auto& raw : split_csv_line(line)) {
    std::string name(text::trim(raw));
    if (name.empty()) throw Error(ErrorCode::MalformedHeader, "empty column name");
    if (!seen.insert(name).second) throw Error(ErrorCode::MalformedHeader, "duplicate column name '" + name + "'");
    names.push_back(std::move(name));
  }
  if (!seen.contains(target_column)) {
    throw Error(ErrorCode::MissingTargetColumn, "'" + target_column + "' not in header");
  }

  std::vector<Cell> cells;
  std::size_t data_row = 0;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    ++data_row;
    auto fields = split_csv_line(line);
    if (fields.size() != names.size()) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(data_row) + " has " +
                                             std::to_string(fields.size()) + " cells, expected " +
                                             std::to_string(names.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      auto cell = text::trim(fields[c]);
      auto value = text::parse_double(cell);
      if (cell.empty() || !value) {
        cells.emplace_back(std::nullopt);
        continue;
      }
      if (*value != std::floor(*value) || *value < 1.0 || *value > 5.0) {
        throw Error(ErrorCode::ValueOutOfRange, "row " + std::to_string(data_row) + ", column '" +
                                                    names[c] + "': value " + std::string(cell) +
                                                    " outside [1, 5]");
      }
      cells.emplace_back(static_cast<int>(*value));
    }
  }
  return SurveyTable(std::move(names), std::move(cells));
}

BinaryDataset binarize(const SurveyTable& table, const std::string& target_column, int threshold) {
  if (threshold < 2 || threshold > 5) {
    throw Error(ErrorCode::InvalidArgument, "threshold must be in [2, 5]");
  }
  auto target = table.column_index(target_column);
  if (!target) throw Error(ErrorCode::MissingTargetColumn, "'" + target_column + "' not in table");

  // Columns with no numeric cell at all (free-text answers) are not retained;
  // deleting on them would empty the table.
  std::vector<std::size_t> retained;
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    if (c == *target) continue;
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
      if (table.at(r, c)) {
        retained.push_back(c);
        break;
      }
    }
  }
  if (retained.empty()) throw Error(ErrorCode::EmptyDataset, "no numeric predictor columns");

  std::vector<std::string> names;
  for (std::size_t c : retained) names.push_back(table.column_names()[c]);

  std::vector<double> features;
  std::vector<Label> labels;
  std::size_t dropped = 0;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    const Cell& y = table.at(r, *target);
    bool complete = y.has_value();
    for (std::size_t c : retained) complete = complete && table.at(r, c).has_value();
    if (!complete) {
      ++dropped;
      continue;
    }
    for (std::size_t c : retained) features.push_back(static_cast<double>(*table.at(r, c)));
    labels.push_back(*y >= threshold ? Label::Favor : Label::Dislike);
  }
  if (labels.empty()) throw Error(ErrorCode::EmptyDataset, "every row was dropped by listwise deletion");
  return BinaryDataset(std::move(names), std::move(features), std::move(labels), target_column, dropped);
}

ImbalanceProfile imbalance_profile(const SurveyTable& table, const std::string& target_column,
                                   int threshold) {
  auto target = table.column_index(target_column);
  if (!target) throw Error(ErrorCode::MissingTargetColumn, "'" + target_column + "' not in table");

  ImbalanceProfile p;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    const Cell& v = table.at(r, *target);
    if (!v) continue;
    ++p.per_scale_counts[static_cast<std::size_t>(*v - 1)];
    if (*v >= threshold) {
      ++p.favor_count;
    } else {
      ++p.dislike_count;
    }
  }
  if (p.favor_count + p.dislike_count == 0) {
    throw Error(ErrorCode::EmptyDataset, "target column has no values");
  }
  p.minority_class = p.favor_count < p.dislike_count ? Label::Favor : Label::Dislike;
  const auto lo = std::min(p.favor_count, p.dislike_count);
  const auto hi = std::max(p.favor_count, p.dislike_count);
  p.degenerate = lo == 0;
  p.ratio = p.degenerate ? std::numeric_limits<double>::infinity()
                         : static_cast<double>(hi) / static_cast<double>(lo);
  return p;
}

SplitPlan stratified_kfold(const BinaryDataset& data, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "k must be at least 2");
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < data.n(); ++i) by_class[class_index(data.label(i))].push_back(i);
  for (const auto& rows : by_class) {
    if (rows.size() < k) {
      throw Error(ErrorCode::TooFewSamples, "a class has " + std::to_string(rows.size()) +
                                                " rows, fewer than k = " + std::to_string(k));
    }
  }

  // Round-robin over the concatenated shuffled class lists: both the per-class
  // and the overall fold sizes then differ by at most one.
  SplitPlan plan{k, std::vector<std::size_t>(data.n()), seed};
  std::size_t pos = 0;
  for (std::size_t c = 0; c < 2; ++c) {
    auto rows = by_class[c];
    Rng rng = Rng::stream(seed, 0x5f01d, c);
    rng.shuffle(std::span<std::size_t>(rows));
    for (std::size_t r : rows) plan.fold_assignment[r] = pos++ % k;
  }
  return plan;
}

BinaryDataset synth_survey(const SynthSpec& spec) {
  if (!(spec.favor_fraction > 0.0 && spec.favor_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidFraction, "favor_fraction must be in (0, 1)");
  }
  if (spec.n == 0 || spec.d == 0) throw Error(ErrorCode::InvalidArgument, "n and d must be positive");
  if (!(spec.noise_level >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise_level must be >= 0");
  std::vector<bool> informative(spec.d, false);
  for (std::size_t j : spec.informative) {
    if (j >= spec.d) throw Error(ErrorCode::InvalidArgument, "informative index out of range");
    informative[j] = true;
  }

  Rng rng(spec.seed);
  const auto n_favor = static_cast<std::size_t>(std::llround(spec.favor_fraction * static_cast<double>(spec.n)));
  std::vector<Label> labels(spec.n, Label::Dislike);
  std::fill_n(labels.begin(), std::min(n_favor, spec.n), Label::Favor);
  rng.shuffle(std::span<Label>(labels));

  std::vector<double> features;
  features.reserve(spec.n * spec.d);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = 0; j < spec.d; ++j) {
      double v;
      if (informative[j]) {
        const double latent = 3.0 + sign_of(labels[i]) + spec.noise_level * rng.normal();
        v = std::clamp(std::round(latent), 1.0, 5.0);
      } else {
        v = static_cast<double>(1 + rng.index(5));
      }
      features.push_back(v);
    }
  }
  std::vector<std::string> names;
  for (std::size_t j = 0; j < spec.d; ++j) names.push_back("f" + std::to_string(j));
  return BinaryDataset(std::move(names), std::move(features), std::move(labels), "synthetic", 0);
}

void write_dataset(std::ostream& out, const BinaryDataset& data) {
  out << kDatasetMagic << '\n';
  out << "#target=" << data.target_name() << '\n';
  out << "#dropped=" << data.dropped_rows() << '\n';
  out << "#types=int";
  for (std::size_t j = 0; j < data.d(); ++j) out << ",real";
  out << '\n';
  out << "label";
  for (const auto& name : data.feature_names()) out << ',' << csv_escape(name);
  out << '\n';
  for (std::size_t i = 0; i < data.n(); ++i) {
    out << (data.label(i) == Label::Favor ? "1" : "-1");
    for (double v : data.row(i)) out << ',' << text::format_double(v);
    out << '\n';
  }
}

BinaryDataset read_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || text::trim(line) != kDatasetMagic) {
    throw Error(ErrorCode::VersionMismatch, "expected '" + std::string(kDatasetMagic) + "'");
  }
  std::string target = "target";
  std::size_t dropped = 0;
  while (in.peek() == '#') {
    std::getline(in, line);
    auto body = std::string(text::trim(line)).substr(1);
    auto eq = body.find('=');
    if (eq == std::string::npos) continue;
    auto key = body.substr(0, eq);
    auto value = body.substr(eq + 1);
    if (key == "target") target = value;
    if (key == "dropped") dropped = text::parse_int<std::size_t>(value).value_or(0);
  }
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedHeader, "missing column header");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "label") {
    throw Error(ErrorCode::MalformedHeader, "dataset header must start with 'label'");
  }
  std::vector<std::string> names(header.begin() + 1, header.end());

  std::vector<double> features;
  std::vector<Label> labels;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    ++row;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::ParseError, "dataset row " + std::to_string(row) + " has wrong cell count");
    }
    auto y = text::parse_int<int>(text::trim(fields[0]));
    if (!y || (*y != 1 && *y != -1)) throw Error(ErrorCode::ParseError, "bad label in row " + std::to_string(row));
    labels.push_back(*y == 1 ? Label::Favor : Label::Dislike);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      auto v = text::parse_double(text::trim(fields[c]));
      if (!v) throw Error(ErrorCode::ParseError, "bad value in row " + std::to_string(row));
      features.push_back(*v);
    }
  }
  if (labels.empty()) throw Error(ErrorCode::EmptyDataset, "dataset file has no rows");
  return BinaryDataset(std::move(names), std::move(features), std::move(labels), std::move(target), dropped);
}

}  // namespace costens

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace costens {

// Binary preference label. Class index order everywhere is (dislike, favor).
enum class Label : std::int8_t { Dislike = -1, Favor = 1 };

constexpr double sign_of(Label y) { return y == Label::Favor ? 1.0 : -1.0; }
constexpr std::size_t class_index(Label y) { return y == Label::Favor ? 1 : 0; }
constexpr Label label_from_index(std::size_t c) { return c == 1 ? Label::Favor : Label::Dislike; }
// Zero maps to Dislike: every tie in the library resolves to the dislike class.
constexpr Label label_from_score(double s) { return s > 0.0 ? Label::Favor : Label::Dislike; }

const char* label_name(Label y);

using Cell = std::optional<int>;

// Raw ordinal survey responses, row-major. Non-missing cells are in [1, 5].
class SurveyTable {
 public:
  SurveyTable(std::vector<std::string> column_names, std::vector<Cell> cells);

  const std::vector<std::string>& column_names() const { return column_names_; }
  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return column_names_.size(); }
  const Cell& at(std::size_t row, std::size_t col) const { return cells_[row * n_cols() + col]; }
  std::optional<std::size_t> column_index(const std::string& name) const;

 private:
  std::vector<std::string> column_names_;
  std::vector<Cell> cells_;
  std::size_t n_rows_ = 0;
};

// Complete numeric design matrix with +/-1 labels; the unit every learner consumes.
class BinaryDataset {
 public:
  BinaryDataset(std::vector<std::string> feature_names, std::vector<double> features,
                std::vector<Label> labels, std::string target_name, std::size_t dropped_rows = 0);

  std::size_t n() const { return labels_.size(); }
  std::size_t d() const { return feature_names_.size(); }
  std::span<const double> row(std::size_t i) const { return {features_.data() + i * d(), d()}; }
  double at(std::size_t i, std::size_t j) const { return features_[i * d() + j]; }
  Label label(std::size_t i) const { return labels_[i]; }

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<double>& features() const { return features_; }
  const std::vector<Label>& labels() const { return labels_; }
  const std::string& target_name() const { return target_name_; }
  std::size_t dropped_rows() const { return dropped_rows_; }

  std::array<std::size_t, 2> class_counts() const;

  BinaryDataset subset(std::span<const std::size_t> rows) const;
  // Keeps the named features in the given order; throws SchemaMismatch on unknown names.
  BinaryDataset with_features(std::span<const std::string> names) const;
  // Same rows and labels with one feature column replaced.
  BinaryDataset with_column(std::size_t j, std::span<const double> values) const;

  bool operator==(const BinaryDataset&) const = default;

 private:
  std::vector<std::string> feature_names_;
  std::vector<double> features_;
  std::vector<Label> labels_;
  std::string target_name_;
  std::size_t dropped_rows_ = 0;
};

struct ImbalanceProfile {
  std::array<std::size_t, 5> per_scale_counts{};  // index 0 is scale value 1
  std::size_t dislike_count = 0;
  std::size_t favor_count = 0;
  double ratio = 0.0;  // majority / minority; +inf when one class is empty
  Label minority_class = Label::Dislike;
  bool degenerate = false;
};

struct SplitPlan {
  std::size_t k = 0;
  std::vector<std::size_t> fold_assignment;
  std::uint64_t seed = 0;

  std::vector<std::size_t> train_rows(std::size_t fold) const;
  std::vector<std::size_t> test_rows(std::size_t fold) const;
};

struct SynthSpec {
  std::size_t n = 0;
  double favor_fraction = 0.5;
  std::size_t d = 0;
  std::vector<std::size_t> informative;
  double noise_level = 1.0;
  std::uint64_t seed = 0;
};

SurveyTable load_survey_csv(const std::filesystem::path& path, const std::string& target_column);
SurveyTable parse_survey_csv(std::istream& in, const std::string& target_column);

BinaryDataset binarize(const SurveyTable& table, const std::string& target_column, int threshold = 4);

ImbalanceProfile imbalance_profile(const SurveyTable& table, const std::string& target_column,
                                   int threshold = 4);

SplitPlan stratified_kfold(const BinaryDataset& data, std::size_t k, std::uint64_t seed);

BinaryDataset synth_survey(const SynthSpec& spec);

// Columnar text container used by the CLI for datasets.
inline constexpr const char* kDatasetMagic = "#costens-dataset v1";
void write_dataset(std::ostream& out, const BinaryDataset& data);
BinaryDataset read_dataset(std::istream& in);

// Splits one CSV record; handles double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_escape(const std::string& field);

}  // namespace costens

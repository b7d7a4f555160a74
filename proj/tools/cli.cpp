#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "costens/bagging.hpp"
#include "costens/boosting.hpp"
#include "costens/dataset.hpp"
#include "costens/error.hpp"
#include "costens/eval.hpp"
#include "costens/model.hpp"
#include "costens/text.hpp"

namespace costens::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kConfigFile = "resolved_config.json";

struct Common {
  std::string input;
  std::string target;
  int threshold = 4;
  std::uint64_t seed = 42;
  std::string output_dir;
  std::string features_from;
  std::size_t threads = 0;
};

struct LearnerFlags {
  std::string algorithm = "adaboost";
  std::string cost = "0,1,1,0";
  std::size_t rounds = 200;
  std::size_t depth = 3;
  std::size_t trees = 400;
  std::size_t bag_depth = 30;
  std::size_t patience = 20;
  double svm_c = 1.0;
  std::string bag_cost = "weighted";
};

// Files are staged in memory and only written once the command succeeded.
struct Outputs {
  std::vector<std::pair<fs::path, std::string>> files;
  void add(const fs::path& p, std::string content) { files.emplace_back(p, std::move(content)); }
};

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_dataset_file(const std::string& content) { return content.rfind("#costens-dataset", 0) == 0; }

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) {
    auto t = std::string(text::trim(part));
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::vector<std::string> read_feature_list(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> names;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    auto name = std::string(text::trim(fields[0]));
    if (first && name == "feature") {
      first = false;
      continue;
    }
    first = false;
    names.push_back(name);
  }
  if (names.empty()) throw Error(ErrorCode::EmptyInput, "feature list " + path.string() + " is empty");
  return names;
}

BinaryDataset load_dataset(const Common& c) {
  if (c.input.empty()) throw UsageError("--input is required");
  const auto content = read_file(c.input);
  std::istringstream in(content);
  BinaryDataset data = [&] {
    if (is_dataset_file(content)) return read_dataset(in);
    if (c.target.empty()) throw UsageError("--target is required for survey CSV input");
    return binarize(parse_survey_csv(in, c.target), c.target, c.threshold);
  }();
  if (!c.features_from.empty()) data = data.with_features(read_feature_list(c.features_from));
  return data;
}

fs::path output_dir(const Common& c) { return c.output_dir.empty() ? fs::path(".") : fs::path(c.output_dir); }

LearnerSpec learner_spec(const LearnerFlags& f, const Common& c) {
  LearnerSpec spec;
  try {
    spec.algorithm = parse_algorithm(f.algorithm);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  spec.cost = CostMatrix::parse(f.cost);
  spec.max_rounds = f.rounds;
  spec.weak_params.max_depth = f.depth;
  spec.stop = EarlyStopSpec::defaults();
  spec.stop.patience = f.patience;
  spec.n_trees = f.trees;
  spec.bag_params.max_depth = f.bag_depth;
  spec.cost_weighted_bagging = f.bag_cost == "weighted";
  spec.svm_c = f.svm_c;
  spec.threads = c.threads;
  return spec;
}

std::string to_csv_curve(const OobCurve& curve) {
  std::string s = "index,value\n";
  for (std::size_t t = 0; t < curve.error.size(); ++t) {
    s += std::to_string(t + 1) + "," + text::format_double(curve.error[t]) + "\n";
  }
  return s;
}

std::string to_csv_importance(const ImportanceReport& report) {
  std::string s = "feature,score\n";
  for (std::size_t j = 0; j < report.scores.size(); ++j) {
    s += csv_escape(report.feature_names[j]) + "," + text::format_double(report.scores[j]) + "\n";
  }
  return s;
}

std::string model_text(const TrainedModel& model) {
  std::ostringstream ss;
  save_model(ss, model);
  return ss.str();
}

// ---- subcommands ----

void cmd_profile(const Common& c, Outputs& out) {
  if (c.input.empty() || c.target.empty()) throw UsageError("profile needs --input and --target");
  const auto content = read_file(c.input);
  if (is_dataset_file(content)) throw UsageError("profile needs the raw survey CSV, not a binarized dataset");
  std::istringstream in(content);
  const auto table = parse_survey_csv(in, c.target);
  const auto p = imbalance_profile(table, c.target, c.threshold);
  std::string s = "target,count_1,count_2,count_3,count_4,count_5,dislike,favor,ratio,minority,degenerate\n";
  s += csv_escape(c.target);
  for (auto n : p.per_scale_counts) s += "," + std::to_string(n);
  s += "," + std::to_string(p.dislike_count) + "," + std::to_string(p.favor_count) + ",";
  s += p.degenerate ? std::string("inf") : text::format_double(p.ratio);
  s += std::string(",") + label_name(p.minority_class) + "," + (p.degenerate ? "1" : "0") + "\n";
  out.add(output_dir(c) / "profile.csv", s);
}

void cmd_importance(const Common& c, const LearnerFlags& f, const std::string& cost, Outputs& out) {
  const auto data = load_dataset(c);
  BaggingOptions opts;
  opts.n_trees = f.trees;
  opts.params.max_depth = f.bag_depth;
  opts.seed = c.seed;
  opts.threads = c.threads;
  if (cost != "none") opts.cost = CostMatrix::parse(cost);
  const auto ensemble = fit_bagged(data, opts);
  const auto curve = oob_error_curve(ensemble, data, c.threads);
  const auto report = permutation_importance(ensemble, data, c.seed, c.threads);
  out.add(output_dir(c) / "oob_curve.csv", to_csv_curve(curve));
  out.add(output_dir(c) / "importance.csv", to_csv_importance(report));
  out.add(output_dir(c) / "bagged_model.txt", model_text(ensemble));
}

void cmd_select(const Common& c, const std::string& importance, double score_threshold, Outputs& out) {
  if (importance.empty()) throw UsageError("select needs --importance");
  std::istringstream in(read_file(importance));
  ImportanceReport report;
  std::string line;
  std::getline(in, line);
  if (text::trim(line) != "feature,score") throw Error(ErrorCode::MalformedHeader, "expected 'feature,score' header");
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    auto v = fields.size() == 2 ? text::parse_double(text::trim(fields[1])) : std::nullopt;
    if (!v) throw Error(ErrorCode::ParseError, "bad importance row '" + line + "'");
    report.feature_names.push_back(fields[0]);
    report.scores.push_back(*v);
  }
  report.threshold_used = score_threshold;
  std::string s = "feature,score\n";
  for (const auto& name : select_features(report, score_threshold)) {
    auto j = static_cast<std::size_t>(std::find(report.feature_names.begin(), report.feature_names.end(), name) -
                                      report.feature_names.begin());
    s += csv_escape(name) + "," + text::format_double(report.scores[j]) + "\n";
  }
  out.add(output_dir(c) / "selected_features.csv", s);
}

void cmd_train(const Common& c, const LearnerFlags& f, Outputs& out) {
  const auto spec = learner_spec(f, c);
  const auto data = load_dataset(c);
  const auto model = train_model(data, spec, c.seed);
  out.add(output_dir(c) / "model.txt", model_text(model));
  if (const auto* bag = std::get_if<BaggedEnsemble>(&model)) {
    out.add(output_dir(c) / "oob_curve.csv", to_csv_curve(oob_error_curve(*bag, data, c.threads)));
  }
}

void cmd_cost_sweep(const Common& c, const LearnerFlags& f, const std::string& algorithms, const std::string& costs,
                    std::size_t folds, const std::string& dataset_name, Outputs& out) {
  const auto base = learner_spec(f, c);
  std::vector<Algorithm> algos;
  try {
    for (const auto& a : split_list(algorithms, ',')) algos.push_back(parse_algorithm(a));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  std::vector<CostMatrix> matrices;
  for (const auto& m : split_list(costs, ';')) matrices.push_back(CostMatrix::parse(m));
  if (algos.empty() || matrices.empty()) throw UsageError("cost-sweep needs at least one algorithm and one cost");
  const auto data = load_dataset(c);
  const auto cells = cost_sweep(data, algos, matrices, c.seed, base, folds);
  std::ostringstream csv;
  write_sweep_csv(csv, dataset_name, cells);
  out.add(output_dir(c) / "cost_sweep.csv", csv.str());
  for (const auto& cell : cells) {
    std::ostringstream cm;
    write_confusion_csv(cm, cell.report.pooled);
    out.add(output_dir(c) / ("confusion_" + std::string(algorithm_name(cell.algorithm)) + "_" + cell.cost.tag() + ".csv"),
            cm.str());
  }
}

void cmd_compare(const Common& c, const LearnerFlags& f, std::size_t folds, const std::string& dataset_name,
                 Outputs& out) {
  const auto base = learner_spec(f, c);
  const auto data = load_dataset(c);
  const auto rows = compare_algorithms(data, base.cost, c.seed, base, folds);
  std::ostringstream csv, table;
  write_comparison_csv(csv, dataset_name, base.cost, rows);
  write_comparison_table(table, dataset_name, rows);
  out.add(output_dir(c) / "compare.csv", csv.str());
  out.add(output_dir(c) / "compare.txt", table.str());
}

void cmd_metrics(const Common& c, const LearnerFlags& f, const std::string& confusion_text, const std::string& positive,
                 std::size_t folds, const std::string& dataset_name, Outputs& out) {
  if (positive != "favor" && positive != "dislike") throw UsageError("--positive must be favor or dislike");
  const Label pos = positive == "favor" ? Label::Favor : Label::Dislike;
  ConfusionMatrix cm;
  std::string algorithm = "given";
  std::string cost_tag = "none";
  if (!confusion_text.empty()) {
    auto parts = split_list(confusion_text, ',');
    if (parts.size() != 4) throw UsageError("--confusion needs four counts");
    for (std::size_t k = 0; k < 4; ++k) {
      auto v = text::parse_int<std::uint64_t>(parts[k]);
      if (!v) throw UsageError("bad count '" + parts[k] + "'");
      cm.counts[k / 2][k % 2] = *v;
    }
  } else {
    const auto spec = learner_spec(f, c);
    const auto data = load_dataset(c);
    cm = crossval(data, spec, folds, c.seed).pooled;
    algorithm = algorithm_name(spec.algorithm);
    cost_tag = spec.cost.tag();
  }
  std::ostringstream csv, cm_csv;
  write_metrics_csv(csv, dataset_name, algorithm, cost_tag, metrics(cm, pos));
  write_confusion_csv(cm_csv, cm);
  out.add(output_dir(c) / "metrics.csv", csv.str());
  out.add(output_dir(c) / "confusion.csv", cm_csv.str());
}

void cmd_synth(const Common& c, std::size_t n, double favor_fraction, std::size_t d, const std::string& informative,
               double noise, const std::string& name, Outputs& out) {
  SynthSpec spec;
  spec.n = n;
  spec.favor_fraction = favor_fraction;
  spec.d = d;
  for (const auto& s : split_list(informative, ',')) {
    auto v = text::parse_int<std::size_t>(s);
    if (!v) throw UsageError("bad informative index '" + s + "'");
    spec.informative.push_back(*v);
  }
  spec.noise_level = noise;
  spec.seed = c.seed;
  std::ostringstream ss;
  write_dataset(ss, synth_survey(spec));
  out.add(output_dir(c) / name, ss.str());
}

void cmd_predict(const Common& c, const std::string& model_path, const std::string& output_path, Outputs& out) {
  if (model_path.empty() || c.input.empty() || output_path.empty()) {
    throw UsageError("predict needs --model, --input and --output");
  }
  std::istringstream model_in(read_file(model_path));
  const auto model = load_model(model_in);
  const auto& features = model_features(model);

  std::istringstream in(read_file(c.input));
  std::string line;
  std::vector<std::string> comments;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind('#', 0) == 0) continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty()) throw Error(ErrorCode::EmptyInput, "input has no header");
  for (auto& h : header) h = std::string(text::trim(h));

  std::vector<std::size_t> cols;
  std::string missing;
  for (const auto& name : features) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      missing += (missing.empty() ? "" : ", ") + name;
    } else {
      cols.push_back(static_cast<std::size_t>(it - header.begin()));
    }
  }
  if (!missing.empty()) {
    std::string extra;
    for (const auto& h : header) {
      if (std::find(features.begin(), features.end(), h) == features.end()) extra += (extra.empty() ? "" : ", ") + h;
    }
    throw Error(ErrorCode::SchemaMismatch,
                "missing features: " + missing + (extra.empty() ? "" : "; extra columns: " + extra));
  }

  std::string result;
  for (std::size_t k = 0; k < header.size(); ++k) result += (k ? "," : "") + csv_escape(header[k]);
  result += ",predicted_label,score\n";
  std::vector<double> row(features.size());
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) throw Error(ErrorCode::ParseError, "row has wrong cell count: " + line);
    bool complete = true;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      auto v = text::parse_double(text::trim(fields[cols[j]]));
      complete = complete && v.has_value();
      row[j] = v.value_or(0.0);
    }
    for (std::size_t k = 0; k < fields.size(); ++k) result += (k ? "," : "") + csv_escape(fields[k]);
    if (complete) {
      const double s = model_score(model, row);
      result += std::string(",") + label_name(label_from_score(s)) + "," + text::format_double(s) + "\n";
    } else {
      result += ",,\n";
    }
  }
  out.add(output_path, result);
}

std::string resolve_env_output_dir() {
  const char* env = std::getenv("COSTENS_OUTPUT_DIR");
  return env ? std::string(env) : std::string(".");
}

// Every option of the chosen subcommand with its effective value.
nlohmann::ordered_json resolved_config(const CLI::App* sub, std::vector<std::string>& argv) {
  nlohmann::ordered_json options = nlohmann::ordered_json::object();
  argv = {sub->get_name()};
  for (const CLI::Option* opt : sub->get_options()) {
    const auto& longs = opt->get_lnames();
    if (longs.empty() || longs[0] == "help") continue;
    std::string value;
    if (opt->count() > 0) {
      value = opt->results().back();
    } else {
      value = opt->get_default_str();
    }
    options[longs[0]] = value;
    if (!value.empty()) {
      argv.push_back("--" + longs[0]);
      argv.push_back(value);
    }
  }
  return options;
}

int run_parsed(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth);

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run_parsed(args, out, err, 0);
}

namespace {

int run_parsed(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth) {
  CLI::App app{"Cost-sensitive ensemble classifiers for imbalanced ordinal survey data", "costens"};
  app.require_subcommand(1);

  Common c;
  c.output_dir = resolve_env_output_dir();
  LearnerFlags f;
  std::string importance_path, confusion_text, positive = "favor", algorithms = "adaboost,gentleboost";
  std::string costs = "0,1,1,0;0,5,1,0;0,2,1,0", dataset_name = "dataset", informative = "0,1,2";
  std::string model_path, output_path, config_path, synth_name = "dataset.csv", importance_cost = "none";
  double score_threshold = 0.1, favor_fraction = 0.5, noise = 1.0;
  std::size_t folds = 5, synth_n = 500, synth_d = 10;

  auto add_common = [&](CLI::App* sub, bool with_input) {
    sub->option_defaults()->always_capture_default();
    if (with_input) {
      sub->add_option("--input", c.input, "Survey CSV or costens dataset file");
      sub->add_option("--target", c.target, "Target column of a survey CSV");
      sub->add_option("--threshold", c.threshold, "Ordinal value at or above which a response is 'favor'")
          ->check(CLI::Range(2, 5));
      sub->add_option("--features-from", c.features_from, "Restrict to features listed in this file");
    }
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_option("--output-dir", c.output_dir, "Directory for output files (env COSTENS_OUTPUT_DIR)");
    sub->add_option("--threads", c.threads, "Worker threads, 0 for all cores");
  };
  auto add_learner = [&](CLI::App* sub) {
    sub->add_option("--algorithm", f.algorithm, "adaboost | gentleboost | bagged | svm | majority");
    sub->add_option("--cost", f.cost, "Cost matrix, row-major: c(d,d),c(d,f),c(f,d),c(f,f)");
    sub->add_option("--rounds", f.rounds, "Maximum boosting rounds")->check(CLI::PositiveNumber);
    sub->add_option("--depth", f.depth, "Weak-learner tree depth")->check(CLI::PositiveNumber);
    sub->add_option("--early-stop-patience", f.patience, "Early-stopping patience, 0 disables");
    sub->add_option("--trees", f.trees, "Bagged trees")->check(CLI::PositiveNumber);
    sub->add_option("--bag-depth", f.bag_depth, "Bagged tree depth")->check(CLI::PositiveNumber);
    sub->add_option("--bag-cost", f.bag_cost, "weighted | plain bootstrap for bagging")
        ->check(CLI::IsMember({"weighted", "plain"}));
    sub->add_option("--svm-c", f.svm_c, "SVM box constraint")->check(CLI::PositiveNumber);
  };

  auto* profile = app.add_subcommand("profile", "Class-imbalance profile of a survey target");
  add_common(profile, true);

  auto* importance = app.add_subcommand("importance", "Bagged trees, OOB error curve and permutation importance");
  add_common(importance, true);
  importance->add_option("--trees", f.trees, "Bagged trees")->check(CLI::PositiveNumber);
  importance->add_option("--bag-depth", f.bag_depth, "Tree depth")->check(CLI::PositiveNumber);
  importance->add_option("--cost", importance_cost, "Cost-weighted bootstrap matrix, or 'none'");

  auto* select = app.add_subcommand("select", "Select features whose importance exceeds a threshold");
  add_common(select, false);
  select->add_option("--importance", importance_path, "importance.csv from the importance command");
  select->add_option("--score-threshold", score_threshold, "Keep features scoring strictly above this");

  auto* train = app.add_subcommand("train", "Train one model and write it to model.txt");
  add_common(train, true);
  add_learner(train);

  auto* sweep = app.add_subcommand("cost-sweep", "Cross-validated confusion matrices over cost matrices");
  add_common(sweep, true);
  add_learner(sweep);
  sweep->add_option("--algorithms", algorithms, "Comma-separated algorithms");
  sweep->add_option("--costs", costs, "Semicolon-separated cost matrices");
  sweep->add_option("--folds", folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
  sweep->add_option("--dataset-name", dataset_name, "Dataset label used in reports");

  auto* compare = app.add_subcommand("compare", "AdaBoost vs bagged trees vs SVM under one cost matrix");
  add_common(compare, true);
  add_learner(compare);
  compare->add_option("--folds", folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
  compare->add_option("--dataset-name", dataset_name, "Dataset label used in reports");

  auto* metrics_cmd = app.add_subcommand("metrics", "Precision, recall and accuracy");
  add_common(metrics_cmd, true);
  add_learner(metrics_cmd);
  metrics_cmd->add_option("--confusion", confusion_text, "Explicit confusion counts dd,df,fd,ff");
  metrics_cmd->add_option("--positive", positive, "favor | dislike");
  metrics_cmd->add_option("--folds", folds, "Cross-validation folds")->check(CLI::Range(2, 1000));
  metrics_cmd->add_option("--dataset-name", dataset_name, "Dataset label used in reports");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic imbalanced ordinal dataset");
  add_common(synth, false);
  synth->add_option("--n", synth_n, "Rows")->check(CLI::PositiveNumber);
  synth->add_option("--favor-fraction", favor_fraction, "Fraction of favor labels");
  synth->add_option("--d", synth_d, "Features")->check(CLI::PositiveNumber);
  synth->add_option("--informative", informative, "Comma-separated informative feature indices");
  synth->add_option("--noise", noise, "Noise level of informative features");
  synth->add_option("--name", synth_name, "Output file name inside --output-dir");

  auto* predict = app.add_subcommand("predict", "Score rows with a saved model");
  add_common(predict, true);
  predict->add_option("--model", model_path, "Model file");
  predict->add_option("--output", output_path, "Output CSV");

  auto* replay = app.add_subcommand("replay", "Re-run a command from its resolved_config.json");
  replay->add_option("--config", config_path, "resolved_config.json")->required();

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (replay->parsed()) {
      if (depth > 0) throw UsageError("replay cannot be nested");
      const auto config = nlohmann::json::parse(read_file(config_path));
      std::vector<std::string> replay_args{"costens"};
      for (const auto& a : config.at("argv")) replay_args.push_back(a.get<std::string>());
      return run_parsed(replay_args, out, err, depth + 1);
    }

    CLI::App* sub = app.get_subcommands().front();
    Outputs outputs;
    const std::string name = sub->get_name();
    if (name == "profile") {
      cmd_profile(c, outputs);
    } else if (name == "importance") {
      cmd_importance(c, f, importance_cost, outputs);
    } else if (name == "select") {
      cmd_select(c, importance_path, score_threshold, outputs);
    } else if (name == "train") {
      cmd_train(c, f, outputs);
    } else if (name == "cost-sweep") {
      cmd_cost_sweep(c, f, algorithms, costs, folds, dataset_name, outputs);
    } else if (name == "compare") {
      cmd_compare(c, f, folds, dataset_name, outputs);
    } else if (name == "metrics") {
      cmd_metrics(c, f, confusion_text, positive, folds, dataset_name, outputs);
    } else if (name == "synth") {
      cmd_synth(c, synth_n, favor_fraction, synth_d, informative, noise, synth_name, outputs);
    } else if (name == "predict") {
      cmd_predict(c, model_path, output_path, outputs);
    }

    std::vector<std::string> argv;
    nlohmann::ordered_json config;
    config["format"] = "costens-config v1";
    config["command"] = name;
    config["seed"] = c.seed;
    config["options"] = resolved_config(sub, argv);
    config["argv"] = argv;
    outputs.add(output_dir(c) / kConfigFile, config.dump(2) + "\n");

    for (const auto& [path, content] : outputs.files) write_atomic(path, content);
    for (const auto& [path, content] : outputs.files) out << "wrote " << path.string() << '\n';
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidCostMatrix) {
      err << "usage error: " << e.what() << '\n';
      return 2;
    }
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

}  // namespace costens::cli

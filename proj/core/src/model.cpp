#include "costens/model.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "costens/error.hpp"
#include "costens/text.hpp"

namespace costens {

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::AdaBoost: return "adaboost";
    case Algorithm::GentleBoost: return "gentleboost";
    case Algorithm::Bagged: return "bagged";
    case Algorithm::Svm: return "svm";
    case Algorithm::Majority: return "majority";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  for (auto a : {Algorithm::AdaBoost, Algorithm::GentleBoost, Algorithm::Bagged, Algorithm::Svm, Algorithm::Majority}) {
    if (name == algorithm_name(a)) return a;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + name + "'");
}

TrainedModel train_model(const BinaryDataset& data, const LearnerSpec& spec, std::uint64_t seed) {
  switch (spec.algorithm) {
    case Algorithm::AdaBoost:
    case Algorithm::GentleBoost: {
      BoostOptions opts;
      opts.max_rounds = spec.max_rounds;
      opts.weak_params = spec.weak_params;
      opts.stop = spec.stop;
      opts.seed = seed;
      return fit_boosted(spec.algorithm == Algorithm::AdaBoost ? BoostAlgorithm::AdaBoostM1 : BoostAlgorithm::GentleBoost,
                         data, spec.cost, opts);
    }
    case Algorithm::Bagged: {
      BaggingOptions opts;
      opts.n_trees = spec.n_trees;
      opts.params = spec.bag_params;
      opts.seed = seed;
      if (spec.cost_weighted_bagging) opts.cost = spec.cost;
      opts.threads = spec.threads;
      return fit_bagged(data, opts);
    }
    case Algorithm::Svm: {
      SvmOptions opts;
      opts.c = spec.svm_c;
      opts.cost = spec.cost;
      opts.tol = spec.svm_tol;
      opts.max_passes = spec.svm_max_passes;
      return fit_linear_svm(data, opts);
    }
    case Algorithm::Majority: {
      const auto counts = data.class_counts();
      return MajorityModel{data.feature_names(), counts[1] > counts[0] ? Label::Favor : Label::Dislike};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double model_score(const TrainedModel& model, std::span<const double> row) {
  return std::visit(Overloaded{
                        [&](const BaggedEnsemble& m) { return m.vote_margin(row); },
                        [&](const BoostedEnsemble& m) { return m.score(row); },
                        [&](const SvmModel& m) { return m.decision(row); },
                        [&](const MajorityModel& m) {
                          if (row.size() != m.feature_names.size()) {
                            throw Error(ErrorCode::DimensionMismatch, "row width differs from model");
                          }
                          return sign_of(m.label);
                        },
                    },
                    model);
}

Label model_predict(const TrainedModel& model, std::span<const double> row) {
  return label_from_score(model_score(model, row));
}

const std::vector<std::string>& model_features(const TrainedModel& model) {
  return std::visit(Overloaded{
                        [](const BaggedEnsemble& m) -> const std::vector<std::string>& { return m.feature_names(); },
                        [](const BoostedEnsemble& m) -> const std::vector<std::string>& { return m.feature_names(); },
                        [](const SvmModel& m) -> const std::vector<std::string>& { return m.feature_names; },
                        [](const MajorityModel& m) -> const std::vector<std::string>& { return m.feature_names; },
                    },
                    model);
}

std::string model_kind(const TrainedModel& model) {
  return std::visit(Overloaded{
                        [](const BaggedEnsemble&) { return std::string("bagged"); },
                        [](const BoostedEnsemble& m) { return std::string(algorithm_name(m.algorithm())); },
                        [](const SvmModel&) { return std::string("svm"); },
                        [](const MajorityModel&) { return std::string("majority"); },
                    },
                    model);
}

// ---- serialization ----

namespace {

using text::format_double;

std::string join_doubles(std::span<const double> values) {
  std::string out;
  for (double v : values) out += (out.empty() ? "" : " ") + format_double(v);
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string raw() {
    std::string line;
    if (!std::getline(in_, line)) throw Error(ErrorCode::ParseError, "unexpected end of model file");
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  std::vector<std::string> tokens() {
    std::istringstream ss(raw());
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
  }

  // Reads "key v1 v2 ..." and returns the values.
  std::vector<std::string> expect(const std::string& key, std::size_t min_values = 1) {
    auto t = tokens();
    if (t.empty() || t[0] != key || t.size() < min_values + 1) fail("expected '" + key + "'");
    return {t.begin() + 1, t.end()};
  }

  double number(const std::string& key) { return to_double(expect(key)[0]); }
  std::size_t count(const std::string& key) { return to_size(expect(key)[0]); }

  double to_double(const std::string& s) {
    auto v = text::parse_double(s);
    if (!v) fail("bad number '" + s + "'");
    return *v;
  }
  std::size_t to_size(const std::string& s) {
    auto v = text::parse_int<std::size_t>(s);
    if (!v) fail("bad count '" + s + "'");
    return *v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "model line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

Tree read_tree_body(LineReader& r) {
  auto head = r.expect("tree", 3);
  TreeKind kind;
  if (head[0] == "classification") {
    kind = TreeKind::Classification;
  } else if (head[0] == "regression") {
    kind = TreeKind::Regression;
  } else {
    r.fail("unknown tree kind '" + head[0] + "'");
  }
  const auto n_features = r.to_size(head[1]);
  const auto n_nodes = r.to_size(head[2]);
  std::vector<TreeNode> nodes;
  nodes.reserve(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    auto t = r.tokens();
    if (t.size() == 2 && t[0] == "L") {
      nodes.push_back(TreeNode{-1, 0.0, 0, 0, r.to_double(t[1])});
    } else if (t.size() == 5 && t[0] == "S") {
      nodes.push_back(TreeNode{static_cast<std::int32_t>(r.to_size(t[1])), r.to_double(t[2]),
                               static_cast<std::uint32_t>(r.to_size(t[3])),
                               static_cast<std::uint32_t>(r.to_size(t[4])), 0.0});
    } else {
      r.fail("bad tree node");
    }
  }
  return Tree(kind, n_features, std::move(nodes));
}

void write_params(std::ostream& out, const TreeParams& p) {
  out << "params " << p.max_depth << ' ' << format_double(p.min_leaf_weight) << ' '
      << format_double(p.min_split_improvement) << '\n';
}

TreeParams read_params(LineReader& r) {
  auto v = r.expect("params", 3);
  return TreeParams{r.to_size(v[0]), r.to_double(v[1]), r.to_double(v[2])};
}

std::optional<CostMatrix> read_cost(LineReader& r) {
  auto v = r.expect("cost");
  if (v[0] == "none") return std::nullopt;
  return CostMatrix::parse(v[0]);
}

}  // namespace

void write_tree(std::ostream& out, const Tree& tree) {
  out << "tree " << (tree.kind() == TreeKind::Classification ? "classification" : "regression") << ' '
      << tree.n_features() << ' ' << tree.nodes().size() << '\n';
  for (const auto& node : tree.nodes()) {
    if (node.is_leaf()) {
      out << "L " << format_double(node.value) << '\n';
    } else {
      out << "S " << node.feature << ' ' << format_double(node.threshold) << ' ' << node.left << ' ' << node.right
          << '\n';
    }
  }
}

Tree read_tree(std::istream& in) {
  LineReader r(in);
  return read_tree_body(r);
}

void save_model(std::ostream& out, const TrainedModel& model) {
  out << kModelMagic << '\n';
  out << "kind " << (std::holds_alternative<BoostedEnsemble>(model) ? "boosted" : model_kind(model)) << '\n';
  const auto& names = model_features(model);
  out << "features " << names.size() << '\n';
  for (const auto& name : names) out << "feature " << name << '\n';

  std::visit(Overloaded{
                 [&](const BaggedEnsemble& m) {
                   out << "seed " << m.seed() << '\n';
                   write_params(out, m.params());
                   out << "cost " << (m.cost() ? m.cost()->to_string() : std::string("none")) << '\n';
                   out << "trees " << m.size() << '\n';
                   for (std::size_t t = 0; t < m.size(); ++t) {
                     write_tree(out, m.trees()[t]);
                     out << "inbag ";
                     for (auto b : m.in_bag()[t]) out << (b ? '1' : '0');
                     out << '\n';
                   }
                 },
                 [&](const BoostedEnsemble& m) {
                   out << "algorithm " << algorithm_name(m.algorithm()) << '\n';
                   out << "cost " << m.cost().to_string() << '\n';
                   out << "rounds " << m.rounds_used() << '\n';
                   for (std::size_t k = 0; k < m.rounds_used(); ++k) {
                     out << "round " << format_double(m.alphas()[k]) << ' ' << format_double(m.history()[k].error)
                         << '\n';
                     write_tree(out, m.learners()[k]);
                   }
                 },
                 [&](const SvmModel& m) {
                   out << "c_pos " << format_double(m.c_pos) << '\n';
                   out << "c_neg " << format_double(m.c_neg) << '\n';
                   out << "bias " << format_double(m.bias) << '\n';
                   out << "residual " << format_double(m.training_kkt_residual) << '\n';
                   out << "dual_objective " << format_double(m.dual_objective) << '\n';
                   out << "iterations " << m.iterations << '\n';
                   out << "converged " << (m.converged ? 1 : 0) << '\n';
                   out << "mean " << join_doubles(m.mean) << '\n';
                   out << "scale " << join_doubles(m.scale) << '\n';
                   out << "weights " << join_doubles(m.weights) << '\n';
                 },
                 [&](const MajorityModel& m) { out << "label " << label_name(m.label) << '\n'; },
             },
             model);
  out << "end\n";
}

TrainedModel load_model(std::istream& in) {
  LineReader r(in);
  const auto magic = r.raw();
  if (magic.rfind("costens-model", 0) != 0) throw Error(ErrorCode::ParseError, "not a costens model file");
  if (magic != kModelMagic) throw Error(ErrorCode::VersionMismatch, "unsupported model version '" + magic + "'");
  const auto kind = r.expect("kind")[0];
  const auto n_features = r.count("features");
  std::vector<std::string> names;
  for (std::size_t j = 0; j < n_features; ++j) {
    auto line = r.raw();
    if (line.rfind("feature ", 0) != 0) r.fail("expected 'feature'");
    names.push_back(line.substr(8));
  }

  auto finish = [&](TrainedModel m) {
    if (r.tokens() != std::vector<std::string>{"end"}) r.fail("expected 'end'");
    return m;
  };

  if (kind == "bagged") {
    const auto seed = static_cast<std::uint64_t>(r.count("seed"));
    const auto params = read_params(r);
    const auto cost = read_cost(r);
    const auto n_trees = r.count("trees");
    std::vector<Tree> trees;
    std::vector<std::vector<std::uint8_t>> masks;
    for (std::size_t t = 0; t < n_trees; ++t) {
      trees.push_back(read_tree_body(r));
      const auto bits = r.expect("inbag")[0];
      std::vector<std::uint8_t> mask;
      for (char ch : bits) {
        if (ch != '0' && ch != '1') r.fail("bad in-bag mask");
        mask.push_back(ch == '1');
      }
      masks.push_back(std::move(mask));
    }
    return finish(BaggedEnsemble(std::move(trees), std::move(masks), std::move(names), params, seed, cost));
  }
  if (kind == "boosted") {
    const auto algo_name = r.expect("algorithm")[0];
    BoostAlgorithm algo;
    if (algo_name == "adaboost") {
      algo = BoostAlgorithm::AdaBoostM1;
    } else if (algo_name == "gentleboost") {
      algo = BoostAlgorithm::GentleBoost;
    } else {
      r.fail("unknown boosting algorithm '" + algo_name + "'");
    }
    const auto cost = read_cost(r);
    if (!cost) r.fail("boosted model needs a cost matrix");
    const auto rounds = r.count("rounds");
    std::vector<Tree> learners;
    std::vector<double> alphas;
    std::vector<RoundRecord> history;
    for (std::size_t k = 0; k < rounds; ++k) {
      auto v = r.expect("round", 2);
      alphas.push_back(r.to_double(v[0]));
      history.push_back({r.to_double(v[1]), alphas.back()});
      learners.push_back(read_tree_body(r));
    }
    return finish(BoostedEnsemble(algo, *cost, std::move(names), std::move(learners), std::move(alphas),
                                  std::move(history)));
  }
  if (kind == "svm") {
    SvmModel m;
    m.feature_names = std::move(names);
    m.c_pos = r.number("c_pos");
    m.c_neg = r.number("c_neg");
    m.bias = r.number("bias");
    m.training_kkt_residual = r.number("residual");
    m.dual_objective = r.number("dual_objective");
    m.iterations = r.count("iterations");
    m.converged = r.count("converged") != 0;
    auto vec = [&](const std::string& key) {
      auto v = r.expect(key, 0);
      std::vector<double> out;
      for (const auto& s : v) out.push_back(r.to_double(s));
      if (out.size() != n_features) r.fail("'" + key + "' has wrong length");
      return out;
    };
    m.mean = vec("mean");
    m.scale = vec("scale");
    m.weights = vec("weights");
    return finish(m);
  }
  if (kind == "majority") {
    const auto label = r.expect("label")[0];
    if (label != "favor" && label != "dislike") r.fail("bad label");
    return finish(MajorityModel{std::move(names), label == "favor" ? Label::Favor : Label::Dislike});
  }
  r.fail("unknown model kind '" + kind + "'");
}

}  // namespace costens

#include "costens/cost.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "costens/error.hpp"
#include "costens/text.hpp"

namespace costens {

CostMatrix CostMatrix::from_entries(const std::array<double, 4>& e) {
  for (double v : e) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::InvalidCostMatrix, "cost entries must be finite and nonnegative");
    }
  }
  if (e[0] != 0.0 || e[3] != 0.0) throw Error(ErrorCode::InvalidCostMatrix, "diagonal costs must be 0");
  return CostMatrix(e[1], e[2]);
}

CostMatrix::CostMatrix(double dislike_as_favor, double favor_as_dislike) {
  for (double v : {dislike_as_favor, favor_as_dislike}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::InvalidCostMatrix, "cost entries must be finite and nonnegative");
    }
  }
  if (!(dislike_as_favor > 0.0 || favor_as_dislike > 0.0)) {
    throw Error(ErrorCode::InvalidCostMatrix, "at least one off-diagonal cost must be positive");
  }
  c_[0][1] = dislike_as_favor;
  c_[1][0] = favor_as_dislike;
}

CostMatrix CostMatrix::parse(const std::string& spec) {
  std::array<double, 4> e{};
  std::size_t count = 0;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto v = text::parse_double(text::trim(part));
    if (!v || count >= 4) {
      throw Error(ErrorCode::InvalidCostMatrix, "expected four comma-separated numbers, got '" + spec + "'");
    }
    e[count++] = *v;
  }
  if (count != 4) throw Error(ErrorCode::InvalidCostMatrix, "expected four comma-separated numbers, got '" + spec + "'");
  return from_entries(e);
}

std::string CostMatrix::tag() const {
  std::string out;
  for (double v : entries()) out += (out.empty() ? "" : "-") + text::format_double(v);
  return out;
}

std::string CostMatrix::to_string() const {
  std::string out;
  for (double v : entries()) out += (out.empty() ? "" : ",") + text::format_double(v);
  return out;
}

std::vector<double> init_weights(const BinaryDataset& data, const CostMatrix& cost) {
  const auto counts = data.class_counts();
  if (counts[0] == 0 || counts[1] == 0) throw Error(ErrorCode::SingleClassData, "both classes must be present");
  const double scale = std::max(cost.miss_cost(Label::Dislike), cost.miss_cost(Label::Favor));
  const double rel[2] = {cost.miss_cost(Label::Dislike) / scale, cost.miss_cost(Label::Favor) / scale};

  std::vector<double> w(data.n());
  double total = 0.0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    w[i] = rel[class_index(data.label(i))];
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

}  // namespace costens

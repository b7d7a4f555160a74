#include "costens/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "costens/error.hpp"

namespace costens {

std::vector<double> SvmModel::standardize(std::span<const double> row) const {
  if (row.size() != mean.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "row has " + std::to_string(row.size()) + " features, model expects " + std::to_string(mean.size()));
  }
  std::vector<double> z(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) z[j] = scale[j] > 0.0 ? (row[j] - mean[j]) / scale[j] : 0.0;
  return z;
}

double SvmModel::decision(std::span<const double> row) const {
  const auto z = standardize(row);
  double s = bias;
  for (std::size_t j = 0; j < z.size(); ++j) s += weights[j] * z[j];
  return s;
}

Label predict_svm(const SvmModel& model, std::span<const double> row) { return model.predict(row); }

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

}  // namespace

SvmModel fit_linear_svm(const BinaryDataset& data, const SvmOptions& options) {
  if (!(options.c > 0.0)) throw Error(ErrorCode::InvalidArgument, "c must be positive");
  if (!(options.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  const auto counts = data.class_counts();
  if (counts[0] == 0 || counts[1] == 0) throw Error(ErrorCode::SingleClassData, "both classes must be present");
  const double miss_dislike = options.cost.miss_cost(Label::Dislike);
  const double miss_favor = options.cost.miss_cost(Label::Favor);
  if (!(miss_dislike > 0.0 && miss_favor > 0.0)) {
    throw Error(ErrorCode::InvalidCostMatrix, "SVM box constraints need both off-diagonal costs positive");
  }

  const std::size_t n = data.n();
  const std::size_t d = data.d();
  SvmModel model;
  model.feature_names = data.feature_names();
  model.c_pos = options.c;
  model.c_neg = options.c * (miss_dislike / miss_favor);
  model.mean.assign(d, 0.0);
  model.scale.assign(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data.at(i, j);
    const double mu = s / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (data.at(i, j) - mu) * (data.at(i, j) - mu);
    model.mean[j] = mu;
    model.scale[j] = std::sqrt(ss / static_cast<double>(n));
  }

  std::vector<double> x(n * d);
  std::vector<double> y(n), box(n), diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto z = model.standardize(data.row(i));
    std::copy(z.begin(), z.end(), x.begin() + static_cast<std::ptrdiff_t>(i * d));
    y[i] = sign_of(data.label(i));
    box[i] = y[i] > 0 ? model.c_pos : model.c_neg;
  }
  auto row = [&](std::size_t i) { return std::span<const double>(x.data() + i * d, d); };
  for (std::size_t i = 0; i < n; ++i) diag[i] = dot(row(i), row(i));

  // Dual: minimize 0.5 a'Qa - sum(a), Q_ij = y_i y_j x_i.x_j, 0 <= a_i <= box_i,
  // sum y_i a_i = 0. Maximal-violating-pair SMO; the gradient is kept as
  // G_i = y_i w.x_i - 1 via the primal vector w = sum a_i y_i x_i.
  std::vector<double> a(n, 0.0), grad(n, -1.0), w(d, 0.0), dw(d);
  const std::size_t max_iter = options.max_passes * std::max<std::size_t>(n, 1);
  auto in_up = [&](std::size_t t) { return y[t] > 0 ? a[t] < box[t] : a[t] > 0.0; };
  auto in_low = [&](std::size_t t) { return y[t] > 0 ? a[t] > 0.0 : a[t] < box[t]; };

  std::size_t iter = 0;
  double violation = std::numeric_limits<double>::infinity();
  for (;;) {
    std::size_t i = n, j = n;
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t) && v > gmax) {
        gmax = v;
        i = t;
      }
      if (in_low(t) && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    violation = (i == n || j == n) ? 0.0 : gmax - gmin;
    if (violation < options.tol || iter >= max_iter) break;
    ++iter;

    const double old_ai = a[i];
    const double old_aj = a[j];
    const double kij = dot(row(i), row(j));
    const double ci = box[i];
    const double cj = box[j];
    if (y[i] != y[j]) {
      const double quad = std::max(diag[i] + diag[j] + 2.0 * kij * y[i] * y[j], 1e-12);
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = a[i] - a[j];
      a[i] += delta;
      a[j] += delta;
      if (diff > 0) {
        if (a[j] < 0) {
          a[j] = 0;
          a[i] = diff;
        }
      } else if (a[i] < 0) {
        a[i] = 0;
        a[j] = -diff;
      }
      if (diff > ci - cj) {
        if (a[i] > ci) {
          a[i] = ci;
          a[j] = ci - diff;
        }
      } else if (a[j] > cj) {
        a[j] = cj;
        a[i] = cj + diff;
      }
    } else {
      const double quad = std::max(diag[i] + diag[j] - 2.0 * kij, 1e-12);
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = a[i] + a[j];
      a[i] -= delta;
      a[j] += delta;
      if (sum > ci) {
        if (a[i] > ci) {
          a[i] = ci;
          a[j] = sum - ci;
        }
      } else if (a[j] < 0) {
        a[j] = 0;
        a[i] = sum;
      }
      if (sum > cj) {
        if (a[j] > cj) {
          a[j] = cj;
          a[i] = sum - cj;
        }
      } else if (a[i] < 0) {
        a[i] = 0;
        a[j] = sum;
      }
    }

    const double di = (a[i] - old_ai) * y[i];
    const double dj = (a[j] - old_aj) * y[j];
    for (std::size_t k = 0; k < d; ++k) {
      dw[k] = di * x[i * d + k] + dj * x[j * d + k];
      w[k] += dw[k];
    }
    for (std::size_t t = 0; t < n; ++t) grad[t] += y[t] * dot(row(t), dw);
  }

  // Bias from free vectors, else the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (a[t] >= box[t]) {
      if (y[t] < 0) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else if (a[t] <= 0.0) {
      if (y[t] > 0) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2.0;

  model.weights = w;
  model.bias = -rho;
  model.training_kkt_residual = violation;
  model.converged = violation < options.tol;
  model.iterations = iter;
  double asum = 0.0;
  for (double v : a) asum += v;
  model.dual_objective = asum - 0.5 * dot(w, w);
  model.dual = std::move(a);
  return model;
}

}  // namespace costens

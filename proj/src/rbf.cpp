#include "codenames/rbf.hpp"

#include <algorithm>
#include <cmath>

#include "codenames/errors.hpp"

namespace codenames {

GaussianRbf2::GaussianRbf2(std::span<const std::array<double, 2>> points, std::span<const double> values,
                           double width, double ridge)
    : width_(width) {
  const std::size_t n = points.size();
  if (n != values.size()) throw InvalidInput("point and value counts differ");
  if (n < 3) throw InvalidInput("at least 3 points are needed for a surface");
  if (!(width > 0.0)) throw InvalidInput("kernel width must be positive");
  if (!(ridge >= 0.0)) throw InvalidInput("ridge must be non-negative");

  for (int d = 0; d < 2; ++d) {
    double lo = points[0][d], hi = points[0][d];
    for (const auto& p : points) {
      lo = std::min(lo, p[d]);
      hi = std::max(hi, p[d]);
    }
    lo_[d] = lo;
    span_[d] = hi > lo ? hi - lo : 1.0;
  }
  centers_.reserve(n);
  for (const auto& p : points) centers_.push_back(scaled(p[0], p[1]));

  const double inv = 1.0 / (2.0 * width_ * width_);
  const Eigen::Index m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + 3, m + 3);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 3);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& pi = centers_[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& pj = centers_[static_cast<std::size_t>(j)];
      const double dx = pi[0] - pj[0], dy = pi[1] - pj[1];
      a(i, j) = std::exp(-(dx * dx + dy * dy) * inv);
    }
    a(i, i) += ridge;
    a(i, m) = a(m, i) = 1.0;
    a(i, m + 1) = a(m + 1, i) = pi[0];
    a(i, m + 2) = a(m + 2, i) = pi[1];
    rhs(i) = values[static_cast<std::size_t>(i)];
  }
  // The saddle-point system is symmetric indefinite; a pivoted QR copes with
  // near-duplicate centers as well.
  coef_ = a.colPivHouseholderQr().solve(rhs);
  if (!coef_.allFinite()) throw InvalidInput("surface fit is singular");
}

std::array<double, 2> GaussianRbf2::scaled(double x, double y) const {
  return {(x - lo_[0]) / span_[0], (y - lo_[1]) / span_[1]};
}

double GaussianRbf2::operator()(double x, double y) const {
  const auto p = scaled(x, y);
  const double inv = 1.0 / (2.0 * width_ * width_);
  const Eigen::Index m = static_cast<Eigen::Index>(centers_.size());
  double f = coef_(m) + coef_(m + 1) * p[0] + coef_(m + 2) * p[1];
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& c = centers_[static_cast<std::size_t>(j)];
    const double dx = p[0] - c[0], dy = p[1] - c[1];
    f += coef_(j) * std::exp(-(dx * dx + dy * dy) * inv);
  }
  return f;
}

}  // namespace codenames

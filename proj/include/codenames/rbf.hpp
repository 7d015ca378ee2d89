#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace codenames {

// Gaussian radial basis interpolant in two dimensions with a linear
// polynomial tail:
//   f(p) = sum_j a_j exp(-|p - p_j|^2 / (2 width^2)) + b0 + b1 x + b2 y
// Coordinates are rescaled to the unit square spanned by the data before
// the kernel is applied. A ridge term trades exact interpolation for
// smoothness.
class GaussianRbf2 {
 public:
  GaussianRbf2(std::span<const std::array<double, 2>> points, std::span<const double> values, double width,
               double ridge = 0.0);

  double operator()(double x, double y) const;
  std::size_t size() const { return centers_.size(); }

 private:
  std::array<double, 2> scaled(double x, double y) const;

  std::vector<std::array<double, 2>> centers_;  // scaled
  Eigen::VectorXd coef_;                        // kernel weights then b0, b1, b2
  std::array<double, 2> lo_{}, span_{};
  double width_;
};

}  // namespace codenames

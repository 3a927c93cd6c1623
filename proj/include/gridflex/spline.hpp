#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace gridflex {

// Natural cubic spline basis in cardinal form: column j is the natural
// interpolating spline that equals 1 at knot j and 0 at every other knot.
// The n columns span every natural cubic spline on the knots (constants and
// affine functions included), are C2 inside the knot range and linear
// beyond the boundary knots.
class NaturalSplineBasis {
 public:
  // n_knots equally spaced knots on [lo, hi], boundary knots included.
  NaturalSplineBasis(int n_knots, double lo, double hi);
  explicit NaturalSplineBasis(std::vector<double> knots);

  int size() const { return static_cast<int>(knots_.size()); }
  const std::vector<double>& knots() const { return knots_; }

  // Writes the size() basis values at x into out.
  void evaluate(double x, std::span<double> out) const;
  Eigen::MatrixXd matrix(std::span<const double> x) const;

 private:
  void factor();

  std::vector<double> knots_;
  // second_derivs_(i, j): second derivative of basis column j at knot i.
  Eigen::MatrixXd second_derivs_;
};

std::vector<double> uniform_knots(int n_knots, double lo, double hi);

Eigen::MatrixXd natural_spline_basis(std::span<const double> x, int n_knots, double lo, double hi);

}  // namespace gridflex

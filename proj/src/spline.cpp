#include "gridflex/spline.hpp"

#include <algorithm>
#include <cmath>

#include "gridflex/error.hpp"

namespace gridflex {

std::vector<double> uniform_knots(int n_knots, double lo, double hi) {
  if (n_knots < 3) throw InputError("natural spline needs at least 3 knots, got " + std::to_string(n_knots));
  if (!(hi > lo)) throw InputError("spline domain is empty");
  std::vector<double> knots(static_cast<std::size_t>(n_knots));
  const double width = hi - lo;
  for (int i = 0; i < n_knots; ++i) knots[i] = lo + width * static_cast<double>(i) / static_cast<double>(n_knots - 1);
  knots.back() = hi;
  return knots;
}

NaturalSplineBasis::NaturalSplineBasis(int n_knots, double lo, double hi) : knots_(uniform_knots(n_knots, lo, hi)) {
  factor();
}

NaturalSplineBasis::NaturalSplineBasis(std::vector<double> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 3) throw InputError("natural spline needs at least 3 knots");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1])) throw InputError("spline knots must be strictly increasing");
  }
  factor();
}

void NaturalSplineBasis::factor() {
  // Natural end conditions fix M_0 = M_{n-1} = 0; the interior second
  // derivatives solve the usual tridiagonal continuity system for each
  // cardinal data vector e_j.
  const int n = size();
  const int m = n - 2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, n);
  for (int i = 1; i <= m; ++i) {
    const double h0 = knots_[i] - knots_[i - 1];
    const double h1 = knots_[i + 1] - knots_[i];
    const int r = i - 1;
    if (r > 0) a(r, r - 1) = h0;
    a(r, r) = 2.0 * (h0 + h1);
    if (r + 1 < m) a(r, r + 1) = h1;
    rhs(r, i - 1) += 6.0 / h0;
    rhs(r, i) -= 6.0 / h0 + 6.0 / h1;
    rhs(r, i + 1) += 6.0 / h1;
  }
  second_derivs_ = Eigen::MatrixXd::Zero(n, n);
  second_derivs_.middleRows(1, m) = a.partialPivLu().solve(rhs);
}

void NaturalSplineBasis::evaluate(double x, std::span<double> out) const {
  const int n = size();
  std::fill(out.begin(), out.end(), 0.0);
  const auto& k = knots_;
  if (x <= k.front()) {
    // Linear continuation with the slope at the left boundary knot.
    const double h = k[1] - k[0];
    const double dx = x - k[0];
    for (int j = 0; j < n; ++j) {
      const double y0 = j == 0 ? 1.0 : 0.0;
      const double y1 = j == 1 ? 1.0 : 0.0;
      const double slope = (y1 - y0) / h - h * second_derivs_(1, j) / 6.0;
      out[j] = y0 + slope * dx;
    }
    return;
  }
  if (x >= k.back()) {
    const double h = k[n - 1] - k[n - 2];
    const double dx = x - k[n - 1];
    for (int j = 0; j < n; ++j) {
      const double y0 = j == n - 2 ? 1.0 : 0.0;
      const double y1 = j == n - 1 ? 1.0 : 0.0;
      const double slope = (y1 - y0) / h + h * second_derivs_(n - 2, j) / 6.0;
      out[j] = y1 + slope * dx;
    }
    return;
  }
  const auto it = std::upper_bound(k.begin(), k.end(), x);
  const int i = static_cast<int>(it - k.begin()) - 1;
  const double h = k[i + 1] - k[i];
  const double left = k[i + 1] - x;
  const double right = x - k[i];
  const double cl = left * left * left / (6.0 * h);
  const double cr = right * right * right / (6.0 * h);
  for (int j = 0; j < n; ++j) {
    const double mi = second_derivs_(i, j);
    const double mj = second_derivs_(i + 1, j);
    const double yi = j == i ? 1.0 : 0.0;
    const double yj = j == i + 1 ? 1.0 : 0.0;
    out[j] = mi * cl + mj * cr + (yi - mi * h * h / 6.0) * left / h + (yj - mj * h * h / 6.0) * right / h;
  }
}

Eigen::MatrixXd NaturalSplineBasis::matrix(std::span<const double> x) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(x.size()), size());
  std::vector<double> row(static_cast<std::size_t>(size()));
  for (std::size_t r = 0; r < x.size(); ++r) {
    evaluate(x[r], row);
    for (int j = 0; j < size(); ++j) out(static_cast<Eigen::Index>(r), j) = row[j];
  }
  return out;
}

Eigen::MatrixXd natural_spline_basis(std::span<const double> x, int n_knots, double lo, double hi) {
  return NaturalSplineBasis(n_knots, lo, hi).matrix(x);
}

}  // namespace gridflex

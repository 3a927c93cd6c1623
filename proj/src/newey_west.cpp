#include <cmath>

#include "gridflex/error.hpp"
#include "gridflex/kernels.hpp"
#include "gridflex/regress.hpp"

namespace gridflex {

Eigen::VectorXd newey_west_se(const Eigen::MatrixXd& design, const Eigen::VectorXd& residuals,
                              const Eigen::MatrixXd& xtx_inverse, int max_lag, std::span<const HourStamp> timestamps) {
  const Eigen::Index n = design.rows();
  const Eigen::Index p = design.cols();
  if (residuals.size() != n) throw InputError("residual length does not match design rows");
  if (max_lag < 0) throw InputError("Newey-West lag must be nonnegative");
  if (max_lag >= n) {
    throw InputError("Newey-West lag " + std::to_string(max_lag) + " must be below the sample size " +
                     std::to_string(n));
  }
  if (!timestamps.empty() && static_cast<Eigen::Index>(timestamps.size()) != n) {
    throw InputError("timestamp count does not match design rows");
  }

  // Scores g_t = x_t u_t, row-major so each row is one contiguous span.
  using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMatrix scores = design;
  for (Eigen::Index t = 0; t < n; ++t) scores.row(t) *= residuals(t);

  // banded(t) = sum_s w(|t-s|) g_s, so that the meat is scores' * banded.
  RowMatrix banded = scores;
  const auto row = [p](RowMatrix& m, Eigen::Index t) { return std::span<double>(m.data() + t * p, static_cast<std::size_t>(p)); };
  const auto crow = [p](const RowMatrix& m, Eigen::Index t) {
    return std::span<const double>(m.data() + t * p, static_cast<std::size_t>(p));
  };
  for (Eigen::Index t = 1; t < n; ++t) {
    for (Eigen::Index s = t - 1; s >= 0; --s) {
      const std::int64_t lag = timestamps.empty() ? (t - s) : (timestamps[t] - timestamps[s]);
      if (lag > max_lag) break;
      if (lag <= 0) throw InputError("Newey-West timestamps must be strictly increasing");
      const double w = 1.0 - static_cast<double>(lag) / static_cast<double>(max_lag + 1);
      kernels::axpy(w, crow(scores, s), row(banded, t));
      kernels::axpy(w, crow(scores, t), row(banded, s));
    }
  }
  const Eigen::MatrixXd meat = scores.transpose() * banded;
  const Eigen::MatrixXd left = xtx_inverse * meat;
  Eigen::VectorXd se(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double v = left.row(i).dot(xtx_inverse.col(i));
    se(i) = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  return se;
}

Eigen::VectorXd classical_se(const Eigen::VectorXd& residuals, const Eigen::MatrixXd& xtx_inverse,
                             Eigen::Index parameters) {
  const Eigen::Index n = residuals.size();
  if (n <= parameters) throw InputError("classical standard errors need more rows than parameters");
  const double s2 = residuals.squaredNorm() / static_cast<double>(n - parameters);
  return (s2 * xtx_inverse.diagonal().array()).max(0.0).sqrt().matrix();
}

}  // namespace gridflex

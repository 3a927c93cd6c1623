#include <cassert>

#include "gridflex/kernels.hpp"

namespace gridflex::kernels {
namespace {

void degree_hours_scalar(std::span<const double> temps, double threshold, std::span<double> cdh,
                         std::span<double> hdh) {
  assert(cdh.size() == temps.size() && hdh.size() == temps.size());
  for (std::size_t i = 0; i < temps.size(); ++i) {
    const double up = temps[i] - threshold;
    const double down = threshold - temps[i];
    cdh[i] = up > 0.0 ? up : 0.0;
    hdh[i] = down > 0.0 ? down : 0.0;
  }
}

void axpy_scalar(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scale_scalar(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = a * x[i];
}

void weighted_product_accumulate_scalar(double a, std::span<const double> x, std::span<const double> z,
                                        std::span<double> y) {
  assert(x.size() == y.size() && z.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * (x[i] * z[i]);
}

double dot_scalar(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", degree_hours_scalar, axpy_scalar, scale_scalar,
                                 weighted_product_accumulate_scalar, dot_scalar};
  return table;
}

}  // namespace gridflex::kernels

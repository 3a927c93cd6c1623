#include <arm_neon.h>

#include <cassert>

#include "kernels_impl.hpp"

namespace gridflex::kernels::detail {
namespace {

void degree_hours_neon(std::span<const double> temps, double threshold, std::span<double> cdh,
                       std::span<double> hdh) {
  assert(cdh.size() == temps.size() && hdh.size() == temps.size());
  const std::size_t n = temps.size();
  const float64x2_t thr = vdupq_n_f64(threshold);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t t = vld1q_f64(temps.data() + i);
    const float64x2_t up = vsubq_f64(t, thr);
    const float64x2_t down = vsubq_f64(thr, t);
    // Select rather than vmaxq so that -0.0 and NaN map to +0.0 like the scalar path.
    vst1q_f64(cdh.data() + i, vbslq_f64(vcgtq_f64(up, zero), up, zero));
    vst1q_f64(hdh.data() + i, vbslq_f64(vcgtq_f64(down, zero), down, zero));
  }
  for (; i < n; ++i) {
    const double up = temps[i] - threshold;
    const double down = threshold - temps[i];
    cdh[i] = up > 0.0 ? up : 0.0;
    hdh[i] = down > 0.0 ? down : 0.0;
  }
}

void axpy_neon(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y.data() + i, vaddq_f64(vld1q_f64(y.data() + i), vmulq_f64(va, vld1q_f64(x.data() + i))));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale_neon(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y.data() + i, vmulq_f64(va, vld1q_f64(x.data() + i)));
  for (; i < n; ++i) y[i] = a * x[i];
}

void weighted_product_accumulate_neon(double a, std::span<const double> x, std::span<const double> z,
                                      std::span<double> y) {
  assert(x.size() == y.size() && z.size() == y.size());
  const std::size_t n = x.size();
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t xz = vmulq_f64(vld1q_f64(x.data() + i), vld1q_f64(z.data() + i));
    vst1q_f64(y.data() + i, vaddq_f64(vld1q_f64(y.data() + i), vmulq_f64(va, xz)));
  }
  for (; i < n; ++i) y[i] += a * (x[i] * z[i]);
}

double dot_neon(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(x.data() + i), vld1q_f64(y.data() + i)));
    acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(x.data() + i + 2), vld1q_f64(y.data() + i + 2)));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{"neon", degree_hours_neon, axpy_neon, scale_neon,
                                 weighted_product_accumulate_neon, dot_neon};
  return table;
}

}  // namespace gridflex::kernels::detail

// Built with -mavx2. Only reached after a runtime CPU check.
#include <immintrin.h>

#include <cassert>

#include "kernels_impl.hpp"

namespace gridflex::kernels::detail {
namespace {

void degree_hours_avx2(std::span<const double> temps, double threshold, std::span<double> cdh,
                       std::span<double> hdh) {
  assert(cdh.size() == temps.size() && hdh.size() == temps.size());
  const std::size_t n = temps.size();
  const __m256d thr = _mm256_set1_pd(threshold);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_loadu_pd(temps.data() + i);
    // maxpd returns its second operand on equality or NaN, matching `d > 0 ? d : 0`.
    _mm256_storeu_pd(cdh.data() + i, _mm256_max_pd(_mm256_sub_pd(t, thr), zero));
    _mm256_storeu_pd(hdh.data() + i, _mm256_max_pd(_mm256_sub_pd(thr, t), zero));
  }
  for (; i < n; ++i) {
    const double up = temps[i] - threshold;
    const double down = threshold - temps[i];
    cdh[i] = up > 0.0 ? up : 0.0;
    hdh[i] = down > 0.0 ? down : 0.0;
  }
}

void axpy_avx2(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d p0 = _mm256_mul_pd(va, _mm256_loadu_pd(x.data() + i));
    const __m256d p1 = _mm256_mul_pd(va, _mm256_loadu_pd(x.data() + i + 4));
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(_mm256_loadu_pd(y.data() + i), p0));
    _mm256_storeu_pd(y.data() + i + 4, _mm256_add_pd(_mm256_loadu_pd(y.data() + i + 4), p1));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x.data() + i));
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(_mm256_loadu_pd(y.data() + i), p));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y.data() + i, _mm256_mul_pd(va, _mm256_loadu_pd(x.data() + i)));
  }
  for (; i < n; ++i) y[i] = a * x[i];
}

void weighted_product_accumulate_avx2(double a, std::span<const double> x, std::span<const double> z,
                                      std::span<double> y) {
  assert(x.size() == y.size() && z.size() == y.size());
  const std::size_t n = x.size();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xz = _mm256_mul_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(z.data() + i));
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(_mm256_loadu_pd(y.data() + i), _mm256_mul_pd(va, xz)));
  }
  for (; i < n; ++i) y[i] += a * (x[i] * z[i]);
}

double dot_avx2(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(x.data() + i + 4), _mm256_loadu_pd(y.data() + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", degree_hours_avx2, axpy_avx2, scale_avx2,
                                 weighted_product_accumulate_avx2, dot_avx2};
  return table;
}

}  // namespace gridflex::kernels::detail

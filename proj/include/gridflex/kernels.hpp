#pragma once
// Data-parallel inner loops behind the weather, regression and Newey-West
// code. Each kernel has a portable scalar reference and, where the target
// supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The variant is
// picked once at runtime; GRIDFLEX_SIMD=scalar forces the reference path.
//
// Elementwise kernels (degree_hours, axpy, scale, weighted_product_accumulate)
// are bit-identical across variants. dot() reassociates its sum and agrees
// with the scalar path to rounding only.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gridflex::kernels {

struct KernelTable {
  std::string_view name;
  // cdh[i] = max(t[i] - threshold, 0), hdh[i] = max(threshold - t[i], 0)
  void (*degree_hours)(std::span<const double> temps, double threshold, std::span<double> cdh,
                       std::span<double> hdh);
  // y += a * x
  void (*axpy)(double a, std::span<const double> x, std::span<double> y);
  // y = a * x
  void (*scale)(double a, std::span<const double> x, std::span<double> y);
  // y += a * (x * z)
  void (*weighted_product_accumulate)(double a, std::span<const double> x, std::span<const double> z,
                                      std::span<double> y);
  double (*dot)(std::span<const double> x, std::span<const double> y);
};

const KernelTable& scalar_table();

// Every variant compiled in and supported by the running CPU, scalar first.
std::vector<const KernelTable*> available_tables();

// The dispatched table.
const KernelTable& active();

inline void degree_hours(std::span<const double> temps, double threshold, std::span<double> cdh,
                         std::span<double> hdh) {
  active().degree_hours(temps, threshold, cdh, hdh);
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) { active().axpy(a, x, y); }
inline void scale(double a, std::span<const double> x, std::span<double> y) { active().scale(a, x, y); }
inline void weighted_product_accumulate(double a, std::span<const double> x, std::span<const double> z,
                                        std::span<double> y) {
  active().weighted_product_accumulate(a, x, z, y);
}
inline double dot(std::span<const double> x, std::span<const double> y) { return active().dot(x, y); }

}  // namespace gridflex::kernels

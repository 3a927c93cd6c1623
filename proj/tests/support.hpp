#pragma once
// Shared helpers and independent reference computations for the tests.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <unistd.h>

#include "gridflex/time.hpp"

namespace testing {

inline double mean(std::span<const double> v) {
  long double s = 0;
  for (double x : v) s += x;
  return static_cast<double>(s / v.size());
}

// Two-pass population SD in long double.
inline double pop_sd(std::span<const double> v) {
  const long double m = mean(v);
  long double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return static_cast<double>(std::sqrt(ss / v.size()));
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

inline std::vector<double> uniform_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline gridflex::HourStamp ts(const char* text) { return gridflex::parse_rfc3339(text); }

inline std::vector<gridflex::HourStamp> hours(gridflex::HourStamp first, std::size_t n) {
  std::vector<gridflex::HourStamp> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(first + static_cast<std::int64_t>(i));
  return out;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name) {
    path = std::filesystem::temp_directory_path() / ("gridflex_test_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace testing

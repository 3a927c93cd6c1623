#include <doctest.h>

#include <cstring>

#include "gridflex/kernels.hpp"
#include "support.hpp"

using namespace gridflex;

namespace {

bool bit_equal(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar reference matches direct loops") {
    const auto& k = kernels::scalar_table();
    const std::vector<double> t{10.0, 18.0, 20.0, -3.5, 18.0000001};
    std::vector<double> cdh(t.size()), hdh(t.size());
    k.degree_hours(t, 18.0, cdh, hdh);
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(cdh[i] == (t[i] > 18.0 ? t[i] - 18.0 : 0.0));
      CHECK(hdh[i] == (t[i] < 18.0 ? 18.0 - t[i] : 0.0));
    }
    std::vector<double> y{1, 2, 3};
    k.axpy(2.0, std::vector<double>{1, 1, 1}, y);
    CHECK(y == std::vector<double>{3, 4, 5});
    k.weighted_product_accumulate(0.5, std::vector<double>{2, 4, 6}, std::vector<double>{1, 1, 2}, y);
    CHECK(y == std::vector<double>{4, 6, 11});
    k.scale(-1.0, std::vector<double>{1, 2, 3}, y);
    CHECK(y == std::vector<double>{-1, -2, -3});
    CHECK(k.dot(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5, 6}) == 32.0);
  }

  TEST_CASE("every SIMD variant is equivalent to the scalar reference") {
    const auto tables = kernels::available_tables();
    REQUIRE(!tables.empty());
    CHECK(tables.front()->name == kernels::scalar_table().name);
    const auto& ref = kernels::scalar_table();
    std::mt19937_64 rng(11);
    for (const auto* table : tables) {
      CAPTURE(table->name);
      for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 1000u, 1003u}) {
        CAPTURE(n);
        const auto x = testing::uniform_vec(rng, n, -40.0, 45.0);
        const auto z = testing::uniform_vec(rng, n, -2.0, 2.0);
        const auto y0 = testing::uniform_vec(rng, n, -5.0, 5.0);

        std::vector<double> c1(n), h1(n), c2(n), h2(n);
        ref.degree_hours(x, 18.0, c1, h1);
        table->degree_hours(x, 18.0, c2, h2);
        CHECK(bit_equal(c1, c2));
        CHECK(bit_equal(h1, h2));

        auto a1 = y0, a2 = y0;
        ref.axpy(0.37, x, a1);
        table->axpy(0.37, x, a2);
        CHECK(bit_equal(a1, a2));

        std::vector<double> s1(n), s2(n);
        ref.scale(-1.7, x, s1);
        table->scale(-1.7, x, s2);
        CHECK(bit_equal(s1, s2));

        auto w1 = y0, w2 = y0;
        ref.weighted_product_accumulate(0.9, x, z, w1);
        table->weighted_product_accumulate(0.9, x, z, w2);
        CHECK(bit_equal(w1, w2));

        const double d1 = ref.dot(x, z), d2 = table->dot(x, z);
        double abs_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) abs_sum += std::abs(x[i] * z[i]);
        CHECK(std::abs(d1 - d2) <= 1e-13 * (abs_sum + 1.0));
      }
    }
  }

  TEST_CASE("active table is one of the available ones") {
    const auto tables = kernels::available_tables();
    const auto& active = kernels::active();
    CHECK(std::any_of(tables.begin(), tables.end(), [&](const auto* t) { return t == &active; }));
  }
}

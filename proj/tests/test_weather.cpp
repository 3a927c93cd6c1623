#include <doctest.h>

#include "gridflex/error.hpp"
#include "gridflex/weather.hpp"
#include "support.hpp"

using namespace gridflex;
using testing::ts;

namespace {

TemperatureGrid grid_of(std::vector<std::string> ids, std::vector<std::vector<double>> temps, HourStamp first,
                        std::int64_t step) {
  TemperatureGrid g;
  for (const auto& id : ids) g.cells.push_back({id, 40.0, -100.0});
  for (std::size_t h = 0; h < temps.front().size(); ++h) g.timestamps.push_back(first + static_cast<std::int64_t>(h) * step);
  for (const auto& row : temps) g.temps.insert(g.temps.end(), row.begin(), row.end());
  return g;
}

RegionSpec region_of(std::map<std::string, double> weights) {
  RegionSpec r;
  r.region_id = "R";
  r.cell_weights = std::move(weights);
  return r;
}

}  // namespace

TEST_SUITE("weather") {
  TEST_CASE("degree hours at and around the threshold") {
    CHECK(degree_hours(20.0).cdh == 2.0);
    CHECK(degree_hours(20.0).hdh == 0.0);
    CHECK(degree_hours(18.0).cdh == 0.0);
    CHECK(degree_hours(18.0).hdh == 0.0);
    CHECK(degree_hours(10.0).cdh == 0.0);
    CHECK(degree_hours(10.0).hdh == 8.0);
    CHECK(degree_hours(10.0, 12.0).hdh == 2.0);
  }

  TEST_CASE("interpolation onto hours") {
    const HourStamp t0 = ts("2019-01-01T00:00:00Z");
    const auto g = grid_of({"a", "b"}, {{12.0, 18.0, 9.0}, {10.0, 10.0, 10.0}}, t0, 3);
    const auto h = interpolate_to_hourly(g);
    REQUIRE(h.hour_count() == 7);
    const auto a = h.series(0);
    CHECK(a[0] == 12.0);
    CHECK(a[1] == 14.0);
    CHECK(a[2] == 16.0);
    CHECK(a[3] == 18.0);
    CHECK(a[4] == 15.0);
    CHECK(a[6] == 9.0);
    for (double v : h.series(1)) CHECK(v == 10.0);
    // Constant extension beyond the samples.
    const auto wide = interpolate_to_hourly(g, t0 + (-2), t0 + 8);
    CHECK(wide.hour_count() == 11);
    CHECK(wide.series(0)[0] == 12.0);
    CHECK(wide.series(0)[10] == 9.0);
  }

  TEST_CASE("interpolation preserves samples and stays within brackets") {
    std::mt19937_64 rng(3);
    const HourStamp t0 = ts("2019-06-01T00:00:00Z");
    std::vector<double> temps = testing::uniform_vec(rng, 200, -30.0, 40.0);
    const auto g = grid_of({"x"}, {temps}, t0, 3);
    const auto h = interpolate_to_hourly(g);
    const auto s = h.series(0);
    for (std::size_t i = 0; i + 1 < temps.size(); ++i) {
      CHECK(s[3 * i] == temps[i]);
      const double lo = std::min(temps[i], temps[i + 1]), hi = std::max(temps[i], temps[i + 1]);
      for (int k = 1; k < 3; ++k) {
        CHECK(s[3 * i + k] >= lo);
        CHECK(s[3 * i + k] <= hi);
      }
    }
  }

  TEST_CASE("interpolation rejects bad grids") {
    const HourStamp t0 = ts("2019-01-01T00:00:00Z");
    auto g = grid_of({"a"}, {{1.0, 2.0, 3.0}}, t0, 3);
    g.timestamps[2] = t0 + 7;
    CHECK_THROWS_AS(interpolate_to_hourly(g), InputError);
    CHECK_THROWS_AS(interpolate_to_hourly(grid_of({"a"}, {{1.0}}, t0, 3)), InputError);
  }

  TEST_CASE("per-cell degree hours are computed before aggregation") {
    const HourStamp t0 = ts("2019-01-01T00:00:00Z");
    const auto g = grid_of({"a", "b"}, {{16.0}, {20.0}}, t0, 1);
    const auto w = aggregate_region(g, region_of({{"a", 1.0}, {"b", 1.0}}));
    CHECK(w.cdh[0] == 1.0);
    CHECK(w.hdh[0] == 1.0);
    CHECK(w.mean_temp_c[0] == 18.0);
    // Aggregating temperature first would see 18 °C and no degree hours.
    CHECK(degree_hours(w.mean_temp_c[0]).cdh == 0.0);
    CHECK(degree_hours(w.mean_temp_c[0]).hdh == 0.0);
  }

  TEST_CASE("weighted aggregation against a scalar loop") {
    const HourStamp t0 = ts("2019-01-01T00:00:00Z");
    const auto g = grid_of({"a", "b"}, {{20.0}, {24.0}}, t0, 1);
    const auto w = aggregate_region(g, region_of({{"a", 1.0}, {"b", 3.0}}));
    CHECK(w.cdh[0] == doctest::Approx(5.0).epsilon(1e-15));

    std::mt19937_64 rng(5);
    const std::size_t cells = 7, hours = 50;
    std::vector<std::vector<double>> temps;
    std::vector<std::string> ids;
    std::map<std::string, double> weights;
    for (std::size_t c = 0; c < cells; ++c) {
      temps.push_back(testing::uniform_vec(rng, hours, -10.0, 35.0));
      ids.push_back("c" + std::to_string(c));
      weights[ids.back()] = testing::uniform_vec(rng, 1, 0.0, 5.0)[0];
    }
    const auto big = grid_of(ids, temps, t0, 1);
    const auto agg = aggregate_region(big, region_of(weights));
    double wsum = 0.0;
    for (const auto& [id, wt] : weights) wsum += wt;
    for (std::size_t h = 0; h < hours; ++h) {
      double c = 0.0, hd = 0.0, tm = 0.0;
      for (std::size_t k = 0; k < cells; ++k) {
        const double wt = weights[ids[k]] / wsum;
        c += wt * std::max(temps[k][h] - 18.0, 0.0);
        hd += wt * std::max(18.0 - temps[k][h], 0.0);
        tm += wt * temps[k][h];
      }
      CHECK(agg.cdh[h] == doctest::Approx(c).epsilon(1e-12));
      CHECK(agg.hdh[h] == doctest::Approx(hd).epsilon(1e-12));
      // Jensen: the convex max dominates.
      CHECK(agg.cdh[h] >= std::max(0.0, tm - 18.0) - 1e-12);
      CHECK(agg.hdh[h] >= std::max(0.0, 18.0 - tm) - 1e-12);
      CHECK(agg.cdh[h] >= 0.0);
      CHECK(agg.hdh[h] >= 0.0);
    }
  }

  TEST_CASE("single cell is the identity and scaling is linear") {
    const HourStamp t0 = ts("2019-01-01T00:00:00Z");
    const auto g = grid_of({"a", "b"}, {{5.0, 19.0, 30.0}, {17.0, 25.0, 12.0}}, t0, 1);
    const auto one = aggregate_region(g, region_of({{"a", 2.5}}));
    CHECK(one.cdh == std::vector<double>{0.0, 1.0, 12.0});
    CHECK(one.hdh == std::vector<double>{13.0, 0.0, 0.0});
    // Doubling every per-cell degree hour (via threshold symmetry around 18) doubles the aggregate.
    const auto base = aggregate_region(g, region_of({{"a", 1.0}, {"b", 2.0}}));
    auto doubled = g;
    for (auto& t : doubled.temps) t = 18.0 + 2.0 * (t - 18.0);
    const auto scaled = aggregate_region(doubled, region_of({{"a", 1.0}, {"b", 2.0}}));
    for (std::size_t h = 0; h < 3; ++h) {
      CHECK(scaled.cdh[h] == doctest::Approx(2.0 * base.cdh[h]).epsilon(1e-14));
      CHECK(scaled.hdh[h] == doctest::Approx(2.0 * base.hdh[h]).epsilon(1e-14));
    }
  }

  TEST_CASE("aggregation errors") {
    const HourStamp t0 = ts("2019-01-01T00:00:00Z");
    const auto g = grid_of({"a"}, {{5.0}}, t0, 1);
    CHECK_THROWS_AS(aggregate_region(g, region_of({{"a", 0.0}})), InputError);
    CHECK_THROWS_AS(aggregate_region(g, region_of({{"zz", 1.0}})), InputError);
  }

  TEST_CASE("climate interaction aggregates") {
    const HourStamp t0 = ts("2019-01-01T00:00:00Z");
    {
      const auto g = grid_of({"a", "b"}, {{18.0}, {18.0}}, t0, 1);
      NormalsTable n{{"a", {3.0, 4.0}}, {"b", {1.0, 2.0}}};
      const auto w = climate_interaction_aggregates(g, region_of({{"a", 1.0}, {"b", 1.0}}), n);
      CHECK(w.cdh_interaction[0] == 0.0);
      CHECK(w.hdh_interaction[0] == 0.0);
    }
    {
      const auto g = grid_of({"a"}, {{20.0}}, t0, 1);
      NormalsTable n{{"a", {3.0, 0.0}}};
      const auto w = climate_interaction_aggregates(g, region_of({{"a", 1.0}}), n);
      CHECK(w.cdh_interaction[0] == 6.0);
    }
    {
      // (mean_cdh, cdh_t) = (1, 4) and (5, 0): cell-level products average to 2;
      // multiplying the aggregates would give 3 * 2 = 6.
      const auto g = grid_of({"a", "b"}, {{22.0}, {18.0}}, t0, 1);
      NormalsTable n{{"a", {1.0, 0.0}}, {"b", {5.0, 0.0}}};
      const auto w = climate_interaction_aggregates(g, region_of({{"a", 1.0}, {"b", 1.0}}), n);
      const double oracle = 0.5 * (1.0 * 4.0) + 0.5 * (5.0 * 0.0);
      CHECK(w.cdh_interaction[0] == oracle);
      CHECK(w.cdh_interaction[0] == 2.0);
      CHECK((0.5 * 1.0 + 0.5 * 5.0) * w.cdh[0] == 6.0);
    }
    {
      const auto g = grid_of({"a"}, {{20.0}}, t0, 1);
      CHECK_THROWS_AS(climate_interaction_aggregates(g, region_of({{"a", 1.0}}), NormalsTable{}), InputError);
    }
  }

  TEST_CASE("in-sample normals and warming") {
    const HourStamp t0 = ts("2019-01-01T00:00:00Z");
    const auto g = grid_of({"a"}, {{16.0, 20.0, 22.0, 18.0}}, t0, 1);
    const auto n = in_sample_normals(g);
    CHECK(n.at("a").mean_cdh == doctest::Approx(6.0 / 4.0));
    CHECK(n.at("a").mean_hdh == doctest::Approx(2.0 / 4.0));
    const auto warm = shift_temperatures(g, 2.0);
    CHECK(warm.series(0)[0] == 18.0);
    CHECK(warm.series(0)[3] == 20.0);
  }
}

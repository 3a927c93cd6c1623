#include <doctest.h>

#include <numeric>

#include "gridflex/error.hpp"
#include "gridflex/metrics.hpp"
#include "support.hpp"

using namespace gridflex;
using namespace std::chrono;

namespace {

FlattenedDay make_day(year_month_day date, std::vector<double> observed, std::vector<double> profile) {
  FlattenedDay d;
  d.pool_id = "R";
  d.date = date;
  d.observed = observed;
  d.hard = observed;
  d.profile = profile;
  d.reference = observed_reference(observed);
  d.stats = day_stats(d.reference, profile);
  const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
  d.fully_flat = *std::max_element(profile.begin(), profile.end()) <= total / static_cast<double>(observed.size());
  return d;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("SD reduction examples") {
    CHECK(sd_reduction(std::vector<double>{1, 3}, std::vector<double>{2, 2}) == 100.0);
    const std::vector<double> raw{1, 5, 2, 8};
    CHECK(sd_reduction(raw, raw) == 0.0);
    CHECK(sd_reduction(std::vector<double>{0, 4}, std::vector<double>{1.5, 2.5}) == doctest::Approx(75.0));
    CHECK(sd_reduction(std::vector<double>{3, 3}, std::vector<double>{1, 5}) == 0.0);
    CHECK(population_sd(std::vector<double>(17, 0.1)) == 0.0);
    std::mt19937_64 rng(5);
    const auto v = testing::uniform_vec(rng, 1001, -3.0, 40.0);
    CHECK(population_sd(v) == doctest::Approx(testing::pop_sd(v)).epsilon(1e-13));
  }

  TEST_CASE("single-day statistics") {
    const auto d = make_day(year_month_day{2019y / 1 / 1}, {1, 2, 3, 10}, {4, 4, 4, 10});
    CHECK(d.stats.peak_reduction_pct == 0.0);
    CHECK(d.stats.base_increase_pct == doctest::Approx(300.0));
    // 100 (1 - sqrt(6.75) / sqrt(12.5)) from the hand-expanded variances.
    CHECK(d.stats.sd_reduction_pct == doctest::Approx(100.0 * (1.0 - std::sqrt(6.75 / 12.5))).epsilon(1e-12));
    CHECK(d.stats.sd_reduction_pct == doctest::Approx(26.52).epsilon(1e-3));
    const std::vector<FlattenedDay> days{d};
    const auto s = daily_stats(days);
    CHECK(s.days == 1);
    CHECK(s.sd_reduction_pct == d.stats.sd_reduction_pct);
    CHECK(s.mean_demand == doctest::Approx(4.0));
    CHECK_THROWS_AS(daily_stats(std::vector<FlattenedDay>{}), InputError);
  }

  TEST_CASE("unflattened days: zero stats and already-constant share") {
    std::vector<FlattenedDay> days;
    days.push_back(make_day(year_month_day{2019y / 1 / 1}, {1, 2, 3}, {1, 2, 3}));
    days.push_back(make_day(year_month_day{2019y / 1 / 2}, {5, 5, 5}, {5, 5, 5}));
    days.push_back(make_day(year_month_day{2019y / 1 / 3}, {2, 9, 4}, {2, 9, 4}));
    days.push_back(make_day(year_month_day{2019y / 1 / 4}, {7, 7, 7}, {7, 7, 7}));
    const auto s = daily_stats(days);
    CHECK(s.peak_reduction_pct == 0.0);
    CHECK(s.base_increase_pct == 0.0);
    CHECK(s.sd_reduction_pct == 0.0);
    CHECK(s.flattenable_share_pct == 50.0);
  }

  TEST_CASE("demand-weighted regional average") {
    DailySummary a, b;
    a.mean_demand = 10.0;
    a.sd_reduction_pct = 80.0;
    b.mean_demand = 30.0;
    b.sd_reduction_pct = 40.0;
    const std::vector<DailySummary> both{a, b};
    const auto c = combine(both);
    CHECK(c.demand_weighted.sd_reduction_pct == doctest::Approx(50.0));
    CHECK(c.unweighted.sd_reduction_pct == doctest::Approx(60.0));
    CHECK_THROWS_AS(combine(std::vector<DailySummary>{}), InputError);
  }

  TEST_CASE("overall statistics") {
    const std::vector<double> constant(48, 7.0);
    const auto c = overall_stats(constant, constant);
    CHECK(c.raw_base_rel_mean_pct == 100.0);
    CHECK(c.raw_peak_rel_mean_pct == 100.0);
    std::vector<double> two(48, 100.0);
    std::fill(two.begin() + 24, two.end(), 200.0);
    const auto t = overall_stats(two, two);
    CHECK(t.raw_base_rel_mean_pct == doctest::Approx(200.0 / 3.0));
    CHECK(t.raw_peak_rel_mean_pct == doctest::Approx(400.0 / 3.0));
    CHECK(t.sd_reduction_pct == 0.0);
    const std::vector<double> flat(48, 150.0);
    const auto f = overall_stats(two, flat);
    CHECK(f.sd_reduction_pct == 100.0);
    CHECK(f.peak_reduction_pct == doctest::Approx(25.0));
    CHECK(f.base_increase_pct == doctest::Approx(50.0));
  }

  TEST_CASE("overall statistics over pooled days use member sums") {
    FlattenedDay d = make_day(year_month_day{2019y / 6 / 1}, {30, 30}, {30, 30});
    d.member_observed = {{10, 20}, {20, 10}};
    const std::vector<FlattenedDay> days{d};
    const auto s = overall_stats(days);
    CHECK(s.sd_reduction_pct == 100.0);
    CHECK(s.peak_reduction_pct == doctest::Approx(100.0 * (1.0 - 30.0 / 40.0)));
    CHECK(s.base_increase_pct == doctest::Approx(100.0 * (30.0 / 20.0 - 1.0)));
  }

  TEST_CASE("percentiles against a sort oracle") {
    std::vector<double> ten(10);
    std::iota(ten.begin(), ten.end(), 1.0);
    CHECK(percentile(ten, 0.01) == doctest::Approx(1.09));
    CHECK(percentile(ten, 0.99) == doctest::Approx(9.91));
    CHECK(percentile(ten, 0.0) == 1.0);
    CHECK(percentile(ten, 1.0) == 10.0);
    CHECK(percentile(ten, 0.5) == doctest::Approx(5.5));
    std::mt19937_64 rng(99);
    const auto draws = testing::uniform_vec(rng, 1000, -50.0, 50.0);
    auto sorted = draws;
    std::sort(sorted.begin(), sorted.end());
    for (const double q : {0.01, 0.1, 0.25, 0.5, 0.9, 0.99}) {
      // Position q (n - 1) between order statistics.
      const double pos = q * 999.0;
      const auto i = static_cast<std::size_t>(pos);
      const double oracle = sorted[i] + (pos - static_cast<double>(i)) * (sorted[i + 1] - sorted[i]);
      CHECK(percentile(draws, q) == doctest::Approx(oracle).epsilon(1e-14));
    }
    CHECK_THROWS_AS(percentile({}, 0.5), InputError);
    CHECK_THROWS_AS(percentile(ten, 1.5), InputError);
  }

  TEST_CASE("peak and base percentile tables") {
    std::vector<FlattenedDay> constant;
    for (int i = 1; i <= 5; ++i) {
      constant.push_back(make_day(year_month_day{2019y / 3 / i}, std::vector<double>(24, 5.0), std::vector<double>(24, 5.0)));
    }
    PeakBaseAccumulator acc;
    acc.add(constant);
    const auto t = acc.summarize();
    for (const auto* f : {&t.base_daily, &t.base_overall, &t.peak_daily, &t.peak_overall}) {
      CHECK(f->p1 == 100.0);
      CHECK(f->mean == 100.0);
      CHECK(f->p99 == 100.0);
    }
    std::mt19937_64 rng(3);
    std::vector<FlattenedDay> days;
    for (int i = 1; i <= 28; ++i) {
      const auto obs = testing::uniform_vec(rng, 24, 50.0, 150.0);
      days.push_back(make_day(year_month_day{2019y / 2 / i}, obs, obs));
    }
    PeakBaseAccumulator random;
    random.add(days);
    const auto r = random.summarize();
    for (const auto* f : {&r.base_daily, &r.base_overall, &r.peak_daily, &r.peak_overall}) {
      CHECK(f->p1 <= f->mean);
      CHECK(f->mean <= f->p99);
    }
    CHECK(r.base_daily.p99 < 100.0);
    CHECK(r.peak_daily.p1 > 100.0);
    PeakBaseAccumulator misaligned;
    CHECK_THROWS_AS(misaligned.add(std::span<const FlattenedDay>(days).subspan(1), std::span<const FlattenedDay>(days).subspan(0, 27)),
                    InputError);
  }

  TEST_CASE("season membership") {
    CHECK(season_of(year_month_day{2019y / 1 / 15}) == Season::Winter);
    CHECK(season_of(year_month_day{2019y / 12 / 1}) == Season::Winter);
    CHECK(season_of(year_month_day{2019y / 7 / 4}) == Season::Summer);
    CHECK(!in_season(year_month_day{2019y / 4 / 1}, Season::Winter));
    CHECK(!in_season(year_month_day{2019y / 4 / 1}, Season::Summer));
    CHECK(in_season(year_month_day{2019y / 4 / 1}, Season::All));
    std::vector<FlattenedDay> days;
    for (const auto date : {year_month_day{2019y / 1 / 15}, year_month_day{2019y / 4 / 1}, year_month_day{2019y / 7 / 4}}) {
      days.push_back(make_day(date, {1, 2}, {1, 2}));
    }
    CHECK(seasonal_slice(days, Season::Winter).size() == 1);
    CHECK(seasonal_slice(days, Season::Summer).size() == 1);
    CHECK(seasonal_slice(days, Season::All).size() == 3);
    CHECK(parse_season("summer") == Season::Summer);
    CHECK_THROWS_AS(parse_season("monsoon"), InputError);
  }

  TEST_CASE("demand-temperature profile") {
    std::vector<double> temps, demand;
    for (int rep = 0; rep < 3; ++rep) {
      for (int b = -5; b < 35; ++b) {
        if (b == 10) continue;  // leaves an empty bin
        temps.push_back(b + 0.5);
        demand.push_back(1.0 + 0.02 * std::abs(b + 0.5 - 18.0));
      }
    }
    const double mean = testing::mean(demand);
    const auto bins = demand_temperature_profile(demand, temps, 1.0);
    REQUIRE(bins.size() == 40);
    for (const auto& bin : bins) {
      if (bin.center == 10.5) {
        CHECK(bin.count == 0);
        CHECK(!bin.mean_index.has_value());
        continue;
      }
      REQUIRE(bin.mean_index.has_value());
      CHECK(bin.count == 3);
      CHECK(std::abs(*bin.mean_index * mean - (1.0 + 0.02 * std::abs(bin.center - 18.0))) <= 1e-6);
    }
    const std::vector<double> flat(temps.size(), 42.0);
    for (const auto& bin : demand_temperature_profile(flat, temps, 1.0)) {
      if (bin.count > 0) CHECK(*bin.mean_index == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(demand_temperature_profile(flat, std::vector<double>{1.0}, 1.0), InputError);
  }
}

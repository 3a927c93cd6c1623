#include <doctest.h>

#include <sstream>

#include "gridflex/csv.hpp"
#include "gridflex/error.hpp"
#include "gridflex/time.hpp"
#include "support.hpp"

using namespace gridflex;
using namespace std::chrono;

TEST_SUITE("time") {
  TEST_CASE("rfc3339 round trip and offsets") {
    const HourStamp t = parse_rfc3339("2019-03-10T07:00:00Z");
    CHECK(format_rfc3339(t) == "2019-03-10T07:00:00Z");
    CHECK(parse_rfc3339("2019-03-10T02:00:00-05:00") == t);
    CHECK(parse_rfc3339("2019-03-10T09:30:00+02:30") == t);
    CHECK(parse_rfc3339("1970-01-01T00:00:00Z").hours == 0);
    CHECK_THROWS_AS(parse_rfc3339("2019-03-10T07:30:00Z"), InputError);
    CHECK_THROWS_AS(parse_rfc3339("2019-13-10T07:00:00Z"), InputError);
    CHECK_THROWS_AS(parse_rfc3339("2019-03-10 07:00"), InputError);
  }

  TEST_CASE("local calendar view") {
    // 2019-01-01 is a Tuesday.
    const HourStamp t = parse_rfc3339("2019-01-01T05:00:00Z");
    const LocalHour east = to_local(t, -5);
    CHECK(east.hour == 0);
    CHECK(east.iso_weekday == 2);
    CHECK(east.hour_of_year == 1);
    const LocalHour before = to_local(t + (-1), -5);
    CHECK(before.date == year_month_day{year{2018}, December, day{31}});
    CHECK(before.hour == 23);
    CHECK(before.hour_of_year == 8760);
    const LocalHour leap = to_local(parse_rfc3339("2020-12-31T23:00:00Z"), 0);
    CHECK(leap.leap_year);
    CHECK(leap.hour_of_year == 8784);
    CHECK(hours_in_year(2020) == 8784);
    CHECK(hours_in_year(2100) == 8760);
  }

  TEST_CASE("day index") {
    const HourStamp t = parse_rfc3339("2019-07-04T03:00:00Z");
    CHECK(format_date(day_index_to_date(local_day_index(t, 0))) == "2019-07-04");
    CHECK(format_date(day_index_to_date(local_day_index(t, -5))) == "2019-07-03");
  }
}

TEST_SUITE("csv") {
  TEST_CASE("reads with comments, blanks and trimming") {
    std::istringstream in("# note\na, b\n\n 1 ,2\n3,4\r\n");
    const auto t = csv::read(in, "mem");
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].line == 4);
    CHECK(t.rows[0].fields[0] == "1");
    CHECK(t.rows[1].fields[1] == "4");
    CHECK(t.column("b") == 1);
    CHECK_THROWS_AS(t.column("c"), InputError);
  }

  TEST_CASE("rejects ragged rows with the line number") {
    std::istringstream in("a,b\n1\n");
    try {
      csv::read(in, "mem");
      FAIL("expected InputError");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("mem:2") != std::string::npos);
    }
  }

  TEST_CASE("double formatting round-trips") {
    std::mt19937_64 rng(7);
    for (double v : testing::uniform_vec(rng, 1000, -1e6, 1e6)) {
      CHECK(csv::parse_double(csv::format_double(v), "") == v);
    }
    CHECK(csv::format_double(0.1) == "0.1");
    CHECK(csv::parse_double("+2.5", "") == 2.5);
    CHECK_THROWS_AS(csv::parse_double("2.5x", ""), InputError);
    CHECK_THROWS_AS(csv::parse_long("", ""), InputError);
  }
}

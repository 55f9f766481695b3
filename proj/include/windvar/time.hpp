#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace windvar {

/// Whole hours since 1970-01-01T00:00:00Z. All series in this project are
/// UTC and hourly-gridded, so an integral hour count is the exact and
/// cheapest representation.
using HourStamp = std::int64_t;

struct CivilDate {
    int year;
    int month;  // 1..12
    int day;    // 1..31
};

/// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int y, int m, int d);

/// Inverse of days_from_civil.
CivilDate civil_from_days(std::int64_t z);

/// Parse "YYYY-MM-DDTHH:00:00Z". Minutes/seconds must be zero.
/// Throws ParseError otherwise.
HourStamp parse_hour_utc(std::string_view iso);

/// Format as "YYYY-MM-DDTHH:00:00Z".
std::string format_hour_utc(HourStamp h);

/// Hour of day in UTC, 0..23.
int hour_of_day(HourStamp h);

/// Calendar month in UTC, 1..12.
int month_of(HourStamp h);

}  // namespace windvar

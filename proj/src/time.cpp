#include "windvar/time.hpp"

#include <cstdio>

#include "windvar/errors.hpp"

namespace windvar {

// Howard Hinnant's branchless civil-date algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);             // [0, 399]
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;  // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;            // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

HourStamp parse_hour_utc(std::string_view iso) {
    int y = 0, mo = 0, da = 0, hh = 0, mi = 0, ss = 0;
    char tail = 0;
    const std::string s(iso);
    const int n = std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &da, &hh, &mi, &ss, &tail);
    if (n != 7 || tail != 'Z' || s.size() != 20)
        throw ParseError("bad timestamp '" + s + "': expected YYYY-MM-DDTHH:00:00Z");
    if (mo < 1 || mo > 12 || da < 1 || da > 31 || hh < 0 || hh > 23)
        throw ParseError("bad timestamp '" + s + "': field out of range");
    if (mi != 0 || ss != 0)
        throw ParseError("bad timestamp '" + s + "': minutes and seconds must be zero");
    return days_from_civil(y, mo, da) * 24 + hh;
}

std::string format_hour_utc(HourStamp h) {
    std::int64_t days = h / 24;
    int hour = static_cast<int>(h % 24);
    if (hour < 0) {
        hour += 24;
        --days;
    }
    const CivilDate c = civil_from_days(days);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00:00Z", c.year, c.month, c.day, hour);
    return buf;
}

int hour_of_day(HourStamp h) {
    const int r = static_cast<int>(h % 24);
    return r < 0 ? r + 24 : r;
}

int month_of(HourStamp h) {
    std::int64_t days = h / 24;
    if (h % 24 < 0) --days;
    return civil_from_days(days).month;
}

}  // namespace windvar

#pragma once

#include <cstdint>
#include <string>

namespace gabp::dates {

struct Civil {
    int year;
    unsigned month; // 1..12
    unsigned day;   // 1..31
};

/// Days since 1970-01-01 (Howard Hinnant's civil-days algorithm).
std::int64_t days_from_civil(const Civil& c);
Civil civil_from_days(std::int64_t z);

/// 0 = Monday .. 6 = Sunday.
int weekday(std::int64_t days);

/// Strict YYYY-MM-DD validation (including month lengths and leap years).
bool parse_iso(const std::string& s, Civil& out);

std::string format_iso(const Civil& c);

} // namespace gabp::dates

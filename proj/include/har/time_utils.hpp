#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace har {

/// Microseconds since 1970-01-01 00:00:00, naive local time (no zone).
using Micros = std::int64_t;

inline constexpr Micros kMicrosPerSecond = 1'000'000;
inline constexpr Micros kMicrosPerDay = 86'400 * kMicrosPerSecond;

struct CivilTime {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
  int hour = 0;
  int minute = 0;
  int second = 0;
  int micro = 0;
};

Micros to_micros(const CivilTime& c);
CivilTime civil_from_micros(Micros t);

/// Parses "YYYY-MM-DD" + "HH:MM:SS[.ffffff]" (fraction up to 9 digits,
/// truncated to microseconds). Returns false on malformed or out-of-range
/// fields.
bool parse_timestamp(std::string_view date, std::string_view time, Micros& out);

/// Parses "YYYY-MM-DD" at midnight. Returns false on malformed input.
bool parse_date(std::string_view date, Micros& out);

/// "YYYY-MM-DD HH:MM:SS.ffffff", fraction always 6 digits.
std::string format_timestamp(Micros t);

/// Fractional hour of day in [0,24).
double hour_of_day(Micros t);

/// Day of week, 0 = Monday .. 6 = Sunday.
int day_of_week(Micros t);

}  // namespace har

#include "har/time_utils.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace har {
namespace {

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y = static_cast<int>(yy + (m <= 2));
}

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> lens = {31, 28, 31, 30, 31, 30,
                                               31, 31, 30, 31, 30, 31};
  if (m == 2) {
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return leap ? 29 : 28;
  }
  return lens[static_cast<std::size_t>(m - 1)];
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool parse_uint(std::string_view s, int& out) {
  if (s.empty()) return false;
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return false;
  out = v;
  return true;
}

}  // namespace

Micros to_micros(const CivilTime& c) {
  const std::int64_t days =
      days_from_civil(c.year, static_cast<unsigned>(c.month), static_cast<unsigned>(c.day));
  const std::int64_t secs =
      days * 86400 + c.hour * 3600 + c.minute * 60 + c.second;
  return secs * kMicrosPerSecond + c.micro;
}

CivilTime civil_from_micros(Micros t) {
  const std::int64_t days = floor_div(t, kMicrosPerDay);
  std::int64_t rem = t - days * kMicrosPerDay;
  CivilTime c;
  unsigned m = 1, d = 1;
  civil_from_days(days, c.year, m, d);
  c.month = static_cast<int>(m);
  c.day = static_cast<int>(d);
  c.micro = static_cast<int>(rem % kMicrosPerSecond);
  rem /= kMicrosPerSecond;
  c.second = static_cast<int>(rem % 60);
  rem /= 60;
  c.minute = static_cast<int>(rem % 60);
  c.hour = static_cast<int>(rem / 60);
  return c;
}

bool parse_timestamp(std::string_view date, std::string_view time, Micros& out) {
  CivilTime c;
  if (date.size() != 10 || date[4] != '-' || date[7] != '-') return false;
  if (!parse_uint(date.substr(0, 4), c.year) ||
      !parse_uint(date.substr(5, 2), c.month) ||
      !parse_uint(date.substr(8, 2), c.day))
    return false;
  if (c.month < 1 || c.month > 12) return false;
  if (c.day < 1 || c.day > days_in_month(c.year, c.month)) return false;

  if (time.size() < 8 || time[2] != ':' || time[5] != ':') return false;
  if (!parse_uint(time.substr(0, 2), c.hour) ||
      !parse_uint(time.substr(3, 2), c.minute) ||
      !parse_uint(time.substr(6, 2), c.second))
    return false;
  if (c.hour > 23 || c.minute > 59 || c.second > 59) return false;

  if (time.size() > 8) {
    if (time[8] != '.') return false;
    std::string_view frac = time.substr(9);
    if (frac.empty() || frac.size() > 9) return false;
    int scale = 100000;
    int micro = 0;
    for (std::size_t i = 0; i < frac.size(); ++i) {
      if (frac[i] < '0' || frac[i] > '9') return false;
      if (i < 6) {
        micro += (frac[i] - '0') * scale;
        scale /= 10;
      }
    }
    c.micro = micro;
  }
  out = to_micros(c);
  return true;
}

bool parse_date(std::string_view date, Micros& out) {
  return parse_timestamp(date, "00:00:00", out);
}

std::string format_timestamp(Micros t) {
  const CivilTime c = civil_from_micros(t);
  char buf[36];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d.%06d", c.year,
                c.month, c.day, c.hour, c.minute, c.second, c.micro);
  return buf;
}

double hour_of_day(Micros t) {
  const std::int64_t days = floor_div(t, kMicrosPerDay);
  const std::int64_t rem = t - days * kMicrosPerDay;
  return static_cast<double>(rem) / (3600.0 * kMicrosPerSecond);
}

int day_of_week(Micros t) {
  const std::int64_t days = floor_div(t, kMicrosPerDay);
  // 1970-01-01 was a Thursday; Monday = 0.
  return static_cast<int>(((days % 7) + 7 + 3) % 7);
}

}  // namespace har

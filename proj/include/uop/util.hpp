#ifndef UOP_UTIL_HPP
#define UOP_UTIL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace uop {

std::string to_lower(std::string_view s);

// Splits on a single delimiter, keeping empty fields.
std::vector<std::string> split(std::string_view s, char delim);

std::string_view trim(std::string_view s);

// FNV-1a over a file's bytes; stable across runs. Throws Error on open failure.
uint64_t fnv1a_file(const std::string& path);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

// Civil-calendar conversions for UTC timestamps (proleptic Gregorian).
struct YearMonth {
    int year = 0;
    int month = 0; // 1..12
    auto operator<=>(const YearMonth&) const = default;
};

YearMonth month_of_timestamp(int64_t epoch_seconds);
std::string format_year_month(const YearMonth& ym); // "YYYY-MM"

// Seconds since epoch from UTC civil date/time fields.
int64_t timestamp_of_utc(int year, int month, int day, int hour, int minute, int second);

// Parses "YYYY-MM-DDTHH:MM:SS" with optional trailing "Z". Throws Error on bad input.
int64_t parse_iso8601_utc(std::string_view s);

} // namespace uop

#endif

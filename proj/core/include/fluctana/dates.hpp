#ifndef FLUCTANA_DATES_HPP
#define FLUCTANA_DATES_HPP

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace fluctana {

using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 calendar date ("YYYY-MM-DD"). Returns nullopt for
/// anything else, including syntactically valid but non-existent days.
std::optional<Date> parse_iso_date(std::string_view text);

/// Formats as "YYYY-MM-DD".
std::string format_iso_date(const Date& d);

/// Date shifted by a number of calendar days.
Date add_days(const Date& d, int days);

}  // namespace fluctana

#endif  // FLUCTANA_DATES_HPP

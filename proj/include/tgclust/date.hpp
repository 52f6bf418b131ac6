#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace tgclust {

// Calendar day; only ordering and month arithmetic are used.
using Date = std::chrono::year_month_day;

// Parses ISO-8601 "YYYY-MM-DD". Throws DataError on anything else.
Date parse_date(std::string_view text);

std::string format_date(const Date& d);

// Adds calendar months, clamping the day to the end of the target month.
Date add_months(const Date& d, int months);

Date add_days(const Date& d, int days);

}  // namespace tgclust

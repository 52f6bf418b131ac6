#include "tgclust/date.hpp"

#include <charconv>
#include <cstdio>

#include "tgclust/error.hpp"

namespace tgclust {

namespace {

int parse_field(std::string_view text, std::string_view field) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw DataError("invalid date '" + std::string(text) + "'");
    return value;
}

}  // namespace

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw DataError("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    const int y = parse_field(text, text.substr(0, 4));
    const int m = parse_field(text, text.substr(5, 2));
    const int d = parse_field(text, text.substr(8, 2));
    Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
              std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok()) throw DataError("invalid date '" + std::string(text) + "'");
    return date;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

Date add_months(const Date& d, int months) {
    using namespace std::chrono;
    year_month ym = year_month{d.year(), d.month()} + std::chrono::months{months};
    const auto last = year_month_day_last{ym.year(), month_day_last{ym.month()}};
    const day dd = d.day() > last.day() ? last.day() : d.day();
    return Date{ym.year(), ym.month(), dd};
}

Date add_days(const Date& d, int days) {
    return Date{std::chrono::sys_days{d} + std::chrono::days{days}};
}

}  // namespace tgclust

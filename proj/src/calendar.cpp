#include "arena/calendar.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace arena {

namespace {

int parse_fixed_int(std::string_view text, std::string_view whole) {
    int value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("malformed date '" + std::string(whole) + "'");
        }
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("malformed date '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

std::string YearMonth::to_string() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year(), month());
    return buf;
}

std::string YearMonth::to_iso_date() const { return to_string() + "-01"; }

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw std::invalid_argument("malformed date '" + std::string(text) + "'");
    }
    Date d{parse_fixed_int(text.substr(0, 4), text), parse_fixed_int(text.substr(5, 2), text),
           parse_fixed_int(text.substr(8, 2), text)};
    const std::chrono::year_month_day ymd{std::chrono::year{d.year}, std::chrono::month{static_cast<unsigned>(d.month)},
                                          std::chrono::day{static_cast<unsigned>(d.day)}};
    if (!ymd.ok()) {
        throw std::invalid_argument("invalid calendar date '" + std::string(text) + "'");
    }
    return d;
}

YearMonth parse_year_month(std::string_view text) {
    if (text.size() == 10) {
        return month_of(parse_date(text));
    }
    if (text.size() != 7 || text[4] != '-') {
        throw std::invalid_argument("malformed month '" + std::string(text) + "' (expected YYYY-MM)");
    }
    const int year = parse_fixed_int(text.substr(0, 4), text);
    const int month = parse_fixed_int(text.substr(5, 2), text);
    if (month < 1 || month > 12) {
        throw std::invalid_argument("invalid month '" + std::string(text) + "'");
    }
    return YearMonth(year, month);
}

MonthRange parse_month_range(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("malformed month range '" + std::string(text) + "' (expected YYYY-MM:YYYY-MM)");
    }
    MonthRange r{parse_year_month(text.substr(0, colon)), parse_year_month(text.substr(colon + 1))};
    if (r.last < r.first) {
        throw std::invalid_argument("month range '" + std::string(text) + "' ends before it starts");
    }
    return r;
}

std::string to_string(const Date& d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace arena

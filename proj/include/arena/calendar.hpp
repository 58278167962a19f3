#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace arena {

/// Calendar day. Only valid Gregorian dates can be constructed through parse_date().
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;
};

/// A calendar month, ordered and addressable by a contiguous month index.
class YearMonth {
public:
    constexpr YearMonth() = default;
    constexpr YearMonth(int year, int month) : index_(static_cast<std::int64_t>(year) * 12 + (month - 1)) {}

    static constexpr YearMonth from_index(std::int64_t index) {
        YearMonth ym;
        ym.index_ = index;
        return ym;
    }

    constexpr int year() const { return static_cast<int>(floor_div(index_, 12)); }
    constexpr int month() const { return static_cast<int>(index_ - floor_div(index_, 12) * 12) + 1; }
    constexpr std::int64_t index() const { return index_; }

    constexpr YearMonth operator+(std::int64_t months) const { return from_index(index_ + months); }
    constexpr YearMonth operator-(std::int64_t months) const { return from_index(index_ - months); }
    constexpr std::int64_t operator-(YearMonth other) const { return index_ - other.index_; }
    YearMonth& operator+=(std::int64_t months) {
        index_ += months;
        return *this;
    }

    constexpr auto operator<=>(const YearMonth&) const = default;

    /// `YYYY-MM`
    std::string to_string() const;
    /// `YYYY-MM-01`, the on-disk form used by the dataset files.
    std::string to_iso_date() const;

private:
    static constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
        return (a >= 0) ? a / b : -((-a + b - 1) / b);
    }

    std::int64_t index_ = 1970 * 12;
};

inline YearMonth month_of(const Date& d) { return YearMonth(d.year, d.month); }

/// Inclusive month range.
struct MonthRange {
    YearMonth first;
    YearMonth last;

    bool contains(YearMonth m) const { return first <= m && m <= last; }
    std::int64_t size() const { return last - first + 1; }
    auto operator<=>(const MonthRange&) const = default;
};

/// Strict ISO `YYYY-MM-DD`. Throws std::invalid_argument on malformed or impossible dates.
Date parse_date(std::string_view text);

/// Accepts `YYYY-MM` or `YYYY-MM-DD` (day ignored).
YearMonth parse_year_month(std::string_view text);

/// `YYYY-MM:YYYY-MM`, first <= last.
MonthRange parse_month_range(std::string_view text);

std::string to_string(const Date& d);

}  // namespace arena

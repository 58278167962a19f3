#pragma once

#include "arena/calendar.hpp"

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace arena {

/// One (item, organization) signal. Ordered lexicographically on (item, org).
struct SeriesKey {
    std::string item;
    std::string org;

    auto operator<=>(const SeriesKey&) const = default;
    std::string to_string() const { return item + "/" + org; }
};

struct SalesRecord {
    SeriesKey key;
    YearMonth month;
    double quantity = 0.0;

    bool operator==(const SalesRecord&) const = default;
};

struct PriceRecord {
    SeriesKey key;
    YearMonth month;
    double unit_price = 0.0;

    bool operator==(const PriceRecord&) const = default;
};

/// Raw daily transaction row, input to aggregate_daily_to_monthly().
struct DailyRecord {
    SeriesKey key;
    Date day;
    double quantity = 0.0;
    double unit_price = 0.0;
};

/// Contiguous monthly quantities and unit prices for one key.
struct MonthlySeries {
    SeriesKey key;
    YearMonth start;
    std::vector<double> quantities;
    std::vector<double> prices;

    std::size_t size() const { return quantities.size(); }
    YearMonth end() const { return start + static_cast<std::int64_t>(quantities.size()) - 1; }
    bool covers(YearMonth m) const { return start <= m && m <= end(); }
    std::size_t offset(YearMonth m) const { return static_cast<std::size_t>(m - start); }

    /// Prefix ending at `origin` (inclusive). `origin` must lie inside the series.
    MonthlySeries truncated(YearMonth origin) const;
};

struct Holiday {
    Date date;
    std::string name;

    auto operator<=>(const Holiday&) const = default;
};

struct HolidayCalendar {
    std::set<Holiday> entries;

    bool empty() const { return entries.empty(); }
    /// Distinct holiday names in lexicographic order.
    std::vector<std::string> names() const;
};

struct DatasetBundle {
    std::map<SeriesKey, MonthlySeries> series;
    HolidayCalendar holidays;
};

struct ParseOptions {
    /// Truncate mid-month dates to the first of the month instead of rejecting them.
    bool normalize_dates = false;
};

std::vector<SalesRecord> parse_target_csv(std::istream& in, const ParseOptions& options = {});
std::vector<PriceRecord> parse_related_csv(std::istream& in, const ParseOptions& options = {});
HolidayCalendar load_holidays(std::istream& in);

void write_target_csv(std::ostream& out, const std::vector<SalesRecord>& records);
void write_related_csv(std::ostream& out, const std::vector<PriceRecord>& records);

/// Sums quantities per (key, month); price is the quantity-weighted mean of the daily prices.
/// Months with zero total quantity produce a sales record but no price record.
std::pair<std::vector<SalesRecord>, std::vector<PriceRecord>> aggregate_daily_to_monthly(
    const std::vector<DailyRecord>& daily);

/// Builds gap-free monthly series. Missing quantities become 0; missing prices carry forward
/// (or backward for a leading gap). Throws DataError on duplicate months or keys with no price.
DatasetBundle assemble_series(const std::vector<SalesRecord>& sales, const std::vector<PriceRecord>& prices);

/// Drops records dated before `first`.
template <typename Record>
std::vector<Record> drop_before(const std::vector<Record>& records, YearMonth first) {
    std::vector<Record> kept;
    kept.reserve(records.size());
    for (const auto& r : records) {
        if (r.month >= first) {
            kept.push_back(r);
        }
    }
    return kept;
}

/// Canonical JSON text of a bundle; identical bundles serialize to identical bytes.
std::string serialize_bundle(const DatasetBundle& bundle);

}  // namespace arena

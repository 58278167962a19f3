#include "arena/dataset_io.hpp"

#include "arena/errors.hpp"
#include "arena/format.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arena {

namespace {

struct CsvReader {
    std::istream& in;
    std::size_t line_no = 0;

    bool next(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) {
                line.erase(0, 3);
            }
            if (line.empty() || line == "\r") {
                continue;
            }
            try {
                fields = split_csv_line(line);
            } catch (const std::invalid_argument& e) {
                throw ParseError(line_no, e.what());
            }
            return true;
        }
        return false;
    }
};

void expect_header(CsvReader& reader, const std::vector<std::string>& expected, bool allow_empty) {
    std::vector<std::string> header;
    if (!reader.next(header)) {
        if (allow_empty) {
            return;
        }
        throw ParseError(1, "missing header");
    }
    if (header != expected) {
        std::string want;
        for (const auto& h : expected) {
            want += (want.empty() ? "" : ",") + h;
        }
        throw ParseError(reader.line_no, "unexpected header (expected '" + want + "')");
    }
}

YearMonth parse_month_field(const std::string& text, std::size_t row, const ParseOptions& options) {
    Date d;
    try {
        d = parse_date(text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(row, e.what());
    }
    if (d.day != 1 && !options.normalize_dates) {
        throw ParseError(row, "date not first of month: '" + text + "'");
    }
    return month_of(d);
}

double parse_number_field(const std::string& text, std::size_t row, const char* column) {
    try {
        return parse_double(text);
    } catch (const std::invalid_argument&) {
        throw ParseError(row, std::string("non-numeric ") + column + " '" + text + "'");
    }
}

template <typename Record, typename MakeRecord>
std::vector<Record> parse_monthly_csv(std::istream& in, const char* value_column, MakeRecord make) {
    CsvReader reader{in};
    expect_header(reader, {"item", "org", "date", value_column}, false);
    std::vector<Record> records;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (fields.size() != 4) {
            throw ParseError(reader.line_no, "expected 4 fields, got " + std::to_string(fields.size()));
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw ParseError(reader.line_no, "empty item or org identifier");
        }
        records.push_back(make(fields, reader.line_no));
    }
    return records;
}

}  // namespace

MonthlySeries MonthlySeries::truncated(YearMonth origin) const {
    if (!covers(origin)) {
        throw std::out_of_range("origin " + origin.to_string() + " outside series " + key.to_string());
    }
    const auto n = offset(origin) + 1;
    MonthlySeries out{key, start, {}, {}};
    out.quantities.assign(quantities.begin(), quantities.begin() + static_cast<std::ptrdiff_t>(n));
    out.prices.assign(prices.begin(), prices.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
}

std::vector<std::string> HolidayCalendar::names() const {
    std::set<std::string> unique;
    for (const auto& h : entries) {
        unique.insert(h.name);
    }
    return {unique.begin(), unique.end()};
}

std::vector<SalesRecord> parse_target_csv(std::istream& in, const ParseOptions& options) {
    return parse_monthly_csv<SalesRecord>(in, "quantity", [&](const std::vector<std::string>& f, std::size_t row) {
        const YearMonth month = parse_month_field(f[2], row, options);
        const double q = parse_number_field(f[3], row, "quantity");
        if (q < 0.0) {
            throw ParseError(row, "negative quantity '" + f[3] + "'");
        }
        return SalesRecord{{f[0], f[1]}, month, q};
    });
}

std::vector<PriceRecord> parse_related_csv(std::istream& in, const ParseOptions& options) {
    return parse_monthly_csv<PriceRecord>(in, "unit_price", [&](const std::vector<std::string>& f, std::size_t row) {
        const YearMonth month = parse_month_field(f[2], row, options);
        const double p = parse_number_field(f[3], row, "unit_price");
        if (!(p > 0.0)) {
            throw ParseError(row, "non-positive unit_price '" + f[3] + "'");
        }
        return PriceRecord{{f[0], f[1]}, month, p};
    });
}

HolidayCalendar load_holidays(std::istream& in) {
    CsvReader reader{in};
    expect_header(reader, {"date", "name"}, true);
    HolidayCalendar calendar;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (fields.size() != 2) {
            throw ParseError(reader.line_no, "expected 2 fields, got " + std::to_string(fields.size()));
        }
        try {
            calendar.entries.insert({parse_date(fields[0]), fields[1]});
        } catch (const std::invalid_argument& e) {
            throw ParseError(reader.line_no, e.what());
        }
    }
    return calendar;
}

void write_target_csv(std::ostream& out, const std::vector<SalesRecord>& records) {
    out << "item,org,date,quantity\n";
    for (const auto& r : records) {
        out << csv_escape(r.key.item) << ',' << csv_escape(r.key.org) << ',' << r.month.to_iso_date() << ','
            << format_double(r.quantity) << '\n';
    }
}

void write_related_csv(std::ostream& out, const std::vector<PriceRecord>& records) {
    out << "item,org,date,unit_price\n";
    for (const auto& r : records) {
        out << csv_escape(r.key.item) << ',' << csv_escape(r.key.org) << ',' << r.month.to_iso_date() << ','
            << format_double(r.unit_price) << '\n';
    }
}

std::pair<std::vector<SalesRecord>, std::vector<PriceRecord>> aggregate_daily_to_monthly(
    const std::vector<DailyRecord>& daily) {
    struct Totals {
        double quantity = 0.0;
        double revenue = 0.0;
    };
    std::map<std::pair<SeriesKey, YearMonth>, Totals> totals;
    for (const auto& d : daily) {
        if (d.quantity < 0.0) {
            throw DataError("negative daily quantity for " + d.key.to_string() + " on " + to_string(d.day));
        }
        if (!(d.unit_price > 0.0)) {
            throw DataError("non-positive daily unit_price for " + d.key.to_string() + " on " + to_string(d.day));
        }
        auto& t = totals[{d.key, month_of(d.day)}];
        t.quantity += d.quantity;
        t.revenue += d.quantity * d.unit_price;
    }
    std::vector<SalesRecord> sales;
    std::vector<PriceRecord> prices;
    for (const auto& [slot, t] : totals) {
        sales.push_back({slot.first, slot.second, t.quantity});
        if (t.quantity > 0.0) {
            prices.push_back({slot.first, slot.second, t.revenue / t.quantity});
        }
    }
    return {std::move(sales), std::move(prices)};
}

DatasetBundle assemble_series(const std::vector<SalesRecord>& sales, const std::vector<PriceRecord>& prices) {
    std::map<SeriesKey, std::map<YearMonth, double>> quantity_by_key;
    for (const auto& r : sales) {
        if (!quantity_by_key[r.key].emplace(r.month, r.quantity).second) {
            throw DataError("duplicate month " + r.month.to_string() + " in sales for " + r.key.to_string());
        }
    }
    std::map<SeriesKey, std::map<YearMonth, double>> price_by_key;
    for (const auto& r : prices) {
        if (!price_by_key[r.key].emplace(r.month, r.unit_price).second) {
            throw DataError("duplicate month " + r.month.to_string() + " in prices for " + r.key.to_string());
        }
    }

    DatasetBundle bundle;
    for (const auto& [key, by_month] : quantity_by_key) {
        const auto price_it = price_by_key.find(key);
        if (price_it == price_by_key.end() || price_it->second.empty()) {
            throw DataError("no price records for " + key.to_string());
        }
        const auto& known_prices = price_it->second;

        MonthlySeries s{key, by_month.begin()->first, {}, {}};
        const YearMonth last = by_month.rbegin()->first;
        const auto n = static_cast<std::size_t>(last - s.start + 1);
        s.quantities.assign(n, 0.0);
        s.prices.assign(n, 0.0);
        for (const auto& [month, q] : by_month) {
            s.quantities[s.offset(month)] = q;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const YearMonth m = s.start + static_cast<std::int64_t>(i);
            // first price record strictly after m; its predecessor (if any) is the latest at or before m
            auto after = known_prices.upper_bound(m);
            s.prices[i] = (after == known_prices.begin()) ? after->second : std::prev(after)->second;
        }
        bundle.series.emplace(key, std::move(s));
    }
    return bundle;
}

std::string serialize_bundle(const DatasetBundle& bundle) {
    nlohmann::ordered_json doc;
    doc["series"] = nlohmann::ordered_json::array();
    for (const auto& [key, s] : bundle.series) {
        nlohmann::ordered_json entry;
        entry["item"] = key.item;
        entry["org"] = key.org;
        entry["start"] = s.start.to_string();
        entry["quantities"] = s.quantities;
        entry["prices"] = s.prices;
        doc["series"].push_back(std::move(entry));
    }
    doc["holidays"] = nlohmann::ordered_json::array();
    for (const auto& h : bundle.holidays.entries) {
        doc["holidays"].push_back({{"date", to_string(h.date)}, {"name", h.name}});
    }
    return doc.dump(1);
}

}  // namespace arena

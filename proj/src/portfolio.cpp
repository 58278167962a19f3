#include "arena/portfolio.hpp"

#include "arena/format.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace arena {

std::string to_string(HistoryClass h) { return h == HistoryClass::long_history ? "long" : "short"; }

std::string to_string(Activity a) { return a == Activity::active ? "active" : "inactive"; }

HistoryClass parse_history_class(const std::string& text) {
    if (text == "long") return HistoryClass::long_history;
    if (text == "short") return HistoryClass::short_history;
    throw std::invalid_argument("unknown history class '" + text + "'");
}

Activity parse_activity(const std::string& text) {
    if (text == "active") return Activity::active;
    if (text == "inactive") return Activity::inactive;
    throw std::invalid_argument("unknown activity '" + text + "'");
}

std::vector<ImportanceEntry> importance_table(const DatasetBundle& bundle, const std::optional<MonthRange>& window) {
    std::map<std::string, double> revenue;
    for (const auto& [key, s] : bundle.series) {
        double& total = revenue[key.item];
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (window && !window->contains(s.start + static_cast<std::int64_t>(i))) {
                continue;
            }
            total += s.quantities[i] * s.prices[i];
        }
    }
    std::vector<ImportanceEntry> table;
    table.reserve(revenue.size());
    for (const auto& [item, r] : revenue) {
        table.push_back({item, r, 0});
    }
    std::stable_sort(table.begin(), table.end(), [](const ImportanceEntry& a, const ImportanceEntry& b) {
        if (a.revenue != b.revenue) return a.revenue > b.revenue;
        return a.item < b.item;
    });
    for (std::size_t i = 0; i < table.size(); ++i) {
        table[i].rank = static_cast<int>(i) + 1;
    }
    return table;
}

SeriesClass classify_series(const MonthlySeries& series, int activity_window) {
    if (activity_window < 1) {
        throw std::invalid_argument("activity_window must be positive");
    }
    SeriesClass c;
    c.history_months = static_cast<int>(series.size());
    c.history = c.history_months >= kLongHistoryMonths ? HistoryClass::long_history : HistoryClass::short_history;
    const auto window = std::min<std::size_t>(static_cast<std::size_t>(activity_window), series.size());
    const bool any_sales = std::any_of(series.quantities.end() - static_cast<std::ptrdiff_t>(window),
                                       series.quantities.end(), [](double q) { return q > 0.0; });
    c.activity = any_sales ? Activity::active : Activity::inactive;
    return c;
}

DatasetBundle select_portfolio(const DatasetBundle& bundle, const std::vector<ImportanceEntry>& table, int top_n) {
    if (top_n < 1 || static_cast<std::size_t>(top_n) > table.size()) {
        throw std::invalid_argument("top_n = " + std::to_string(top_n) + " outside [1, " +
                                    std::to_string(table.size()) + "]");
    }
    std::set<std::string> chosen;
    for (const auto& e : table) {
        if (e.rank <= top_n) {
            chosen.insert(e.item);
        }
    }
    DatasetBundle out;
    out.holidays = bundle.holidays;
    for (const auto& [key, s] : bundle.series) {
        if (chosen.contains(key.item)) {
            out.series.emplace(key, s);
        }
    }
    return out;
}

void write_importance_csv(std::ostream& out, const std::vector<ImportanceEntry>& table) {
    out << "item,revenue,rank\n";
    for (const auto& e : table) {
        out << csv_escape(e.item) << ',' << format_double(e.revenue) << ',' << e.rank << '\n';
    }
}

}  // namespace arena

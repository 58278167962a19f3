#pragma once

#include "arena/calendar.hpp"
#include "arena/dataset_io.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace arena {

/// Item ranked by total turnover; rank 1 is the most important item.
struct ImportanceEntry {
    std::string item;
    double revenue = 0.0;
    int rank = 0;
};

enum class HistoryClass { long_history, short_history };
enum class Activity { active, inactive };

inline constexpr int kLongHistoryMonths = 24;

struct SeriesClass {
    HistoryClass history = HistoryClass::short_history;
    Activity activity = Activity::inactive;
    int history_months = 0;

    bool operator==(const SeriesClass&) const = default;
};

std::string to_string(HistoryClass h);
std::string to_string(Activity a);
HistoryClass parse_history_class(const std::string& text);
Activity parse_activity(const std::string& text);

/// Revenue per item = sum over orgs and months of quantity * unit_price, sorted descending with
/// ties broken by ascending item id. `window` restricts the months that contribute.
std::vector<ImportanceEntry> importance_table(const DatasetBundle& bundle,
                                              const std::optional<MonthRange>& window = std::nullopt);

/// Long history iff at least 24 months; active iff any positive quantity in the final
/// `activity_window` months.
SeriesClass classify_series(const MonthlySeries& series, int activity_window = 3);

/// Keeps the series of the `top_n` highest-ranked items. Throws std::invalid_argument when
/// top_n is not in [1, number of items].
DatasetBundle select_portfolio(const DatasetBundle& bundle, const std::vector<ImportanceEntry>& table, int top_n = 50);

void write_importance_csv(std::ostream& out, const std::vector<ImportanceEntry>& table);

}  // namespace arena

#pragma once

#include "arena/dataset_io.hpp"
#include "arena/portfolio.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace arena {

enum class Metric { wape_1mo, wape_3mo };

std::string to_string(Metric metric);
/// Accepts `wape_1mo`/`wape1mo` and `wape_3mo`/`wape3mo`.
Metric parse_metric(const std::string& text);

struct ResultRow {
    SeriesKey key;
    std::string model;
    std::optional<double> wape_1mo;
    std::optional<double> wape_3mo;
    int n_monthly = 0;
    int n_quarterly = 0;
    int importance_rank = 0;
    SeriesClass series_class;
    int failed_origins = 0;

    const std::optional<double>& metric(Metric m) const { return m == Metric::wape_1mo ? wape_1mo : wape_3mo; }
};

/// Backtest results joined with importance and series class. (key, model) pairs are unique and
/// rows are ordered by key, then by model in the order the forecasters were configured.
struct ResultTable {
    std::vector<ResultRow> rows;

    /// Distinct model ids in first-appearance order.
    std::vector<std::string> models() const;
    bool empty() const { return rows.empty(); }
};

/// Columns: item,org,model,wape1mo,wape3mo,n_monthly,n_quarterly,importance_rank,history_class,
/// activity,history_months,failed_origins. Undefined WAPE is written as NA.
void write_results_csv(std::ostream& out, const ResultTable& table);

/// Reads the format written by write_results_csv. The two trailing columns are optional.
/// Throws ParseError on malformed rows or duplicate (key, model) pairs.
ResultTable read_results_csv(std::istream& in);

}  // namespace arena

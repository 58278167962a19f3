#pragma once

#include "arena/backtest.hpp"
#include "arena/calendar.hpp"
#include "arena/result_table.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arena {

/// Empirical CDF: each point is (threshold, fraction of values <= threshold) at every distinct value.
struct CdfCurve {
    std::vector<std::pair<double, double>> points;
    int included = 0;  // rows with a defined metric
    int excluded = 0;  // rows in scope whose metric is undefined

    double at(double threshold) const;
};

/// CDF of `metric` for `model` over rows whose importance rank <= top_k.
/// Throws std::invalid_argument when no row in scope has a defined value.
CdfCurve cumulative_histogram(const ResultTable& table, const std::string& model, Metric metric, int top_k);

struct BestOfAllShare {
    int top_k = 0;
    std::map<std::string, double> shares;  // every model in the table, winners or not
    int included_pairs = 0;
    int excluded_pairs = 0;  // (item, org) pairs where no model has a defined metric
};

/// Per (item, org) with rank <= top_k, the model with the smallest metric wins; exact ties go to
/// the lexicographically smallest model id.
BestOfAllShare best_of_all(const ResultTable& table, Metric metric, int top_k);

struct ScatterPoint {
    int rank = 0;
    std::string model;
    double value = 0.0;
};

struct TrendLine {
    std::string model;
    double slope = 0.0;
    double intercept = 0.0;
    int points = 0;
};

struct ImportanceScatter {
    std::vector<ScatterPoint> points;
    std::vector<TrendLine> trends;  // least-squares line of metric on rank, per model with data
};

ImportanceScatter importance_scatter(const ResultTable& table, Metric metric);

/// (long-history rows, short-history rows), preserving row order.
std::pair<ResultTable, ResultTable> history_split(const ResultTable& table);

/// Pooled WAPE over every sample of `model` in `details`.
std::optional<double> pooled_wape(const std::vector<BacktestResult>& details, const std::string& model, Metric metric);

struct WindowDelta {
    std::string model;
    std::optional<double> wape_a;
    std::optional<double> wape_b;
    std::optional<double> delta;  // b - a
};

struct WindowComparison {
    MonthRange window_a;
    MonthRange window_b;
    Metric metric = Metric::wape_1mo;
    SuiteOutput run_a;
    SuiteOutput run_b;
    std::vector<WindowDelta> deltas;
};

/// Runs the suite twice with test origins restricted to each window.
/// Throws NothingToBacktest when a window leaves no backtestable series.
WindowComparison window_comparison(const DatasetBundle& bundle, const std::vector<ForecasterSpec>& specs,
                                   const std::vector<ImportanceEntry>& importance, const MonthRange& window_a,
                                   const MonthRange& window_b, Metric metric, SuiteOptions options = {});

}  // namespace arena

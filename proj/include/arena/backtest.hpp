#pragma once

#include "arena/calendar.hpp"
#include "arena/dataset_io.hpp"
#include "arena/forecast.hpp"
#include "arena/metrics.hpp"
#include "arena/portfolio.hpp"
#include "arena/result_table.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace arena {

inline constexpr int kMinTrainingMonths = 18;
inline constexpr int kMinBacktestSteps = 6;
inline constexpr int kMaxBacktestSteps = 12;
inline constexpr int kQuarterMonths = 3;

/// Raised when a suite has no backtestable series. The CLI maps this to exit code 3.
class NothingToBacktest : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// min(12, length - 18), or empty when the series is shorter than 18 + 6 months.
std::optional<int> backtest_steps(std::size_t series_length);

/// Rolling forecast origins, oldest first. Each origin is the last month of its training data.
struct BacktestPlan {
    int steps = 0;
    std::vector<YearMonth> origins;
    std::size_t series_length = 0;
    /// Quarterly samples need origin + 3 at or before this month.
    YearMonth last_scored;
};

/// Without a window: the last `backtest_steps` origins before the series end. With a window:
/// origins whose first forecast month lies in the window and that leave >= 18 training months,
/// latest 12 kept, at least 6 required. Empty when the series is not backtestable.
std::optional<BacktestPlan> make_plan(const MonthlySeries& series, const std::optional<MonthRange>& window = std::nullopt);

struct OriginSample {
    YearMonth origin;
    double actual_1mo = 0.0;
    double forecast_1mo = 0.0;
    std::optional<double> actual_3mo;
    std::optional<double> forecast_3mo;

    bool operator==(const OriginSample&) const = default;
};

struct OriginFailure {
    YearMonth origin;
    std::string message;
};

struct BacktestResult {
    SeriesKey key;
    std::string model;
    std::optional<double> wape_1mo;
    std::optional<double> wape_3mo;
    int n_monthly = 0;
    int n_quarterly = 0;
    std::vector<OriginSample> per_origin;
    std::vector<OriginFailure> failures;
};

/// Snapshots of one bundle truncated at each requested origin, built once and shared.
class SnapshotCache {
public:
    explicit SnapshotCache(const DatasetBundle& bundle) : bundle_(bundle) {}

    const OriginSnapshot& at(YearMonth origin) const;
    const DatasetBundle& bundle() const { return bundle_; }

private:
    const DatasetBundle& bundle_;
    mutable std::mutex mutex_;
    mutable std::map<YearMonth, std::unique_ptr<const OriginSnapshot>> snapshots_;
};

/// Known unit prices of `series` for origin+1 ... origin+horizon.
std::vector<double> future_prices(const MonthlySeries& series, YearMonth origin, int horizon);

/// Retrains at `origin` on data up to and including it, then forecasts `horizon` months.
Forecast forecast_at_origin(const Forecaster& forecaster, const SnapshotCache& snapshots, const MonthlySeries& series,
                            YearMonth origin, int horizon);

/// Rolling-origin evaluation of one series. A fit failure at an origin is recorded in
/// `failures` and that origin contributes no samples. Throws std::invalid_argument when the
/// series is not backtestable.
BacktestResult run_backtest(const MonthlySeries& series, const Forecaster& forecaster, const SnapshotCache& snapshots,
                            const std::optional<MonthRange>& window = std::nullopt);

BacktestResult run_backtest(const MonthlySeries& series, const ForecasterSpec& spec, const DatasetBundle& bundle,
                            const std::optional<MonthRange>& window = std::nullopt);

struct SuiteOptions {
    int parallelism = 1;  // 0 = hardware concurrency
    int activity_window = 3;
    std::optional<MonthRange> window;
};

struct SkippedSeries {
    SeriesKey key;
    int history_months = 0;
    std::string reason;
};

struct SuiteOutput {
    ResultTable table;
    std::vector<BacktestResult> details;  // parallel to table.rows
    std::vector<SkippedSeries> skipped;
};

/// Backtests every (series, spec) pair of `portfolio`. Output is identical for every
/// parallelism setting. Throws NothingToBacktest when no series has a plan.
SuiteOutput run_suite(const DatasetBundle& portfolio, const std::vector<ForecasterSpec>& specs,
                      const std::vector<ImportanceEntry>& importance, const SuiteOptions& options = {});

/// Per-origin samples: item,org,model,origin,actual_1mo,forecast_1mo,actual_3mo,forecast_3mo.
void write_detail_csv(std::ostream& out, const SuiteOutput& output);
void write_skipped_csv(std::ostream& out, const std::vector<SkippedSeries>& skipped);

}  // namespace arena

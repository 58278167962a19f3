#pragma once

#include "arena/calendar.hpp"
#include "arena/dataset_io.hpp"
#include "arena/forecast.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace arena {

/// One linear autoregressive model shared by every series. Each series is divided by its own
/// scale (mean training quantity) so that series of very different volume share weights.
/// Features per row: L lags of the scaled signal, 12 month-of-year indicators, the relative
/// price p / mean(p) - 1, and an intercept.
struct GlobalAROptions {
    int lags = 12;
    double ridge_lambda = 1e-4;
    std::optional<double> quantile;  // pinball loss at this quantile instead of squared error
    int epochs = 500;
    double step = 0.1;

    static GlobalAROptions from_spec(const ForecasterSpec& spec);
};

inline constexpr double kScaleFloor = 1e-6;

struct GlobalARParams {
    int lags = 12;
    std::vector<double> weights;  // lags, month indicators (Jan..Dec), price, intercept
    std::map<SeriesKey, double> scales;
    std::map<SeriesKey, double> price_refs;
    std::optional<double> quantile;
    std::size_t training_rows = 0;

    std::size_t month_offset() const { return static_cast<std::size_t>(lags); }
    std::size_t price_offset() const { return static_cast<std::size_t>(lags) + 12; }
    std::size_t intercept_offset() const { return static_cast<std::size_t>(lags) + 13; }
};

/// max(mean of quantities, kScaleFloor).
double series_scale(std::span<const double> quantities);

/// Fits on every series with at least lags + 1 months; shorter series are skipped. Throws
/// std::invalid_argument when no series qualifies.
GlobalARParams fit_global_ar(const std::map<SeriesKey, MonthlySeries>& training, const GlobalAROptions& options = {});

/// Recursive multi-step forecast from the last `lags` months at or before `origin`. Months after
/// `origin` are never read. Uses the fitted scale for the key unless `explicit_scale` is given.
Forecast predict_global_ar(const GlobalARParams& params, const MonthlySeries& series, YearMonth origin, int horizon,
                           std::span<const double> future_prices, std::optional<double> explicit_scale = std::nullopt);

}  // namespace arena

#pragma once

#include "arena/calendar.hpp"
#include "arena/dataset_io.hpp"
#include "arena/forecast.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace arena {

/// Per-series additive model y(t) = trend(t) + seasonality(t) + holidays(t) + beta * price(t),
/// with t in months since the first training month.
struct ProphetLiteOptions {
    int fourier_order = 3;
    int max_changepoints = 5;                // C = min(max_changepoints, n / 6)
    std::optional<int> n_changepoints;       // overrides the rule above
    double changepoint_range = 0.8;          // changepoints lie in the first 80% of training months
    double ridge_lambda = 1.0;               // on deltas, Fourier, holiday and price coefficients
    double period = 12.0;

    static ProphetLiteOptions from_spec(const ForecasterSpec& spec);
};

inline constexpr std::size_t kMinProphetTrainingMonths = 18;

struct ProphetLiteParams {
    double k = 0.0;  // base slope per month
    double m = 0.0;  // offset
    std::vector<double> changepoints;
    std::vector<double> deltas;
    std::vector<double> fourier_a;  // cosine coefficients, n = 1..N
    std::vector<double> fourier_b;  // sine coefficients
    std::map<std::string, double> holiday_effects;
    double beta_price = 0.0;
    double price_mean = 0.0;  // price standardization over the training window
    double price_scale = 0.0;  // 0 when training prices were constant
    YearMonth train_origin;
    int n_train = 0;
    double period = 12.0;
};

/// k*t + m + sum_j delta_j * max(0, t - s_j).
double trend_value(double k, double m, std::span<const double> changepoints, std::span<const double> deltas, double t);

/// [cos(2 pi n t / P), sin(2 pi n t / P)] for n = 1..order, interleaved.
std::vector<double> fourier_features(double t, int order, double period = 12.0);

/// Number of configured days of each holiday inside `month`; every calendar name is present.
std::map<std::string, int> holiday_features(YearMonth month, const HolidayCalendar& calendar);

/// Changepoint month indices for an n-month training window.
std::vector<double> place_changepoints(int n, const ProphetLiteOptions& options);

/// Ridge fit of the additive model. Throws std::invalid_argument for series shorter than 18 months.
ProphetLiteParams fit_prophet_lite(const MonthlySeries& series, const HolidayCalendar& calendar,
                                   const ProphetLiteOptions& options = {});

/// Raw (unclamped) model value at month `month` with unit price `price`.
double prophet_lite_value(const ProphetLiteParams& params, YearMonth month, double price, const HolidayCalendar& calendar);

Forecast predict_prophet_lite(const ProphetLiteParams& params, YearMonth origin, int horizon,
                              std::span<const double> future_prices, const HolidayCalendar& calendar);

}  // namespace arena

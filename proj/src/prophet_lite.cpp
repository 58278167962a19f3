#include "arena/prophet_lite.hpp"

#include "arena/linear_models.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace arena {

ProphetLiteOptions ProphetLiteOptions::from_spec(const ForecasterSpec& spec) {
    ProphetLiteOptions o;
    o.fourier_order = spec.get_int_or("fourier_order", o.fourier_order);
    o.max_changepoints = spec.get_int_or("max_changepoints", o.max_changepoints);
    if (spec.get("n_changepoints")) {
        o.n_changepoints = spec.get_int_or("n_changepoints", 0);
    }
    o.changepoint_range = spec.get_or("changepoint_range", o.changepoint_range);
    o.ridge_lambda = spec.get_or("ridge_lambda", o.ridge_lambda);
    if (o.fourier_order < 1 || o.max_changepoints < 0 || (o.n_changepoints && *o.n_changepoints < 0) ||
        !(o.changepoint_range > 0.0 && o.changepoint_range <= 1.0) || o.ridge_lambda < 0.0) {
        throw std::invalid_argument("invalid prophet_lite hyperparameters for '" + spec.name() + "'");
    }
    return o;
}

double trend_value(double k, double m, std::span<const double> changepoints, std::span<const double> deltas, double t) {
    if (changepoints.size() != deltas.size()) {
        throw std::invalid_argument("trend_value: changepoints and deltas differ in length");
    }
    double value = k * t + m;
    for (std::size_t j = 0; j < changepoints.size(); ++j) {
        value += deltas[j] * std::max(0.0, t - changepoints[j]);
    }
    return value;
}

std::vector<double> fourier_features(double t, int order, double period) {
    if (order < 1 || !(period > 0.0)) {
        throw std::invalid_argument("fourier_features: order must be >= 1 and period > 0");
    }
    std::vector<double> out;
    out.reserve(2 * static_cast<std::size_t>(order));
    for (int n = 1; n <= order; ++n) {
        // reduce the angle modulo one period first so features(t) == features(t + P) to rounding
        const double phase = std::fmod(static_cast<double>(n) * t, period);
        const double angle = 2.0 * std::numbers::pi * phase / period;
        out.push_back(std::cos(angle));
        out.push_back(std::sin(angle));
    }
    return out;
}

std::map<std::string, int> holiday_features(YearMonth month, const HolidayCalendar& calendar) {
    std::map<std::string, int> counts;
    for (const auto& name : calendar.names()) {
        counts[name] = 0;
    }
    const Date first{month.year(), month.month(), 1};
    for (auto it = calendar.entries.lower_bound(Holiday{first, ""}); it != calendar.entries.end(); ++it) {
        if (month_of(it->date) != month) {
            break;
        }
        ++counts[it->name];
    }
    return counts;
}

std::vector<double> place_changepoints(int n, const ProphetLiteOptions& options) {
    const int count = options.n_changepoints.value_or(std::min(options.max_changepoints, n / 6));
    const int span = static_cast<int>(std::floor(static_cast<double>(n) * options.changepoint_range));
    std::vector<double> out;
    if (count <= 0 || span < 2) {
        return out;
    }
    for (int j = 1; j <= count; ++j) {
        const double position = std::round(static_cast<double>(span - 1) * j / count);
        if (position > 0.0 && (out.empty() || position > out.back())) {
            out.push_back(position);
        }
    }
    return out;
}

namespace {

struct Design {
    std::vector<std::string> holiday_names;
    bool use_price = false;
};

std::size_t column_count(const ProphetLiteParams& p, const Design& d, int order) {
    return 2 + p.changepoints.size() + 2 * static_cast<std::size_t>(order) + d.holiday_names.size() + (d.use_price ? 1 : 0);
}

}  // namespace

ProphetLiteParams fit_prophet_lite(const MonthlySeries& series, const HolidayCalendar& calendar,
                                   const ProphetLiteOptions& options) {
    if (series.size() < kMinProphetTrainingMonths) {
        throw std::invalid_argument("series " + series.key.to_string() + " too short for prophet_lite (" +
                                    std::to_string(series.size()) + " < 18 months)");
    }
    const int n = static_cast<int>(series.size());
    ProphetLiteParams params;
    params.train_origin = series.start;
    params.n_train = n;
    params.period = options.period;
    params.changepoints = place_changepoints(n, options);

    double sum = 0.0;
    for (double p : series.prices) sum += p;
    params.price_mean = sum / n;
    double ss = 0.0;
    for (double p : series.prices) ss += (p - params.price_mean) * (p - params.price_mean);
    const double sd = std::sqrt(ss / n);
    params.price_scale = sd > 1e-12 * std::max(1.0, std::abs(params.price_mean)) ? sd : 0.0;

    Design design;
    design.use_price = params.price_scale > 0.0;
    std::vector<std::map<std::string, int>> holiday_counts(static_cast<std::size_t>(n));
    std::map<std::string, int> totals;
    for (int i = 0; i < n; ++i) {
        holiday_counts[i] = holiday_features(series.start + i, calendar);
        for (const auto& [name, c] : holiday_counts[i]) totals[name] += c;
    }
    for (const auto& [name, c] : totals) {
        if (c > 0) design.holiday_names.push_back(name);
    }

    const int order = options.fourier_order;
    const auto cols = static_cast<Eigen::Index>(column_count(params, design, order));
    Eigen::MatrixXd X(n, cols);
    Eigen::VectorXd y(n);
    Eigen::VectorXd penalty = Eigen::VectorXd::Constant(cols, options.ridge_lambda);
    penalty[0] = 0.0;
    penalty[1] = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = i;
        Eigen::Index c = 0;
        X(i, c++) = t;
        X(i, c++) = 1.0;
        for (double s : params.changepoints) X(i, c++) = std::max(0.0, t - s);
        for (double f : fourier_features(t, order, options.period)) X(i, c++) = f;
        for (const auto& name : design.holiday_names) X(i, c++) = holiday_counts[i].at(name);
        if (design.use_price) X(i, c++) = (series.prices[i] - params.price_mean) / params.price_scale;
        y[i] = series.quantities[i];
    }

    const Eigen::VectorXd w = solve_ridge(X, y, penalty);
    Eigen::Index c = 0;
    params.k = w[c++];
    params.m = w[c++];
    for (std::size_t j = 0; j < params.changepoints.size(); ++j) params.deltas.push_back(w[c++]);
    for (int j = 0; j < order; ++j) {
        params.fourier_a.push_back(w[c++]);
        params.fourier_b.push_back(w[c++]);
    }
    for (const auto& name : design.holiday_names) params.holiday_effects[name] = w[c++];
    if (design.use_price) params.beta_price = w[c++];
    return params;
}

double prophet_lite_value(const ProphetLiteParams& params, YearMonth month, double price, const HolidayCalendar& calendar) {
    const double t = static_cast<double>(month - params.train_origin);
    double value = trend_value(params.k, params.m, params.changepoints, params.deltas, t);
    const auto features = fourier_features(t, static_cast<int>(params.fourier_a.size()), params.period);
    for (std::size_t n = 0; n < params.fourier_a.size(); ++n) {
        value += params.fourier_a[n] * features[2 * n] + params.fourier_b[n] * features[2 * n + 1];
    }
    if (!params.holiday_effects.empty()) {
        for (const auto& [name, count] : holiday_features(month, calendar)) {
            const auto it = params.holiday_effects.find(name);
            if (it != params.holiday_effects.end()) value += it->second * count;
        }
    }
    if (params.price_scale > 0.0) {
        value += params.beta_price * (price - params.price_mean) / params.price_scale;
    }
    return value;
}

Forecast predict_prophet_lite(const ProphetLiteParams& params, YearMonth origin, int horizon,
                              std::span<const double> future_prices, const HolidayCalendar& calendar) {
    if (horizon < 1) {
        throw std::invalid_argument("horizon must be positive");
    }
    if (future_prices.size() != static_cast<std::size_t>(horizon)) {
        throw std::invalid_argument("future_prices length " + std::to_string(future_prices.size()) +
                                    " does not match horizon " + std::to_string(horizon));
    }
    if (origin < params.train_origin) {
        throw std::invalid_argument("origin precedes the training window");
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(horizon));
    for (int h = 1; h <= horizon; ++h) {
        values.push_back(prophet_lite_value(params, origin + h, future_prices[h - 1], calendar));
    }
    return make_forecast(origin, std::move(values));
}

}  // namespace arena

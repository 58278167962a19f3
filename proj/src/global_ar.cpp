#include "arena/global_ar.hpp"

#include "arena/linear_models.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace arena {

GlobalAROptions GlobalAROptions::from_spec(const ForecasterSpec& spec) {
    GlobalAROptions o;
    o.lags = spec.get_int_or("lags", o.lags);
    o.ridge_lambda = spec.get_or("ridge_lambda", o.ridge_lambda);
    o.quantile = spec.get("quantile");
    o.epochs = spec.get_int_or("epochs", o.epochs);
    o.step = spec.get_or("step", o.step);
    if (o.lags < 1 || !(o.ridge_lambda > 0.0) || o.epochs < 0 || !(o.step > 0.0) ||
        (o.quantile && !(*o.quantile > 0.0 && *o.quantile < 1.0))) {
        throw std::invalid_argument("invalid global_ar hyperparameters for '" + spec.name() + "'");
    }
    return o;
}

double series_scale(std::span<const double> quantities) {
    if (quantities.empty()) {
        return kScaleFloor;
    }
    const double mean = std::accumulate(quantities.begin(), quantities.end(), 0.0) / static_cast<double>(quantities.size());
    return std::max(mean, kScaleFloor);
}

namespace {

double price_reference(std::span<const double> prices) {
    return std::accumulate(prices.begin(), prices.end(), 0.0) / static_cast<double>(prices.size());
}

/// Writes one feature row: `lag_window` holds z_{t-1}, z_{t-2}, ... (most recent first).
template <typename Row>
void fill_row(Row&& row, const GlobalARParams& p, std::span<const double> lag_window, YearMonth month,
              double relative_price) {
    for (int l = 0; l < p.lags; ++l) row[l] = lag_window[static_cast<std::size_t>(l)];
    for (int mo = 0; mo < 12; ++mo) row[static_cast<Eigen::Index>(p.month_offset()) + mo] = 0.0;
    row[static_cast<Eigen::Index>(p.month_offset()) + month.month() - 1] = 1.0;
    row[static_cast<Eigen::Index>(p.price_offset())] = relative_price;
    row[static_cast<Eigen::Index>(p.intercept_offset())] = 1.0;
}

}  // namespace

GlobalARParams fit_global_ar(const std::map<SeriesKey, MonthlySeries>& training, const GlobalAROptions& options) {
    GlobalARParams params;
    params.lags = options.lags;
    params.quantile = options.quantile;
    const auto L = static_cast<std::size_t>(options.lags);

    std::size_t rows = 0;
    for (const auto& [key, s] : training) {
        if (s.size() >= L + 1) {
            rows += s.size() - L;
            params.scales[key] = series_scale(s.quantities);
            params.price_refs[key] = price_reference(s.prices);
        }
    }
    if (rows == 0) {
        throw std::invalid_argument("no series long enough for global_ar (need " + std::to_string(L + 1) + " months)");
    }

    const auto cols = static_cast<Eigen::Index>(L + 14);
    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows), cols);
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows));
    Eigen::Index r = 0;
    std::vector<double> z;
    std::vector<double> lag_window(L);
    for (const auto& [key, s] : training) {
        if (s.size() < L + 1) continue;
        const double scale = params.scales.at(key);
        const double pref = params.price_refs.at(key);
        z.resize(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) z[i] = s.quantities[i] / scale;
        for (std::size_t t = L; t < s.size(); ++t) {
            for (std::size_t l = 0; l < L; ++l) lag_window[l] = z[t - 1 - l];
            fill_row(X.row(r), params, lag_window, s.start + static_cast<std::int64_t>(t), s.prices[t] / pref - 1.0);
            y[r] = z[t];
            ++r;
        }
    }
    params.training_rows = rows;

    // mean squared error + lambda ||w||^2  <=>  ||y - Xw||^2 + rows * lambda ||w||^2
    const Eigen::VectorXd penalty = Eigen::VectorXd::Constant(cols, options.ridge_lambda * static_cast<double>(rows));
    Eigen::VectorXd w = solve_ridge(X, y, penalty);
    if (options.quantile) {
        w = fit_pinball(X, y, *options.quantile, options.ridge_lambda, w,
                        PinballSchedule{options.epochs, options.step, 1e-8});
    }
    params.weights.assign(w.data(), w.data() + w.size());
    return params;
}

Forecast predict_global_ar(const GlobalARParams& params, const MonthlySeries& series, YearMonth origin, int horizon,
                           std::span<const double> future_prices, std::optional<double> explicit_scale) {
    if (horizon < 1) {
        throw std::invalid_argument("horizon must be positive");
    }
    if (future_prices.size() != static_cast<std::size_t>(horizon)) {
        throw std::invalid_argument("future_prices length does not match horizon");
    }
    if (params.weights.size() != static_cast<std::size_t>(params.lags) + 14) {
        throw std::invalid_argument("global_ar weights have the wrong length");
    }
    if (!series.covers(origin)) {
        throw std::invalid_argument("origin " + origin.to_string() + " outside series " + series.key.to_string());
    }
    const auto L = static_cast<std::size_t>(params.lags);
    const std::size_t observed = series.offset(origin) + 1;
    if (observed < L) {
        throw std::invalid_argument("series " + series.key.to_string() + " has fewer than " + std::to_string(L) +
                                    " months at origin");
    }
    const std::span<const double> history(series.quantities.data(), observed);
    const std::span<const double> history_prices(series.prices.data(), observed);

    double scale = 0.0;
    double pref = 0.0;
    if (explicit_scale) {
        scale = std::max(*explicit_scale, kScaleFloor);
        pref = price_reference(history_prices);
    } else {
        const auto it = params.scales.find(series.key);
        if (it == params.scales.end()) {
            throw std::invalid_argument("no scale for series " + series.key.to_string() + " (not in training set)");
        }
        scale = it->second;
        pref = params.price_refs.at(series.key);
    }

    // window[0] is the most recent scaled value
    std::vector<double> window(L);
    for (std::size_t l = 0; l < L; ++l) window[l] = history[observed - 1 - l] / scale;

    const Eigen::Map<const Eigen::VectorXd> w(params.weights.data(), static_cast<Eigen::Index>(params.weights.size()));
    Eigen::VectorXd row(w.size());
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(horizon));
    for (int h = 1; h <= horizon; ++h) {
        fill_row(row, params, window, origin + h, future_prices[static_cast<std::size_t>(h - 1)] / pref - 1.0);
        const double z = row.dot(w);
        values.push_back(z * scale);
        window.insert(window.begin(), z);
        window.pop_back();
    }
    return make_forecast(origin, std::move(values), params.quantile);
}

}  // namespace arena

#include "arena/forecast.hpp"

#include "arena/global_ar.hpp"
#include "arena/prophet_lite.hpp"
#include "arena/seasonal_naive.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <future>
#include <mutex>
#include <stdexcept>

namespace arena {

std::string to_string(ForecasterKind kind) {
    switch (kind) {
        case ForecasterKind::prophet_lite: return "prophet_lite";
        case ForecasterKind::global_ar: return "global_ar";
        case ForecasterKind::seasonal_naive: return "seasonal_naive";
    }
    return "unknown";
}

ForecasterKind parse_forecaster_kind(const std::string& text) {
    if (text == "prophet_lite") return ForecasterKind::prophet_lite;
    if (text == "global_ar") return ForecasterKind::global_ar;
    if (text == "seasonal_naive") return ForecasterKind::seasonal_naive;
    throw std::invalid_argument("unknown forecaster kind '" + text + "'");
}

const std::vector<std::string>& ForecasterSpec::allowed_keys(ForecasterKind kind) {
    static const std::vector<std::string> prophet{"changepoint_range", "fourier_order", "max_changepoints",
                                                  "n_changepoints", "ridge_lambda"};
    static const std::vector<std::string> global{"epochs", "lags", "quantile", "ridge_lambda", "step"};
    static const std::vector<std::string> naive{"period"};
    switch (kind) {
        case ForecasterKind::prophet_lite: return prophet;
        case ForecasterKind::global_ar: return global;
        case ForecasterKind::seasonal_naive: return naive;
    }
    return naive;
}

ForecasterSpec::ForecasterSpec(std::string name, ForecasterKind kind, std::map<std::string, double> hyperparameters,
                               std::uint64_t seed)
    : name_(std::move(name)), kind_(kind), hyperparameters_(std::move(hyperparameters)), seed_(seed) {
    const bool valid_name = !name_.empty() && std::all_of(name_.begin(), name_.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
    if (!valid_name) {
        throw std::invalid_argument("forecaster name '" + name_ + "' must be non-empty [A-Za-z0-9_.-]");
    }
    const auto& allowed = allowed_keys(kind_);
    for (const auto& [key, value] : hyperparameters_) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw std::invalid_argument("unknown hyperparameter '" + key + "' for " + to_string(kind_) + " forecaster '" +
                                        name_ + "'");
        }
        if (!std::isfinite(value)) {
            throw std::invalid_argument("hyperparameter '" + key + "' is not finite");
        }
    }
}

std::vector<ForecasterSpec> ForecasterSpec::defaults() {
    return {prophet_lite(), global_ar(), global_ar_q(), seasonal_naive()};
}

std::optional<double> ForecasterSpec::get(const std::string& key) const {
    const auto it = hyperparameters_.find(key);
    if (it == hyperparameters_.end()) return std::nullopt;
    return it->second;
}

double ForecasterSpec::get_or(const std::string& key, double fallback) const { return get(key).value_or(fallback); }

int ForecasterSpec::get_int_or(const std::string& key, int fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    if (std::floor(*v) != *v || std::abs(*v) > 1e9) {
        throw std::invalid_argument("hyperparameter '" + key + "' must be an integer");
    }
    return static_cast<int>(*v);
}

Forecast make_forecast(YearMonth origin, std::vector<double> values, std::optional<double> quantile) {
    for (double& v : values) v = std::max(0.0, v);
    Forecast f;
    f.origin = origin;
    f.horizon = static_cast<int>(values.size());
    f.values = std::move(values);
    f.quantile = quantile;
    return f;
}

OriginSnapshot make_snapshot(const DatasetBundle& bundle, YearMonth origin) {
    OriginSnapshot snap;
    snap.origin = origin;
    snap.holidays = bundle.holidays;
    for (const auto& [key, s] : bundle.series) {
        if (s.start > origin) continue;
        snap.history.emplace(key, s.covers(origin) ? s.truncated(origin) : s);
    }
    return snap;
}

namespace {

const MonthlySeries& history_of(const OriginSnapshot& snapshot, const SeriesKey& key) {
    const auto it = snapshot.history.find(key);
    if (it == snapshot.history.end()) {
        throw std::invalid_argument("series " + key.to_string() + " has no data at origin " +
                                    snapshot.origin.to_string());
    }
    if (it->second.end() != snapshot.origin) {
        throw std::invalid_argument("series " + key.to_string() + " ends before origin " + snapshot.origin.to_string());
    }
    return it->second;
}

class ProphetLiteForecaster final : public Forecaster {
public:
    explicit ProphetLiteForecaster(const ForecasterSpec& spec)
        : Forecaster(spec), options_(ProphetLiteOptions::from_spec(spec)) {}

    Forecast forecast(const OriginSnapshot& snapshot, const SeriesKey& key, std::span<const double> future_prices,
                      int horizon) const override {
        const auto& history = history_of(snapshot, key);
        const auto params = fit_prophet_lite(history, snapshot.holidays, options_);
        return predict_prophet_lite(params, snapshot.origin, horizon, future_prices, snapshot.holidays);
    }

private:
    ProphetLiteOptions options_;
};

class GlobalARForecaster final : public Forecaster {
public:
    explicit GlobalARForecaster(const ForecasterSpec& spec)
        : Forecaster(spec), options_(GlobalAROptions::from_spec(spec)) {}

    Forecast forecast(const OriginSnapshot& snapshot, const SeriesKey& key, std::span<const double> future_prices,
                      int horizon) const override {
        const auto& history = history_of(snapshot, key);
        const auto params = fitted_at(snapshot);
        return predict_global_ar(*params, history, snapshot.origin, horizon, future_prices);
    }

private:
    using Fit = std::shared_ptr<const GlobalARParams>;

    // One pooled fit per origin, shared by every series evaluated at that origin.
    Fit fitted_at(const OriginSnapshot& snapshot) const {
        std::shared_future<Fit> pending;
        std::promise<Fit> promise;
        bool owner = false;
        {
            std::lock_guard lock(mutex_);
            auto it = cache_.find(snapshot.origin);
            if (it == cache_.end()) {
                pending = promise.get_future().share();
                cache_.emplace(snapshot.origin, pending);
                owner = true;
            } else {
                pending = it->second;
            }
        }
        if (owner) {
            try {
                promise.set_value(std::make_shared<const GlobalARParams>(fit_global_ar(snapshot.history, options_)));
            } catch (...) {
                promise.set_exception(std::current_exception());
            }
        }
        return pending.get();
    }

    GlobalAROptions options_;
    mutable std::mutex mutex_;
    mutable std::map<YearMonth, std::shared_future<Fit>> cache_;
};

class SeasonalNaiveForecaster final : public Forecaster {
public:
    explicit SeasonalNaiveForecaster(const ForecasterSpec& spec)
        : Forecaster(spec), period_(spec.get_int_or("period", 12)) {
        if (period_ < 1) throw std::invalid_argument("seasonal_naive period must be positive");
    }

    Forecast forecast(const OriginSnapshot& snapshot, const SeriesKey& key, std::span<const double> /*future_prices*/,
                      int horizon) const override {
        return seasonal_naive(history_of(snapshot, key), snapshot.origin, horizon, period_);
    }

private:
    int period_;
};

}  // namespace

std::unique_ptr<Forecaster> make_forecaster(const ForecasterSpec& spec) {
    switch (spec.kind()) {
        case ForecasterKind::prophet_lite: return std::make_unique<ProphetLiteForecaster>(spec);
        case ForecasterKind::global_ar: return std::make_unique<GlobalARForecaster>(spec);
        case ForecasterKind::seasonal_naive: return std::make_unique<SeasonalNaiveForecaster>(spec);
    }
    throw std::invalid_argument("unknown forecaster kind");
}

}  // namespace arena

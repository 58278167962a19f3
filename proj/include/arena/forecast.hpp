#pragma once

#include "arena/calendar.hpp"
#include "arena/dataset_io.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace arena {

enum class ForecasterKind { prophet_lite, global_ar, seasonal_naive };

std::string to_string(ForecasterKind kind);
ForecasterKind parse_forecaster_kind(const std::string& text);

/// Named forecaster configuration. `name` is the model id used in every report.
class ForecasterSpec {
public:
    /// Throws std::invalid_argument for hyperparameter keys the kind does not know.
    ForecasterSpec(std::string name, ForecasterKind kind, std::map<std::string, double> hyperparameters = {},
                   std::uint64_t seed = 0);

    static ForecasterSpec prophet_lite(std::uint64_t seed = 0) { return {"prophet_lite", ForecasterKind::prophet_lite, {}, seed}; }
    static ForecasterSpec global_ar(std::uint64_t seed = 0) { return {"global_ar", ForecasterKind::global_ar, {}, seed}; }
    static ForecasterSpec global_ar_q(double quantile = 0.5, std::uint64_t seed = 0) {
        return {"global_ar_q", ForecasterKind::global_ar, {{"quantile", quantile}}, seed};
    }
    static ForecasterSpec seasonal_naive() { return {"seasonal_naive", ForecasterKind::seasonal_naive}; }

    /// prophet_lite, global_ar, global_ar_q (q = 0.5) and seasonal_naive.
    static std::vector<ForecasterSpec> defaults();

    const std::string& name() const { return name_; }
    ForecasterKind kind() const { return kind_; }
    const std::map<std::string, double>& hyperparameters() const { return hyperparameters_; }
    std::uint64_t seed() const { return seed_; }

    std::optional<double> get(const std::string& key) const;
    double get_or(const std::string& key, double fallback) const;
    /// Integral hyperparameter; throws std::invalid_argument if the stored value is not an integer.
    int get_int_or(const std::string& key, int fallback) const;

    static const std::vector<std::string>& allowed_keys(ForecasterKind kind);

private:
    std::string name_;
    ForecasterKind kind_;
    std::map<std::string, double> hyperparameters_;
    std::uint64_t seed_;
};

/// Point forecast for origin+1 ... origin+horizon. Values are never negative.
struct Forecast {
    YearMonth origin;
    int horizon = 0;
    std::vector<double> values;
    std::optional<double> quantile;
};

/// Clamps every value at zero.
Forecast make_forecast(YearMonth origin, std::vector<double> values, std::optional<double> quantile = std::nullopt);

/// Everything a forecaster may see at one backtest origin: every series truncated at `origin`
/// (series starting later are absent) and the holiday calendar.
struct OriginSnapshot {
    YearMonth origin;
    std::map<SeriesKey, MonthlySeries> history;
    HolidayCalendar holidays;
};

/// Builds a snapshot; no quantity or price dated after `origin` is copied.
OriginSnapshot make_snapshot(const DatasetBundle& bundle, YearMonth origin);

/// Common interface the backtest engine drives. Implementations are safe to call concurrently.
/// An instance may cache per-origin fits, so it must only be used with snapshots of one bundle.
class Forecaster {
public:
    explicit Forecaster(ForecasterSpec spec) : spec_(std::move(spec)) {}
    virtual ~Forecaster() = default;

    Forecaster(const Forecaster&) = delete;
    Forecaster& operator=(const Forecaster&) = delete;

    const ForecasterSpec& spec() const { return spec_; }

    /// `future_prices` are the known unit prices for origin+1 ... origin+horizon.
    virtual Forecast forecast(const OriginSnapshot& snapshot, const SeriesKey& key, std::span<const double> future_prices,
                              int horizon) const = 0;

private:
    ForecasterSpec spec_;
};

std::unique_ptr<Forecaster> make_forecaster(const ForecasterSpec& spec);

}  // namespace arena

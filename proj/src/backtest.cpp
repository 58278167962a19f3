#include "arena/backtest.hpp"

#include "arena/format.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <thread>

namespace arena {

std::optional<int> backtest_steps(std::size_t series_length) {
    if (series_length < static_cast<std::size_t>(kMinTrainingMonths + kMinBacktestSteps)) {
        return std::nullopt;
    }
    return static_cast<int>(std::min<std::size_t>(kMaxBacktestSteps, series_length - kMinTrainingMonths));
}

std::optional<BacktestPlan> make_plan(const MonthlySeries& series, const std::optional<MonthRange>& window) {
    if (series.size() == 0) {
        return std::nullopt;
    }
    BacktestPlan plan;
    plan.series_length = series.size();
    plan.last_scored = window ? std::min(series.end(), window->last) : series.end();
    const YearMonth first_origin = series.start + (kMinTrainingMonths - 1);
    for (YearMonth o = first_origin; o + 1 <= series.end(); o += 1) {
        if (!window || window->contains(o + 1)) {
            plan.origins.push_back(o);
        }
    }
    if (plan.origins.size() > static_cast<std::size_t>(kMaxBacktestSteps)) {
        plan.origins.erase(plan.origins.begin(), plan.origins.end() - kMaxBacktestSteps);
    }
    if (plan.origins.size() < static_cast<std::size_t>(kMinBacktestSteps)) {
        return std::nullopt;
    }
    plan.steps = static_cast<int>(plan.origins.size());
    return plan;
}

const OriginSnapshot& SnapshotCache::at(YearMonth origin) const {
    std::lock_guard lock(mutex_);
    auto& slot = snapshots_[origin];
    if (!slot) {
        slot = std::make_unique<const OriginSnapshot>(make_snapshot(bundle_, origin));
    }
    return *slot;
}

std::vector<double> future_prices(const MonthlySeries& series, YearMonth origin, int horizon) {
    std::vector<double> prices;
    prices.reserve(static_cast<std::size_t>(horizon));
    for (int h = 1; h <= horizon; ++h) {
        const YearMonth m = origin + h;
        if (!series.covers(m)) {
            throw std::invalid_argument("no price for " + series.key.to_string() + " at " + m.to_string());
        }
        prices.push_back(series.prices[series.offset(m)]);
    }
    return prices;
}

Forecast forecast_at_origin(const Forecaster& forecaster, const SnapshotCache& snapshots, const MonthlySeries& series,
                            YearMonth origin, int horizon) {
    const auto prices = future_prices(series, origin, horizon);
    const auto forecast = forecaster.forecast(snapshots.at(origin), series.key, prices, horizon);
    if (forecast.values.size() != static_cast<std::size_t>(horizon)) {
        throw std::logic_error("forecaster '" + forecaster.spec().name() + "' returned the wrong horizon");
    }
    return forecast;
}

BacktestResult run_backtest(const MonthlySeries& series, const Forecaster& forecaster, const SnapshotCache& snapshots,
                            const std::optional<MonthRange>& window) {
    const auto plan = make_plan(series, window);
    if (!plan) {
        throw std::invalid_argument("series " + series.key.to_string() + " is not backtestable");
    }
    BacktestResult result;
    result.key = series.key;
    result.model = forecaster.spec().name();

    for (const YearMonth origin : plan->origins) {
        const int horizon = static_cast<int>(std::min<std::int64_t>(kQuarterMonths, series.end() - origin));
        Forecast forecast;
        try {
            forecast = forecast_at_origin(forecaster, snapshots, series, origin, horizon);
        } catch (const std::exception& e) {
            result.failures.push_back({origin, e.what()});
            continue;
        }
        OriginSample sample;
        sample.origin = origin;
        sample.actual_1mo = series.quantities[series.offset(origin + 1)];
        sample.forecast_1mo = forecast.values[0];
        if (origin + kQuarterMonths <= plan->last_scored) {
            double actual = 0.0;
            double predicted = 0.0;
            for (int h = 1; h <= kQuarterMonths; ++h) {
                actual += series.quantities[series.offset(origin + h)];
                predicted += forecast.values[static_cast<std::size_t>(h - 1)];
            }
            sample.actual_3mo = actual;
            sample.forecast_3mo = predicted;
        }
        result.per_origin.push_back(sample);
    }

    std::vector<double> a1, f1, a3, f3;
    for (const auto& s : result.per_origin) {
        a1.push_back(s.actual_1mo);
        f1.push_back(s.forecast_1mo);
        if (s.actual_3mo) {
            a3.push_back(*s.actual_3mo);
            f3.push_back(*s.forecast_3mo);
        }
    }
    result.n_monthly = static_cast<int>(a1.size());
    result.n_quarterly = static_cast<int>(a3.size());
    if (!a1.empty()) result.wape_1mo = wape(a1, f1);
    if (!a3.empty()) result.wape_3mo = wape(a3, f3);
    return result;
}

BacktestResult run_backtest(const MonthlySeries& series, const ForecasterSpec& spec, const DatasetBundle& bundle,
                            const std::optional<MonthRange>& window) {
    const auto forecaster = make_forecaster(spec);
    const SnapshotCache snapshots(bundle);
    return run_backtest(series, *forecaster, snapshots, window);
}

namespace {

int resolve_parallelism(int requested) {
    if (requested > 0) return requested;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace

SuiteOutput run_suite(const DatasetBundle& portfolio, const std::vector<ForecasterSpec>& specs,
                      const std::vector<ImportanceEntry>& importance, const SuiteOptions& options) {
    if (specs.empty()) {
        throw std::invalid_argument("no forecasters configured");
    }
    std::set<std::string> names;
    for (const auto& spec : specs) {
        if (!names.insert(spec.name()).second) {
            throw std::invalid_argument("duplicate forecaster name '" + spec.name() + "'");
        }
    }
    std::map<std::string, int> rank_of;
    for (const auto& e : importance) rank_of[e.item] = e.rank;

    SuiteOutput out;
    std::vector<const MonthlySeries*> runnable;
    for (const auto& [key, s] : portfolio.series) {
        if (make_plan(s, options.window)) {
            runnable.push_back(&s);
        } else {
            out.skipped.push_back({key, static_cast<int>(s.size()),
                                   options.window ? "fewer than 6 usable origins in window"
                                                  : "history shorter than 24 months"});
        }
    }
    if (runnable.empty()) {
        throw NothingToBacktest("nothing to backtest: no series with enough history");
    }

    std::vector<std::unique_ptr<Forecaster>> forecasters;
    for (const auto& spec : specs) forecasters.push_back(make_forecaster(spec));
    const SnapshotCache snapshots(portfolio);

    const std::size_t tasks = runnable.size() * specs.size();
    std::vector<BacktestResult> results(tasks);
    std::vector<std::exception_ptr> errors(tasks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks; i = next++) {
            try {
                results[i] = run_backtest(*runnable[i / specs.size()], *forecasters[i % specs.size()], snapshots,
                                          options.window);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int threads = std::min<int>(resolve_parallelism(options.parallelism), static_cast<int>(tasks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    for (std::size_t i = 0; i < tasks; ++i) {
        const auto& series = *runnable[i / specs.size()];
        const auto& r = results[i];
        ResultRow row;
        row.key = r.key;
        row.model = r.model;
        row.wape_1mo = r.wape_1mo;
        row.wape_3mo = r.wape_3mo;
        row.n_monthly = r.n_monthly;
        row.n_quarterly = r.n_quarterly;
        const auto rank = rank_of.find(series.key.item);
        row.importance_rank = rank == rank_of.end() ? 0 : rank->second;
        row.series_class = classify_series(series, options.activity_window);
        row.failed_origins = static_cast<int>(r.failures.size());
        out.table.rows.push_back(std::move(row));
    }
    out.details = std::move(results);
    return out;
}

void write_detail_csv(std::ostream& out, const SuiteOutput& output) {
    out << "item,org,model,origin,actual_1mo,forecast_1mo,actual_3mo,forecast_3mo\n";
    for (const auto& r : output.details) {
        for (const auto& s : r.per_origin) {
            out << csv_escape(r.key.item) << ',' << csv_escape(r.key.org) << ',' << csv_escape(r.model) << ','
                << s.origin.to_string() << ',' << format_double(s.actual_1mo) << ',' << format_double(s.forecast_1mo)
                << ',' << format_optional(s.actual_3mo) << ',' << format_optional(s.forecast_3mo) << '\n';
        }
    }
}

void write_skipped_csv(std::ostream& out, const std::vector<SkippedSeries>& skipped) {
    out << "item,org,history_months,reason\n";
    for (const auto& s : skipped) {
        out << csv_escape(s.key.item) << ',' << csv_escape(s.key.org) << ',' << s.history_months << ','
            << csv_escape(s.reason) << '\n';
    }
}

}  // namespace arena

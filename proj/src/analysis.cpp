#include "arena/analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace arena {

double CdfCurve::at(double threshold) const {
    const auto it = std::upper_bound(points.begin(), points.end(), threshold,
                                     [](double t, const std::pair<double, double>& p) { return t < p.first; });
    return it == points.begin() ? 0.0 : std::prev(it)->second;
}

CdfCurve cumulative_histogram(const ResultTable& table, const std::string& model, Metric metric, int top_k) {
    CdfCurve curve;
    std::vector<double> values;
    for (const auto& r : table.rows) {
        if (r.model != model || r.importance_rank > top_k) continue;
        if (const auto& v = r.metric(metric)) {
            values.push_back(*v);
        } else {
            ++curve.excluded;
        }
    }
    if (values.empty()) {
        throw std::invalid_argument("no defined " + to_string(metric) + " values for " + model + " in top " +
                                    std::to_string(top_k));
    }
    std::sort(values.begin(), values.end());
    curve.included = static_cast<int>(values.size());
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        curve.points.emplace_back(values[i], static_cast<double>(i + 1) / n);
    }
    return curve;
}

BestOfAllShare best_of_all(const ResultTable& table, Metric metric, int top_k) {
    BestOfAllShare out;
    out.top_k = top_k;
    for (const auto& m : table.models()) out.shares[m] = 0.0;

    // per (item, org): best (value, model) so far
    std::map<SeriesKey, std::optional<std::pair<double, std::string>>> best;
    for (const auto& r : table.rows) {
        if (r.importance_rank > top_k) continue;
        auto& slot = best[r.key];
        const auto& v = r.metric(metric);
        if (!v) continue;
        const std::pair<double, std::string> candidate{*v, r.model};
        if (!slot || candidate < *slot) slot = candidate;
    }
    std::map<std::string, int> wins;
    for (const auto& [key, winner] : best) {
        if (winner) {
            ++wins[winner->second];
            ++out.included_pairs;
        } else {
            ++out.excluded_pairs;
        }
    }
    for (const auto& [model, count] : wins) {
        out.shares[model] = static_cast<double>(count) / out.included_pairs;
    }
    return out;
}

ImportanceScatter importance_scatter(const ResultTable& table, Metric metric) {
    ImportanceScatter out;
    for (const auto& model : table.models()) {
        std::vector<std::pair<double, double>> xy;
        for (const auto& r : table.rows) {
            if (r.model != model) continue;
            if (const auto& v = r.metric(metric)) {
                out.points.push_back({r.importance_rank, model, *v});
                xy.emplace_back(r.importance_rank, *v);
            }
        }
        if (xy.empty()) continue;
        const double n = static_cast<double>(xy.size());
        double mx = 0.0, my = 0.0;
        for (const auto& [x, y] : xy) {
            mx += x;
            my += y;
        }
        mx /= n;
        my /= n;
        double sxx = 0.0, sxy = 0.0;
        for (const auto& [x, y] : xy) {
            sxx += (x - mx) * (x - mx);
            sxy += (x - mx) * (y - my);
        }
        TrendLine line{model, 0.0, my, static_cast<int>(xy.size())};
        if (sxx > 0.0) {
            line.slope = sxy / sxx;
            line.intercept = my - line.slope * mx;
        }
        out.trends.push_back(line);
    }
    return out;
}

std::pair<ResultTable, ResultTable> history_split(const ResultTable& table) {
    std::pair<ResultTable, ResultTable> out;
    for (const auto& r : table.rows) {
        (r.series_class.history == HistoryClass::long_history ? out.first : out.second).rows.push_back(r);
    }
    return out;
}

std::optional<double> pooled_wape(const std::vector<BacktestResult>& details, const std::string& model, Metric metric) {
    std::vector<double> actuals, forecasts;
    for (const auto& r : details) {
        if (r.model != model) continue;
        for (const auto& s : r.per_origin) {
            if (metric == Metric::wape_1mo) {
                actuals.push_back(s.actual_1mo);
                forecasts.push_back(s.forecast_1mo);
            } else if (s.actual_3mo) {
                actuals.push_back(*s.actual_3mo);
                forecasts.push_back(*s.forecast_3mo);
            }
        }
    }
    if (actuals.empty()) return std::nullopt;
    return wape(actuals, forecasts);
}

WindowComparison window_comparison(const DatasetBundle& bundle, const std::vector<ForecasterSpec>& specs,
                                   const std::vector<ImportanceEntry>& importance, const MonthRange& window_a,
                                   const MonthRange& window_b, Metric metric, SuiteOptions options) {
    WindowComparison out;
    out.window_a = window_a;
    out.window_b = window_b;
    out.metric = metric;
    options.window = window_a;
    out.run_a = run_suite(bundle, specs, importance, options);
    options.window = window_b;
    out.run_b = run_suite(bundle, specs, importance, options);
    for (const auto& spec : specs) {
        WindowDelta d{spec.name(), pooled_wape(out.run_a.details, spec.name(), metric),
                      pooled_wape(out.run_b.details, spec.name(), metric), std::nullopt};
        if (d.wape_a && d.wape_b) d.delta = *d.wape_b - *d.wape_a;
        out.deltas.push_back(d);
    }
    return out;
}

}  // namespace arena

#include "arena/seasonal_naive.hpp"

#include <stdexcept>

namespace arena {

Forecast seasonal_naive(const MonthlySeries& series, YearMonth origin, int horizon, int period) {
    if (series.size() == 0) {
        throw std::invalid_argument("seasonal_naive: empty series");
    }
    if (horizon < 1 || period < 1) {
        throw std::invalid_argument("seasonal_naive: horizon and period must be positive");
    }
    if (!series.covers(origin)) {
        throw std::invalid_argument("origin " + origin.to_string() + " outside series " + series.key.to_string());
    }
    const double last = series.quantities[series.offset(origin)];
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(horizon));
    for (int h = 1; h <= horizon; ++h) {
        YearMonth source = origin + h - period;
        while (source > origin) source = source - period;
        values.push_back(source < series.start ? last : series.quantities[series.offset(source)]);
    }
    return make_forecast(origin, std::move(values));
}

}  // namespace arena

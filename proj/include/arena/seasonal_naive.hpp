#pragma once

#include "arena/calendar.hpp"
#include "arena/dataset_io.hpp"
#include "arena/forecast.hpp"

namespace arena {

/// value[h] = quantity at origin + h - period (stepping back further by whole periods when
/// that month is after the origin). Falls back to the last observed value when the month
/// precedes the series. Throws std::invalid_argument for an empty series or horizon < 1.
Forecast seasonal_naive(const MonthlySeries& series, YearMonth origin, int horizon, int period = 12);

}  // namespace arena

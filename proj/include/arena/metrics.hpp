#pragma once

#include <optional>
#include <span>

namespace arena {

/// Weighted absolute percentage error: sum|a - f| / sum|a|.
/// Empty when the denominator is zero. Throws std::invalid_argument on empty or mismatched input.
std::optional<double> wape(std::span<const double> actuals, std::span<const double> forecasts);

}  // namespace arena

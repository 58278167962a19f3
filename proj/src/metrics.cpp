#include "arena/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace arena {

std::optional<double> wape(std::span<const double> actuals, std::span<const double> forecasts) {
    if (actuals.size() != forecasts.size()) {
        throw std::invalid_argument("wape: actuals and forecasts differ in length");
    }
    if (actuals.empty()) {
        throw std::invalid_argument("wape: empty input");
    }
    double error = 0.0;
    double volume = 0.0;
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        error += std::abs(actuals[i] - forecasts[i]);
        volume += std::abs(actuals[i]);
    }
    if (volume == 0.0) {
        return std::nullopt;
    }
    return error / volume;
}

}  // namespace arena

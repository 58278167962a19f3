#pragma once

#include "arena/analysis.hpp"
#include "arena/report.hpp"

#include <string>

namespace arena::svg {

std::string cdf_plot(const CdfEntry& entry);
std::string stacked_shares(const MetricAnalyses& analyses);
std::string scatter_plot(const MetricAnalyses& analyses, bool with_points);
std::string window_bars(const WindowComparison& comparison);

}  // namespace arena::svg

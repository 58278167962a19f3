#pragma once

#include "arena/calendar.hpp"
#include "arena/forecast.hpp"
#include "arena/report.hpp"
#include "arena/result_table.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace arena::cli {

/// Stable exit codes for scripting.
enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kNothingToBacktest = 3 };

inline constexpr const char* kConfigEnvVar = "FORECAST_ARENA_CONFIG";

/// Everything one run needs. Loaded from an INI-style file (`[section]` headers, `key = value`,
/// `;` comments); command-line flags override file values.
///
///   [data]        target, related, holidays, normalize_dates, history_start
///   [output]      dir, formats
///   [run]         top_n, activity_window, parallel, importance_window
///   [report]      metrics, top_k
///   [windows]     a, b                      (YYYY-MM:YYYY-MM)
///   [forecaster.NAME]  kind, seed, <hyperparameters>
struct RunConfig {
    std::filesystem::path target;
    std::filesystem::path related;
    std::optional<std::filesystem::path> holidays;
    bool normalize_dates = false;
    std::optional<YearMonth> history_start;

    std::filesystem::path out_dir = "out";
    FormatSet formats;

    int top_n = 50;
    int activity_window = 3;
    int parallelism = 0;  // 0 = auto
    std::optional<MonthRange> importance_window;

    std::vector<Metric> metrics{Metric::wape_1mo, Metric::wape_3mo};
    std::vector<int> top_k{10, 25, 50};

    std::optional<MonthRange> window_a;
    std::optional<MonthRange> window_b;

    std::vector<ForecasterSpec> forecasters = ForecasterSpec::defaults();

    /// Canonical INI text of the resolved configuration (absolute paths, every option explicit).
    std::string to_ini() const;
};

/// Parses a config file; relative paths resolve against the file's directory.
/// Throws UsageError on unknown sections/keys or bad values.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_backtest(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& config, const std::optional<std::filesystem::path>& results, std::ostream& out,
               std::ostream& err);
int cmd_compare_windows(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_model_dump(const RunConfig& config, const SeriesKey& key, const std::string& model,
                   const std::optional<YearMonth>& origin, std::ostream& out, std::ostream& err);

/// Full command-line entry point: `forecast-arena validate|backtest|report|compare-windows|model dump`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arena::cli

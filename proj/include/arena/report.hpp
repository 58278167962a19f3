#pragma once

#include "arena/analysis.hpp"
#include "arena/result_table.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace arena {

struct FormatSet {
    bool csv = true;
    bool json = false;
    bool svg = false;

    /// Comma-separated subset of csv,json,svg. CSV is always written, so `svg` alone means
    /// csv + svg. Throws UsageError on unknown names.
    static FormatSet parse(const std::string& text);
    std::string to_string() const;
};

/// A rectangular table of already-formatted cells; `NA` marks an undefined value.
struct ReportTable {
    std::string name;  // file stem
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct ReportOptions {
    std::vector<Metric> metrics{Metric::wape_1mo, Metric::wape_3mo};
    std::vector<int> cdf_top_k{10, 25, 50};
    /// Models to emit CDFs for; empty means the models present in the table.
    std::vector<std::string> models;
};

struct CdfEntry {
    std::string model;
    Metric metric = Metric::wape_1mo;
    int top_k = 0;
    std::optional<CdfCurve> curve;  // empty when no defined values are in scope
};

struct MetricAnalyses {
    Metric metric = Metric::wape_1mo;
    std::vector<BestOfAllShare> best_of_all;  // one per top_k = 1 .. max rank with included pairs
    ImportanceScatter scatter;
};

struct AnalysisSet {
    std::vector<CdfEntry> cdfs;
    std::vector<MetricAnalyses> per_metric;
};

AnalysisSet build_analyses(const ResultTable& table, const ReportOptions& options = {});

ReportTable cdf_table(const CdfEntry& entry);
/// Sidecar with the included/excluded row counts behind every CDF of one metric.
ReportTable cdf_counts_table(const std::vector<CdfEntry>& cdfs, Metric metric);
/// Sidecar with included/excluded (item, org) pair counts per top_k.
ReportTable best_of_all_counts_table(const MetricAnalyses& analyses);
ReportTable best_of_all_table(const MetricAnalyses& analyses);
ReportTable scatter_table(const MetricAnalyses& analyses);
ReportTable trend_table(const MetricAnalyses& analyses);
ReportTable window_table(const WindowComparison& comparison);

/// Writes every analysis to `out_dir` in the requested formats; returns the written paths in
/// write order. Output bytes depend only on the inputs. Throws std::runtime_error naming the
/// path on I/O failure.
std::vector<std::filesystem::path> emit_report(const AnalysisSet& analyses, const std::filesystem::path& out_dir,
                                               const FormatSet& formats);

std::vector<std::filesystem::path> emit_window_comparison(const WindowComparison& comparison,
                                                          const std::filesystem::path& out_dir,
                                                          const FormatSet& formats);

/// Low-level writers, exposed for reuse by the CLI.
void write_table_csv(const ReportTable& table, const std::filesystem::path& path);
void write_table_json(const ReportTable& table, const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace arena

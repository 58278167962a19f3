#include "arena/report.hpp"

#include "arena/errors.hpp"
#include "arena/format.hpp"
#include "svg.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace arena {

FormatSet FormatSet::parse(const std::string& text) {
    FormatSet f{true, false, false};
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token == "csv") f.csv = true;
        else if (token == "json") f.json = true;
        else if (token == "svg") f.svg = true;
        else if (!token.empty()) throw UsageError("unknown output format '" + token + "' (expected csv, json, svg)");
    }
    return f;
}

std::string FormatSet::to_string() const {
    std::string out;
    auto add = [&](bool on, const char* name) {
        if (on) out += (out.empty() ? "" : ",") + std::string(name);
    };
    add(csv, "csv");
    add(json, "json");
    add(svg, "svg");
    return out;
}

AnalysisSet build_analyses(const ResultTable& table, const ReportOptions& options) {
    AnalysisSet set;
    const auto models = options.models.empty() ? table.models() : options.models;
    int max_rank = 0;
    for (const auto& r : table.rows) max_rank = std::max(max_rank, r.importance_rank);

    for (const Metric metric : options.metrics) {
        for (const auto& model : models) {
            for (const int k : options.cdf_top_k) {
                CdfEntry entry{model, metric, k, std::nullopt};
                try {
                    entry.curve = cumulative_histogram(table, model, metric, k);
                } catch (const std::invalid_argument&) {
                    // no defined values in scope: emitted as a header-only table
                }
                set.cdfs.push_back(std::move(entry));
            }
        }
        MetricAnalyses per;
        per.metric = metric;
        for (int k = 1; k <= max_rank; ++k) {
            auto share = best_of_all(table, metric, k);
            if (share.included_pairs > 0) per.best_of_all.push_back(std::move(share));
        }
        per.scatter = importance_scatter(table, metric);
        set.per_metric.push_back(std::move(per));
    }
    return set;
}

ReportTable cdf_table(const CdfEntry& entry) {
    ReportTable t{"cdf_" + entry.model + "_" + to_string(entry.metric) + "_top" + std::to_string(entry.top_k),
                  {"threshold", "fraction"},
                  {}};
    if (entry.curve) {
        for (const auto& [x, f] : entry.curve->points) t.rows.push_back({format_double(x), format_double(f)});
    }
    return t;
}

ReportTable cdf_counts_table(const std::vector<CdfEntry>& cdfs, Metric metric) {
    ReportTable t{"cdf_counts_" + to_string(metric), {"model", "top_k", "included", "excluded"}, {}};
    for (const auto& e : cdfs) {
        if (e.metric != metric) continue;
        t.rows.push_back({e.model, std::to_string(e.top_k), std::to_string(e.curve ? e.curve->included : 0),
                          e.curve ? std::to_string(e.curve->excluded) : "NA"});
    }
    return t;
}

ReportTable best_of_all_counts_table(const MetricAnalyses& analyses) {
    ReportTable t{"best_of_all_counts_" + to_string(analyses.metric), {"top_k", "included_pairs", "excluded_pairs"}, {}};
    for (const auto& b : analyses.best_of_all) {
        t.rows.push_back({std::to_string(b.top_k), std::to_string(b.included_pairs), std::to_string(b.excluded_pairs)});
    }
    return t;
}

ReportTable best_of_all_table(const MetricAnalyses& analyses) {
    ReportTable t{"best_of_all_" + to_string(analyses.metric), {"top_k", "model", "share"}, {}};
    for (const auto& b : analyses.best_of_all) {
        for (const auto& [model, share] : b.shares) {
            t.rows.push_back({std::to_string(b.top_k), model, format_double(share)});
        }
    }
    return t;
}

ReportTable scatter_table(const MetricAnalyses& analyses) {
    ReportTable t{"scatter_" + to_string(analyses.metric), {"rank", "model", "value"}, {}};
    for (const auto& p : analyses.scatter.points) {
        t.rows.push_back({std::to_string(p.rank), p.model, format_double(p.value)});
    }
    return t;
}

ReportTable trend_table(const MetricAnalyses& analyses) {
    ReportTable t{"trend_" + to_string(analyses.metric), {"model", "slope", "intercept"}, {}};
    for (const auto& line : analyses.scatter.trends) {
        t.rows.push_back({line.model, format_double(line.slope), format_double(line.intercept)});
    }
    return t;
}

ReportTable window_table(const WindowComparison& comparison) {
    ReportTable t{"window_compare", {"model", "wape_window_a", "wape_window_b", "delta"}, {}};
    for (const auto& d : comparison.deltas) {
        t.rows.push_back({d.model, format_optional(d.wape_a), format_optional(d.wape_b), format_optional(d.delta)});
    }
    return t;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << contents;
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

void write_table_csv(const ReportTable& table, const std::filesystem::path& path) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_escape(table.columns[i]);
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
        out << '\n';
    }
    write_text_file(path, out.str());
}

void write_table_json(const ReportTable& table, const std::filesystem::path& path) {
    auto records = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json record = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& cell = row[i];
            if (cell == "NA") {
                record[table.columns[i]] = nullptr;
                continue;
            }
            try {
                record[table.columns[i]] = parse_double(cell);
            } catch (const std::invalid_argument&) {
                record[table.columns[i]] = cell;
            }
        }
        records.push_back(std::move(record));
    }
    write_text_file(path, records.dump(1) + "\n");
}

namespace {

class Emitter {
public:
    Emitter(const std::filesystem::path& dir, const FormatSet& formats) : dir_(dir), formats_(formats) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw std::runtime_error("cannot create '" + dir_.string() + "': " + ec.message());
    }

    void table(const ReportTable& t, const std::string& svg_text = {}) {
        if (formats_.csv) {
            written_.push_back(dir_ / (t.name + ".csv"));
            write_table_csv(t, written_.back());
        }
        if (formats_.json) {
            written_.push_back(dir_ / (t.name + ".json"));
            write_table_json(t, written_.back());
        }
        if (formats_.svg && !svg_text.empty()) {
            written_.push_back(dir_ / (t.name + ".svg"));
            write_text_file(written_.back(), svg_text);
        }
    }

    std::vector<std::filesystem::path> written() && { return std::move(written_); }

private:
    std::filesystem::path dir_;
    FormatSet formats_;
    std::vector<std::filesystem::path> written_;
};

}  // namespace

std::vector<std::filesystem::path> emit_report(const AnalysisSet& analyses, const std::filesystem::path& out_dir,
                                               const FormatSet& formats) {
    Emitter emit(out_dir, formats);
    for (const auto& entry : analyses.cdfs) {
        emit.table(cdf_table(entry), formats.svg ? svg::cdf_plot(entry) : std::string());
    }
    for (const auto& per : analyses.per_metric) {
        emit.table(cdf_counts_table(analyses.cdfs, per.metric));
        emit.table(best_of_all_table(per), formats.svg ? svg::stacked_shares(per) : std::string());
        emit.table(best_of_all_counts_table(per));
        emit.table(scatter_table(per), formats.svg ? svg::scatter_plot(per, true) : std::string());
        emit.table(trend_table(per), formats.svg ? svg::scatter_plot(per, false) : std::string());
    }
    return std::move(emit).written();
}

std::vector<std::filesystem::path> emit_window_comparison(const WindowComparison& comparison,
                                                          const std::filesystem::path& out_dir,
                                                          const FormatSet& formats) {
    Emitter emit(out_dir, formats);
    emit.table(window_table(comparison), formats.svg ? svg::window_bars(comparison) : std::string());
    return std::move(emit).written();
}

}  // namespace arena

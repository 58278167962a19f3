#include "arena/result_table.hpp"

#include "arena/errors.hpp"
#include "arena/format.hpp"

#include <algorithm>
#include <set>

namespace arena {

std::string to_string(Metric metric) { return metric == Metric::wape_1mo ? "wape_1mo" : "wape_3mo"; }

Metric parse_metric(const std::string& text) {
    if (text == "wape_1mo" || text == "wape1mo") return Metric::wape_1mo;
    if (text == "wape_3mo" || text == "wape3mo") return Metric::wape_3mo;
    throw std::invalid_argument("unknown metric '" + text + "' (expected wape_1mo or wape_3mo)");
}

std::vector<std::string> ResultTable::models() const {
    std::vector<std::string> out;
    for (const auto& r : rows) {
        if (std::find(out.begin(), out.end(), r.model) == out.end()) out.push_back(r.model);
    }
    return out;
}

namespace {

const std::vector<std::string> kColumns{"item",         "org",       "model",         "wape1mo",
                                        "wape3mo",      "n_monthly", "n_quarterly",   "importance_rank",
                                        "history_class", "activity", "history_months", "failed_origins"};

std::optional<double> parse_optional(const std::string& text) {
    if (text == "NA" || text.empty()) return std::nullopt;
    return parse_double(text);
}

}  // namespace

void write_results_csv(std::ostream& out, const ResultTable& table) {
    for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
    out << '\n';
    for (const auto& r : table.rows) {
        out << csv_escape(r.key.item) << ',' << csv_escape(r.key.org) << ',' << csv_escape(r.model) << ','
            << format_optional(r.wape_1mo) << ',' << format_optional(r.wape_3mo) << ',' << r.n_monthly << ','
            << r.n_quarterly << ',' << r.importance_rank << ',' << to_string(r.series_class.history) << ','
            << to_string(r.series_class.activity) << ',' << r.series_class.history_months << ',' << r.failed_origins
            << '\n';
    }
}

ResultTable read_results_csv(std::istream& in) {
    ResultTable table;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    std::set<std::pair<SeriesKey, std::string>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_line(line);
        if (width == 0) {
            const bool full = f == kColumns;
            const bool core = f == std::vector<std::string>(kColumns.begin(), kColumns.begin() + 10);
            if (!full && !core) throw ParseError(line_no, "unexpected results header");
            width = f.size();
            continue;
        }
        if (f.size() != width) {
            throw ParseError(line_no, "expected " + std::to_string(width) + " fields, got " + std::to_string(f.size()));
        }
        try {
            ResultRow r;
            r.key = {f[0], f[1]};
            r.model = f[2];
            r.wape_1mo = parse_optional(f[3]);
            r.wape_3mo = parse_optional(f[4]);
            r.n_monthly = static_cast<int>(parse_int(f[5]));
            r.n_quarterly = static_cast<int>(parse_int(f[6]));
            r.importance_rank = static_cast<int>(parse_int(f[7]));
            r.series_class.history = parse_history_class(f[8]);
            r.series_class.activity = parse_activity(f[9]);
            if (width == kColumns.size()) {
                r.series_class.history_months = static_cast<int>(parse_int(f[10]));
                r.failed_origins = static_cast<int>(parse_int(f[11]));
            }
            if (!seen.insert({r.key, r.model}).second) {
                throw ParseError(line_no, "duplicate row for " + r.key.to_string() + " / " + r.model);
            }
            table.rows.push_back(std::move(r));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (width == 0) throw ParseError(1, "missing results header");
    return table;
}

}  // namespace arena

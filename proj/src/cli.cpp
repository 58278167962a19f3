#include "arena/cli.hpp"

#include "arena/analysis.hpp"
#include "arena/backtest.hpp"
#include "arena/dataset_io.hpp"
#include "arena/errors.hpp"
#include "arena/format.hpp"
#include "arena/global_ar.hpp"
#include "arena/model_json.hpp"
#include "arena/portfolio.hpp"
#include "arena/prophet_lite.hpp"

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace arena::cli {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        const auto b = token.find_first_not_of(" \t");
        const auto e = token.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(token.substr(b, e - b + 1));
    }
    return out;
}

bool parse_bool(const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw UsageError("expected a boolean, got '" + text + "'");
}

int parse_parallelism(const std::string& text) {
    if (text == "auto") return 0;
    const auto n = parse_int(text);
    if (n < 1) throw UsageError("parallel must be 'auto' or a positive integer");
    return static_cast<int>(n);
}

std::vector<Metric> parse_metrics(const std::string& text) {
    std::vector<Metric> out;
    for (const auto& m : split_list(text)) {
        try {
            out.push_back(parse_metric(m));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (out.empty()) throw UsageError("no metric selected");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& t : split_list(text)) {
        const auto v = parse_int(t);
        if (v < 1) throw UsageError("top_k values must be positive");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

fs::path resolve(const fs::path& base, const std::string& value) {
    const fs::path p(value);
    return p.is_absolute() ? p : (base / p).lexically_normal();
}

std::string join_metrics(const std::vector<Metric>& metrics) {
    std::string out;
    for (const auto m : metrics) out += (out.empty() ? "" : ",") + to_string(m);
    return out;
}

std::string range_text(const MonthRange& r) { return r.first.to_string() + ":" + r.last.to_string(); }

void check_keys(const std::string& section, const pt::ptree& tree, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : tree) {
        if (!allowed.contains(key)) {
            throw UsageError("unknown key '" + key + "' in section [" + section + "]");
        }
    }
}

}  // namespace

RunConfig parse_config(const std::string& text, const fs::path& base_dir) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw UsageError("config: " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }

    RunConfig c;
    bool saw_forecaster = false;
    std::vector<ForecasterSpec> specs;
    try {
        for (const auto& [section, body] : tree) {
            if (section == "data") {
                check_keys(section, body, {"target", "related", "holidays", "normalize_dates", "history_start"});
                if (auto v = body.get_optional<std::string>("target")) c.target = resolve(base_dir, *v);
                if (auto v = body.get_optional<std::string>("related")) c.related = resolve(base_dir, *v);
                if (auto v = body.get_optional<std::string>("holidays")) {
                    if (!v->empty()) c.holidays = resolve(base_dir, *v);
                }
                if (auto v = body.get_optional<std::string>("normalize_dates")) c.normalize_dates = parse_bool(*v);
                if (auto v = body.get_optional<std::string>("history_start")) c.history_start = parse_year_month(*v);
            } else if (section == "output") {
                check_keys(section, body, {"dir", "formats"});
                if (auto v = body.get_optional<std::string>("dir")) c.out_dir = resolve(base_dir, *v);
                if (auto v = body.get_optional<std::string>("formats")) c.formats = FormatSet::parse(*v);
            } else if (section == "run") {
                check_keys(section, body, {"top_n", "activity_window", "parallel", "importance_window"});
                if (auto v = body.get_optional<std::string>("top_n")) c.top_n = static_cast<int>(parse_int(*v));
                if (auto v = body.get_optional<std::string>("activity_window")) {
                    c.activity_window = static_cast<int>(parse_int(*v));
                }
                if (auto v = body.get_optional<std::string>("parallel")) c.parallelism = parse_parallelism(*v);
                if (auto v = body.get_optional<std::string>("importance_window")) {
                    c.importance_window = parse_month_range(*v);
                }
            } else if (section == "report") {
                check_keys(section, body, {"metrics", "top_k"});
                if (auto v = body.get_optional<std::string>("metrics")) c.metrics = parse_metrics(*v);
                if (auto v = body.get_optional<std::string>("top_k")) c.top_k = parse_int_list(*v);
            } else if (section == "windows") {
                check_keys(section, body, {"a", "b"});
                if (auto v = body.get_optional<std::string>("a")) c.window_a = parse_month_range(*v);
                if (auto v = body.get_optional<std::string>("b")) c.window_b = parse_month_range(*v);
            } else if (section.starts_with("forecaster.")) {
                saw_forecaster = true;
                const std::string name = section.substr(std::string("forecaster.").size());
                const auto kind_text = body.get_optional<std::string>("kind");
                if (!kind_text) throw UsageError("section [" + section + "] needs a 'kind'");
                std::uint64_t seed = 0;
                std::map<std::string, double> hyper;
                for (const auto& [key, value] : body) {
                    if (key == "kind") continue;
                    if (key == "seed") {
                        seed = static_cast<std::uint64_t>(parse_int(value.data()));
                    } else {
                        hyper[key] = parse_double(value.data());
                    }
                }
                specs.emplace_back(name, parse_forecaster_kind(*kind_text), hyper, seed);
            } else {
                throw UsageError("unknown config section [" + section + "]");
            }
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    if (saw_forecaster) c.forecasters = std::move(specs);
    return c;
}

RunConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), fs::absolute(path).parent_path());
}

std::string RunConfig::to_ini() const {
    std::ostringstream o;
    o << "[data]\n";
    o << "target = " << fs::absolute(target).lexically_normal().string() << '\n';
    o << "related = " << fs::absolute(related).lexically_normal().string() << '\n';
    o << "holidays = " << (holidays ? fs::absolute(*holidays).lexically_normal().string() : "") << '\n';
    o << "normalize_dates = " << (normalize_dates ? "true" : "false") << '\n';
    if (history_start) o << "history_start = " << history_start->to_string() << '\n';
    o << "\n[output]\n";
    o << "dir = " << fs::absolute(out_dir).lexically_normal().string() << '\n';
    o << "formats = " << formats.to_string() << '\n';
    o << "\n[run]\n";
    o << "top_n = " << top_n << '\n';
    o << "activity_window = " << activity_window << '\n';
    o << "parallel = " << (parallelism == 0 ? std::string("auto") : std::to_string(parallelism)) << '\n';
    if (importance_window) o << "importance_window = " << range_text(*importance_window) << '\n';
    o << "\n[report]\n";
    o << "metrics = " << join_metrics(metrics) << '\n';
    o << "top_k = ";
    for (std::size_t i = 0; i < top_k.size(); ++i) o << (i ? "," : "") << top_k[i];
    o << '\n';
    if (window_a || window_b) {
        o << "\n[windows]\n";
        if (window_a) o << "a = " << range_text(*window_a) << '\n';
        if (window_b) o << "b = " << range_text(*window_b) << '\n';
    }
    for (const auto& spec : forecasters) {
        o << "\n[forecaster." << spec.name() << "]\n";
        o << "kind = " << to_string(spec.kind()) << '\n';
        o << "seed = " << spec.seed() << '\n';
        for (const auto& [k, v] : spec.hyperparameters()) o << k << " = " << format_double(v) << '\n';
    }
    return o.str();
}

namespace {

struct LoadedData {
    DatasetBundle all;
    std::vector<ImportanceEntry> importance;
    DatasetBundle portfolio;
    int top_n = 0;
};

std::ifstream open_input(const fs::path& path, const char* role) {
    if (path.empty()) throw DataError(std::string("no ") + role + " file configured");
    std::ifstream in(path);
    if (!in) throw DataError(std::string("cannot open ") + role + " file '" + path.string() + "'");
    return in;
}

LoadedData load_data(const RunConfig& config, std::ostream& err) {
    ParseOptions options;
    options.normalize_dates = config.normalize_dates;
    std::vector<SalesRecord> sales;
    std::vector<PriceRecord> prices;
    try {
        auto target = open_input(config.target, "target");
        sales = parse_target_csv(target, options);
    } catch (const ParseError& e) {
        throw DataError(config.target.string() + ": " + e.what());
    }
    try {
        auto related = open_input(config.related, "related");
        prices = parse_related_csv(related, options);
    } catch (const ParseError& e) {
        throw DataError(config.related.string() + ": " + e.what());
    }
    if (config.history_start) {
        sales = drop_before(sales, *config.history_start);
        prices = drop_before(prices, *config.history_start);
    }
    LoadedData data;
    data.all = assemble_series(sales, prices);
    if (config.holidays) {
        try {
            auto in = open_input(*config.holidays, "holidays");
            data.all.holidays = load_holidays(in);
        } catch (const ParseError& e) {
            throw DataError(config.holidays->string() + ": " + e.what());
        }
    }
    if (data.all.series.empty()) throw NothingToBacktest("dataset contains no series");
    data.importance = importance_table(data.all, config.importance_window);
    data.top_n = config.top_n;
    if (static_cast<std::size_t>(config.top_n) > data.importance.size()) {
        err << "note: top_n = " << config.top_n << " exceeds the " << data.importance.size()
            << " items in the dataset; using all items\n";
        data.top_n = static_cast<int>(data.importance.size());
    }
    if (data.top_n < 1) throw UsageError("top_n must be positive");
    data.portfolio = select_portfolio(data.all, data.importance, data.top_n);
    return data;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const NothingToBacktest& e) {
        err << "error: " << e.what() << '\n';
        return kNothingToBacktest;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "";
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    char buf[1 << 15];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

std::string sha256_text(const std::string& text) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
}

template <typename Writer>
void write_with(const fs::path& path, Writer&& writer) {
    std::ostringstream buffer;
    writer(buffer);
    write_text_file(path, buffer.str());
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto data = load_data(config, err);
        std::map<std::string, int> rank_of;
        for (const auto& e : data.importance) rank_of[e.item] = e.rank;

        out << "item,org,rank,start,end,months,history,activity,backtestable,steps\n";
        int long_count = 0, active_count = 0, active_long = 0, backtestable = 0;
        for (const auto& [key, s] : data.portfolio.series) {
            const auto cls = classify_series(s, config.activity_window);
            const auto steps = backtest_steps(s.size());
            long_count += cls.history == HistoryClass::long_history;
            active_count += cls.activity == Activity::active;
            active_long += cls.history == HistoryClass::long_history && cls.activity == Activity::active;
            backtestable += steps.has_value();
            out << csv_escape(key.item) << ',' << csv_escape(key.org) << ',' << rank_of[key.item] << ','
                << s.start.to_string() << ',' << s.end().to_string() << ',' << s.size() << ',' << to_string(cls.history)
                << ',' << to_string(cls.activity) << ',' << (steps ? "yes" : "no") << ',' << (steps ? *steps : 0)
                << '\n';
        }
        const auto n = data.portfolio.series.size();
        char share[32];
        std::snprintf(share, sizeof share, "%.4f", n ? static_cast<double>(active_long) / static_cast<double>(n) : 0.0);
        out << "# items=" << data.top_n << " series=" << n << " long_history=" << long_count
            << " active=" << active_count << " active_long=" << active_long << " active_long_share=" << share
            << " backtestable=" << backtestable << '\n';
        if (backtestable == 0) {
            err << "error: no series has the 24 months of history needed for backtesting\n";
            return static_cast<int>(kNothingToBacktest);
        }
        return static_cast<int>(kOk);
    });
}

int cmd_backtest(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto started = std::chrono::steady_clock::now();
        const auto data = load_data(config, err);
        const double load_seconds = seconds_since(started);

        SuiteOptions options;
        options.parallelism = config.parallelism;
        options.activity_window = config.activity_window;
        const auto suite_started = std::chrono::steady_clock::now();
        const auto output = run_suite(data.portfolio, config.forecasters, data.importance, options);
        const double suite_seconds = seconds_since(suite_started);

        ensure_dir(config.out_dir);
        write_with(config.out_dir / "results.csv", [&](std::ostream& o) { write_results_csv(o, output.table); });
        write_with(config.out_dir / "results_detail.csv", [&](std::ostream& o) { write_detail_csv(o, output); });
        write_with(config.out_dir / "skipped.csv", [&](std::ostream& o) { write_skipped_csv(o, output.skipped); });
        write_with(config.out_dir / "importance.csv", [&](std::ostream& o) { write_importance_csv(o, data.importance); });

        int failures = 0;
        for (const auto& r : output.table.rows) failures += r.failed_origins;

        const std::string ini = config.to_ini();
        nlohmann::ordered_json manifest;
        manifest["tool"] = "forecast-arena";
        manifest["command"] = "backtest";
        manifest["config_sha256"] = sha256_text(ini);
        manifest["config"] = ini;
        manifest["inputs"] = nlohmann::ordered_json::array();
        auto add_input = [&](const char* role, const fs::path& p) {
            manifest["inputs"].push_back({{"role", role}, {"path", fs::absolute(p).string()}, {"sha256", sha256_file(p)}});
        };
        add_input("target", config.target);
        add_input("related", config.related);
        if (config.holidays) add_input("holidays", *config.holidays);
        manifest["forecasters"] = nlohmann::ordered_json::array();
        for (const auto& spec : config.forecasters) manifest["forecasters"].push_back(to_json(spec));
        manifest["results"] = {{"rows", output.table.rows.size()},
                               {"skipped_series", output.skipped.size()},
                               {"failed_origins", failures},
                               {"results_sha256", sha256_file(config.out_dir / "results.csv")}};
        manifest["timings_seconds"] = {{"load", load_seconds}, {"backtest", suite_seconds}, {"total", seconds_since(started)}};
        write_text_file(config.out_dir / "manifest.json", manifest.dump(2) + "\n");

        out << "backtested " << (output.table.rows.size() / config.forecasters.size()) << " series x "
            << config.forecasters.size() << " forecasters (" << output.skipped.size() << " skipped, " << failures
            << " failed origins) -> " << (config.out_dir / "results.csv").string() << '\n';
        return static_cast<int>(kOk);
    });
}

int cmd_report(const RunConfig& config, const std::optional<fs::path>& results, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const fs::path path = results.value_or(config.out_dir / "results.csv");
        std::ifstream in(path);
        if (!in) throw DataError("cannot open results file '" + path.string() + "'");
        ResultTable table;
        try {
            table = read_results_csv(in);
        } catch (const ParseError& e) {
            throw DataError(path.string() + ": " + e.what());
        }

        ReportOptions options;
        options.metrics = config.metrics;
        options.cdf_top_k = config.top_k;
        options.models = table.models();

        const fs::path report_dir = config.out_dir / "report";
        const auto [long_rows, short_rows] = history_split(table);
        std::size_t files = 0;
        files += emit_report(build_analyses(table, options), report_dir, config.formats).size();
        files += emit_report(build_analyses(long_rows, options), report_dir / "long_history", config.formats).size();
        files += emit_report(build_analyses(short_rows, options), report_dir / "short_history", config.formats).size();
        out << "wrote " << files << " report files under " << report_dir.string() << '\n';
        return static_cast<int>(kOk);
    });
}

int cmd_compare_windows(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!config.window_a || !config.window_b) {
            throw UsageError("compare-windows needs both windows ([windows] a/b or --window-a/--window-b)");
        }
        const auto data = load_data(config, err);
        SuiteOptions options;
        options.parallelism = config.parallelism;
        options.activity_window = config.activity_window;
        const auto comparison = window_comparison(data.portfolio, config.forecasters, data.importance, *config.window_a,
                                                  *config.window_b, config.metrics.front(), options);
        ensure_dir(config.out_dir);
        emit_window_comparison(comparison, config.out_dir, config.formats);
        if (!config.formats.csv) {
            write_table_csv(window_table(comparison), config.out_dir / "window_compare.csv");
        }
        write_with(config.out_dir / "results_window_a.csv",
                   [&](std::ostream& o) { write_results_csv(o, comparison.run_a.table); });
        write_with(config.out_dir / "results_window_b.csv",
                   [&](std::ostream& o) { write_results_csv(o, comparison.run_b.table); });
        for (const auto& d : comparison.deltas) {
            out << d.model << ": " << format_optional(d.wape_a) << " -> " << format_optional(d.wape_b)
                << " (delta " << format_optional(d.delta) << ")\n";
        }
        return static_cast<int>(kOk);
    });
}

int cmd_model_dump(const RunConfig& config, const SeriesKey& key, const std::string& model,
                   const std::optional<YearMonth>& origin, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto data = load_data(config, err);
        const auto it = data.all.series.find(key);
        if (it == data.all.series.end()) throw UsageError("unknown series " + key.to_string());
        const auto& series = it->second;
        const YearMonth at = origin.value_or(series.end());
        if (!series.covers(at)) throw UsageError("origin " + at.to_string() + " outside series " + key.to_string());

        const ForecasterSpec* spec = nullptr;
        for (const auto& s : config.forecasters) {
            if (s.name() == model) spec = &s;
        }
        if (!spec) throw UsageError("no forecaster named '" + model + "'");

        nlohmann::ordered_json doc;
        doc["series"] = {{"item", key.item}, {"org", key.org}, {"origin", at.to_string()}};
        doc["forecaster"] = to_json(*spec);
        switch (spec->kind()) {
            case ForecasterKind::prophet_lite:
                doc["params"] = to_json(fit_prophet_lite(series.truncated(at), data.all.holidays,
                                                         ProphetLiteOptions::from_spec(*spec)));
                break;
            case ForecasterKind::global_ar: {
                const auto bundle = data.portfolio.series.contains(key) ? data.portfolio : data.all;
                doc["params"] = to_json(fit_global_ar(make_snapshot(bundle, at).history, GlobalAROptions::from_spec(*spec)));
                break;
            }
            case ForecasterKind::seasonal_naive:
                doc["params"] = {{"kind", "seasonal_naive"}, {"period", spec->get_int_or("period", 12)}};
                break;
        }
        out << doc.dump(2) << '\n';
        return static_cast<int>(kOk);
    });
}

namespace {

struct Flags {
    std::string config;
    std::string target, related, holidays, out_dir, formats, metrics, top_k, window_a, window_b, parallel,
        history_start;
    std::optional<int> top_n, activity_window;
    bool normalize_dates = false;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config,-c", f.config, std::string("Config file (default: $") + kConfigEnvVar + ")");
    cmd->add_option("--target", f.target, "target_ts.csv path");
    cmd->add_option("--related", f.related, "related_ts.csv path");
    cmd->add_option("--holidays", f.holidays, "holidays.csv path");
    cmd->add_option("--out,-o", f.out_dir, "Output directory");
    cmd->add_option("--formats", f.formats, "Comma list of csv,json,svg");
    cmd->add_option("--metrics", f.metrics, "Comma list of wape_1mo,wape_3mo");
    cmd->add_option("--top-k", f.top_k, "Comma list of top-k cut-offs for CDFs");
    cmd->add_option("--top-n", f.top_n, "Portfolio size (most important items)");
    cmd->add_option("--activity-window", f.activity_window, "Months that decide active/inactive");
    cmd->add_option("--parallel", f.parallel, "Worker threads or 'auto'");
    cmd->add_option("--window-a", f.window_a, "First comparison window YYYY-MM:YYYY-MM");
    cmd->add_option("--window-b", f.window_b, "Second comparison window YYYY-MM:YYYY-MM");
    cmd->add_option("--history-start", f.history_start, "Ignore records before this month (YYYY-MM)");
    cmd->add_flag("--normalize-dates", f.normalize_dates, "Truncate mid-month dates to the first of the month");
}

RunConfig resolve_config(const Flags& f) {
    RunConfig c;
    std::string config_path = f.config;
    if (config_path.empty()) {
        if (const char* env = std::getenv(kConfigEnvVar)) config_path = env;
    }
    if (!config_path.empty()) c = load_config(config_path);
    const fs::path cwd = fs::current_path();
    try {
        if (!f.target.empty()) c.target = resolve(cwd, f.target);
        if (!f.related.empty()) c.related = resolve(cwd, f.related);
        if (!f.holidays.empty()) c.holidays = resolve(cwd, f.holidays);
        if (!f.out_dir.empty()) c.out_dir = resolve(cwd, f.out_dir);
        if (!f.formats.empty()) c.formats = FormatSet::parse(f.formats);
        if (!f.metrics.empty()) c.metrics = parse_metrics(f.metrics);
        if (!f.top_k.empty()) c.top_k = parse_int_list(f.top_k);
        if (f.top_n) c.top_n = *f.top_n;
        if (f.activity_window) c.activity_window = *f.activity_window;
        if (!f.parallel.empty()) c.parallelism = parse_parallelism(f.parallel);
        if (!f.window_a.empty()) c.window_a = parse_month_range(f.window_a);
        if (!f.window_b.empty()) c.window_b = parse_month_range(f.window_b);
        if (!f.history_start.empty()) c.history_start = parse_year_month(f.history_start);
        if (f.normalize_dates) c.normalize_dates = true;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (c.top_n < 1) throw UsageError("top_n must be positive");
    if (c.activity_window < 1) throw UsageError("activity_window must be positive");
    return c;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rolling-origin forecasting comparison harness for monthly sales data", "forecast-arena"};
    app.require_subcommand(1);
    Flags flags;

    auto* validate = app.add_subcommand("validate", "Parse inputs and report per-series history and backtestability");
    add_common_flags(validate, flags);
    auto* backtest = app.add_subcommand("backtest", "Run the rolling-origin backtest for every configured forecaster");
    add_common_flags(backtest, flags);
    auto* report = app.add_subcommand("report", "Emit CDF, best-of-all and importance-scatter reports");
    add_common_flags(report, flags);
    std::string results_path;
    report->add_option("--results", results_path, "results.csv to analyse (default: <out>/results.csv)");
    auto* compare = app.add_subcommand("compare-windows", "Compare backtest accuracy between two test windows");
    add_common_flags(compare, flags);
    auto* model = app.add_subcommand("model", "Inspect fitted models");
    model->require_subcommand(1);
    auto* dump = model->add_subcommand("dump", "Fit one forecaster on one series and print its parameters as JSON");
    add_common_flags(dump, flags);
    std::string item, org, model_name, origin_text;
    dump->add_option("--item", item, "Item id")->required();
    dump->add_option("--org", org, "Organization id")->required();
    dump->add_option("--model", model_name, "Forecaster name")->required();
    dump->add_option("--origin", origin_text, "Last training month YYYY-MM (default: series end)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? static_cast<int>(kOk) : static_cast<int>(kUsage);
    }

    RunConfig config;
    try {
        config = resolve_config(flags);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    if (validate->parsed()) return cmd_validate(config, out, err);
    if (backtest->parsed()) return cmd_backtest(config, out, err);
    if (report->parsed()) {
        return cmd_report(config, results_path.empty() ? std::nullopt : std::optional<fs::path>(results_path), out, err);
    }
    if (compare->parsed()) return cmd_compare_windows(config, out, err);
    if (dump->parsed()) {
        std::optional<YearMonth> origin;
        try {
            if (!origin_text.empty()) origin = parse_year_month(origin_text);
        } catch (const std::invalid_argument& e) {
            err << "usage error: " << e.what() << '\n';
            return kUsage;
        }
        return cmd_model_dump(config, {item, org}, model_name, origin, out, err);
    }
    return kUsage;
}

}  // namespace arena::cli

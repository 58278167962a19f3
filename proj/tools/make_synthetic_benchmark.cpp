// Writes a benchmark-shaped synthetic dataset (target_ts.csv, related_ts.csv, holidays.csv).
#include "synthetic.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Generate a synthetic monthly sales panel in the benchmark's CSV layout", "make-synthetic-benchmark"};
    std::string out = "synthetic";
    arena::testing::SyntheticOptions options;
    std::string first = options.first.to_string();
    app.add_option("--out,-o", out, "Output directory");
    app.add_option("--items", options.items, "Number of items")->check(CLI::PositiveNumber);
    app.add_option("--orgs", options.orgs, "Organizations per item")->check(CLI::PositiveNumber);
    app.add_option("--months", options.months, "Months of history")->check(CLI::PositiveNumber);
    app.add_option("--first", first, "First month (YYYY-MM)");
    app.add_option("--seed", options.seed, "Generator seed");
    CLI11_PARSE(app, argc, argv);

    try {
        options.first = arena::parse_year_month(first);
        const auto bundle = arena::testing::synthetic_bundle(options);
        arena::testing::write_dataset(bundle, out);
        std::cout << "wrote " << bundle.series.size() << " series to " << out << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

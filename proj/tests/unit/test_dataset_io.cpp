#include "arena/dataset_io.hpp"
#include "arena/errors.hpp"
#include "synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

using namespace arena;

namespace {

std::vector<SalesRecord> parse_target(const std::string& text, ParseOptions options = {}) {
    std::istringstream in(text);
    return parse_target_csv(in, options);
}

std::vector<PriceRecord> parse_related(const std::string& text) {
    std::istringstream in(text);
    return parse_related_csv(in);
}

std::string error_of(auto&& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

const SeriesKey k{"3959294", "1617388"};

}  // namespace

TEST_CASE("target row from the benchmark") {
    const auto rows = parse_target("item,org,date,quantity\n3959294,1617388,2021-01-01,3718\n");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] == SalesRecord{k, YearMonth(2021, 1), 3718.0});
}

TEST_CASE("header only gives no records") {
    CHECK(parse_target("item,org,date,quantity\n").empty());
    CHECK(parse_target("item,org,date,quantity").empty());
    CHECK(parse_related("item,org,date,unit_price\r\n").empty());
}

TEST_CASE("utf-8 byte order mark and CRLF are accepted") {
    const auto rows = parse_target("\xEF\xBB\xBFitem,org,date,quantity\r\n1,2,2021-02-01,5\r\n");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].month == YearMonth(2021, 2));
}

TEST_CASE("target parse errors carry the row number") {
    CHECK(error_of([] { parse_target("item,org,date,quantity\n1,2,2021-01-15,3\n"); }) ==
          "row 2: date not first of month: '2021-01-15'");
    CHECK(error_of([] { parse_target("item,org,date,quantity\n1,2,2021-01-01,3\n1,2,2021-02-01,-1\n"); })
              .starts_with("row 3: negative quantity"));
    CHECK(error_of([] { parse_target("item,org,date,quantity\n1,2,2021-01-01,abc\n"); })
              .starts_with("row 2: non-numeric quantity"));
    CHECK(error_of([] { parse_target("item,org,date,quantity\n1,2,01/01/2021,3\n"); }).starts_with("row 2:"));
    CHECK(error_of([] { parse_target("item,org,date,qty\n"); }).starts_with("row 1: unexpected header"));
    CHECK(error_of([] { parse_target(""); }).starts_with("row 1: missing header"));
    CHECK(error_of([] { parse_target("item,org,date,quantity\n1,2,2021-01-01\n"); }).starts_with("row 2: expected 4"));
    CHECK(error_of([] { parse_target("item,org,date,quantity\n,2,2021-01-01,1\n"); }).starts_with("row 2: empty"));
}

TEST_CASE("mid-month dates normalize on request") {
    ParseOptions opt;
    opt.normalize_dates = true;
    const auto rows = parse_target("item,org,date,quantity\n1,2,2021-01-15,3\n", opt);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].month == YearMonth(2021, 1));
}

TEST_CASE("related rows") {
    const auto rows = parse_related("item,org,date,unit_price\n3959294,1617388,2021-01-01,0.611830413\n");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] == PriceRecord{k, YearMonth(2021, 1), 0.611830413});
    CHECK(error_of([] { parse_related("item,org,date,unit_price\n1,2,2021-01-01,0\n"); })
              .starts_with("row 2: non-positive unit_price"));
    CHECK(error_of([] { parse_related("item,org,date,unit_price\n1,2,2021-01-01,-2\n"); })
              .starts_with("row 2: non-positive unit_price"));
    CHECK(error_of([] { parse_related("item,org,date,price\n"); }).starts_with("row 1: unexpected header"));
}

TEST_CASE("holiday calendar") {
    std::istringstream one("date,name\n2021-01-01,New Year\n");
    CHECK(load_holidays(one).entries.size() == 1);

    std::istringstream empty("");
    CHECK(load_holidays(empty).empty());

    std::istringstream dup("date,name\n2021-01-01,New Year\n2021-01-01,New Year\n2021-01-02,New Year\n");
    const auto cal = load_holidays(dup);
    CHECK(cal.entries.size() == 2);
    CHECK(cal.names() == std::vector<std::string>{"New Year"});

    std::istringstream bad("date,name\n2021-02-30,X\n");
    CHECK_THROWS_AS(load_holidays(bad), ParseError);
}

TEST_CASE("daily aggregation") {
    const SeriesKey key{"i", "o"};
    SUBCASE("constant price") {
        const auto [sales, prices] = aggregate_daily_to_monthly({{key, {2021, 1, 5}, 3, 2.0}, {key, {2021, 1, 9}, 4, 2.0}});
        REQUIRE(sales.size() == 1);
        CHECK(sales[0].quantity == 7.0);
        REQUIRE(prices.size() == 1);
        CHECK(prices[0].unit_price == 2.0);
    }
    SUBCASE("quantity-weighted mean") {
        const auto [sales, prices] = aggregate_daily_to_monthly({{key, {2021, 1, 5}, 1, 1.0}, {key, {2021, 1, 9}, 3, 2.0}});
        CHECK(sales[0].quantity == 4.0);
        CHECK(prices[0].unit_price == doctest::Approx(1.75).epsilon(1e-15));
    }
    SUBCASE("single record passes through") {
        const auto [sales, prices] = aggregate_daily_to_monthly({{key, {2021, 3, 17}, 5, 0.5}});
        REQUIRE(sales.size() == 1);
        CHECK(sales[0] == SalesRecord{key, YearMonth(2021, 3), 5.0});
        CHECK(prices[0] == PriceRecord{key, YearMonth(2021, 3), 0.5});
    }
    SUBCASE("zero-quantity month has no price") {
        const auto [sales, prices] = aggregate_daily_to_monthly({{key, {2021, 3, 17}, 0, 0.5}});
        REQUIRE(sales.size() == 1);
        CHECK(sales[0].quantity == 0.0);
        CHECK(prices.empty());
    }
}

TEST_CASE("daily aggregation preserves quantity per month") {
    testing::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<DailyRecord> daily;
        std::map<std::pair<SeriesKey, YearMonth>, double> expected;
        const int n = rng.uniform_int(1, 60);
        for (int i = 0; i < n; ++i) {
            const SeriesKey key{std::to_string(rng.uniform_int(1, 3)), "o"};
            const Date day{2020, rng.uniform_int(1, 4), rng.uniform_int(1, 28)};
            const double q = static_cast<double>(rng.uniform_int(0, 50));
            daily.push_back({key, day, q, rng.uniform(0.5, 3.0)});
            expected[{key, month_of(day)}] += q;
        }
        const auto [sales, prices] = aggregate_daily_to_monthly(daily);
        REQUIRE(sales.size() == expected.size());
        for (const auto& s : sales) CHECK(s.quantity == expected.at({s.key, s.month}));
    }
}

TEST_CASE("assemble fills gaps") {
    const SeriesKey key{"i", "o"};
    const auto bundle = assemble_series({{key, YearMonth(2021, 1), 5}, {key, YearMonth(2021, 3), 7}},
                                        {{key, YearMonth(2021, 1), 1.5}});
    const auto& s = bundle.series.at(key);
    CHECK(s.start == YearMonth(2021, 1));
    CHECK(s.quantities == std::vector<double>{5, 0, 7});
    CHECK(s.prices == std::vector<double>{1.5, 1.5, 1.5});
}

TEST_CASE("assemble carries prices backward over a leading gap") {
    const SeriesKey key{"i", "o"};
    const auto bundle = assemble_series(
        {{key, YearMonth(2021, 1), 1}, {key, YearMonth(2021, 4), 1}},
        {{key, YearMonth(2021, 2), 2.0}, {key, YearMonth(2021, 4), 3.0}});
    CHECK(bundle.series.at(key).prices == std::vector<double>{2.0, 2.0, 2.0, 3.0});
}

TEST_CASE("assemble edge cases and errors") {
    const SeriesKey key{"i", "o"};
    const auto single = assemble_series({{key, YearMonth(2021, 1), 5}}, {{key, YearMonth(2021, 1), 1.0}});
    CHECK(single.series.at(key).size() == 1);

    CHECK_THROWS_WITH_AS(assemble_series({{key, YearMonth(2021, 1), 5}, {key, YearMonth(2021, 1), 6}},
                                         {{key, YearMonth(2021, 1), 1.0}}),
                         doctest::Contains("duplicate month"), DataError);
    CHECK_THROWS_WITH_AS(assemble_series({{key, YearMonth(2021, 1), 5}}, {}), doctest::Contains("no price"), DataError);
}

TEST_CASE("write then parse reproduces the records") {
    testing::SyntheticOptions opt;
    opt.items = 6;
    opt.months = 30;
    const auto bundle = testing::synthetic_bundle(opt);
    auto sales = testing::sales_records(bundle);
    auto prices = testing::price_records(bundle);
    // awkward identifiers survive quoting
    sales.push_back({{"item,with \"comma\"", "org"}, YearMonth(2020, 5), 0.125});
    prices.push_back({{"item,with \"comma\"", "org"}, YearMonth(2020, 5), 1e-7});

    std::ostringstream t, r;
    write_target_csv(t, sales);
    write_related_csv(r, prices);
    CHECK(parse_target(t.str()) == sales);
    CHECK(parse_related(r.str()) == prices);
}

TEST_CASE("assembled series are gap-free and keep total quantity") {
    testing::Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<SalesRecord> sales;
        std::vector<PriceRecord> prices;
        double total = 0.0;
        for (int key_id = 0; key_id < 3; ++key_id) {
            const SeriesKey key{"item" + std::to_string(key_id), "org"};
            const YearMonth start(2018, rng.uniform_int(1, 12));
            const int span = rng.uniform_int(1, 40);
            for (int t = 0; t < span; ++t) {
                if (t != 0 && t != span - 1 && rng.chance(0.3)) continue;
                const double q = static_cast<double>(rng.uniform_int(0, 100));
                total += q;
                sales.push_back({key, start + t, q});
                if (rng.chance(0.5) || t == 0) prices.push_back({key, start + t, rng.uniform(0.1, 5.0)});
            }
        }
        std::reverse(sales.begin(), sales.end());
        const auto bundle = assemble_series(sales, prices);
        double assembled = 0.0;
        for (const auto& [key, s] : bundle.series) {
            YearMonth first = s.start, last = s.start;
            for (const auto& r : sales) {
                if (r.key == key) {
                    first = std::min(first, r.month);
                    last = std::max(last, r.month);
                }
            }
            CHECK(s.start == first);
            CHECK(s.size() == static_cast<std::size_t>(last - first + 1));
            CHECK(s.prices.size() == s.size());
            CHECK(std::all_of(s.prices.begin(), s.prices.end(), [](double p) { return p > 0.0; }));
            assembled += std::accumulate(s.quantities.begin(), s.quantities.end(), 0.0);
        }
        CHECK(assembled == total);
    }
}

TEST_CASE("serialized bundles are deterministic and order-independent") {
    testing::SyntheticOptions opt;
    opt.items = 5;
    opt.months = 26;
    const auto bundle = testing::synthetic_bundle(opt);
    auto sales = testing::sales_records(bundle);
    auto prices = testing::price_records(bundle);
    const auto a = serialize_bundle(assemble_series(sales, prices));
    std::reverse(sales.begin(), sales.end());
    std::rotate(prices.begin(), prices.begin() + 7, prices.end());
    const auto b = serialize_bundle(assemble_series(sales, prices));
    CHECK(a == b);
    CHECK(a == serialize_bundle(assemble_series(testing::sales_records(bundle), testing::price_records(bundle))));
}

TEST_CASE("truncated series") {
    MonthlySeries s{{"i", "o"}, YearMonth(2020, 1), {1, 2, 3, 4}, {1, 1, 1, 1}};
    const auto t = s.truncated(YearMonth(2020, 2));
    CHECK(t.quantities == std::vector<double>{1, 2});
    CHECK(t.end() == YearMonth(2020, 2));
    CHECK_THROWS(s.truncated(YearMonth(2020, 5)));
}

TEST_CASE("drop_before trims old records") {
    const SeriesKey key{"i", "o"};
    const std::vector<SalesRecord> sales{{key, YearMonth(2014, 12), 1}, {key, YearMonth(2015, 1), 2}};
    const auto kept = drop_before(sales, YearMonth(2015, 1));
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].quantity == 2);
}

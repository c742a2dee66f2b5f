#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <fmt/format.h>

#include "macrovar/data_source.hpp"
#include "macrovar/error.hpp"

using namespace macrovar;
namespace fs = std::filesystem;

namespace {

struct FakeClient final : HttpClient {
    std::vector<HttpResponse> script;  ///< replayed in order, last entry repeats
    std::vector<std::string> paths;
    HttpResponse get(const std::string&, const std::string& path) override {
        paths.push_back(path);
        const std::size_t i = std::min(paths.size() - 1, script.size() - 1);
        return script[i];
    }
};

std::string wb_body(int start, int end, double base) {
    std::string rows;
    for (int y = end; y >= start; --y) {
        if (!rows.empty()) rows += ",";
        rows += y == start + 3 ? fmt::format(R"({{"date":"{}","value":null}})", y)
                               : fmt::format(R"({{"date":"{}","value":{}}})", y, base + 0.1 * (y - start));
    }
    return R"([{"page":1,"pages":1,"total":5},[)" + rows + "]]";
}

fs::path temp_dir(const std::string& tag) {
    std::random_device rd;
    const auto p = fs::temp_directory_path() / fmt::format("macrovar-{}-{:x}", tag, rd());
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("bundled fixtures load with 33 rows and three variables") {
    for (const char* c : {"bangladesh", "india", "pakistan"}) {
        const auto raw = read_country_csv(fmt::format("{}/{}.csv", FIXTURE_DIR, c), c);
        REQUIRE(raw.series.size() == 3);
        CHECK(raw.series[0].name() == "hdi");
        CHECK(raw.series[1].name() == "gov_exp_health");
        CHECK(raw.series[2].name() == "gov_exp_edu");
        CHECK(raw.series[0].size() == 33);
        CHECK(raw.series[0].start_year() == 1992);
        const auto panel = align_panel(raw.series);
        CHECK(panel.num_obs() == 33);
        CHECK(panel.num_vars() == 3);
    }
}

TEST_CASE("country CSV parsing") {
    const auto raw = parse_country_csv("\xEF\xBB\xBFyear,gov_exp_edu,hdi,gov_exp_health\n"
                                       "2000,1.5,0.40,2.0\n2001,NA,0.41,\"2.1\"\n2002,..,,2.2\n2003,1.8,0.43,2.3\n",
                                       "x");
    CHECK(raw.series[0].name() == "hdi");
    CHECK(raw.series[0].values()[2] == std::nullopt);
    CHECK(raw.series[1].values()[1] == std::optional<double>(2.1));
    CHECK(raw.series[2].values()[1] == std::nullopt);
    CHECK(raw.series[2].values()[2] == std::nullopt);
    CHECK_THROWS_WITH_AS(parse_country_csv("year,gov_exp_health,gov_exp_edu\n2000,1,2\n", "x"),
                         doctest::Contains("missing column: hdi"), DataError);
    CHECK_THROWS_AS(parse_country_csv("year,hdi,gov_exp_health,gov_exp_edu\n2000,0.4,1,2\n2002,0.4,1,2\n", "x"),
                    DataError);
    CHECK_THROWS_AS(parse_country_csv("year,hdi,gov_exp_health,gov_exp_edu\n2000,0.4,abc,2\n", "x"), DataError);
    CHECK_THROWS_AS(parse_country_csv("year,hdi,gov_exp_health,gov_exp_edu\n2000,0.4,1\n", "x"), DataError);
    CHECK_THROWS_AS(read_country_csv("/nonexistent.csv", "x"), DataError);
}

TEST_CASE("World Bank JSON parsing") {
    const auto v = parse_worldbank_json(wb_body(2000, 2005, 3.0), 2000, 2005);
    REQUIRE(v.size() == 6);
    CHECK(v[0] == std::optional<double>(3.0));
    CHECK(v[3] == std::nullopt);
    CHECK(*v[5] == doctest::Approx(3.5));
    CHECK_THROWS_WITH_AS(parse_worldbank_json(R"([{"message":[{"id":"120"}]}])", 2000, 2005),
                         doctest::Contains("API error"), DataError);
    CHECK_THROWS_AS(parse_worldbank_json("<html>", 2000, 2005), DataError);
    CHECK_THROWS_AS(parse_worldbank_json(R"([{}, [{"date":"2000"}]])", 2000, 2005), DataError);
    CHECK(WorldBankSource::request_path("BGD", "SH.XPD.CHEX.GD.ZS", 1992, 2024) ==
          "/v2/country/BGD/indicator/SH.XPD.CHEX.GD.ZS?format=json&date=1992:2024&per_page=1000");
}

TEST_CASE("fetches are cached and replayed byte-identically without the network") {
    const auto dir = temp_dir("cache");
    FakeClient client;
    client.script = {HttpResponse{200, wb_body(2000, 2005, 1.0), ""}};
    WorldBankSource online(dir.string(), false, &client);
    const auto first = online.indicator("BGD", "X.Y", 2000, 2005);
    CHECK(client.paths.size() == 1);

    FakeClient guard;  // any call is a failure
    guard.script = {HttpResponse{0, "", "network disabled"}};
    WorldBankSource offline(dir.string(), true, &guard);
    CHECK(offline.indicator("BGD", "X.Y", 2000, 2005) == first);
    WorldBankSource cached_online(dir.string(), false, &guard);
    CHECK(cached_online.indicator("BGD", "X.Y", 2000, 2005) == first);
    CHECK(guard.paths.empty());

    CHECK_THROWS_WITH_AS(offline.indicator("IND", "X.Y", 2000, 2005), doctest::Contains("offline mode"), DataError);
    CHECK(guard.paths.empty());
    fs::remove_all(dir);
}

TEST_CASE("transient HTTP failures are retried, persistent ones reported") {
    const auto dir = temp_dir("retry");
    FakeClient flaky;
    flaky.script = {HttpResponse{503, "", ""}, HttpResponse{0, "", "timeout"}, HttpResponse{200, wb_body(2000, 2002, 5.0), ""}};
    WorldBankSource src(dir.string(), false, &flaky, 3);
    CHECK(src.indicator("PAK", "A.B", 2000, 2002).size() == 3);
    CHECK(flaky.paths.size() == 3);

    FakeClient down;
    down.script = {HttpResponse{500, "", ""}};
    WorldBankSource src2(dir.string(), false, &down, 2);
    CHECK_THROWS_WITH_AS(src2.indicator("PAK", "C.D", 2000, 2002), doctest::Contains("after 2 attempts"), DataError);
    CHECK(down.paths.size() == 2);
    CHECK_FALSE(fs::exists(dir / "worldbank" / "PAK_C.D_2000_2002.json"));
    fs::remove_all(dir);
}

TEST_CASE("fetch_indicators combines the HDI file with two API indicators") {
    const auto dir = temp_dir("fetch");
    {
        std::ofstream hdi(dir / "hdi.csv");
        hdi << "country,year,hdi\nIND,2000,0.49\nIND,2001,0.50\nIND,2002,0.51\nPAK,2000,0.4\n";
    }
    PipelineConfig cfg;
    cfg.data_source = DataSourceKind::WorldBankFetch;
    cfg.cache_dir = (dir / "cache").string();
    cfg.hdi_csv = (dir / "hdi.csv").string();
    cfg.start_year = 2000;
    cfg.end_year = 2002;
    FakeClient client;
    client.script = {HttpResponse{200, wb_body(2000, 2002, 2.0), ""}};
    const auto raw = fetch_indicators("india", cfg, &client);
    CHECK(raw.series.size() == 3);
    CHECK(*raw.series[0].values()[1] == 0.50);
    CHECK(client.paths.size() == 2);
    cfg.offline = true;
    CHECK_THROWS_AS(fetch_indicators("pakistan", cfg, nullptr), DataError);
    fs::remove_all(dir);
}

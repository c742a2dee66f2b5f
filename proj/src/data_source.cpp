#include "macrovar/data_source.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/tokenizer.hpp>
#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "macrovar/error.hpp"

namespace macrovar {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kWorldBankHost = "api.worldbank.org";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    using Sep = boost::escaped_list_separator<char>;
    boost::tokenizer<Sep> tok(line, Sep('\\', ',', '"'));
    std::vector<std::string> out;
    for (const auto& cell : tok) out.push_back(trim(cell));
    return out;
}

// Splits text into non-empty lines, dropping a UTF-8 byte-order mark.
std::vector<std::string> csv_lines(std::string text) {
    if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) lines.push_back(line);
    }
    return lines;
}

double parse_number(const std::string& cell, const std::string& what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || p != cell.data() + cell.size()) {
        throw DataError("non-numeric value '" + cell + "' in " + what);
    }
    return v;
}

int parse_year(const std::string& cell, const std::string& what) {
    int y = 0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), y);
    if (ec != std::errc() || p != cell.data() + cell.size()) {
        throw DataError("invalid year '" + cell + "' in " + what);
    }
    return y;
}

}  // namespace

RawPanel parse_country_csv(const std::string& text, const std::string& country, const std::string& source) {
    const auto lines = csv_lines(text);
    if (lines.empty()) throw DataError("empty CSV: " + source);
    const auto header = split_csv_line(lines.front());
    auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw DataError("missing column: " + name);
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t year_col = column("year");
    std::vector<std::size_t> cols;
    for (const auto& name : kPanelColumns) cols.push_back(column(name));

    std::vector<int> years;
    std::vector<std::vector<std::optional<double>>> values(cols.size());
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split_csv_line(lines[r]);
        if (cells.size() != header.size()) {
            throw DataError(fmt::format("{}: row {} has {} cells, header has {}", source, r + 1, cells.size(),
                                        header.size()));
        }
        years.push_back(parse_year(cells[year_col], source));
        for (std::size_t v = 0; v < cols.size(); ++v) {
            const auto& cell = cells[cols[v]];
            if (cell.empty() || cell == "NA" || cell == "..") {
                values[v].push_back(std::nullopt);
            } else {
                values[v].push_back(parse_number(cell, source + " column " + kPanelColumns[v]));
            }
        }
    }
    if (years.empty()) throw DataError("no data rows: " + source);
    for (std::size_t i = 1; i < years.size(); ++i) {
        if (years[i] != years[i - 1] + 1) {
            throw DataError(fmt::format("{}: years must be consecutive and ascending (found {} after {})", source,
                                        years[i], years[i - 1]));
        }
    }
    RawPanel raw;
    raw.country = country;
    raw.source = source;
    for (std::size_t v = 0; v < cols.size(); ++v) {
        raw.series.emplace_back(kPanelColumns[v], country, years.front(), std::move(values[v]));
    }
    return raw;
}

RawPanel read_country_csv(const std::string& path, const std::string& country) {
    return parse_country_csv(read_file(path), country, path);
}

namespace {

class HttplibClient final : public HttpClient {
public:
    HttpResponse get(const std::string& host, const std::string& path) override {
        httplib::SSLClient cli(host);
        cli.set_connection_timeout(10);
        cli.set_read_timeout(30);
        cli.set_follow_location(true);
        HttpResponse out;
        if (auto res = cli.Get(path)) {
            out.status = res->status;
            out.body = res->body;
        } else {
            out.error = httplib::to_string(res.error());
        }
        return out;
    }
};

}  // namespace

std::unique_ptr<HttpClient> make_default_http_client() { return std::make_unique<HttplibClient>(); }

WorldBankSource::WorldBankSource(std::string cache_dir, bool offline, HttpClient* client, int max_attempts)
    : cache_dir_(std::move(cache_dir)), offline_(offline), client_(client), max_attempts_(max_attempts) {}

std::string WorldBankSource::request_path(const std::string& iso3, const std::string& code, int start_year,
                                          int end_year) {
    return fmt::format("/v2/country/{}/indicator/{}?format=json&date={}:{}&per_page=1000", iso3, code,
                       start_year, end_year);
}

std::string WorldBankSource::fetch_body(const std::string& iso3, const std::string& code, int start_year,
                                        int end_year) {
    const fs::path cached =
        fs::path(cache_dir_) / "worldbank" / fmt::format("{}_{}_{}_{}.json", iso3, code, start_year, end_year);
    if (fs::exists(cached)) return read_file(cached.string());
    if (offline_) throw DataError("offline mode: no cached response for " + iso3 + " " + code);
    if (client_ == nullptr) throw DataError("no HTTP client available for " + iso3 + " " + code);

    const std::string path = request_path(iso3, code, start_year, end_year);
    std::string last;
    for (int attempt = 1; attempt <= max_attempts_; ++attempt) {
        const auto res = client_->get(kWorldBankHost, path);
        if (res.status == 200) {
            parse_worldbank_json(res.body, start_year, end_year);  // validate before caching
            fs::create_directories(cached.parent_path());
            const fs::path tmp = cached.string() + ".tmp";
            {
                std::ofstream out(tmp, std::ios::binary);
                out << res.body;
            }
            fs::rename(tmp, cached);
            return res.body;
        }
        last = res.status ? "HTTP " + std::to_string(res.status) : res.error;
    }
    throw DataError(fmt::format("HTTP failure for {} {} after {} attempts: {}", iso3, code, max_attempts_, last));
}

std::vector<std::optional<double>> WorldBankSource::indicator(const std::string& iso3, const std::string& code,
                                                              int start_year, int end_year) {
    return parse_worldbank_json(fetch_body(iso3, code, start_year, end_year), start_year, end_year);
}

std::vector<std::optional<double>> parse_worldbank_json(const std::string& body, int start_year, int end_year) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("World Bank response is not JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.empty()) throw DataError("World Bank response: expected a top-level array");
    if (doc.size() == 1 && doc[0].contains("message")) {
        throw DataError("World Bank API error: " + doc[0]["message"].dump());
    }
    if (doc.size() < 2 || !doc[1].is_array()) throw DataError("World Bank response: missing data array");

    std::vector<std::optional<double>> values(static_cast<std::size_t>(end_year - start_year + 1));
    for (const auto& row : doc[1]) {
        if (!row.contains("date")) throw DataError("World Bank response: missing field: date");
        if (!row.contains("value")) throw DataError("World Bank response: missing field: value");
        const int year = parse_year(row["date"].get<std::string>(), "World Bank date");
        if (year < start_year || year > end_year) continue;
        if (!row["value"].is_null()) values[static_cast<std::size_t>(year - start_year)] = row["value"].get<double>();
    }
    return values;
}

std::vector<std::optional<double>> read_hdi_csv(const std::string& path, const std::string& country,
                                                const std::string& iso3, int start_year, int end_year) {
    const auto lines = csv_lines(read_file(path));
    if (lines.empty()) throw DataError("empty HDI file: " + path);
    const auto header = split_csv_line(lines.front());
    auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw DataError("missing column: " + name);
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto c_country = column("country");
    const auto c_year = column("year");
    const auto c_hdi = column("hdi");
    std::vector<std::optional<double>> values(static_cast<std::size_t>(end_year - start_year + 1));
    const std::string want = lower(country);
    const std::string want_iso = lower(iso3);
    bool any = false;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split_csv_line(lines[r]);
        if (cells.size() != header.size()) throw DataError(fmt::format("{}: malformed row {}", path, r + 1));
        const std::string who = lower(cells[c_country]);
        if (who != want && who != want_iso) continue;
        any = true;
        const int year = parse_year(cells[c_year], path);
        if (year < start_year || year > end_year || cells[c_hdi].empty()) continue;
        values[static_cast<std::size_t>(year - start_year)] = parse_number(cells[c_hdi], path + " column hdi");
    }
    if (!any) throw DataError("no HDI rows for " + country + " in " + path);
    return values;
}

RawPanel fetch_indicators(const std::string& country, const PipelineConfig& cfg, HttpClient* client) {
    if (cfg.data_source == DataSourceKind::CsvDir) {
        return read_country_csv((fs::path(cfg.data_dir) / (country + ".csv")).string(), country);
    }
    const auto it = cfg.iso3.find(country);
    if (it == cfg.iso3.end()) throw DataError("no ISO3 code configured for " + country);
    const std::string& iso3 = it->second;

    std::unique_ptr<HttpClient> owned;
    if (client == nullptr && !cfg.offline) {
        owned = make_default_http_client();
        client = owned.get();
    }
    WorldBankSource wb(cfg.cache_dir, cfg.offline, client);
    RawPanel raw;
    raw.country = country;
    raw.source = fmt::format("World Bank API ({}, {}) + {}", cfg.health_indicator, cfg.edu_indicator, cfg.hdi_csv);
    raw.series.emplace_back("hdi", country, cfg.start_year,
                            read_hdi_csv(cfg.hdi_csv, country, iso3, cfg.start_year, cfg.end_year));
    raw.series.emplace_back("gov_exp_health", country, cfg.start_year,
                            wb.indicator(iso3, cfg.health_indicator, cfg.start_year, cfg.end_year));
    raw.series.emplace_back("gov_exp_edu", country, cfg.start_year,
                            wb.indicator(iso3, cfg.edu_indicator, cfg.start_year, cfg.end_year));
    return raw;
}

}  // namespace macrovar

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "macrovar/config.hpp"
#include "macrovar/series.hpp"

namespace macrovar {

/// Unaligned series for one country, missing cells preserved.
struct RawPanel {
    std::string country;
    std::vector<AnnualSeries> series;  ///< hdi, gov_exp_health, gov_exp_edu
    std::string source;                ///< human-readable origin
};

/// Column names expected in per-country CSV files.
inline const std::vector<std::string> kPanelColumns{"hdi", "gov_exp_health", "gov_exp_edu"};

/// Reads `year,hdi,gov_exp_health,gov_exp_edu` (any column order; extra columns ignored).
RawPanel read_country_csv(const std::string& path, const std::string& country);
RawPanel parse_country_csv(const std::string& text, const std::string& country,
                           const std::string& source = "csv");

struct HttpResponse {
    int status = 0;     ///< 0 when the request never completed
    std::string body;
    std::string error;  ///< transport error text
};

/// Minimal HTTPS GET seam so tests can substitute the network.
class HttpClient {
public:
    virtual ~HttpClient() = default;
    virtual HttpResponse get(const std::string& host, const std::string& path) = 0;
};

/// cpp-httplib backed client.
std::unique_ptr<HttpClient> make_default_http_client();

/**
 * @brief World Bank indicators API reader with an on-disk response cache.
 *
 * A cached response is always replayed without touching the network. In
 * offline mode a cache miss is an error and the HTTP client is never called.
 */
class WorldBankSource {
public:
    WorldBankSource(std::string cache_dir, bool offline, HttpClient* client, int max_attempts = 3);

    /// Values for start_year..end_year (missing where the API reports null or no row).
    std::vector<std::optional<double>> indicator(const std::string& iso3, const std::string& code,
                                                 int start_year, int end_year);

    static std::string request_path(const std::string& iso3, const std::string& code, int start_year,
                                    int end_year);

private:
    std::string fetch_body(const std::string& iso3, const std::string& code, int start_year, int end_year);

    std::string cache_dir_;
    bool offline_;
    HttpClient* client_;
    int max_attempts_;
};

/// Parses one World Bank JSON response into values for start_year..end_year.
std::vector<std::optional<double>> parse_worldbank_json(const std::string& body, int start_year, int end_year);

/// Reads `country,year,hdi` rows for one country (matched case-insensitively by name or ISO3).
std::vector<std::optional<double>> read_hdi_csv(const std::string& path, const std::string& country,
                                                const std::string& iso3, int start_year, int end_year);

/// Ingests one country according to the configured source.
RawPanel fetch_indicators(const std::string& country, const PipelineConfig& cfg, HttpClient* client = nullptr);

}  // namespace macrovar

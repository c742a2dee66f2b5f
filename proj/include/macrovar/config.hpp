#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace macrovar {

enum class DataSourceKind { CsvDir, WorldBankFetch };
enum class SampleForm { Levels, Differences };
enum class OutputFormat { Markdown, Csv, Json };

/**
 * @brief Run configuration.
 *
 * Read from a flat `key = value` file (a TOML subset: strings, integers,
 * floats, booleans and one-line lists; `#` comments). Dotted keys such as
 * `units.hdi` and `iso3.india` fill the map-valued fields.
 */
struct PipelineConfig {
    std::vector<std::string> countries{"bangladesh", "india", "pakistan"};
    DataSourceKind data_source = DataSourceKind::CsvDir;
    std::string data_dir = "data/fixtures";
    std::string cache_dir = ".macrovar-cache";
    std::string hdi_csv;  ///< country,year,hdi (worldbank_fetch only)
    std::string health_indicator = "SH.XPD.CHEX.GD.ZS";
    std::string edu_indicator = "SE.XPD.TOTL.GD.ZS";
    int start_year = 1992;
    int end_year = 2024;
    std::map<std::string, std::string> iso3{{"bangladesh", "BGD"}, {"india", "IND"}, {"pakistan", "PAK"}};
    std::map<std::string, std::string> units{
        {"hdi", "index"}, {"gov_exp_health", "% of GDP"}, {"gov_exp_edu", "% of GDP"}};

    SampleForm estimate_on = SampleForm::Levels;
    SampleForm johansen_on = SampleForm::Levels;
    std::optional<int> lag_order = 2;  ///< empty = "auto"
    int max_lag_search = 2;
    int horizon = 10;
    std::vector<std::string> ordering{"hdi", "gov_exp_health", "gov_exp_edu"};
    std::uint64_t seed = 20240601;
    OutputFormat output_format = OutputFormat::Markdown;

    std::string adf_lag_rule = "schwarz";  ///< "schwarz" or "fixed"
    int adf_lags = 0;                      ///< fixed rule
    std::optional<int> adf_max_lags;       ///< schwarz ceiling
    int johansen_lags = 1;
    int lm_max_lag = 3;
    int xcorr_max_lag = 12;
    int irf_draws = 1000;
    int holdout = 4;

    bool keep_going = false;
    bool offline = false;
    int threads = 1;

    /// Throws DataError on inconsistent settings.
    void validate() const;
};

using ConfigValue = std::variant<bool, std::int64_t, double, std::string, std::vector<std::string>>;

/// Parses the flat key/value syntax; keys map to raw values. Throws DataError with a line number.
std::map<std::string, ConfigValue> parse_flat_config(const std::string& text);

PipelineConfig config_from_text(const std::string& text);
PipelineConfig load_config(const std::string& path);

std::string to_string(DataSourceKind k);
std::string to_string(SampleForm f);
std::string to_string(OutputFormat f);
OutputFormat parse_output_format(const std::string& s);

/// Canonical `key = value` rendering; config_from_text(describe_config(c)) reproduces c.
/// Without `include_runtime` the thread count is left out (it never affects results).
std::string describe_config(const PipelineConfig& cfg, bool include_runtime = true);

}  // namespace macrovar

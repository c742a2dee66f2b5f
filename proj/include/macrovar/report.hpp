#pragma once

#include <optional>
#include <string>
#include <vector>

#include "macrovar/config.hpp"
#include "macrovar/diagnostics.hpp"
#include "macrovar/forecast.hpp"
#include "macrovar/stationarity.hpp"
#include "macrovar/structural.hpp"
#include "macrovar/var_model.hpp"

namespace macrovar {

/// A report section: either a result or the reason it is missing.
template <class T>
struct Section {
    std::optional<T> value;
    std::string skipped;

    bool present() const { return value.has_value(); }
    void skip(std::string reason) {
        value.reset();
        skipped = std::move(reason);
    }
};

struct CountryReport {
    std::string country;
    std::string source;
    int first_year = 0;
    int last_year = 0;
    int n_obs = 0;
    std::vector<std::string> names;
    std::vector<std::string> units;
    std::vector<std::string> warnings;

    Section<std::vector<AdfResult>> adf_levels;
    Section<std::vector<AdfResult>> adf_differences;

    Section<JohansenResult> johansen;
    std::string johansen_sample;  ///< "levels" or "differences"
    std::string johansen_caveat;  ///< non-empty when the sample choice deserves a warning

    Section<LagSelection> lag_selection;

    Section<VarEstimate> var;
    std::string var_sample;    ///< "levels" or "differences"
    std::string var_lag_note;  ///< how the lag order was chosen

    Section<std::vector<WaldBlockResult>> granger;
    Section<StabilityResult> stability;
    Section<CrossCorrResult> cross_correlations;
    Section<LmResult> lm;
    Section<StructuralSet> structural;
    Section<ForecastEvaluation> forecast;
};

struct Provenance {
    std::string tool = "macrovar";
    std::string version;
    std::string data_source;
    std::string config;  ///< canonical config text
    std::vector<std::string> libraries;
    std::vector<std::string> notes;
};

struct RunReport {
    Provenance provenance;
    std::vector<CountryReport> countries;
};

/// Full-precision JSON; non-finite numbers are encoded as the strings "nan", "inf", "-inf".
std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

/// Version string of this library.
const char* library_version();

}  // namespace macrovar

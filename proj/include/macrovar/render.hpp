#pragma once

#include <string>
#include <utility>
#include <vector>

#include "macrovar/config.hpp"
#include "macrovar/report.hpp"

namespace macrovar {

/// Statistic: 6 significant digits; "NA" for non-finite values.
std::string fmt_stat(double x);
/// Probability: 4 decimals.
std::string fmt_p(double p);

std::string adf_interpretation(const AdfResult& r);
std::string johansen_interpretation(const JohansenResult& r, std::size_t rank);
std::string granger_interpretation(const WaldBlockResult& w);
std::string stability_interpretation(const StabilityResult& s);
std::string lm_interpretation(const LmRow& r);

/// Section filter. Keys: data, adf_levels, adf_differences, johansen, lag_selection, var,
/// granger, stability, structural, cross_correlations, lm, forecast. Empty = everything.
struct RenderOptions {
    std::vector<std::string> sections;
    bool wants(const std::string& key) const;
};

/// Named long-form CSV tables (name without extension, content).
std::vector<std::pair<std::string, std::string>> render_csv_tables(const RunReport& report,
                                                                   const RenderOptions& opts = {});

std::string render_markdown(const RunReport& report, const RenderOptions& opts = {});

/// Markdown, JSON, or the CSV tables concatenated with `# table: <name>` separators.
/// JSON always carries the whole report.
std::string render_report(const RunReport& report, OutputFormat format, const RenderOptions& opts = {});

}  // namespace macrovar

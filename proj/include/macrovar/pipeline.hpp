#pragma once

#include <cstdint>
#include <string>

#include "macrovar/config.hpp"
#include "macrovar/data_source.hpp"
#include "macrovar/report.hpp"

namespace macrovar {

/// Seed for one country, derived from the run seed and the country name only.
std::uint64_t country_seed(std::uint64_t run_seed, const std::string& country);

AdfLagRule adf_rule_from_config(const PipelineConfig& cfg);

/**
 * Runs every analysis stage on one country's raw data.
 *
 * Stage order: interpolate, ADF on levels, difference, ADF on differences,
 * Johansen, lag selection, VAR, Granger-Wald, stability, cross-correlations,
 * LM tests, IRF/FEVD/historical decomposition, hold-out forecasts. With
 * cfg.keep_going a failed stage and everything depending on it are marked
 * skipped; otherwise a StageError is thrown.
 */
CountryReport analyse_country(const RawPanel& raw, const PipelineConfig& cfg);

/// Ingests and analyses every configured country; countries may run concurrently (cfg.threads).
RunReport run_pipeline(const PipelineConfig& cfg, HttpClient* client = nullptr);

}  // namespace macrovar

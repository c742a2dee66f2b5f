#pragma once

#include <optional>
#include <string>
#include <vector>

#include "macrovar/series.hpp"

namespace macrovar {

enum class AdfDeterministic { Constant };

/// How the number of lagged differences in the ADF regression is chosen.
struct AdfLagRule {
    enum class Kind { Fixed, InfoCriterion };
    Kind kind = Kind::InfoCriterion;
    int fixed_lags = 0;
    /// Search ceiling for InfoCriterion; defaults to floor(12 (T/100)^0.25).
    std::optional<int> max_lags;

    static AdfLagRule fixed(int k) { return {Kind::Fixed, k, std::nullopt}; }
    static AdfLagRule schwarz(std::optional<int> max_lags = std::nullopt) {
        return {Kind::InfoCriterion, 0, max_lags};
    }
    std::string describe() const;
};

struct AdfResult {
    double statistic = 0.0;  ///< t-ratio on y_{t-1}
    double p_value = 1.0;
    double cv_1pct = 0.0;
    double cv_5pct = 0.0;
    double cv_10pct = 0.0;
    int lags_used = 0;
    AdfDeterministic deterministic = AdfDeterministic::Constant;
    int n_obs = 0;
    std::string lag_rule;

    bool rejects_at(double level) const { return p_value < level; }
};

/// Minimum number of observations in the ADF test regression.
inline constexpr int kAdfMinObs = 10;

/**
 * Augmented Dickey-Fuller test with a constant:
 * dy_t = a + g y_{t-1} + sum_i d_i dy_{t-i} + e_t.
 *
 * With the information-criterion rule the Schwarz criterion is minimised over
 * 0..max_lags on a common sample, then the chosen lag is re-estimated on all
 * available observations.
 */
AdfResult adf_test(const AnnualSeries& series, const AdfLagRule& rule = AdfLagRule::schwarz());

/// Same test on a raw vector (used by Monte Carlo harnesses).
AdfResult adf_test(const std::vector<double>& y, const AdfLagRule& rule = AdfLagRule::schwarz());

enum class JohansenDeterministic {
    None,
    RestrictedIntercept,
    InterceptNoTrend,
    RestrictedTrend,
};

struct JohansenResult {
    std::vector<double> eigenvalues;  ///< descending
    std::vector<double> trace_stats;
    std::vector<double> max_eigen_stats;
    std::vector<double> trace_cv_5pct;
    std::vector<double> max_eigen_cv_5pct;
    std::vector<double> p_values_trace;  ///< gamma approximation
    std::vector<double> p_values_max;    ///< gamma approximation
    int rank_decision = 0;               ///< first r whose trace test is not rejected at 5%
    int lags_in_differences = 1;
    int n_obs = 0;
};

/**
 * Johansen reduced-rank test, intercept in the VAR and no trend.
 *
 * Only JohansenDeterministic::InterceptNoTrend is implemented; other cases
 * throw NumericError.
 */
JohansenResult johansen_test(const CountryPanel& panel, int lags_in_differences = 1,
                             JohansenDeterministic deterministic = JohansenDeterministic::InterceptNoTrend);

JohansenResult johansen_test(const Eigen::MatrixXd& levels, int lags_in_differences = 1,
                             JohansenDeterministic deterministic = JohansenDeterministic::InterceptNoTrend);

}  // namespace macrovar

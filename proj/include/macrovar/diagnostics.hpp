#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "macrovar/var_model.hpp"

namespace macrovar {

/// Block-exogeneity Wald test for one equation.
struct WaldBlockResult {
    std::string dependent;
    std::string excluded;  ///< a variable name, or "All"
    double chi_sq = 0.0;
    int df = 0;
    double p_value = 1.0;
};

/// Per equation: one row per other variable, then an "All" row.
std::vector<WaldBlockResult> granger_wald(const VarEstimate& est);

struct StabilityResult {
    std::vector<std::complex<double>> roots;  ///< sorted by modulus, descending
    std::vector<double> moduli;
    bool stable = true;
    double max_modulus() const { return moduli.empty() ? 0.0 : moduli.front(); }
};

/// Companion block matrix [[A_1 ... A_p], [I 0]], (K p) x (K p).
Eigen::MatrixXd companion_matrix(const std::vector<Eigen::MatrixXd>& A);

StabilityResult stability_roots(const VarEstimate& est);
StabilityResult stability_roots(const std::vector<Eigen::MatrixXd>& A);

struct CrossCorrResult {
    std::vector<Eigen::MatrixXd> by_lag;  ///< entry (i, j) at lag l = corr(u_{i,t}, u_{j,t-l})
    double band = 0.0;                    ///< 1 / sqrt(T_eff)
};

CrossCorrResult residual_cross_correlations(const VarEstimate& est, int max_lag);
CrossCorrResult residual_cross_correlations(const Eigen::MatrixXd& residuals, int max_lag);

enum class LmPresample { ZeroFill, Trim };

struct LmRow {
    int lag = 1;              ///< h
    bool cumulative = false;  ///< false: lag h only; true: lags 1..h
    double lre_stat = 0.0;
    int df = 0;
    double p_lre = 1.0;
    double rao_f = 0.0;
    double df_num = 0.0;
    double df_denom = 0.0;
    double p_rao = 1.0;
};

struct LmResult {
    std::vector<LmRow> at_lag;      ///< h = 1..H, lag h only
    std::vector<LmRow> cumulative;  ///< h = 1..H, lags 1..h
};

/**
 * Multivariate Breusch-Godfrey LM tests for residual serial correlation.
 *
 * Residuals are regressed on the original VAR regressors plus lagged
 * residuals. LRE = N ln(|S_r| / |S_u|) with
 * N = T - d - r - (K - r + 1)/2, d the original regressors per equation and
 * r the added ones; df = K r. Rao's F uses s = sqrt((K^2 r^2 - 4)/(K^2 + r^2 - 5)),
 * q = K r / 2 - 1 and denominator df N s - q.
 */
LmResult serial_correlation_lm(const VarEstimate& est, int max_lag,
                               LmPresample presample = LmPresample::ZeroFill);

}  // namespace macrovar

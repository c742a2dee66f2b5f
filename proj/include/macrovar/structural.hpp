#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "macrovar/var_model.hpp"

namespace macrovar {

/// Forecast-error variance decomposition over periods 1..H.
struct Fevd {
    /// shares[i] is H x K: row h-1 gives the percent of variable i's h-step
    /// forecast-error variance due to each shock (columns in variable order).
    std::vector<Eigen::MatrixXd> shares;
    /// H x K forecast standard errors; column i belongs to variable i.
    Eigen::MatrixXd std_error;
};

/// Additive attribution of each fitted observation to a baseline and per-shock paths.
struct HistoricalDecomposition {
    int first_year = 0;
    Eigen::MatrixXd actual;    ///< T_eff x K
    Eigen::MatrixXd baseline;  ///< T_eff x K, deterministic path from initial conditions
    /// contributions[i] is T_eff x K: column k is shock k's contribution to variable i.
    std::vector<Eigen::MatrixXd> contributions;
};

/// Pointwise percentile bands for orthogonalised impulse responses.
struct IrfBands {
    std::vector<Eigen::MatrixXd> lower;  ///< 2.5th percentile, per horizon
    std::vector<Eigen::MatrixXd> upper;  ///< 97.5th percentile, per horizon
    int draws = 0;
    std::uint64_t seed = 0;
    std::string method;
};

/**
 * @brief Cholesky-identified structural objects derived from one VarEstimate.
 *
 * irf[h](i, j) is the response of variable i at horizon h to a one standard
 * deviation shock in variable j. Labels are always in the estimate's variable
 * order; `ordering` only drives the recursive factorisation.
 */
struct StructuralSet {
    std::vector<std::string> names;
    std::vector<std::size_t> ordering;
    int horizon = 0;
    Eigen::MatrixXd chol_p;            ///< Sigma_ls = P P', lower triangular in `ordering`
    std::vector<Eigen::MatrixXd> ma;   ///< Psi_0..Psi_H, Psi_0 = I
    std::vector<Eigen::MatrixXd> irf;  ///< Psi_h P
    bool unstable = false;             ///< max root modulus >= 1 (results still computed)
    Fevd fevd;
    HistoricalDecomposition hist;
    std::optional<IrfBands> bands;
};

/// Psi_h = sum_{i=1..min(h,p)} A_i Psi_{h-i}, Psi_0 = I, for h = 0..H.
std::vector<Eigen::MatrixXd> ma_coefficients(const std::vector<Eigen::MatrixXd>& A, int H);

/// P with Sigma = P P', lower triangular after permuting rows/columns by `ordering`.
Eigen::MatrixXd ordered_cholesky(const Eigen::MatrixXd& sigma, const std::vector<std::size_t>& ordering);

StructuralSet impulse_responses(const VarEstimate& est, int H, const std::vector<std::size_t>& ordering);
Fevd variance_decomposition(const VarEstimate& est, int H, const std::vector<std::size_t>& ordering);
HistoricalDecomposition historical_decomposition(const VarEstimate& est,
                                                 const std::vector<std::size_t>& ordering);

/**
 * Parametric Monte Carlo bands: coefficients drawn from N(b, coef_cov) with
 * Sigma held at its estimate. Draws are generated serially from `seed` and
 * evaluated on `threads` workers; results do not depend on the thread count.
 */
IrfBands irf_bands(const VarEstimate& est, int H, const std::vector<std::size_t>& ordering, int draws,
                   std::uint64_t seed, int threads = 1);

/// IRF, FEVD and historical decomposition together (bands when draws > 0).
StructuralSet structural_analysis(const VarEstimate& est, int H, const std::vector<std::size_t>& ordering,
                                  int band_draws = 0, std::uint64_t seed = 0, int threads = 1);

}  // namespace macrovar

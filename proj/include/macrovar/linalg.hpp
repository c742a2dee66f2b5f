#pragma once

#include <Eigen/Dense>

namespace macrovar::linalg {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Multi-response least-squares fit Y = X B + E.
struct OlsFit {
    MatrixXd coef;     ///< m x k
    MatrixXd resid;    ///< n x k
    MatrixXd xtx_inv;  ///< m x m, (X'X)^-1
};

/**
 * Least squares via column-pivoted Householder QR on a column-equilibrated
 * design. Throws NumericError("collinear regressors") when X is rank
 * deficient relative to `rank_tol`.
 */
OlsFit ols(const MatrixXd& X, const MatrixXd& Y, double rank_tol = 1e-10);

/// Lower Cholesky factor; throws NumericError("Cholesky failed") if not positive definite.
MatrixXd cholesky_lower(const MatrixXd& m);

/// log|M| for symmetric positive definite M.
double log_det_spd(const MatrixXd& m);

/// True when the correlation form of a covariance matrix has min eigenvalue above `tol`.
bool well_conditioned_cov(const MatrixXd& m, double tol = 1e-10);

/**
 * Regressor block for a VAR-type regression on rows t = first..T-1 of `data`:
 * [1, y_{t-1}', ..., y_{t-p}'] (constant optional, placed first).
 */
MatrixXd lagged_design(const MatrixXd& data, int lags, Index first, bool constant);

}  // namespace macrovar::linalg

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "macrovar/series.hpp"

namespace macrovar {

struct VarSpec {
    int lag_order = 1;
    bool include_constant = true;
};

struct CoefficientRow {
    std::string name;
    double coefficient = 0.0;
    double std_error = 0.0;
    double t_stat = 0.0;
};

/// Single-equation fit statistics of a VAR.
struct EquationStats {
    std::string variable;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double ssr = 0.0;
    double se_equation = 0.0;
    double f_stat = 0.0;
    double log_likelihood = 0.0;
    std::vector<CoefficientRow> coef_table;
};

/**
 * @brief A fitted VAR(p): y_t = c + A_1 y_{t-1} + ... + A_p y_{t-p} + u_t.
 *
 * Regressor layout (rows of `coef`): the constant first (if present), then
 * the K variables at lag 1, then lag 2, and so on. `coef_cov` is ordered
 * equation by equation, i.e. kron(sigma_ls, (X'X)^-1).
 */
struct VarEstimate {
    std::vector<std::string> names;
    std::vector<std::size_t> ordering;
    int lags = 1;
    bool constant = true;
    int first_year = 0;  ///< calendar year of the first fitted observation

    std::vector<Eigen::MatrixXd> A;  ///< p matrices, K x K
    Eigen::VectorXd c;               ///< intercept (zero if no constant)
    Eigen::MatrixXd coef;            ///< m x K
    Eigen::MatrixXd data;            ///< T x K, including the p presample rows
    Eigen::MatrixXd X;               ///< T_eff x m
    Eigen::MatrixXd Y;               ///< T_eff x K
    Eigen::MatrixXd residuals;       ///< T_eff x K
    Eigen::MatrixXd sigma_ml;        ///< U'U / T_eff
    Eigen::MatrixXd sigma_ls;        ///< U'U / (T_eff - m)
    Eigen::MatrixXd xtx_inv;
    Eigen::MatrixXd coef_cov;        ///< (K m) x (K m)

    std::vector<EquationStats> per_equation;
    double log_likelihood = 0.0;
    double aic = 0.0;
    double sc = 0.0;
    double hq = 0.0;

    Eigen::Index num_vars() const { return static_cast<Eigen::Index>(names.size()); }
    Eigen::Index num_obs() const { return Y.rows(); }
    Eigen::Index regressors() const { return coef.rows(); }
    /// Row of `coef` holding variable `var` at lag `lag` (1-based).
    Eigen::Index coef_row(int lag, Eigen::Index var) const {
        return (constant ? 1 : 0) + static_cast<Eigen::Index>(lag - 1) * num_vars() + var;
    }
    /// Index into coef_cov of coefficient `row` in equation `eq`.
    Eigen::Index cov_index(Eigen::Index eq, Eigen::Index row) const { return eq * regressors() + row; }
};

VarEstimate estimate_var(const CountryPanel& panel, const VarSpec& spec);

/// Matrix entry point; `data` is T x K with the first `lags` rows used as presample.
VarEstimate estimate_var(const Eigen::MatrixXd& data, const std::vector<std::string>& names,
                         const VarSpec& spec, int start_year = 0);

struct LagRow {
    int lag = 0;
    double log_l = 0.0;
    std::optional<double> lr;  ///< absent at lag 0
    double fpe = 0.0;
    double aic = 0.0;
    double sc = 0.0;
    double hq = 0.0;
};

struct LagSelection {
    std::vector<LagRow> rows;
    int n_obs = 0;  ///< common estimation sample
    int lr_lag = 0;
    int fpe_lag = 0;
    int aic_lag = 0;
    int sc_lag = 0;
    int hq_lag = 0;

    /// Lag chosen by most criteria (ties to the smaller lag), with the criteria that chose it.
    std::pair<int, std::vector<std::string>> consensus() const;
};

/**
 * Lag-order table over 0..max_lag on the common sample that holds the first
 * max_lag observations back as presample. LR is the sequential modified
 * likelihood-ratio statistic, starred at the largest lag significant at 5%.
 */
LagSelection select_lag_order(const CountryPanel& panel, int max_lag);
LagSelection select_lag_order(const Eigen::MatrixXd& data, int max_lag);

}  // namespace macrovar

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "macrovar/var_model.hpp"

namespace macrovar {

/// Hold-out evaluation of iterated VAR forecasts (non-normative utility).
struct ForecastEvaluation {
    std::vector<std::string> names;
    int holdout = 0;
    int first_year = 0;         ///< calendar year of the first held-out row
    Eigen::MatrixXd forecast;   ///< holdout x K
    Eigen::MatrixXd actual;     ///< holdout x K
    std::vector<double> rmse;   ///< per variable
    std::vector<double> mae;    ///< per variable
};

/// Iterated h-step forecasts from the fitted VAR, starting after the last row of `history`.
Eigen::MatrixXd forecast_path(const VarEstimate& est, const Eigen::MatrixXd& history, int steps);

/// Fits on all but the last `holdout` rows and scores the forecasts of those rows.
ForecastEvaluation holdout_evaluation(const CountryPanel& panel, const VarSpec& spec, int holdout = 4);

}  // namespace macrovar

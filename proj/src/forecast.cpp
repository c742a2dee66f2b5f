#include "macrovar/forecast.hpp"

#include <cmath>

#include "macrovar/error.hpp"

namespace macrovar {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd forecast_path(const VarEstimate& est, const MatrixXd& history, int steps) {
    const int p = est.lags;
    if (history.rows() < p) throw DataError("forecast history shorter than the lag order");
    MatrixXd path(p + steps, est.num_vars());
    path.topRows(p) = history.bottomRows(p);
    for (Index t = p; t < p + steps; ++t) {
        VectorXd v = est.c;
        for (int l = 1; l <= p; ++l) v += est.A[static_cast<std::size_t>(l - 1)] * path.row(t - l).transpose();
        path.row(t) = v.transpose();
    }
    return path.bottomRows(steps);
}

ForecastEvaluation holdout_evaluation(const CountryPanel& panel, const VarSpec& spec, int holdout) {
    if (holdout < 1) throw DataError("hold-out length must be >= 1");
    const MatrixXd data = panel.matrix();
    const Index T = data.rows();
    if (T - holdout <= spec.lag_order + 1) throw DataError("sample too short for the hold-out");
    const MatrixXd train = data.topRows(T - holdout);
    const auto est = estimate_var(train, panel.names(), spec, panel.start_year());

    ForecastEvaluation ev;
    ev.names = panel.names();
    ev.holdout = holdout;
    ev.first_year = panel.start_year() + static_cast<int>(T - holdout);
    ev.forecast = forecast_path(est, train, holdout);
    ev.actual = data.bottomRows(holdout);
    const MatrixXd err = ev.forecast - ev.actual;
    for (Index k = 0; k < err.cols(); ++k) {
        ev.rmse.push_back(std::sqrt(err.col(k).squaredNorm() / holdout));
        ev.mae.push_back(err.col(k).cwiseAbs().mean());
    }
    return ev;
}

}  // namespace macrovar

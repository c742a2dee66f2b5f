#include "macrovar/var_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>

#include "macrovar/distributions.hpp"
#include "macrovar/error.hpp"
#include "macrovar/linalg.hpp"

namespace macrovar {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // ln(2 pi)

double system_log_likelihood(double T, double K, double log_det) {
    return -0.5 * T * K * (1.0 + kLog2Pi) - 0.5 * T * log_det;
}

}  // namespace

VarEstimate estimate_var(const MatrixXd& data, const std::vector<std::string>& names, const VarSpec& spec,
                         int start_year) {
    const Index K = data.cols();
    const int p = spec.lag_order;
    if (p < 1) throw DataError("VAR lag order must be >= 1");
    if (static_cast<Index>(names.size()) != K) throw DataError("VAR: names do not match data columns");
    const Index m = (spec.include_constant ? 1 : 0) + K * p;
    const Index T = data.rows() - p;
    if (T <= m) throw NumericError("insufficient observations");

    VarEstimate est;
    est.names = names;
    est.ordering.resize(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) est.ordering[i] = i;
    est.lags = p;
    est.constant = spec.include_constant;
    est.first_year = start_year + p;
    est.data = data;
    est.X = linalg::lagged_design(data, p, p, spec.include_constant);
    est.Y = data.bottomRows(T);

    auto fit = linalg::ols(est.X, est.Y);
    est.coef = std::move(fit.coef);
    est.residuals = std::move(fit.resid);
    est.xtx_inv = std::move(fit.xtx_inv);

    est.c = spec.include_constant ? VectorXd(est.coef.row(0).transpose()) : VectorXd::Zero(K);
    for (int l = 1; l <= p; ++l) {
        est.A.push_back(est.coef.middleRows(est.coef_row(l, 0), K).transpose());
    }

    const double dT = static_cast<double>(T);
    const MatrixXd uu = est.residuals.transpose() * est.residuals;
    est.sigma_ml = uu / dT;
    est.sigma_ls = uu / static_cast<double>(T - m);
    est.coef_cov = MatrixXd(K * m, K * m);
    for (Index i = 0; i < K; ++i) {
        for (Index j = 0; j < K; ++j) {
            est.coef_cov.block(i * m, j * m, m, m) = est.sigma_ls(i, j) * est.xtx_inv;
        }
    }

    // Per-equation statistics.
    const double dm = static_cast<double>(m);
    for (Index i = 0; i < K; ++i) {
        EquationStats eq;
        eq.variable = names[static_cast<std::size_t>(i)];
        const VectorXd y = est.Y.col(i);
        const double ssr = est.residuals.col(i).squaredNorm();
        const double sst = spec.include_constant ? (y.array() - y.mean()).matrix().squaredNorm()
                                                 : y.squaredNorm();
        eq.ssr = ssr;
        eq.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
        eq.adj_r_squared = 1.0 - (1.0 - eq.r_squared) * (dT - (spec.include_constant ? 1.0 : 0.0)) / (dT - dm);
        eq.se_equation = std::sqrt(ssr / (dT - dm));
        const double df_num = dm - (spec.include_constant ? 1.0 : 0.0);
        eq.f_stat = (eq.r_squared / df_num) / ((1.0 - eq.r_squared) / (dT - dm));
        eq.log_likelihood = -0.5 * dT * (1.0 + kLog2Pi + std::log(ssr / dT));

        const double s2 = est.sigma_ls(i, i);
        auto push = [&](std::string label, Index row) {
            const double b = est.coef(row, i);
            const double se = std::sqrt(s2 * est.xtx_inv(row, row));
            eq.coef_table.push_back({std::move(label), b, se, b / se});
        };
        for (Index v = 0; v < K; ++v) {
            for (int l = 1; l <= p; ++l) {
                push(names[static_cast<std::size_t>(v)] + "(-" + std::to_string(l) + ")", est.coef_row(l, v));
            }
        }
        if (spec.include_constant) push("C", 0);
        est.per_equation.push_back(std::move(eq));
    }

    const double dK = static_cast<double>(K);
    // A noiseless fit has a singular residual covariance: likelihood is unbounded.
    double log_det = -std::numeric_limits<double>::infinity();
    if (linalg::well_conditioned_cov(est.sigma_ml, 0.0)) log_det = linalg::log_det_spd(est.sigma_ml);
    const double n_params = dK * dm;
    est.log_likelihood = system_log_likelihood(dT, dK, log_det);
    est.aic = -2.0 * est.log_likelihood / dT + 2.0 * n_params / dT;
    est.sc = -2.0 * est.log_likelihood / dT + n_params * std::log(dT) / dT;
    est.hq = -2.0 * est.log_likelihood / dT + 2.0 * n_params * std::log(std::log(dT)) / dT;
    return est;
}

VarEstimate estimate_var(const CountryPanel& panel, const VarSpec& spec) {
    auto est = estimate_var(panel.matrix(), panel.names(), spec, panel.start_year());
    est.ordering = panel.ordering();
    return est;
}

LagSelection select_lag_order(const MatrixXd& data, int max_lag) {
    if (max_lag < 1) throw DataError("max_lag must be >= 1");
    const Index K = data.cols();
    const Index T = data.rows() - max_lag;
    const Index m_max = 1 + K * max_lag;
    if (T <= m_max) {
        throw DataError("max_lag " + std::to_string(max_lag) + " too large for " +
                        std::to_string(data.rows()) + " observations");
    }
    const double dT = static_cast<double>(T);
    const double dK = static_cast<double>(K);
    const MatrixXd Y = data.bottomRows(T);

    LagSelection sel;
    sel.n_obs = static_cast<int>(T);
    std::vector<double> log_dets;
    const MatrixXd full = linalg::lagged_design(data, max_lag, max_lag, true);
    for (int l = 0; l <= max_lag; ++l) {
        const MatrixXd X = full.leftCols(1 + K * l);
        const auto fit = linalg::ols(X, Y);
        const MatrixXd sigma = fit.resid.transpose() * fit.resid / dT;
        const double log_det = linalg::log_det_spd(sigma);
        log_dets.push_back(log_det);

        const double m = static_cast<double>(1 + K * l);
        const double n_params = dK * m;
        LagRow row;
        row.lag = l;
        row.log_l = system_log_likelihood(dT, dK, log_det);
        if (l > 0) row.lr = (dT - m) * (log_dets[static_cast<std::size_t>(l - 1)] - log_det);
        row.fpe = std::pow((dT + m) / (dT - m), dK) * std::exp(log_det);
        row.aic = -2.0 * row.log_l / dT + 2.0 * n_params / dT;
        row.sc = -2.0 * row.log_l / dT + n_params * std::log(dT) / dT;
        row.hq = -2.0 * row.log_l / dT + 2.0 * n_params * std::log(std::log(dT)) / dT;
        sel.rows.push_back(row);
    }

    auto argmin = [&](auto field) {
        int best = 0;
        for (const auto& r : sel.rows) {
            if (field(r) < field(sel.rows[static_cast<std::size_t>(best)])) best = r.lag;
        }
        return best;
    };
    sel.fpe_lag = argmin([](const LagRow& r) { return r.fpe; });
    sel.aic_lag = argmin([](const LagRow& r) { return r.aic; });
    sel.sc_lag = argmin([](const LagRow& r) { return r.sc; });
    sel.hq_lag = argmin([](const LagRow& r) { return r.hq; });

    const double crit = dist::chi2_quantile(0.95, dK * dK);
    sel.lr_lag = 0;
    for (int l = max_lag; l >= 1; --l) {
        if (*sel.rows[static_cast<std::size_t>(l)].lr > crit) {
            sel.lr_lag = l;
            break;
        }
    }
    return sel;
}

LagSelection select_lag_order(const CountryPanel& panel, int max_lag) {
    return select_lag_order(panel.matrix(), max_lag);
}

std::pair<int, std::vector<std::string>> LagSelection::consensus() const {
    const std::pair<const char*, int> votes[] = {
        {"LR", lr_lag}, {"FPE", fpe_lag}, {"AIC", aic_lag}, {"SC", sc_lag}, {"HQ", hq_lag}};
    std::map<int, int> count;
    for (const auto& [name, lag] : votes) ++count[lag];
    int best = votes[0].second;
    for (const auto& [lag, n] : count) {
        if (n > count[best] || (n == count[best] && lag < best)) best = lag;
    }
    std::vector<std::string> who;
    for (const auto& [name, lag] : votes) {
        if (lag == best) who.emplace_back(name);
    }
    return {best, who};
}

}  // namespace macrovar

#include "macrovar/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "macrovar/critical_values.hpp"
#include "macrovar/error.hpp"
#include "macrovar/linalg.hpp"

namespace macrovar {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string AdfLagRule::describe() const {
    if (kind == Kind::Fixed) return "fixed(" + std::to_string(fixed_lags) + ")";
    return max_lags ? "schwarz(max " + std::to_string(*max_lags) + ")" : "schwarz(auto max)";
}

namespace {

struct AdfFit {
    double tstat;
    double ssr;
    int n;
};

// Rows j = first..N-2 of dy; dependent dy[j], regressors [1, y[j], dy[j-1..j-k]].
AdfFit adf_regression(const std::vector<double>& y, const std::vector<double>& dy, int k, Index first) {
    const Index n = static_cast<Index>(dy.size()) - first;
    MatrixXd X(n, 2 + k);
    MatrixXd d(n, 1);
    for (Index r = 0; r < n; ++r) {
        const Index j = first + r;
        d(r, 0) = dy[static_cast<std::size_t>(j)];
        X(r, 0) = 1.0;
        X(r, 1) = y[static_cast<std::size_t>(j)];
        for (int i = 1; i <= k; ++i) X(r, 1 + i) = dy[static_cast<std::size_t>(j - i)];
    }
    linalg::OlsFit fit;
    try {
        fit = linalg::ols(X, d);
    } catch (const NumericError&) {
        throw NumericError("degenerate regression");
    }
    const double ssr = fit.resid.squaredNorm();
    const double scale = d.squaredNorm();
    if (!(scale > 0.0) || ssr <= 1e-20 * scale) {
        throw NumericError("degenerate regression");
    }
    const double s2 = ssr / static_cast<double>(n - (2 + k));
    const double se = std::sqrt(s2 * fit.xtx_inv(1, 1));
    return {fit.coef(1, 0) / se, ssr, static_cast<int>(n)};
}

}  // namespace

AdfResult adf_test(const std::vector<double>& y, const AdfLagRule& rule) {
    const int N = static_cast<int>(y.size());
    if (N < kAdfMinObs + 2) {
        throw DataError("too few observations for ADF test (" + std::to_string(N) + ")");
    }
    std::vector<double> dy(y.size() - 1);
    for (std::size_t t = 0; t + 1 < y.size(); ++t) dy[t] = y[t + 1] - y[t];

    int k = 0;
    if (rule.kind == AdfLagRule::Kind::Fixed) {
        k = rule.fixed_lags;
        if (k < 0) throw DataError("ADF lag order must be non-negative");
        if (N - 1 - k < kAdfMinObs) {
            throw DataError("too few observations for ADF test with " + std::to_string(k) + " lags");
        }
    } else {
        int kmax = rule.max_lags ? *rule.max_lags
                                 : static_cast<int>(std::floor(12.0 * std::pow(N / 100.0, 0.25)));
        kmax = std::min(kmax, N - 1 - kAdfMinObs);
        if (kmax < 0) throw DataError("too few observations for ADF lag search");
        const Index first = kmax;
        double best = std::numeric_limits<double>::infinity();
        for (int cand = 0; cand <= kmax; ++cand) {
            const auto fit = adf_regression(y, dy, cand, first);
            const double n = fit.n;
            const double sic = std::log(fit.ssr / n) + (cand + 2) * std::log(n) / n;
            if (sic < best - 1e-12) {
                best = sic;
                k = cand;
            }
        }
    }

    const auto fit = adf_regression(y, dy, k, k);
    const auto cvs = cv::adf_critical_values(fit.n);
    AdfResult r;
    r.statistic = fit.tstat;
    r.p_value = cv::adf_p_value(fit.tstat, fit.n);
    r.cv_1pct = cvs.pct1;
    r.cv_5pct = cvs.pct5;
    r.cv_10pct = cvs.pct10;
    r.lags_used = k;
    r.n_obs = fit.n;
    r.lag_rule = rule.describe();
    return r;
}

AdfResult adf_test(const AnnualSeries& series, const AdfLagRule& rule) {
    return adf_test(series.dense(), rule);
}

JohansenResult johansen_test(const MatrixXd& levels, int lags_in_differences,
                             JohansenDeterministic deterministic) {
    if (deterministic != JohansenDeterministic::InterceptNoTrend) {
        throw NumericError("Johansen deterministic case not implemented (only intercept, no trend)");
    }
    const Index K = levels.cols();
    if (K > cv::kJohansenMaxDim) {
        throw NumericError("critical values unavailable for K = " + std::to_string(K));
    }
    if (lags_in_differences < 1) {
        throw DataError("Johansen lags_in_differences must be >= 1");
    }
    const int k = lags_in_differences;
    const Index N = levels.rows();
    const MatrixXd dY = levels.bottomRows(N - 1) - levels.topRows(N - 1);
    const Index T = N - 1 - k;
    if (T <= 1 + K * k + K) {
        throw DataError("too few observations for Johansen test");
    }

    const MatrixXd Z0 = dY.bottomRows(T);
    const MatrixXd Z1 = levels.middleRows(k, T);
    MatrixXd Z2 = linalg::lagged_design(dY, k, k, true);

    const auto fit = linalg::ols(Z2, (MatrixXd(T, 2 * K) << Z0, Z1).finished());
    const MatrixXd R0 = fit.resid.leftCols(K);
    const MatrixXd R1 = fit.resid.rightCols(K);
    const double dT = static_cast<double>(T);
    const MatrixXd S00 = R0.transpose() * R0 / dT;
    const MatrixXd S11 = R1.transpose() * R1 / dT;
    const MatrixXd S01 = R0.transpose() * R1 / dT;
    if (!linalg::well_conditioned_cov(S00) || !linalg::well_conditioned_cov(S11)) {
        throw NumericError("collinear regressors");
    }

    // Whiten S11 and solve the symmetric eigenproblem.
    const MatrixXd L = linalg::cholesky_lower(S11);
    const MatrixXd Linv = L.triangularView<Eigen::Lower>().solve(MatrixXd::Identity(K, K));
    const MatrixXd mid = S01.transpose() * S00.ldlt().solve(S01);
    MatrixXd M = Linv * mid * Linv.transpose();
    M = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(M, Eigen::EigenvaluesOnly);
    std::vector<double> lambda(es.eigenvalues().data(), es.eigenvalues().data() + K);
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    for (auto& l : lambda) l = std::clamp(l, 0.0, 1.0 - 1e-15);

    JohansenResult r;
    r.eigenvalues = lambda;
    r.lags_in_differences = k;
    r.n_obs = static_cast<int>(T);
    r.trace_stats.assign(static_cast<std::size_t>(K), 0.0);
    r.max_eigen_stats.assign(static_cast<std::size_t>(K), 0.0);
    double acc = 0.0;
    for (Index i = K - 1; i >= 0; --i) {
        const auto u = static_cast<std::size_t>(i);
        r.max_eigen_stats[u] = -dT * std::log1p(-lambda[u]);
        acc += r.max_eigen_stats[u];
        r.trace_stats[u] = acc;
    }
    r.rank_decision = static_cast<int>(K);
    bool decided = false;
    for (Index rr = 0; rr < K; ++rr) {
        const auto u = static_cast<std::size_t>(rr);
        const int m = static_cast<int>(K - rr);
        r.trace_cv_5pct.push_back(cv::johansen_trace_cv5(m));
        r.max_eigen_cv_5pct.push_back(cv::johansen_max_eigen_cv5(m));
        r.p_values_trace.push_back(cv::johansen_trace_p_value(r.trace_stats[u], m));
        r.p_values_max.push_back(cv::johansen_max_eigen_p_value(r.max_eigen_stats[u], m));
        if (!decided && r.trace_stats[u] <= r.trace_cv_5pct.back()) {
            r.rank_decision = static_cast<int>(rr);
            decided = true;
        }
    }
    return r;
}

JohansenResult johansen_test(const CountryPanel& panel, int lags_in_differences,
                             JohansenDeterministic deterministic) {
    return johansen_test(panel.matrix(), lags_in_differences, deterministic);
}

}  // namespace macrovar

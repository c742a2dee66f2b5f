#include "macrovar/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "macrovar/distributions.hpp"
#include "macrovar/error.hpp"
#include "macrovar/linalg.hpp"

namespace macrovar {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

WaldBlockResult wald_block(const VarEstimate& est, Index eq, const std::vector<Index>& excluded_vars,
                           std::string excluded_label) {
    std::vector<Index> idx;
    for (Index v : excluded_vars) {
        for (int l = 1; l <= est.lags; ++l) idx.push_back(est.cov_index(eq, est.coef_row(l, v)));
    }
    const auto n = static_cast<Index>(idx.size());
    VectorXd b(n);
    MatrixXd V(n, n);
    for (Index a = 0; a < n; ++a) {
        b(a) = est.coef(idx[static_cast<std::size_t>(a)] - eq * est.regressors(), eq);
        for (Index c = 0; c < n; ++c) {
            V(a, c) = est.coef_cov(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(c)]);
        }
    }
    if (!linalg::well_conditioned_cov(V, 1e-14)) {
        throw NumericError("degenerate covariance");
    }
    WaldBlockResult r;
    r.dependent = est.names[static_cast<std::size_t>(eq)];
    r.excluded = std::move(excluded_label);
    r.chi_sq = std::max(0.0, b.dot(V.ldlt().solve(b)));
    r.df = static_cast<int>(n);
    r.p_value = dist::chi2_sf(r.chi_sq, r.df);
    return r;
}

}  // namespace

std::vector<WaldBlockResult> granger_wald(const VarEstimate& est) {
    const Index K = est.num_vars();
    std::vector<WaldBlockResult> out;
    for (Index i = 0; i < K; ++i) {
        std::vector<Index> others;
        for (Index j = 0; j < K; ++j) {
            if (j == i) continue;
            others.push_back(j);
            out.push_back(wald_block(est, i, {j}, est.names[static_cast<std::size_t>(j)]));
        }
        if (!others.empty()) out.push_back(wald_block(est, i, others, "All"));
    }
    return out;
}

MatrixXd companion_matrix(const std::vector<MatrixXd>& A) {
    if (A.empty()) throw NumericError("companion matrix of a VAR with no lags");
    const Index K = A.front().rows();
    const Index p = static_cast<Index>(A.size());
    MatrixXd C = MatrixXd::Zero(K * p, K * p);
    for (Index l = 0; l < p; ++l) C.block(0, l * K, K, K) = A[static_cast<std::size_t>(l)];
    if (p > 1) C.block(K, 0, K * (p - 1), K * (p - 1)).setIdentity();
    return C;
}

StabilityResult stability_roots(const std::vector<MatrixXd>& A) {
    const MatrixXd C = companion_matrix(A);
    Eigen::EigenSolver<MatrixXd> es(C, false);
    if (es.info() != Eigen::Success) throw NumericError("eigenvalue computation failed");
    StabilityResult r;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) r.roots.push_back(es.eigenvalues()(i));
    // Modulus descending; conjugate pairs listed negative imaginary part first.
    auto key = [](const std::complex<double>& z) { return std::round(std::abs(z) * 1e10); };
    std::stable_sort(r.roots.begin(), r.roots.end(), [&](const auto& a, const auto& b) {
        if (key(a) != key(b)) return key(a) > key(b);
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() > b.real();
    });
    for (const auto& z : r.roots) r.moduli.push_back(std::abs(z));
    r.stable = r.moduli.empty() || r.moduli.front() < 1.0;
    return r;
}

StabilityResult stability_roots(const VarEstimate& est) { return stability_roots(est.A); }

CrossCorrResult residual_cross_correlations(const MatrixXd& residuals, int max_lag) {
    const Index T = residuals.rows();
    const Index K = residuals.cols();
    if (max_lag < 0 || max_lag >= T - 2) {
        throw DataError("cross-correlation max_lag must be below T_eff - 2");
    }
    const MatrixXd u = residuals.rowwise() - residuals.colwise().mean();
    const double dT = static_cast<double>(T);
    VectorXd c0(K);
    for (Index i = 0; i < K; ++i) {
        c0(i) = u.col(i).squaredNorm() / dT;
        if (!(c0(i) > 0.0)) throw NumericError("zero-variance residual column");
    }
    CrossCorrResult r;
    r.band = 1.0 / std::sqrt(dT);
    for (int l = 0; l <= max_lag; ++l) {
        MatrixXd C(K, K);
        for (Index i = 0; i < K; ++i) {
            for (Index j = 0; j < K; ++j) {
                const double s = u.col(i).tail(T - l).dot(u.col(j).head(T - l)) / dT;
                C(i, j) = s / std::sqrt(c0(i) * c0(j));
            }
        }
        r.by_lag.push_back(std::move(C));
    }
    return r;
}

CrossCorrResult residual_cross_correlations(const VarEstimate& est, int max_lag) {
    return residual_cross_correlations(est.residuals, max_lag);
}

namespace {

LmRow lm_row(const VarEstimate& est, int h, bool cumulative, LmPresample presample) {
    const MatrixXd& U = est.residuals;
    const Index T = U.rows();
    const Index K = U.cols();
    const Index d = est.X.cols();
    const int first_lag = cumulative ? 1 : h;
    const Index r = K * (h - first_lag + 1);
    const Index start = presample == LmPresample::Trim ? h : 0;
    const Index n = T - start;

    MatrixXd lagged = MatrixXd::Zero(n, r);
    for (Index row = 0; row < n; ++row) {
        const Index t = start + row;
        for (int l = first_lag; l <= h; ++l) {
            if (t - l >= 0) lagged.block(row, (l - first_lag) * K, 1, K) = U.row(t - l);
        }
    }
    const MatrixXd Xr = est.X.bottomRows(n);
    const MatrixXd Ur = U.bottomRows(n);
    MatrixXd Xu(n, d + r);
    Xu << Xr, lagged;

    linalg::OlsFit restricted;
    linalg::OlsFit unrestricted;
    try {
        restricted = linalg::ols(Xr, Ur);
        unrestricted = linalg::ols(Xu, Ur);
    } catch (const NumericError& e) {
        throw NumericError(std::string("singular auxiliary regression: ") + e.what());
    }
    const double log_ratio = linalg::log_det_spd(restricted.resid.transpose() * restricted.resid) -
                             linalg::log_det_spd(unrestricted.resid.transpose() * unrestricted.resid);

    const double dK = static_cast<double>(K);
    const double dr = static_cast<double>(r);
    const double N = static_cast<double>(n) - static_cast<double>(d) - dr - 0.5 * (dK - dr + 1.0);
    const double s_num = dK * dK * dr * dr - 4.0;
    const double s_den = dK * dK + dr * dr - 5.0;
    const double s = (s_num > 0.0 && s_den > 0.0) ? std::sqrt(s_num / s_den) : 1.0;
    const double q = dK * dr / 2.0 - 1.0;

    LmRow row;
    row.lag = h;
    row.cumulative = cumulative;
    row.df = static_cast<int>(K * r);
    row.lre_stat = std::max(0.0, N * log_ratio);
    row.p_lre = dist::chi2_sf(row.lre_stat, row.df);
    row.df_num = dK * dr;
    row.df_denom = N * s - q;
    if (!(row.df_denom > 0.0)) {
        throw NumericError("too few observations for the LM test at lag " + std::to_string(h));
    }
    row.rao_f = std::max(0.0, (std::exp(log_ratio / s) - 1.0) * row.df_denom / row.df_num);
    row.p_rao = dist::f_sf(row.rao_f, row.df_num, row.df_denom);
    return row;
}

}  // namespace

LmResult serial_correlation_lm(const VarEstimate& est, int max_lag, LmPresample presample) {
    if (max_lag < 1) throw DataError("LM test max_lag must be >= 1");
    LmResult out;
    for (int h = 1; h <= max_lag; ++h) {
        out.at_lag.push_back(lm_row(est, h, false, presample));
        out.cumulative.push_back(lm_row(est, h, true, presample));
    }
    return out;
}

}  // namespace macrovar

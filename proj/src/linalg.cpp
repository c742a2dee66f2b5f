#include "macrovar/linalg.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "macrovar/error.hpp"

namespace macrovar::linalg {

OlsFit ols(const MatrixXd& X, const MatrixXd& Y, double rank_tol) {
    if (X.rows() != Y.rows()) {
        throw NumericError("ols: row mismatch");
    }
    if (X.rows() <= X.cols()) {
        throw NumericError("insufficient observations");
    }
    // Equilibrate columns so that rank detection is scale free.
    VectorXd scale = X.colwise().norm().transpose();
    for (Index j = 0; j < scale.size(); ++j) {
        if (!(scale(j) > 0.0) || !std::isfinite(scale(j))) {
            throw NumericError("collinear regressors");
        }
    }
    const MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();
    Eigen::ColPivHouseholderQR<MatrixXd> qr(Xs);
    qr.setThreshold(rank_tol);
    if (qr.rank() < X.cols()) {
        throw NumericError("collinear regressors");
    }
    OlsFit fit;
    fit.coef = scale.cwiseInverse().asDiagonal() * qr.solve(Y);
    fit.resid = Y - X * fit.coef;

    const Index m = X.cols();
    const MatrixXd R = qr.matrixR().topLeftCorner(m, m).triangularView<Eigen::Upper>();
    const MatrixXd Rinv = R.triangularView<Eigen::Upper>().solve(MatrixXd::Identity(m, m));
    const MatrixXd perm_inv = Rinv * Rinv.transpose();  // (P' Xs' Xs P)^-1
    const auto& P = qr.colsPermutation();
    const MatrixXd xs_inv = P * perm_inv * P.transpose();
    fit.xtx_inv = scale.cwiseInverse().asDiagonal() * xs_inv * scale.cwiseInverse().asDiagonal();
    return fit;
}

MatrixXd cholesky_lower(const MatrixXd& m) {
    Eigen::LLT<MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw NumericError("Cholesky failed: matrix is not positive definite");
    }
    return llt.matrixL();
}

double log_det_spd(const MatrixXd& m) {
    Eigen::LLT<MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw NumericError("log-determinant of a matrix that is not positive definite");
    }
    const MatrixXd L = llt.matrixL();
    return 2.0 * L.diagonal().array().log().sum();
}

bool well_conditioned_cov(const MatrixXd& m, double tol) {
    const VectorXd d = m.diagonal();
    for (Index i = 0; i < d.size(); ++i) {
        if (!(d(i) > 0.0)) return false;
    }
    const VectorXd s = d.cwiseSqrt().cwiseInverse();
    const MatrixXd corr = s.asDiagonal() * m * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(corr, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > tol;
}

MatrixXd lagged_design(const MatrixXd& data, int lags, Index first, bool constant) {
    const Index K = data.cols();
    const Index n = data.rows() - first;
    const Index m = (constant ? 1 : 0) + K * lags;
    MatrixXd X(n, m);
    for (Index r = 0; r < n; ++r) {
        const Index t = first + r;
        Index c = 0;
        if (constant) X(r, c++) = 1.0;
        for (int l = 1; l <= lags; ++l) {
            X.block(r, c, 1, K) = data.row(t - l);
            c += K;
        }
    }
    return X;
}

}  // namespace macrovar::linalg

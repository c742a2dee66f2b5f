#include "macrovar/structural.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

#include "macrovar/diagnostics.hpp"
#include "macrovar/error.hpp"
#include "macrovar/linalg.hpp"

namespace macrovar {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

void check_ordering(const std::vector<std::size_t>& ordering, Index K) {
    auto sorted = ordering;
    std::sort(sorted.begin(), sorted.end());
    bool ok = static_cast<Index>(sorted.size()) == K;
    for (std::size_t i = 0; ok && i < sorted.size(); ++i) ok = sorted[i] == i;
    if (!ok) throw DataError("ordering must be a permutation of the VAR variables");
}

std::vector<MatrixXd> orthogonalise(const std::vector<MatrixXd>& ma, const MatrixXd& P) {
    std::vector<MatrixXd> out;
    out.reserve(ma.size());
    out.push_back(P);
    for (std::size_t h = 1; h < ma.size(); ++h) out.push_back(ma[h] * P);
    return out;
}

// Type-7 sample quantile of sorted data.
double quantile_sorted(const std::vector<double>& v, double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return v[lo] + w * (v[hi] - v[lo]);
}

}  // namespace

std::vector<MatrixXd> ma_coefficients(const std::vector<MatrixXd>& A, int H) {
    if (A.empty()) throw NumericError("VAR has no lag matrices");
    const Index K = A.front().rows();
    std::vector<MatrixXd> psi;
    psi.push_back(MatrixXd::Identity(K, K));
    for (int h = 1; h <= H; ++h) {
        MatrixXd acc = MatrixXd::Zero(K, K);
        const int top = std::min<int>(h, static_cast<int>(A.size()));
        for (int i = 1; i <= top; ++i) acc += A[static_cast<std::size_t>(i - 1)] * psi[static_cast<std::size_t>(h - i)];
        psi.push_back(std::move(acc));
    }
    return psi;
}

MatrixXd ordered_cholesky(const MatrixXd& sigma, const std::vector<std::size_t>& ordering) {
    const Index K = sigma.rows();
    check_ordering(ordering, K);
    MatrixXd permuted(K, K);
    for (Index a = 0; a < K; ++a) {
        for (Index b = 0; b < K; ++b) {
            permuted(a, b) = sigma(static_cast<Index>(ordering[static_cast<std::size_t>(a)]),
                                   static_cast<Index>(ordering[static_cast<std::size_t>(b)]));
        }
    }
    const MatrixXd L = linalg::cholesky_lower(permuted);
    MatrixXd P(K, K);
    for (Index a = 0; a < K; ++a) {
        for (Index b = 0; b < K; ++b) {
            P(static_cast<Index>(ordering[static_cast<std::size_t>(a)]),
              static_cast<Index>(ordering[static_cast<std::size_t>(b)])) = L(a, b);
        }
    }
    return P;
}

StructuralSet impulse_responses(const VarEstimate& est, int H, const std::vector<std::size_t>& ordering) {
    if (H < 0) throw DataError("horizon must be non-negative");
    StructuralSet s;
    s.names = est.names;
    s.ordering = ordering;
    s.horizon = H;
    s.chol_p = ordered_cholesky(est.sigma_ls, ordering);
    s.ma = ma_coefficients(est.A, H);
    s.irf = orthogonalise(s.ma, s.chol_p);
    s.unstable = stability_roots(est).max_modulus() >= 1.0;
    return s;
}

Fevd variance_decomposition(const VarEstimate& est, int H, const std::vector<std::size_t>& ordering) {
    if (H < 1) throw DataError("variance decomposition horizon must be >= 1");
    const Index K = est.num_vars();
    const MatrixXd P = ordered_cholesky(est.sigma_ls, ordering);
    const auto theta = orthogonalise(ma_coefficients(est.A, H - 1), P);

    Fevd f;
    f.std_error = MatrixXd(H, K);
    f.shares.assign(static_cast<std::size_t>(K), MatrixXd(H, K));
    MatrixXd cum = MatrixXd::Zero(K, K);  // (i, j): sum_s theta_s(i, j)^2
    for (int h = 1; h <= H; ++h) {
        cum += theta[static_cast<std::size_t>(h - 1)].array().square().matrix();
        for (Index i = 0; i < K; ++i) {
            const double total = cum.row(i).sum();
            f.std_error(h - 1, i) = std::sqrt(total);
            for (Index j = 0; j < K; ++j) {
                f.shares[static_cast<std::size_t>(i)](h - 1, j) = 100.0 * cum(i, j) / total;
            }
        }
    }
    return f;
}

HistoricalDecomposition historical_decomposition(const VarEstimate& est,
                                                 const std::vector<std::size_t>& ordering) {
    const Index K = est.num_vars();
    const Index T = est.num_obs();
    const int p = est.lags;
    const MatrixXd P = ordered_cholesky(est.sigma_ls, ordering);
    const MatrixXd Pinv = P.inverse();
    const auto theta = orthogonalise(ma_coefficients(est.A, static_cast<int>(T) - 1), P);

    HistoricalDecomposition hd;
    hd.first_year = est.first_year;
    hd.actual = est.Y;

    // Deterministic path: intercept and lags only, seeded with the presample.
    MatrixXd path = est.data.topRows(p + T);
    for (Index t = p; t < p + T; ++t) {
        VectorXd v = est.c;
        for (int l = 1; l <= p; ++l) v += est.A[static_cast<std::size_t>(l - 1)] * path.row(t - l).transpose();
        path.row(t) = v.transpose();
    }
    hd.baseline = path.bottomRows(T);

    const MatrixXd w = est.residuals * Pinv.transpose();  // rows: structural shocks w_t'
    hd.contributions.assign(static_cast<std::size_t>(K), MatrixXd::Zero(T, K));
    for (Index t = 0; t < T; ++t) {
        for (Index s = 0; s <= t; ++s) {
            const MatrixXd& th = theta[static_cast<std::size_t>(s)];
            for (Index i = 0; i < K; ++i) {
                for (Index k = 0; k < K; ++k) {
                    hd.contributions[static_cast<std::size_t>(i)](t, k) += th(i, k) * w(t - s, k);
                }
            }
        }
    }
    return hd;
}

IrfBands irf_bands(const VarEstimate& est, int H, const std::vector<std::size_t>& ordering, int draws,
                   std::uint64_t seed, int threads) {
    if (draws < 2) throw DataError("IRF bands need at least two draws");
    const Index K = est.num_vars();
    const Index m = est.regressors();
    const Index n = K * m;
    const MatrixXd P = ordered_cholesky(est.sigma_ls, ordering);

    // Symmetric square root of the coefficient covariance (tolerates near-singularity).
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (est.coef_cov + est.coef_cov.transpose()));
    const VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const MatrixXd S = es.eigenvectors() * root.asDiagonal();

    VectorXd beta(n);
    for (Index i = 0; i < K; ++i) beta.segment(i * m, m) = est.coef.col(i);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    MatrixXd z(n, draws);
    for (int d = 0; d < draws; ++d) {
        for (Index i = 0; i < n; ++i) z(i, d) = normal(rng);
    }

    const std::size_t cells = static_cast<std::size_t>((H + 1) * K * K);
    std::vector<double> store(static_cast<std::size_t>(draws) * cells);
    auto work = [&](int begin, int end) {
        for (int d = begin; d < end; ++d) {
            const VectorXd b = beta + S * z.col(d);
            std::vector<MatrixXd> A;
            for (int l = 1; l <= est.lags; ++l) {
                MatrixXd Al(K, K);
                for (Index i = 0; i < K; ++i) {
                    for (Index j = 0; j < K; ++j) Al(i, j) = b(i * m + est.coef_row(l, j));
                }
                A.push_back(std::move(Al));
            }
            const auto irf = orthogonalise(ma_coefficients(A, H), P);
            double* out = store.data() + static_cast<std::size_t>(d) * cells;
            for (const auto& mat : irf) {
                for (Index i = 0; i < K; ++i) {
                    for (Index j = 0; j < K; ++j) *out++ = mat(i, j);
                }
            }
        }
    };
    const int nthreads = std::clamp(threads, 1, draws);
    if (nthreads == 1) {
        work(0, draws);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (draws + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const int b = t * chunk;
            const int e = std::min(draws, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    IrfBands bands;
    bands.draws = draws;
    bands.seed = seed;
    bands.method = "parametric Monte Carlo, coefficients ~ N(estimate, asymptotic covariance), "
                   "Sigma fixed; pointwise 2.5/97.5 percentiles";
    bands.lower.assign(static_cast<std::size_t>(H + 1), MatrixXd(K, K));
    bands.upper.assign(static_cast<std::size_t>(H + 1), MatrixXd(K, K));
    std::vector<double> cell(static_cast<std::size_t>(draws));
    for (int h = 0; h <= H; ++h) {
        for (Index i = 0; i < K; ++i) {
            for (Index j = 0; j < K; ++j) {
                const std::size_t off = static_cast<std::size_t>((h * K + i) * K + j);
                for (int d = 0; d < draws; ++d) cell[static_cast<std::size_t>(d)] = store[static_cast<std::size_t>(d) * cells + off];
                std::sort(cell.begin(), cell.end());
                bands.lower[static_cast<std::size_t>(h)](i, j) = quantile_sorted(cell, 0.025);
                bands.upper[static_cast<std::size_t>(h)](i, j) = quantile_sorted(cell, 0.975);
            }
        }
    }
    return bands;
}

StructuralSet structural_analysis(const VarEstimate& est, int H, const std::vector<std::size_t>& ordering,
                                  int band_draws, std::uint64_t seed, int threads) {
    auto s = impulse_responses(est, H, ordering);
    s.fevd = variance_decomposition(est, std::max(H, 1), ordering);
    s.hist = historical_decomposition(est, ordering);
    if (band_draws > 0) s.bands = irf_bands(est, H, ordering, band_draws, seed, threads);
    return s;
}

}  // namespace macrovar

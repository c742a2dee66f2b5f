#include <doctest.h>

#include <cmath>
#include <random>

#include "macrovar/diagnostics.hpp"
#include "macrovar/error.hpp"
#include "sim.hpp"

using namespace macrovar;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VarEstimate seeded_fit(std::uint64_t seed, int K, int p, int T) {
    std::mt19937_64 rng(seed);
    auto proc = testsupport::random_stable_var(rng, K, p, 0.8);
    proc.c = VectorXd::Ones(K);
    proc.sigma = testsupport::random_spd(rng, K);
    const MatrixXd y = testsupport::simulate(proc, T, seed + 1, 50);
    return estimate_var(y, testsupport::default_names(K), VarSpec{p, true});
}

}  // namespace

TEST_CASE("Granger-Wald equals the explicit restriction-matrix formula") {
    const auto est = seeded_fit(31, 2, 1, 60);
    const auto rows = granger_wald(est);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].dependent == "y1");
    CHECK(rows[0].excluded == "y2");
    CHECK(std::abs(rows[0].chi_sq - testsupport::wald_restriction_oracle(est, 0, {1})) < 1e-8);
    CHECK(std::abs(rows[2].chi_sq - testsupport::wald_restriction_oracle(est, 1, {0})) < 1e-8);

    const auto est3 = seeded_fit(32, 3, 2, 80);
    const auto r3 = granger_wald(est3);
    REQUIRE(r3.size() == 9);
    CHECK(r3[0].excluded == "y2");
    CHECK(r3[1].excluded == "y3");
    CHECK(r3[2].excluded == "All");
    CHECK(std::abs(r3[2].chi_sq - testsupport::wald_restriction_oracle(est3, 0, {1, 2})) < 1e-8 * r3[2].chi_sq + 1e-8);
    CHECK(std::abs(r3[4].chi_sq - testsupport::wald_restriction_oracle(est3, 1, {2})) < 1e-8 * r3[4].chi_sq + 1e-8);
    for (std::size_t eq = 0; eq < 3; ++eq) {
        CHECK(r3[eq * 3 + 2].df == r3[eq * 3].df + r3[eq * 3 + 1].df);
        CHECK(r3[eq * 3].df == 2);
    }
    for (const auto& w : r3) {
        CHECK(w.p_value >= 0.0);
        CHECK(w.p_value <= 1.0);
    }
}

TEST_CASE("Wald statistics are invariant to rescaling a variable") {
    std::mt19937_64 rng(33);
    auto proc = testsupport::random_stable_var(rng, 3, 2, 0.8);
    proc.c = VectorXd::Ones(3);
    proc.sigma = testsupport::random_spd(rng, 3);
    MatrixXd y = testsupport::simulate(proc, 70, 4, 30);
    const auto a = granger_wald(estimate_var(y, testsupport::default_names(3), VarSpec{2, true}));
    y.col(1) *= 250.0;
    const auto b = granger_wald(estimate_var(y, testsupport::default_names(3), VarSpec{2, true}));
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i].chi_sq - b[i].chi_sq) <= 1e-8 * std::max(1.0, a[i].chi_sq));
    }
}

TEST_CASE("stability roots") {
    const auto half = stability_roots(std::vector<MatrixXd>{0.5 * MatrixXd::Identity(3, 3)});
    REQUIRE(half.moduli.size() == 3);
    for (double m : half.moduli) CHECK(m == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(half.stable);

    const auto unit = stability_roots(std::vector<MatrixXd>{MatrixXd::Identity(3, 3)});
    CHECK(unit.max_modulus() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(unit.stable);

    std::mt19937_64 rng(34);
    for (int rep = 0; rep < 100; ++rep) {
        const auto proc = testsupport::random_stable_var(rng, 3, 2, 0.95);
        const auto s = stability_roots(proc.A);
        REQUIRE(s.roots.size() == 6);
        double prod = 1.0;
        for (std::size_t i = 0; i < s.moduli.size(); ++i) {
            prod *= s.moduli[i];
            if (i > 0) CHECK(s.moduli[i] <= s.moduli[i - 1]);
        }
        CHECK(std::abs(prod - std::abs(companion_matrix(proc.A).determinant())) < 1e-8);
        CHECK(std::abs(prod - std::abs(proc.A[1].determinant())) < 1e-8);
        CHECK(s.max_modulus() < 0.95 + 1e-9);
    }
}

TEST_CASE("residual cross-correlations") {
    std::mt19937_64 rng(35);
    std::normal_distribution<double> normal;
    MatrixXd U(50, 3);
    for (Eigen::Index i = 0; i < U.size(); ++i) U.data()[i] = normal(rng);
    const auto cc = residual_cross_correlations(U, 6);
    REQUIRE(cc.by_lag.size() == 7);
    CHECK(cc.band == doctest::Approx(1.0 / std::sqrt(50.0)));
    for (int l = 0; l <= 6; ++l) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                CHECK(std::abs(cc.by_lag[static_cast<std::size_t>(l)](i, j) - testsupport::cross_corr_oracle(U, i, j, l)) <
                      1e-12);
            }
        }
    }
    for (int i = 0; i < 3; ++i) CHECK(cc.by_lag[0](i, i) == doctest::Approx(1.0).epsilon(1e-14));

    MatrixXd W(10000, 3);
    for (Eigen::Index i = 0; i < W.size(); ++i) W.data()[i] = normal(rng);
    const auto wn = residual_cross_correlations(W, 5);
    for (int l = 1; l <= 5; ++l) CHECK(wn.by_lag[static_cast<std::size_t>(l)].cwiseAbs().maxCoeff() < 3.0 * wn.band);

    MatrixXd Z = U;
    Z.col(1).setConstant(2.0);
    CHECK_THROWS_AS(residual_cross_correlations(Z, 2), NumericError);
    CHECK_THROWS_AS(residual_cross_correlations(U, 48), DataError);
}

TEST_CASE("LM statistic equals the two-fit likelihood ratio") {
    const auto est = seeded_fit(36, 2, 1, 60);
    const auto lm = serial_correlation_lm(est, 3);
    const double T = static_cast<double>(est.num_obs());
    const double K = 2.0;
    const double d = static_cast<double>(est.regressors());
    for (int h = 1; h <= 3; ++h) {
        const auto& at = lm.at_lag[static_cast<std::size_t>(h - 1)];
        const double r_at = K;
        const double n_at = T - d - r_at - 0.5 * (K - r_at + 1.0);
        CHECK(std::abs(at.lre_stat - n_at * testsupport::lm_log_ratio_oracle(est, h, false)) < 1e-8);
        CHECK(at.df == 4);

        const auto& cu = lm.cumulative[static_cast<std::size_t>(h - 1)];
        const double r_cu = K * h;
        const double n_cu = T - d - r_cu - 0.5 * (K - r_cu + 1.0);
        CHECK(std::abs(cu.lre_stat - n_cu * testsupport::lm_log_ratio_oracle(est, h, true)) < 1e-8);
        CHECK(cu.df == 4 * h);
        CHECK(cu.p_lre >= 0.0);
        CHECK(cu.p_lre <= 1.0);
        CHECK(cu.p_rao >= 0.0);
        CHECK(cu.p_rao <= 1.0);
    }
}

TEST_CASE("Rao F degrees of freedom for three variables, two lags, 33 fitted observations") {
    const auto est = seeded_fit(37, 3, 2, 35);
    REQUIRE(est.num_obs() == 33);
    const auto lm = serial_correlation_lm(est, 2);
    const double s = std::sqrt(77.0 / 13.0);
    const auto& r1 = lm.at_lag[0];
    CHECK(r1.df_num == 9.0);
    CHECK(r1.df_denom == doctest::Approx(22.5 * s - 3.5).epsilon(1e-12));
    CHECK(std::abs(r1.df_denom - 51.3) < 0.05);
    // F is the Rao transform of the same likelihood ratio
    const double lambda = std::exp(-r1.lre_stat / 22.5);
    CHECK(r1.rao_f == doctest::Approx((std::pow(lambda, -1.0 / s) - 1.0) * r1.df_denom / 9.0).epsilon(1e-10));
    CHECK(lm.cumulative[0].lre_stat == r1.lre_stat);
}

TEST_CASE("LM test on residuals with no serial dependence gives a large p-value") {
    std::mt19937_64 rng(38);
    std::normal_distribution<double> normal;
    MatrixXd y(400, 2);
    for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = normal(rng);
    const auto est = estimate_var(y, testsupport::default_names(2), VarSpec{1, true});
    const auto lm = serial_correlation_lm(est, 1, LmPresample::Trim);
    CHECK(lm.at_lag[0].lre_stat >= 0.0);
    CHECK(lm.at_lag[0].p_lre > 0.01);
    CHECK_THROWS_AS(serial_correlation_lm(est, 0), DataError);
}

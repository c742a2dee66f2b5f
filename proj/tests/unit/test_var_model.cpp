#include <doctest.h>

#include <cmath>
#include <random>

#include "macrovar/error.hpp"
#include "macrovar/linalg.hpp"
#include "macrovar/var_model.hpp"
#include "sim.hpp"

using namespace macrovar;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using testsupport::VarProcess;

namespace {

VarProcess fixed_var2() {
    VarProcess v;
    MatrixXd A1(3, 3), A2(3, 3);
    A1 << 0.5, 0.1, 0.0, -0.2, 0.4, 0.1, 0.05, 0.0, 0.3;
    A2 << 0.1, 0.0, 0.05, 0.0, 0.2, 0.0, -0.1, 0.05, 0.2;
    v.A = {A1, A2};
    v.c = (VectorXd(3) << 1.0, -0.5, 2.0).finished();
    v.sigma = MatrixXd::Zero(3, 3);
    return v;
}

}  // namespace

TEST_CASE("noiseless VAR(2) is recovered exactly") {
    const auto proc = fixed_var2();
    MatrixXd init(2, 3);
    init << 0.3, -1.0, 2.0, -0.7, 0.4, 1.1;
    const MatrixXd y = testsupport::simulate(proc, 40, 1, 0, init);
    const auto est = estimate_var(y, testsupport::default_names(3), VarSpec{2, true});
    CHECK((est.c - proc.c).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((est.A[0] - proc.A[0]).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((est.A[1] - proc.A[1]).cwiseAbs().maxCoeff() < 1e-8);
    for (const auto& eq : est.per_equation) CHECK(eq.r_squared == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("VAR residuals are orthogonal to the regressors and sigma has the right divisors") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 20; ++rep) {
        auto proc = testsupport::random_stable_var(rng, 3, 2, 0.9);
        proc.c = VectorXd::Ones(3);
        proc.sigma = testsupport::random_spd(rng, 3);
        const MatrixXd y = testsupport::simulate(proc, 60, rng(), 50);
        const auto est = estimate_var(y, testsupport::default_names(3), VarSpec{2, true});
        const MatrixXd xu = est.X.transpose() * est.residuals;
        CHECK(xu.cwiseAbs().maxCoeff() < 1e-8 * (1.0 + est.X.cwiseAbs().maxCoeff() * est.residuals.cwiseAbs().maxCoeff() * 60));
        const double T = static_cast<double>(est.num_obs());
        const double m = static_cast<double>(est.regressors());
        const MatrixXd uu = est.residuals.transpose() * est.residuals;
        CHECK((est.sigma_ml - uu / T).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((est.sigma_ls - uu / (T - m)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(est.num_obs() == 58);
        CHECK(est.coef_cov.rows() == 3 * 7);
    }
}

TEST_CASE("equation-by-equation OLS equals the joint multivariate fit") {
    std::mt19937_64 rng(22);
    std::normal_distribution<double> normal;
    MatrixXd y(30, 2);
    for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = normal(rng);
    const auto est = estimate_var(y, testsupport::default_names(2), VarSpec{2, true});
    for (Eigen::Index k = 0; k < 2; ++k) {
        MatrixXd X(28, 5);
        VectorXd yk(28);
        for (int t = 2; t < 30; ++t) {
            X.row(t - 2) << 1.0, y(t - 1, 0), y(t - 1, 1), y(t - 2, 0), y(t - 2, 1);
            yk(t - 2) = y(t, k);
        }
        const VectorXd b = (X.transpose() * X).ldlt().solve(X.transpose() * yk);
        CHECK((b - est.coef.col(k)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("coefficient table, t-ratios and log likelihood") {
    std::mt19937_64 rng(23);
    auto proc = testsupport::random_stable_var(rng, 2, 1, 0.7);
    proc.c = VectorXd::Zero(2);
    proc.sigma = MatrixXd::Identity(2, 2);
    const MatrixXd y = testsupport::simulate(proc, 100, 5, 20);
    const auto est = estimate_var(y, {"a", "b"}, VarSpec{1, true});
    const auto& row = est.per_equation[1].coef_table[1];  // variables by lag, then C
    CHECK(est.per_equation[1].coef_table[2].name == "C");
    CHECK(row.name == "b(-1)");
    CHECK(row.coefficient == est.coef(2, 1));
    CHECK(row.std_error == doctest::Approx(std::sqrt(est.coef_cov(est.cov_index(1, 2), est.cov_index(1, 2)))));
    CHECK(row.t_stat == doctest::Approx(row.coefficient / row.std_error));
    const double T = 99.0;
    const double ll = -0.5 * T * (2.0 * std::log(2.0 * M_PI) + linalg::log_det_spd(est.sigma_ml) + 2.0);
    CHECK(est.log_likelihood == doctest::Approx(ll).epsilon(1e-12));
    CHECK(est.aic == doctest::Approx(-2.0 * ll / T + 2.0 * 6.0 / T).epsilon(1e-12));
    CHECK(est.sc == doctest::Approx(-2.0 * ll / T + 6.0 * std::log(T) / T).epsilon(1e-12));
}

TEST_CASE("relabeling the variables permutes the estimates") {
    std::mt19937_64 rng(24);
    auto proc = testsupport::random_stable_var(rng, 3, 1, 0.8);
    proc.c = VectorXd::Ones(3);
    proc.sigma = testsupport::random_spd(rng, 3);
    const MatrixXd y = testsupport::simulate(proc, 80, 6, 20);
    MatrixXd z(80, 3);
    z << y.col(2), y.col(0), y.col(1);
    const auto a = estimate_var(y, testsupport::default_names(3), VarSpec{1, true});
    const auto b = estimate_var(z, testsupport::default_names(3), VarSpec{1, true});
    const std::array<int, 3> src{2, 0, 1};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) CHECK(b.A[0](i, j) == doctest::Approx(a.A[0](src[i], src[j])).epsilon(1e-9));
    }
    CHECK(b.log_likelihood == doctest::Approx(a.log_likelihood).epsilon(1e-10));
}

TEST_CASE("estimate_var errors") {
    MatrixXd y(6, 3);
    y.setRandom();
    CHECK_THROWS_WITH_AS(estimate_var(y, testsupport::default_names(3), VarSpec{2, true}),
                         doctest::Contains("insufficient observations"), NumericError);
    CHECK_THROWS_AS(estimate_var(y, testsupport::default_names(3), VarSpec{0, true}), DataError);
    MatrixXd c(30, 2);
    for (int t = 0; t < 30; ++t) c.row(t) << std::sin(t), 2.0 * std::sin(t);
    CHECK_THROWS_WITH_AS(estimate_var(c, testsupport::default_names(2), VarSpec{1, true}),
                         doctest::Contains("collinear"), NumericError);
}

TEST_CASE("information-criterion penalties are ordered at T_eff = 30") {
    const double T = 30.0;
    CHECK(std::log(T) >= 2.0 * std::log(std::log(T)));
    CHECK(2.0 * std::log(std::log(T)) >= 2.0);
    std::mt19937_64 rng(25);
    const MatrixXd y = testsupport::random_walks(rng, 32, 3, 0.0);
    const auto sel = select_lag_order(y, 2);
    CHECK(sel.n_obs == 30);
    for (const auto& r : sel.rows) {
        CHECK(r.sc >= r.hq);
        CHECK(r.hq >= r.aic);
    }
    CHECK_FALSE(sel.rows[0].lr.has_value());
}

TEST_CASE("lag selection: exact dependence is detected, white noise selects lag 0 under SC") {
    VarProcess proc;
    proc.A = {0.9 * MatrixXd::Identity(3, 3)};
    proc.A[0](0, 1) = 0.05;
    proc.c = VectorXd::Ones(3);
    proc.sigma = 1e-4 * MatrixXd::Identity(3, 3);
    const MatrixXd y = testsupport::simulate(proc, 60, 7, 0, MatrixXd::Constant(1, 3, 5.0));
    const auto sel = select_lag_order(y, 3);
    CHECK(sel.aic_lag >= 1);
    CHECK(sel.sc_lag >= 1);
    CHECK(sel.hq_lag >= 1);
    CHECK(sel.fpe_lag >= 1);
    CHECK(sel.lr_lag >= 1);
    CHECK(*sel.rows[1].lr > 16.918977604620448);

    std::mt19937_64 rng(26);
    std::normal_distribution<double> normal;
    int zero = 0;
    for (int rep = 0; rep < 50; ++rep) {
        MatrixXd w(2000, 3);
        for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = normal(rng);
        zero += select_lag_order(w, 2).sc_lag == 0 ? 1 : 0;
    }
    CHECK(zero >= 48);
    CHECK_THROWS_AS(select_lag_order(y.topRows(8), 3), DataError);
    CHECK_THROWS_AS(select_lag_order(y, 0), DataError);
}

TEST_CASE("consensus picks the most-voted lag, ties to the smaller lag") {
    LagSelection s;
    s.lr_lag = 2;
    s.fpe_lag = 1;
    s.aic_lag = 2;
    s.sc_lag = 1;
    s.hq_lag = 3;
    const auto [lag, who] = s.consensus();
    CHECK(lag == 1);
    CHECK(who == std::vector<std::string>{"FPE", "SC"});
}

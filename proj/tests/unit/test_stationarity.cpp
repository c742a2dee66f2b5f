#include <doctest.h>

#include <cmath>
#include <random>

#include "macrovar/critical_values.hpp"
#include "macrovar/error.hpp"
#include "macrovar/stationarity.hpp"
#include "sim.hpp"

using namespace macrovar;
using Eigen::MatrixXd;

namespace {

std::vector<double> random_walk(std::mt19937_64& rng, int T) {
    std::normal_distribution<double> normal;
    std::vector<double> y{0.0};
    for (int t = 1; t < T; ++t) y.push_back(y.back() + normal(rng));
    return y;
}

}  // namespace

TEST_CASE("ADF critical values at 34 included observations") {
    const auto cv = cv::adf_critical_values(34);
    CHECK(std::abs(cv.pct1 - -3.6394) < 5e-5);
    CHECK(std::abs(cv.pct5 - -2.9511) < 5e-5);
    CHECK(std::abs(cv.pct10 - -2.6143) < 5e-5);
}

TEST_CASE("ADF critical values are ordered and tend to their asymptotes") {
    for (int n : {12, 20, 34, 60, 200, 1000, 100000}) {
        const auto cv = cv::adf_critical_values(n);
        CHECK(cv.pct1 < cv.pct5);
        CHECK(cv.pct5 < cv.pct10);
    }
    const auto inf = cv::adf_critical_values(10000000);
    CHECK(std::abs(inf.pct5 - -2.86154) < 1e-4);
}

TEST_CASE("ADF p-value reproduces the published level-series row") {
    CHECK(std::abs(cv::adf_p_value(-0.4573, 34) - 0.8876) < 5e-4);
}

TEST_CASE("ADF p-value is monotone and consistent with the critical values") {
    for (int n : {20, 34, 100, 500}) {
        double prev = 0.0;
        for (double s = -8.0; s <= 3.0; s += 0.01) {
            const double p = cv::adf_p_value(s, n);
            CHECK(p >= prev);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            prev = p;
        }
        const auto cv = cv::adf_critical_values(n);
        CHECK(std::abs(cv::adf_p_value(cv.pct1, n) - 0.01) < 1e-6);
        CHECK(std::abs(cv::adf_p_value(cv.pct5, n) - 0.05) < 1e-6);
        CHECK(std::abs(cv::adf_p_value(cv.pct10, n) - 0.10) < 1e-6);
    }
}

TEST_CASE("Johansen 5% critical values for three variables") {
    CHECK(std::abs(cv::johansen_trace_cv5(3) - 29.797) < 5e-4);
    CHECK(std::abs(cv::johansen_trace_cv5(2) - 15.495) < 5e-4);
    CHECK(std::abs(cv::johansen_trace_cv5(1) - 3.841) < 5e-4);
    CHECK(std::abs(cv::johansen_max_eigen_cv5(3) - 21.132) < 5e-4);
    CHECK(std::abs(cv::johansen_max_eigen_cv5(2) - 14.265) < 5e-4);
    CHECK(std::abs(cv::johansen_max_eigen_cv5(1) - 3.841) < 5e-4);
    // the two-moment gamma fit is coarse in the tail, more so for large m
    for (int m = 1; m <= cv::kJohansenMaxDim; ++m) {
        const double tol = m <= 3 ? 0.01 : 0.02;
        CHECK(std::abs(cv::johansen_trace_p_value(cv::johansen_trace_cv5(m), m) - 0.05) < tol);
        CHECK(std::abs(cv::johansen_max_eigen_p_value(cv::johansen_max_eigen_cv5(m), m) - 0.05) < tol);
    }
    CHECK_THROWS_AS(cv::johansen_trace_cv5(13), NumericError);
}

TEST_CASE("ADF result invariants") {
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 50; ++rep) {
        const auto r = adf_test(random_walk(rng, 60));
        CHECK(r.cv_1pct < r.cv_5pct);
        CHECK(r.cv_5pct < r.cv_10pct);
        if (r.statistic < r.cv_1pct) CHECK(r.p_value < 0.01);
        if (r.statistic > r.cv_10pct) CHECK(r.p_value > 0.10);
        CHECK(r.lags_used >= 0);
        CHECK(r.n_obs == 59 - r.lags_used);
    }
}

TEST_CASE("ADF statistic is invariant to affine rescaling") {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 20; ++rep) {
        auto y = random_walk(rng, 40);
        std::vector<double> z;
        for (double v : y) z.push_back(3.7 * v - 12.0);
        for (int k : {0, 2}) {
            const auto a = adf_test(y, AdfLagRule::fixed(k));
            const auto b = adf_test(z, AdfLagRule::fixed(k));
            CHECK(a.statistic == doctest::Approx(b.statistic).epsilon(1e-9));
        }
        CHECK(adf_test(y).lags_used == adf_test(z).lags_used);
    }
}

TEST_CASE("ADF rejects white noise and reports errors") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> normal;
    int rejections = 0;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> e(200);
        for (auto& v : e) v = normal(rng);
        rejections += adf_test(e).rejects_at(0.05) ? 1 : 0;
    }
    CHECK(rejections >= 98);
    CHECK_THROWS_AS(adf_test(std::vector<double>(8, 1.0)), DataError);
    std::vector<double> line;
    for (int t = 0; t < 30; ++t) line.push_back(0.5 * t);
    CHECK_THROWS_WITH_AS(adf_test(line, AdfLagRule::fixed(0)), doctest::Contains("degenerate regression"),
                         NumericError);
}

TEST_CASE("Johansen statistics telescope and are reorder invariant") {
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 50; ++rep) {
        const MatrixXd y = testsupport::random_walks(rng, 80, 3, 0.3);
        const auto r = johansen_test(y, 1);
        REQUIRE(r.eigenvalues.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(r.eigenvalues[i] >= 0.0);
            CHECK(r.eigenvalues[i] < 1.0);
            if (i > 0) CHECK(r.eigenvalues[i] <= r.eigenvalues[i - 1]);
            CHECK(r.trace_stats[i] >= r.max_eigen_stats[i] - 1e-12);
            if (i + 1 < 3) CHECK(std::abs(r.trace_stats[i] - r.max_eigen_stats[i] - r.trace_stats[i + 1]) <= 1e-10);
        }
        CHECK(std::abs(r.trace_stats[2] - r.max_eigen_stats[2]) <= 1e-10);

        MatrixXd perm(y.rows(), 3);
        perm << y.col(2), y.col(0), y.col(1);
        const auto q = johansen_test(perm, 1);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(q.trace_stats[i] == doctest::Approx(r.trace_stats[i]).epsilon(1e-8));
        }
    }
}

TEST_CASE("Johansen detects an exact cointegrating relation and errors") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> normal;
    MatrixXd y = testsupport::random_walks(rng, 200, 2, 0.2);
    for (Eigen::Index t = 0; t < y.rows(); ++t) y(t, 1) = 0.5 * y(t, 0) + normal(rng);
    CHECK(johansen_test(y, 1).rank_decision == 1);

    MatrixXd c = testsupport::random_walks(rng, 60, 2, 0.2);
    c.col(1) = 2.0 * c.col(0);
    CHECK_THROWS_WITH_AS(johansen_test(c, 1), doctest::Contains("collinear regressors"), NumericError);
    CHECK_THROWS_AS(johansen_test(testsupport::random_walks(rng, 200, 13, 0.1), 1), NumericError);
    CHECK_THROWS_AS(johansen_test(y, 1, JohansenDeterministic::RestrictedTrend), NumericError);
}

#pragma once

#include <array>

namespace macrovar::cv {

/// Dickey-Fuller critical values at 1%, 5% and 10% (constant, no trend).
struct AdfCriticalValues {
    double pct1;
    double pct5;
    double pct10;
};

/**
 * Finite-sample critical values for the constant-only Dickey-Fuller t-ratio,
 * `n` being the number of observations in the test regression. Values come
 * from a response surface beta_inf + b1/n + b2/n^2 + b3/n^3.
 */
AdfCriticalValues adf_critical_values(int n);

/**
 * Lower-tail probability P(tau <= stat) for the constant-only Dickey-Fuller
 * distribution at sample size n. Interpolates linearly in normal-quantile
 * space between tabulated quantile surfaces, so it is monotone in `stat`.
 */
double adf_p_value(double stat, int n);

/// Largest number of stochastic trends (K - r) covered by the Johansen tables.
inline constexpr int kJohansenMaxDim = 12;

/// Asymptotic 5% critical values, intercept in the VAR and no trend, indexed by m = K - r.
double johansen_trace_cv5(int m);
double johansen_max_eigen_cv5(int m);

/// Approximate asymptotic p-values from a two-moment gamma fit, indexed by m = K - r.
double johansen_trace_p_value(double stat, int m);
double johansen_max_eigen_p_value(double stat, int m);

}  // namespace macrovar::cv

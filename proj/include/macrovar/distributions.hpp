#pragma once

namespace macrovar::dist {

/// Upper-tail probabilities; all return values clamped to [0, 1].
double chi2_sf(double x, double df);
double f_sf(double x, double df1, double df2);
double gamma_sf(double x, double shape, double scale);

double normal_cdf(double x);
double normal_quantile(double p);
double chi2_quantile(double p, double df);

}  // namespace macrovar::dist

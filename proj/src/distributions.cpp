#include "macrovar/distributions.hpp"

#include <algorithm>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>

namespace macrovar::dist {

namespace bm = boost::math;

namespace {
double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }
}  // namespace

double chi2_sf(double x, double df) {
    if (x <= 0.0) return 1.0;
    return clamp01(bm::cdf(bm::complement(bm::chi_squared(df), x)));
}

double f_sf(double x, double df1, double df2) {
    if (x <= 0.0) return 1.0;
    return clamp01(bm::cdf(bm::complement(bm::fisher_f(df1, df2), x)));
}

double gamma_sf(double x, double shape, double scale) {
    if (x <= 0.0) return 1.0;
    return clamp01(bm::cdf(bm::complement(bm::gamma_distribution<>(shape, scale), x)));
}

double normal_cdf(double x) { return bm::cdf(bm::normal(), x); }

double normal_quantile(double p) { return bm::quantile(bm::normal(), p); }

double chi2_quantile(double p, double df) { return bm::quantile(bm::chi_squared(df), p); }

}  // namespace macrovar::dist

#include "ordagree/inference.hpp"

#include <cmath>
#include <stdexcept>

namespace ordagree {

const char* to_string(IntervalMethod method) {
    switch (method) {
        case IntervalMethod::normal: return "normal";
        case IntervalMethod::percentile: return "percentile";
        case IntervalMethod::bootstrap_t: return "bootstrap_t";
        case IntervalMethod::pivotal: return "pivotal";
    }
    return "unknown";
}

IntervalMethod interval_method_from_string(const std::string& name) {
    if (name == "normal") return IntervalMethod::normal;
    if (name == "percentile") return IntervalMethod::percentile;
    if (name == "bootstrap_t") return IntervalMethod::bootstrap_t;
    if (name == "pivotal") return IntervalMethod::pivotal;
    throw std::invalid_argument("unknown interval method '" + name + "'");
}

namespace {

double polynomial(const double* coeffs, int n, double x) {
    double v = coeffs[n - 1];
    for (int i = n - 2; i >= 0; --i) v = v * x + coeffs[i];
    return v;
}

}  // namespace

// Wichura's AS 241 (PPND16) rational approximation.
double standard_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("standard_normal_quantile: p must be in (0, 1)");
    }
    static constexpr double a[8] = {
        3.3871328727963666080e0,  1.3314166789178437745e2, 1.9715909503065514427e3,
        1.3731693765509461125e4,  4.5921953931549871457e4, 6.7265770927008700853e4,
        3.3430575583588128105e4,  2.5090809287301226727e3};
    static constexpr double b[8] = {
        1.0,                      4.2313330701600911252e1, 6.8718700749205790830e2,
        5.3941960214247511077e3,  2.1213794301586595867e4, 3.9307895800092710610e4,
        2.8729085735721942674e4,  5.2264952788528545610e3};
    static constexpr double c[8] = {
        1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
        3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double d[8] = {
        1.0,                      2.05319162663775882187e0, 1.67638483018380384940e0,
        6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static constexpr double e[8] = {
        6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
        2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double f[8] = {
        1.0,                      5.99832206555887937690e-1, 1.36929880922735805310e-1,
        1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * polynomial(a, 8, r) / polynomial(b, 8, r);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = polynomial(c, 8, r) / polynomial(d, 8, r);
    } else {
        r -= 5.0;
        value = polynomial(e, 8, r) / polynomial(f, 8, r);
    }
    return q < 0.0 ? -value : value;
}

IntervalEstimate normal_interval(const AgreementEstimate& estimate, double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("normal_interval: level must be in (0, 1)");
    }
    const double alpha = 1.0 - level;
    const double z = standard_normal_quantile(1.0 - alpha / 2.0);
    const double se = estimate.std_error();
    return IntervalEstimate{IntervalMethod::normal, estimate.d_hat_star - z * se,
                            estimate.d_hat_star + z * se, level};
}

IntervalEstimate clip_to_unit(IntervalEstimate interval) {
    interval.lower = std::min(1.0, std::max(0.0, interval.lower));
    interval.upper = std::min(1.0, std::max(0.0, interval.upper));
    return interval;
}

TestResult one_sided_test(const AgreementEstimate& estimate, double d0, double alpha) {
    if (d0 < 0.0 || d0 > 1.0) {
        throw std::invalid_argument("one_sided_test: d0 must be in [0, 1]");
    }
    if (!(alpha > 0.0 && alpha <= 0.5)) {
        throw std::invalid_argument("one_sided_test: alpha must be in (0, 0.5]");
    }
    TestResult result;
    result.d0 = d0;
    result.alpha = alpha;
    result.statistic = estimate.d_hat_star;
    result.threshold = d0 + standard_normal_quantile(1.0 - alpha) * estimate.std_error();
    result.reject = result.statistic > result.threshold;
    return result;
}

}  // namespace ordagree

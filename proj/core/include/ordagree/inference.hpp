#pragma once

#include <string>

#include "ordagree/agreement.hpp"

namespace ordagree {

enum class IntervalMethod { normal, percentile, bootstrap_t, pivotal };

const char* to_string(IntervalMethod method);
IntervalMethod interval_method_from_string(const std::string& name);

/// A two-sided confidence interval for the agreement index. Endpoints
/// are not restricted to [0,1]; see clip_to_unit for a reporting view.
struct IntervalEstimate {
    IntervalMethod method = IntervalMethod::normal;
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;  ///< nominal confidence 1 - alpha
};

/// Asymptotic-normal interval d* -/+ z_{1-alpha/2} sqrt(var).
/// Throws unless level is in (0, 1).
IntervalEstimate normal_interval(const AgreementEstimate& estimate, double level);

/// Endpoints clamped to [0, 1] for presentation. Coverage scoring always
/// uses the unclipped interval.
IntervalEstimate clip_to_unit(IntervalEstimate interval);

/// One-sided test of H0: d <= d0 against H1: d > d0.
struct TestResult {
    double d0 = 0.0;
    double alpha = 0.0;
    double threshold = 0.0;  ///< accept H0 while the statistic stays at or below this
    double statistic = 0.0;  ///< observed d_hat_star
    bool reject = false;
};

/// Accepts H0 whenever d_hat_star <= d0 + q_{1-alpha} * se.
/// d0 must lie in [0, 1]; alpha in (0, 0.5].
TestResult one_sided_test(const AgreementEstimate& estimate, double d0, double alpha);

/// Inverse standard-normal CDF (rational approximation, absolute error
/// well below 1e-9 over (0, 1)).
double standard_normal_quantile(double p);

}  // namespace ordagree

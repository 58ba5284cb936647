#pragma once

namespace vibelab {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation,
/// absolute accuracy ~1e-14 for moderate a, b.
double regularized_incomplete_beta(double a, double b, double x);

/// Student-t CDF with df degrees of freedom.
double student_t_cdf(double t, double df);

/// Two-sided p-value for an observed t statistic.
double student_t_two_sided_p(double t, double df);

}  // namespace vibelab

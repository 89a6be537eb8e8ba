#pragma once

namespace rosefit {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
/// evaluated by Lentz's continued fraction to an absolute tolerance of 1e-12.
double regularized_incomplete_beta(double x, double a, double b);

/// Two-sided p-value of Student's t with dof degrees of freedom.
double t_p_value(double t, double dof);

/// Survival function P(F > f) of the F distribution with (dof1, dof2) degrees of freedom.
double f_p_value(double f, double dof1, double dof2);

}  // namespace rosefit

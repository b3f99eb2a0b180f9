#ifndef PLFILTER_SPECIAL_FUNCTIONS_HPP
#define PLFILTER_SPECIAL_FUNCTIONS_HPP

namespace plf {

/// Regularized lower incomplete gamma P(a, x) = γ(a, x) / Γ(a).
/// Series for x < a + 1, continued fraction otherwise; ~1e-14 relative.
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double reg_upper_gamma(double a, double x);

/// log of the (unregularized) lower incomplete gamma ln γ(a, x), x > 0.
double log_lower_gamma(double a, double x);

/// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);

/// Upper tail probability of an F(d1, d2) variate at value f.
double f_tail_probability(double f, double d1, double d2);

} // namespace plf

#endif // PLFILTER_SPECIAL_FUNCTIONS_HPP

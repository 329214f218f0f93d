#pragma once
#include <span>
#include <vector>

// Special functions needed by the analytic predictions: log-gamma, digamma,
// dilogarithm, regularized incomplete gamma. Double precision throughout;
// target relative accuracy ~1e-13 on the domains actually used (positive
// real arguments, dilog on [0,1]).

namespace srg::sf {

inline constexpr double euler_gamma = 0.57721566490153286060651209;
inline constexpr double pi = 3.14159265358979323846264338;

// ln Gamma(x), x > 0. Lanczos approximation (g = 7, 9 terms).
double log_gamma(double x);

// psi(x) = Gamma'(x)/Gamma(x), x > 0. Recurrence up to x >= 10, then the
// Bernoulli asymptotic series.
double digamma(double x);

// Li2(x) for x in [0, 1]. Power series, reflected about x = 1/2.
double dilog(double x);

// Regularized incomplete gamma functions, a > 0, x >= 0.
// reg_lower_gamma = P(a,x), reg_upper_gamma = Q(a,x) = 1 - P(a,x); the one
// that is small is computed directly (series vs continued fraction).
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

// log(sum(exp(v))) without overflow; -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> v);

// Quantile of the chi-square distribution with df degrees of freedom:
// the x with P(df/2, x/2) = prob. Bisection; prob in (0, 1).
double chi_square_quantile(double df, double prob);

}  // namespace srg::sf

#pragma once

namespace alm {

// Regularized lower incomplete gamma P(a, x) = gamma(a,x) / Gamma(a)
double gamma_p(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)
double gamma_q(double a, double x);

// Upper tail of the chi-square distribution with df degrees of freedom
double chi_square_tail(double df, double x);

} // namespace alm

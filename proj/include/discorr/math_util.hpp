// Small numeric helpers: factorial tables, log-factorials, Poisson weights.

#pragma once

#include <complex>

namespace discorr {

using cplx = std::complex<double>;

// n! as a double, exact to rounding for n <= 170.
double factorial(int n);

// ln(n!), table-backed, valid for n >= 0.
double log_factorial(int n);

// Binomial coefficient as a double.
double binomial(int n, int k);

// Poisson pmf e^{-mu} mu^n / n!, assembled in log space.
double poisson_pmf(double mu, int n);

// |alpha|^p e^{-|alpha|^2/2} / sqrt(n! m!) style magnitudes appear all over the
// closed forms; this evaluates z^p / sqrt(n!) in log space with the phase kept
// exact (z complex, p >= 0). Returns 0 for z == 0 and p > 0.
cplx power_over_sqrt_factorial(cplx z, int p, int n);

} // namespace discorr

#pragma once
#include <vector>

namespace tmsv::specfun {

// Associated Laguerre L_n^{(a)}(x), upward three-term recurrence.
// a = 0 gives the ordinary Laguerre polynomial.
double laguerre(int n, int a, double x);
inline double laguerre(int n, double x) { return laguerre(n, 0, x); }

// Harmonic-oscillator eigenfunction phi_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi)),
// evaluated by the normalized recurrence (no factorial overflow).
double oscillator_eigenfunction(int n, double x);

// phi_0..phi_{n_max} at one argument (one recurrence pass).
std::vector<double> oscillator_eigenfunctions(int n_max, double x);

// ln(n!), exact cumulative table for small n, lgamma beyond.
double log_factorial(int n);

}  // namespace tmsv::specfun

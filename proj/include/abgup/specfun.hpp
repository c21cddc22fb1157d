#pragma once

#include <complex>
#include <span>

#include "abgup/errors.hpp"

namespace abgup::specfun {

using Complex = std::complex<double>;

/// sin(πx) and cos(πx) with exact zeros at the integers / half-integers.
double sin_pi(double x);
double cos_pi(double x);

/// Γ(x) by the g = 7 Lanczos sum, reflected for x < 1/2. Exact for
/// positive integers up to 171. Throws PoleError at non-positive integers.
double gamma_fn(double x);

/// log|Γ(x)|.
double log_gamma_abs(double x);

/// ψ(x) = Γ′(x)/Γ(x): upward recurrence to x ≥ 10, then the asymptotic
/// Bernoulli series; reflection for x ≤ 0.
double digamma(double x);

/// Bessel function of the first kind J_ν(z) for real order and z ≥ 0.
///
/// Negative non-integer orders are allowed for z > 0.
double bessel_j(double nu, double z);

/// ₂F₁(1, 1; c; x) for complex x off the cut [1, ∞).
///
/// Power series for |x| ≤ 0.7, Gauss continued fraction elsewhere. For
/// c < 1.5 the continued fraction is replaced by the contiguous relation in
/// c, stepping down from c + 1 and c + 2.
Complex hyp2f1_11(double c, Complex x);

/// Individual branches of hyp2f1_11, for cross-checking.
Complex hyp2f1_11_series(double c, Complex x);
Complex hyp2f1_11_cf(double c, Complex x);
Complex hyp2f1_11_contiguous(double c, Complex x);

/// Truncated pFq(a; b; z) for |z| ≤ 1, summed until the term ratio drops
/// below round-off. Throws AccuracyError if the terms keep growing or
/// `max_terms` is exhausted.
double pfq_series(std::span<const double> a, std::span<const double> b, double z,
                  int max_terms = 1000);

}  // namespace abgup::specfun

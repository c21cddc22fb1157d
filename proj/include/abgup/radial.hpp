#pragma once

#include <complex>
#include <functional>

#include <Eigen/Core>

#include "abgup/core.hpp"
#include "abgup/errors.hpp"

namespace abgup::radial {

using Complex = std::complex<double>;

/// ξ_m = α′(3m + 2α′) and ξ_{m,±} = ξ′_m + 2ξ_m(1 ± |m+α′|),
/// with ξ′_m = α′²(m+α′)(2m+α′).
struct XiSet {
  double xi = 0.0;
  double xi_plus = 0.0;
  double xi_minus = 0.0;
  double xi_prime = 0.0;
};

XiSet xi_coeffs(int m, double alpha_prime);

/// ν = |m + α′|.
double order_of(int m, double alpha_prime);

/// F₁(z; μ, ν), the antiderivative of J_μ(z)J_ν(z)/z:
///
///   −z/(μ²−ν²)[J_{μ+1}J_ν − J_μJ_{ν+1}] + J_μJ_ν/(μ+ν).
///
/// At ν = μ the removable 0/0 is filled by interpolating in ν across
/// μ ± ε, μ ± 2ε. At ν = −μ the additive constant has a true pole; it is
/// subtracted, the remainder interpolated, and the constant fixed so that the
/// result is the ₃F₄ + ln z antiderivative (small-z form ln z/(Γ(1−μ)Γ(1+μ))).
double f1_integral(double z, double mu, double nu);

/// F₂(z; μ, ν) = [F₁(μ, ν−1) + F₁(μ, ν+1)]/(2ν).
double f2_integral(double z, double mu, double nu);

/// F₃(z; μ, ν) = [F₁(μ−1,ν−1) + F₁(μ−1,ν+1) + F₁(μ+1,ν−1) + F₁(μ+1,ν+1)]/(4μν).
double f3_integral(double z, double mu, double nu);

/// ∫_lower^z J_μ(t)J_ν(t)/tⁿ dt by tanh-sinh quadrature.
///
/// With lower = 0 the integrand must be integrable at the origin
/// (μ + ν − n > −1), otherwise DomainError. Throws AccuracyError when the
/// error estimate exceeds `tol`.
double fn_quadrature(int n, double z, double mu, double nu, double tol = 1e-12,
                     double lower = 0.0);

/// A_m = (−i)^{|m+α′|} = e^{−iπν/2}.
Complex mode_a(int m, double alpha_prime);

/// Zeroth-order radial mode A_m J_ν(z).
Complex mode_f0(double z, int m, double alpha_prime);

struct UV {
  Complex u;
  Complex v;
};

/// Particular-solution coefficients u_m(z), v_m(z) of the O(β) radial
/// equation. Throws SingularConfigurationError for integer ν.
UV uv_pair(double z, int m, double alpha_prime, const PhysicalParams& params);

struct G12 {
  Complex g1;
  Complex g2;
};

/// z → ∞ limits of u_m and v_m.
G12 g1_g2(int m, double alpha_prime, const PhysicalParams& params);

/// C_m from the outgoing-wave condition C + g₁ = −e^{−iπν}(D + g₂).
Complex c_coefficient(int m, double alpha_prime, Complex d_m, const PhysicalParams& params);

struct RadialMode {
  int m = 0;
  double alpha_prime = 0.0;
  double order = 0.0;
  Complex a;
  Complex b{0.0, 0.0};
  Complex c;
  Complex d{0.0, 0.0};
  G12 g;
  PhysicalParams params;

  Complex f0(double z) const;
  Complex f1(double z) const;
  UV uv(double z) const;

  /// Relative e^{−iz} amplitude of f₁ built from the asymptotic constants:
  /// |(C+g₁)e^{iπν/2} + (D+g₂)e^{−iπν/2}| / (|C+g₁| + |D+g₂|).
  double incoming_residual() const;
};

RadialMode make_mode(int m, double alpha_prime, Complex d_m, const PhysicalParams& params);

/// O(β) radial mode (C+u)J_ν + (D+v)J_{−ν}.
Complex mode_f1(double z, int m, double alpha_prime, Complex d_m, const PhysicalParams& params);

/// Incoming-wave fraction of f₁ measured at finite z from w = √z f₁ and its
/// derivative: |w + iw′| / (|w| + |w′|). Decays like 1/z.
double incoming_fraction_at(const RadialMode& mode, double z);

/// Right-hand side of Ŝ₁f₁ = source in r-units:
/// 2ħ²k⁴[−2ξ/z²(f₀′/z − f₀/z² + f₀/2) + ξ′f₀/z⁴].
Complex s1_source(double z, int m, double alpha_prime, const PhysicalParams& params);

enum class OdeTarget { S1Zero, S1Source };

Eigen::ArrayXd uniform_grid(double z0, double h, Eigen::Index points);
Eigen::ArrayXcd sample(const Eigen::ArrayXd& grid, const std::function<Complex(double)>& f);

struct OdeResidual {
  double absolute = 0.0;  ///< max |Ŝ₁f − target|
  double relative = 0.0;  ///< absolute / max magnitude of the individual operator terms
};

/// Interior residual of Ŝ₁f (or Ŝ₁f − source) by second-order central
/// differences on the uniform grid z0 + i·h. Needs ≥ 7 points, z0 ≥ 0.1 and
/// h ≤ 0.1.
///
/// The relative figure divides by the largest of |k²f″|, |k²f′/z|,
/// |k²ν²f/z²|, |k²f| and |source| over the interior, so it does not depend
/// on the overall scale of the mode.
OdeResidual ode_residual(const Eigen::ArrayXcd& values, double z0, double h, int m, double alpha_prime,
                    const PhysicalParams& params, OdeTarget target);

}  // namespace abgup::radial

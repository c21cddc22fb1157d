#include "abgup/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "abgup/specfun.hpp"

namespace abgup::radial {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286061;

// Interpolation half-step for the degenerate F₁ orders. Round-off in the
// generic form grows like 1e-16/ε, the Lagrange remainder like ε⁴.
constexpr double kDegenerateEps = 1e-3;
constexpr double kNearEqual = 1e-4;
constexpr double kExactOpposite = 1e-12;
constexpr double kIntegerOrderTol = 1e-6;

using specfun::bessel_j;
using specfun::gamma_fn;

// J_ν(z) for any real order; negative integer orders use J_{−n} = (−1)ⁿJ_n.
double bessel_any(double nu, double z) {
  if (nu < 0.0 && nu == std::floor(nu)) {
    const double v = bessel_j(-nu, z);
    return std::fmod(-nu, 2.0) == 0.0 ? v : -v;
  }
  return bessel_j(nu, z);
}

double f1_generic(double z, double mu, double nu) {
  const double jm = bessel_any(mu, z);
  const double jn = bessel_any(nu, z);
  const double jm1 = bessel_any(mu + 1.0, z);
  const double jn1 = bessel_any(nu + 1.0, z);
  return -z / (mu * mu - nu * nu) * (jm1 * jn - jm * jn1) + jm * jn / (mu + nu);
}

// Four-point Lagrange interpolation of g on nodes {−2ε, −ε, ε, 2ε}, at s.
template <typename G>
double interpolate4(const G& g, double s) {
  const double e = kDegenerateEps;
  const std::array<double, 4> t = {-2 * e, -e, e, 2 * e};
  double out = 0.0;
  for (int i = 0; i < 4; ++i) {
    double w = 1.0;
    for (int j = 0; j < 4; ++j)
      if (j != i) w *= (s - t[j]) / (t[i] - t[j]);
    out += w * g(t[i]);
  }
  return out;
}

void require_noninteger_order(double nu, const char* who) {
  if (std::abs(nu - std::round(nu)) < kIntegerOrderTol)
    throw SingularConfigurationError(std::string(who) + ": integer order |m + alpha'|");
}

}  // namespace

XiSet xi_coeffs(int m, double alpha_prime) {
  const double s = m + alpha_prime;
  const double nu = std::abs(s);
  XiSet x;
  x.xi = alpha_prime * (3.0 * m + 2.0 * alpha_prime);
  x.xi_prime = alpha_prime * alpha_prime * s * (2.0 * m + alpha_prime);
  x.xi_plus = x.xi_prime + 2.0 * x.xi * (1.0 + nu);
  x.xi_minus = x.xi_prime + 2.0 * x.xi * (1.0 - nu);
  return x;
}

double order_of(int m, double alpha_prime) { return std::abs(m + alpha_prime); }

double f1_integral(double z, double mu, double nu) {
  if (!(z > 0.0)) throw DomainError("f1_integral: z must be positive");
  if (std::abs(mu + nu) < kExactOpposite) {
    if (std::abs(mu) < kExactOpposite) throw DomainError("f1_integral: F1(z; 0, 0) diverges logarithmically at every z");
    const double gp = gamma_fn(1.0 + mu);
    auto regular = [&](double t) {
      return f1_generic(z, mu, -mu + t) - 1.0 / (t * gp * gamma_fn(1.0 - mu + t));
    };
    return interpolate4(regular, 0.0) + std::log(2.0) / (gamma_fn(1.0 - mu) * gp);
  }
  if (std::abs(nu - mu) < kNearEqual) {
    return interpolate4([&](double t) { return f1_generic(z, mu, mu + t); }, nu - mu);
  }
  return f1_generic(z, mu, nu);
}

double f2_integral(double z, double mu, double nu) {
  if (nu == 0.0) throw DomainError("f2_integral: recurrence needs nu != 0");
  return (f1_integral(z, mu, nu - 1.0) + f1_integral(z, mu, nu + 1.0)) / (2.0 * nu);
}

double f3_integral(double z, double mu, double nu) {
  if (mu == 0.0 || nu == 0.0) throw DomainError("f3_integral: recurrence needs mu, nu != 0");
  return (f1_integral(z, mu - 1.0, nu - 1.0) + f1_integral(z, mu - 1.0, nu + 1.0) +
          f1_integral(z, mu + 1.0, nu - 1.0) + f1_integral(z, mu + 1.0, nu + 1.0)) /
         (4.0 * mu * nu);
}

double fn_quadrature(int n, double z, double mu, double nu, double tol, double lower) {
  if (n < 1 || n > 3) throw DomainError("fn_quadrature: n must be 1, 2 or 3");
  if (!(z > 0.0) || lower < 0.0 || lower >= z) throw DomainError("fn_quadrature: need 0 <= lower < z");
  if (lower == 0.0 && mu + nu - n <= -1.0)
    throw DomainError("fn_quadrature: integrand not integrable at 0; supply a lower cutoff");

  auto integrand = [=](double t) {
    if (t <= 0.0) return 0.0;
    const double r = bessel_any(mu, t) * bessel_any(nu, t) / std::pow(t, n);
    // 0/0 from underflow next to an integrable endpoint; the cell width is negligible
    if (!std::isfinite(r) && t < 1e-100) return 0.0;
    return r;
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double err = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(integrand, lower, z, 1e-14, &err, &l1);
  if (!(err <= tol)) throw AccuracyError("fn_quadrature: error estimate above tolerance");
  return value;
}

Complex mode_a(int m, double alpha_prime) {
  const double nu = order_of(m, alpha_prime);
  return {specfun::cos_pi(nu / 2.0), -specfun::sin_pi(nu / 2.0)};
}

Complex mode_f0(double z, int m, double alpha_prime) {
  if (z < 0.0) throw DomainError("mode_f0: z must be non-negative");
  return mode_a(m, alpha_prime) * bessel_j(order_of(m, alpha_prime), z);
}

UV uv_pair(double z, int m, double alpha_prime, const PhysicalParams& params) {
  if (!(z > 0.0)) throw DomainError("uv_pair: z must be positive");
  const double nu = order_of(m, alpha_prime);
  require_noninteger_order(nu, "uv_pair");
  const XiSet x = xi_coeffs(m, alpha_prime);
  const double hk2 = params.hbar * params.hbar * params.k * params.k;
  const Complex pre = mode_a(m, alpha_prime) * kPi * hk2 / specfun::sin_pi(nu);
  auto F = [z](double a, double b) { return f1_integral(z, a, b); };

  const double c0 = -nu * x.xi / (nu + 1.0);
  const double c2 = x.xi / (nu + 1.0);
  const double cm = x.xi_minus / (4.0 * nu * nu);

  const double ub = c0 * F(-nu, nu) + c2 * F(-nu, nu + 2.0) -
                    cm * (F(-nu - 1.0, nu - 1.0) + F(-nu + 1.0, nu + 1.0) + F(-nu - 1.0, nu + 1.0) +
                          F(-nu + 1.0, nu - 1.0));
  const double vb = c0 * F(nu, nu) + c2 * F(nu, nu + 2.0) +
                    cm * (F(nu - 1.0, nu - 1.0) + F(nu + 1.0, nu + 1.0) + 2.0 * F(nu - 1.0, nu + 1.0));
  return {pre * ub, -pre * vb};
}

G12 g1_g2(int m, double alpha_prime, const PhysicalParams& params) {
  const double nu = order_of(m, alpha_prime);
  require_noninteger_order(nu, "g1_g2");
  const XiSet x = xi_coeffs(m, alpha_prime);
  const double hk2 = params.hbar * params.hbar * params.k * params.k;
  const Complex a = mode_a(m, alpha_prime);

  const double bracket = x.xi + x.xi_minus / (2.0 * nu * (1.0 - nu));
  const double psi = -kEulerGamma - specfun::digamma(0.5) + specfun::digamma(nu) + specfun::digamma(1.0 - nu);
  const double tail1 = (1.0 + 2.0 * nu) / (nu * (1.0 + nu)) * x.xi;
  const double tail2 = (1.0 - nu - 3.0 * nu * nu + nu * nu * nu) /
                       (2.0 * nu * nu * nu * (1.0 + nu) * (1.0 - nu) * (1.0 - nu)) * x.xi_minus;

  G12 g;
  g.g1 = -a * hk2 / (2.0 * (1.0 + nu)) * (bracket * psi + tail1 - tail2);
  // Γ(ν)Γ(1−ν) = π/sin(πν)
  g.g2 = a * hk2 * (kPi / specfun::sin_pi(nu)) / (2.0 * (1.0 + nu)) * bracket;
  return g;
}

Complex c_coefficient(int m, double alpha_prime, Complex d_m, const PhysicalParams& params) {
  const G12 g = g1_g2(m, alpha_prime, params);
  const double nu = order_of(m, alpha_prime);
  const Complex phase(specfun::cos_pi(nu), -specfun::sin_pi(nu));
  return -g.g1 - phase * (d_m + g.g2);
}

RadialMode make_mode(int m, double alpha_prime, Complex d_m, const PhysicalParams& params) {
  params.validate();
  RadialMode mode;
  mode.m = m;
  mode.alpha_prime = alpha_prime;
  mode.order = order_of(m, alpha_prime);
  require_noninteger_order(mode.order, "make_mode");
  mode.a = mode_a(m, alpha_prime);
  mode.d = d_m;
  mode.g = g1_g2(m, alpha_prime, params);
  mode.c = c_coefficient(m, alpha_prime, d_m, params);
  mode.params = params;
  return mode;
}

Complex RadialMode::f0(double z) const { return a * bessel_j(order, z); }

UV RadialMode::uv(double z) const { return uv_pair(z, m, alpha_prime, params); }

Complex RadialMode::f1(double z) const {
  const UV w = uv(z);
  return (c + w.u) * bessel_j(order, z) + (d + w.v) * bessel_j(-order, z);
}

double RadialMode::incoming_residual() const {
  const Complex e(specfun::cos_pi(order / 2.0), specfun::sin_pi(order / 2.0));
  const Complex cu = c + g.g1;
  const Complex dv = d + g.g2;
  const double scale = std::abs(cu) + std::abs(dv);
  const double resid = std::abs(cu * e + dv * std::conj(e));
  return scale > 0.0 ? resid / scale : resid;
}

Complex mode_f1(double z, int m, double alpha_prime, Complex d_m, const PhysicalParams& params) {
  return make_mode(m, alpha_prime, d_m, params).f1(z);
}

double incoming_fraction_at(const RadialMode& mode, double z) {
  if (!(z > 1.0)) throw DomainError("incoming_fraction_at: z must exceed 1");
  const double h = 1e-3;
  auto w = [&](double t) { return std::sqrt(t) * mode.f1(t); };
  const Complex w0 = w(z);
  const Complex dw = (w(z + h) - w(z - h)) / (2.0 * h);
  const Complex i1(0.0, 1.0);
  return std::abs(w0 + i1 * dw) / (std::abs(w0) + std::abs(dw));
}

Complex s1_source(double z, int m, double alpha_prime, const PhysicalParams& params) {
  if (!(z > 0.0)) throw DomainError("s1_source: z must be positive");
  const double nu = order_of(m, alpha_prime);
  const XiSet x = xi_coeffs(m, alpha_prime);
  const Complex a = mode_a(m, alpha_prime);
  const double jn = bessel_j(nu, z);
  const Complex f0 = a * jn;
  const Complex df0 = a * (bessel_any(nu - 1.0, z) - nu / z * jn);
  const double k2 = params.k * params.k;
  const double pref = 2.0 * params.hbar * params.hbar * k2 * k2;
  const double z2 = z * z;
  return pref * (-2.0 * x.xi / z2 * (df0 / z - f0 / z2 + 0.5 * f0) + x.xi_prime / (z2 * z2) * f0);
}

Eigen::ArrayXd uniform_grid(double z0, double h, Eigen::Index points) {
  return z0 + h * Eigen::ArrayXd::LinSpaced(points, 0.0, static_cast<double>(points - 1));
}

Eigen::ArrayXcd sample(const Eigen::ArrayXd& grid, const std::function<Complex(double)>& f) {
  Eigen::ArrayXcd out(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) out[i] = f(grid[i]);
  return out;
}

OdeResidual ode_residual(const Eigen::ArrayXcd& values, double z0, double h, int m, double alpha_prime,
                         const PhysicalParams& params, OdeTarget target) {
  const Eigen::Index n = values.size();
  if (n < 7) throw DomainError("ode_residual: need at least 7 grid points");
  if (!(h > 0.0) || h > 0.1) throw DomainError("ode_residual: grid too coarse (need 0 < h <= 0.1)");
  if (z0 < 0.1) throw DomainError("ode_residual: grid must stay at z >= 0.1");

  const double nu2 = std::pow(order_of(m, alpha_prime), 2);
  const double k2 = params.k * params.k;
  OdeResidual out;
  double scale = 0.0;
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const double z = z0 + static_cast<double>(i) * h;
    const Complex d2 = k2 * (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (h * h);
    const Complex d1 = k2 * (values[i + 1] - values[i - 1]) / (2.0 * h) / z;
    const Complex c2 = k2 * nu2 / (z * z) * values[i];
    const Complex c0 = k2 * values[i];
    Complex r = d2 + d1 - c2 + c0;
    double terms = std::max({std::abs(d2), std::abs(d1), std::abs(c2), std::abs(c0)});
    if (target == OdeTarget::S1Source) {
      const Complex src = s1_source(z, m, alpha_prime, params);
      r -= src;
      terms = std::max(terms, std::abs(src));
    }
    out.absolute = std::max(out.absolute, std::abs(r));
    scale = std::max(scale, terms);
  }
  out.relative = scale > 0.0 ? out.absolute / scale : out.absolute;
  return out;
}

}  // namespace abgup::radial

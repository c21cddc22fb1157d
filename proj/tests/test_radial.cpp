#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "abgup/radial.hpp"
#include "abgup/scattering.hpp"
#include "abgup/specfun.hpp"

using namespace abgup;
using namespace abgup::radial;
using C = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.577215664901532861;

double rel(C a, C b) { return std::abs(a - b) / std::abs(b); }

// increments of u and v from variation of parameters on k²(f″ + f′/z − ν²f/z² + f) = S:
// u′ = −J_{−ν}S/(k²W), v′ = J_ν S/(k²W), W = −2 sin(νπ)/(πz)
UV vop_increment(double z1, double z2, int m, double ap, const PhysicalParams& p) {
  const double nu = order_of(m, ap);
  const double k2 = p.k * p.k;
  auto w = [&](double t) { return -2.0 * specfun::sin_pi(nu) / (kPi * t); };
  auto part = [&](bool for_u, bool imag) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double t) {
          const C s = s1_source(t, m, ap, p) / (k2 * w(t));
          const C d = for_u ? -specfun::bessel_j(-nu, t) * s : specfun::bessel_j(nu, t) * s;
          return imag ? d.imag() : d.real();
        },
        z1, z2, 15, 1e-14);
  };
  return {C(part(true, false), part(true, true)), C(part(false, false), part(false, true))};
}

}  // namespace

TEST_CASE("xi coefficients") {
  const XiSet z = xi_coeffs(0, 0.0);
  CHECK(z.xi == 0.0);
  CHECK(z.xi_plus == 0.0);
  CHECK(z.xi_minus == 0.0);
  const XiSet h = xi_coeffs(0, 0.5);
  CHECK(h.xi == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(h.xi_minus == doctest::Approx(9.0 / 16.0).epsilon(1e-15));
  for (int m = -5; m <= 5; ++m)
    for (double a : {0.3, 1.7, 2.25}) {
      const XiSet x = xi_coeffs(m, a), y = xi_coeffs(-m, -a);
      CHECK(x.xi == doctest::Approx(y.xi).epsilon(1e-14));
      CHECK(x.xi_plus == doctest::Approx(y.xi_plus).epsilon(1e-14));
      CHECK(x.xi_minus == doctest::Approx(y.xi_minus).epsilon(1e-14));
      CHECK(x.xi_prime == doctest::Approx(y.xi_prime).epsilon(1e-14));
      CHECK(order_of(m, a) == std::abs(m + a));
    }
}

TEST_CASE("F1 closed form against quadrature") {
  for (auto [mu, nu] : std::array<std::pair<double, double>, 3>{{{0.3, 1.3}, {0.6, 1.4}, {1.7, 2.7}}})
    for (double z : {0.5, 1.0, 3.0, 5.0, 10.0, 20.0})
      CHECK(std::abs(f1_integral(z, mu, nu) - fn_quadrature(1, z, mu, nu)) < 1e-8);
  CHECK(f1_integral(5.0, 0.3, 1.3) == doctest::Approx(0.390161656326029089).epsilon(1e-12));
  CHECK(f1_integral(1.0, 0.3, 0.3) == doctest::Approx(1.25377430934527972).epsilon(1e-10));
  CHECK(f1_integral(0.5, 1.7, 2.7) == doctest::Approx(7.69978640807262865e-5).epsilon(1e-10));
  CHECK(f1_integral(20.0, 0.6, 1.4) == doctest::Approx(0.372927947389135498).epsilon(1e-10));
  CHECK(f1_integral(3.0, 0.4, 0.7) == doctest::Approx(f1_integral(3.0, 0.7, 0.4)).epsilon(1e-14));
}

TEST_CASE("F1 at equal orders against the 2F3 series") {
  for (double mu : {0.3, 0.8, 1.6})
    for (double z : {0.3, 0.7, 1.0}) {
      const std::array<double, 2> a{mu, mu + 0.5};
      const std::array<double, 3> b{1 + mu, 1 + mu, 1 + 2 * mu};
      const double ref = std::pow(z / 2, 2 * mu) / (2 * mu * std::pow(specfun::gamma_fn(1 + mu), 2)) *
                         specfun::pfq_series(a, b, -z * z);
      CHECK(std::abs(f1_integral(z, mu, mu) - ref) < 1e-9 * std::abs(ref));
      // orders a hair apart take the interpolated path
      CHECK(std::abs(f1_integral(z, mu, mu + 3e-5) - fn_quadrature(1, z, mu, mu + 3e-5)) < 1e-9);
    }
}

TEST_CASE("F1 at opposite orders") {
  CHECK(f1_integral(3.0, 0.6, -0.6) == doctest::Approx(-0.245875072881968611).epsilon(1e-9));
  for (double mu : {0.3, 0.6, 1.3})
    CHECK(std::abs((f1_integral(4.0, mu, -mu) - f1_integral(0.5, mu, -mu)) -
                   fn_quadrature(1, 4.0, mu, -mu, 1e-12, 0.5)) < 1e-9);
  const double mu = 0.3;
  const double lim = (-kEulerGamma - specfun::digamma(0.5) + specfun::digamma(1 - mu) + specfun::digamma(1 + mu)) /
                     (2 * specfun::gamma_fn(1 - mu) * specfun::gamma_fn(1 + mu));
  CHECK(std::abs(f1_integral(3000.0, mu, -mu) - lim) < 2e-3);
  CHECK(std::abs(f1_integral(3000.0, mu, -mu) - lim) < std::abs(f1_integral(300.0, mu, -mu) - lim));
  CHECK_THROWS_AS(f1_integral(1.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(f1_integral(-1.0, 0.3, 0.4), DomainError);
}

TEST_CASE("F1 limits") {
  const double z = 1e-5;
  CHECK(f1_integral(z, 0.3, 0.8) / std::pow(z / 2, 1.1) ==
        doctest::Approx(1.0 / (1.1 * std::tgamma(1.3) * std::tgamma(1.8))).epsilon(1e-8));
  CHECK(std::abs(f1_integral(3000.0, 0.25, 0.25) - 2.0) < 2e-3);
  const double lim = 2.0 / kPi * std::sin(kPi * (0.3 - 1.3) / 2.0) / (0.09 - 1.69);
  CHECK(std::abs(f1_integral(3000.0, 0.3, 1.3) - lim) < 1e-3);
}

TEST_CASE("F2 and F3 recurrences against quadrature") {
  for (double z : {1.0, 3.0, 8.0}) {
    CHECK(std::abs(f2_integral(z, 0.6, 1.4) - fn_quadrature(2, z, 0.6, 1.4)) < 1e-8);
    CHECK(std::abs(f2_integral(z, 1.7, 2.7) - fn_quadrature(2, z, 1.7, 2.7)) < 1e-8);
    CHECK(std::abs(f3_integral(z, 1.7, 2.7) - fn_quadrature(3, z, 1.7, 2.7)) < 1e-8);
  }
  CHECK(std::abs(f3_integral(3.0, 0.6, 1.4) - f3_integral(0.5, 0.6, 1.4) - fn_quadrature(3, 3.0, 0.6, 1.4, 1e-12, 0.5)) <
        1e-8);
  CHECK_THROWS_AS(fn_quadrature(3, 3.0, 0.6, 1.4), DomainError);
  CHECK_THROWS_AS(fn_quadrature(4, 3.0, 0.6, 1.4), DomainError);
}

TEST_CASE("u and v") {
  const PhysicalParams p;
  UV a = uv_pair(1.0, 0, 0.5, p);
  CHECK(rel(a.u, C(0.531154687268382887, -0.531154687268382887)) < 1e-9);
  CHECK(rel(a.v, C(1.2517944549547112, -1.2517944549547112)) < 1e-9);
  a = uv_pair(2.0, -1, 0.3, p);
  CHECK(rel(a.u, C(-0.123587608314306426, 0.242554338427913486)) < 1e-9);
  CHECK(rel(a.v, C(-0.664934136935164133, 1.3050067226179535)) < 1e-9);

  // increments rebuilt by quadrature of the source
  for (auto [m, ap] : std::array<std::pair<int, double>, 4>{{{0, 0.5}, {-1, 0.3}, {2, 0.3}, {-2, 1.7}}}) {
    const UV lo = uv_pair(0.7, m, ap, p), hi = uv_pair(4.0, m, ap, p);
    const UV ref = vop_increment(0.7, 4.0, m, ap, p);
    CHECK(std::abs((hi.u - lo.u) - ref.u) < 1e-8 * std::max(1.0, std::abs(ref.u)));
    CHECK(std::abs((hi.v - lo.v) - ref.v) < 1e-8 * std::max(1.0, std::abs(ref.v)));
  }

  CHECK_THROWS_AS(uv_pair(1.0, 0, 1.0, p), SingularConfigurationError);
  CHECK_THROWS_AS(uv_pair(0.0, 0, 0.5, p), DomainError);
}

TEST_CASE("u small-z limit") {
  const PhysicalParams p;
  for (auto [m, ap] : std::array<std::pair<int, double>, 3>{{{0, 0.3}, {0, 0.5}, {1, -0.6}}}) {
    const double nu = order_of(m, ap);
    const C lim = -mode_a(m, ap) * xi_coeffs(m, ap).xi_minus / (8.0 * nu);
    const double z = 1e-4;
    CHECK(rel(uv_pair(z, m, ap, p).u * (z / 2) * (z / 2), lim) < 1e-3);
  }
}

TEST_CASE("asymptotic constants") {
  const PhysicalParams p;
  G12 g = g1_g2(0, 0.5, p);
  CHECK(rel(g.g1, C(0.482092655318695440, -0.482092655318695440)) < 1e-10);
  CHECK(rel(g.g2, C(1.20328079575122419, -1.20328079575122419)) < 1e-10);
  CHECK(std::abs(g.g2) == doctest::Approx(1.70170).epsilon(1e-5));
  g = g1_g2(-2, 1.7, p);
  CHECK(rel(g.g1, C(-29.350337178134760, 14.954743743502159)) < 1e-10);
  CHECK(rel(g.g2, C(-19.170232635936220, 9.7677214007381715)) < 1e-10);

  for (int m = -6; m <= 6; ++m)
    for (double ap : {0.3, 1.7}) CHECK(rel(g1_g2(m, ap, p).g2, scattering::g2m(m, ap, p)) < 1e-12);

  for (int m = -2; m <= 2; ++m) {
    const G12 gm = g1_g2(m, 0.5, p);
    const UV u50 = uv_pair(50.0, m, 0.5, p), u200 = uv_pair(200.0, m, 0.5, p);
    CHECK(std::abs(u200.u - gm.g1) < std::abs(u50.u - gm.g1));
    CHECK(std::abs(u200.v - gm.g2) < std::abs(u50.v - gm.g2));
    CHECK(std::abs(u200.v - gm.g2) < 0.02 * std::abs(gm.g2));
  }
}

TEST_CASE("zeroth-order mode") {
  CHECK(mode_f0(0.0, 0, 0.0) == C(1.0));
  for (int m = -3; m <= 3; ++m) {
    const C a = mode_a(m, 0.3);
    CHECK(std::abs(std::abs(a) - 1.0) < 1e-15);
    CHECK(std::abs(a - std::exp(C(0, -kPi * order_of(m, 0.3) / 2))) < 1e-15);
  }
}

TEST_CASE("radial ODE residuals") {
  const PhysicalParams p;
  auto residual = [&](int m, double ap, double h, bool first_order) {
    const auto n = static_cast<Eigen::Index>(std::lround(3.0 / h)) + 1;
    const auto grid = uniform_grid(0.5, h, n);
    const RadialMode mode = make_mode(m, ap, 0.0, p);
    if (first_order)
      return ode_residual(sample(grid, [&](double z) { return mode.f1(z); }), 0.5, h, m, ap, p, OdeTarget::S1Source);
    return ode_residual(sample(grid, [&](double z) { return mode.f0(z); }), 0.5, h, m, ap, p, OdeTarget::S1Zero);
  };
  for (int m : {-2, 0, 1})
    for (double ap : {0.3, 1.7}) {
      const OdeResidual f0 = residual(m, ap, 5e-3, false), f1 = residual(m, ap, 5e-3, true);
      CHECK(f0.relative < 1e-4);
      CHECK(f1.relative < 1e-4);
      const double ratio = residual(m, ap, 0.02, true).absolute / residual(m, ap, 0.01, true).absolute;
      CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
    }
  // f1 against the homogeneous target leaves the source behind
  {
    const auto grid = uniform_grid(0.5, 0.01, 300);
    const RadialMode mode = make_mode(0, 0.3, 0.0, p);
    const auto f1 = sample(grid, [&](double z) { return mode.f1(z); });
    CHECK(ode_residual(f1, 0.5, 0.01, 0, 0.3, p, OdeTarget::S1Zero).relative > 1e-2);
  }
  const Eigen::ArrayXcd few = Eigen::ArrayXcd::Zero(5);
  CHECK_THROWS_AS(ode_residual(few, 0.5, 0.01, 0, 0.3, p, OdeTarget::S1Zero), DomainError);
  const Eigen::ArrayXcd many = Eigen::ArrayXcd::Zero(20);
  CHECK_THROWS_AS(ode_residual(many, 0.05, 0.01, 0, 0.3, p, OdeTarget::S1Zero), DomainError);
  CHECK_THROWS_AS(ode_residual(many, 0.5, 0.2, 0, 0.3, p, OdeTarget::S1Zero), DomainError);
}

TEST_CASE("outgoing-wave condition") {
  const PhysicalParams p;
  for (int m = -2; m <= 2; ++m)
    for (double ap : {0.3, 0.5, 1.7}) {
      const RadialMode mode = make_mode(m, ap, 0.0, p);
      CHECK(mode.incoming_residual() < 1e-12);
      const double r100 = incoming_fraction_at(mode, 100.0), r1000 = incoming_fraction_at(mode, 1000.0);
      CHECK(r1000 < r100);
      CHECK(r1000 < 1e-2);
    }
}

TEST_CASE("the O(beta) mode is irregular at the origin") {
  const PhysicalParams p;
  for (double ap : {0.3, 0.7}) {
    const RadialMode mode = make_mode(0, ap, 0.0, p);
    const double slope = std::log(std::abs(mode.f1(1e-5)) / std::abs(mode.f1(1e-4))) / std::log(0.1);
    CHECK(slope == doctest::Approx(ap - 2.0).epsilon(0.01));
  }
  for (double re : {-10.0, -1.0, 0.0, 0.5, 3.0})
    for (double im : {-10.0, -1.0, 0.0, 2.0}) {
      const RadialMode mode = make_mode(0, 0.3, C(re, im), p);
      CHECK(std::abs(mode.f1(1e-4)) > 10.0 * std::abs(mode.f1(1e-3)));
    }
}

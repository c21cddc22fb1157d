#include "abgup/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "abgup/classical.hpp"
#include "abgup/core.hpp"
#include "abgup/radial.hpp"
#include "abgup/scattering.hpp"
#include "abgup/specfun.hpp"

namespace abgup::selftest {

namespace {

constexpr double kPi = std::numbers::pi;
using Complex = std::complex<double>;
using V3 = classical::Vec3<double>;

CheckResult below(double value, double threshold, std::string detail = {}) {
  CheckResult r;
  r.value = value;
  r.threshold = threshold;
  r.passed = value < threshold;
  r.detail = std::move(detail);
  return r;
}

CheckResult within(double value, double lo, double hi, std::string detail = {}) {
  CheckResult r;
  r.value = value;
  r.threshold = hi;
  r.passed = value >= lo && value <= hi;
  r.detail = std::move(detail) + " (accepted range [" + std::to_string(lo) + ", " + std::to_string(hi) + "])";
  return r;
}

class Suite {
 public:
  template <typename F>
  void add(const char* module, const char* name, F&& check) {
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.passed = false;
      r.value = std::numeric_limits<double>::quiet_NaN();
      r.detail = std::string("exception: ") + e.what();
    }
    r.module = module;
    r.name = name;
    results_.push_back(std::move(r));
  }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

double log_slope(const std::function<double(double)>& f, double z1, double z2) {
  return (std::log(std::abs(f(z2))) - std::log(std::abs(f(z1)))) / (std::log(z2) - std::log(z1));
}

void core_checks(Suite& s) {
  s.add("core", "gup_bound_at_least_minimal_length", [] {
    double worst = 0.0;
    for (double beta : {0.01, 0.5, 1.0}) {
      const PhysicalParams p = PhysicalParams::natural(beta);
      const double lmin = minimal_length(p);
      for (int i = -40; i <= 40; ++i) {
        const double dp = std::pow(10.0, i / 10.0);
        worst = std::max(worst, lmin - gup_bound(dp, p));
      }
      worst = std::max(worst, std::abs(gup_bound(1.0 / std::sqrt(3.0 * beta), p) - lmin) / lmin);
    }
    return below(worst, 1e-14, "max(minimal_length - gup_bound), equality at 1/sqrt(3 beta)");
  });

  s.add("core", "momentum_map_odd_and_monotone", [] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Eigen::Vector3d p(u(rng), u(rng), u(rng));
      const double beta = 0.05 * (i % 5);
      worst = std::max(worst, (momentum_map(Eigen::Vector3d(-p), beta) + momentum_map(p, beta)).norm());
      const double n1 = momentum_map(p, beta).norm();
      const double n2 = momentum_map(Eigen::Vector3d(1.01 * p), beta).norm();
      if (n2 <= n1) worst = std::max(worst, 1.0);
    }
    return below(worst, 1e-300, "odd-symmetry defect, or 1 on a monotonicity violation");
  });

  s.add("core", "flux_split_roundtrip", [] {
    double worst = 0.0;
    for (double a : {2.5, -0.3, 3.0, 0.0, -7.999999, 1e-12, -1e-12, 123.456}) {
      const FluxSplit f = flux_split(a);
      worst = std::max(worst, std::abs(static_cast<double>(f.n_part) + f.gamma_part - a));
      if (f.gamma_part < 0.0 || f.gamma_part >= 1.0) worst = std::max(worst, 1.0);
    }
    return below(worst, 1e-15, "|N + gamma - alpha'|");
  });

  s.add("core", "commutator_second_order", [] {
    const PhysicalParams p;
    const double r1 = commutator_residual_1d(128, 0.1, 0.01, p);
    const double r2 = commutator_residual_1d(256, 0.05, 0.01, p);
    return within(r1 / r2, 3.5, 4.5, "residual ratio on halving the spacing at fixed extent");
  });
}

void specfun_checks(Suite& s) {
  s.add("specfun", "gamma_reflection", [] {
    double worst = 0.0;
    for (int i = 1; i < 100; ++i) {
      const double x = i / 100.0;
      worst = std::max(worst, std::abs(specfun::gamma_fn(x) * specfun::gamma_fn(1.0 - x) * specfun::sin_pi(x) / kPi - 1.0));
    }
    return below(worst, 1e-10, "max |Γ(x)Γ(1-x)sin(πx)/π - 1|");
  });

  s.add("specfun", "bessel_recurrence", [] {
    double worst = 0.0;
    for (double nu : {0.3, 1.7, -0.4, 5.5, 11.2})
      for (double z : {0.5, 3.0, 20.0, 150.0}) {
        const double lhs = specfun::bessel_j(nu - 1.0, z) + specfun::bessel_j(nu + 1.0, z);
        worst = std::max(worst, std::abs(lhs - 2.0 * nu / z * specfun::bessel_j(nu, z)));
      }
    return below(worst, 1e-8, "max |J(ν-1) + J(ν+1) - (2ν/z)J(ν)|");
  });

  s.add("specfun", "hyp2f1_series_cf_overlap", [] {
    double worst = 0.0;
    for (double c : {1.7, 2.3, 3.5})
      for (double th = 0.0; th < 2.0 * kPi; th += 0.7) {
        const Complex x = std::polar(0.65, th);
        const Complex a = specfun::hyp2f1_11_series(c, x);
        worst = std::max(worst, std::abs(a - specfun::hyp2f1_11_cf(c, x)) / std::abs(a));
      }
    return below(worst, 1e-9, "relative gap between the series and continued-fraction branches");
  });

  s.add("specfun", "hyp2f1_contiguous_shift", [] {
    double worst = 0.0;
    for (double c : {0.3, 0.7, 1.2})
      for (double th = 0.0; th < 2.0 * kPi; th += 0.9) {
        const Complex x = std::polar(0.6, th);
        const Complex a = specfun::hyp2f1_11_series(c, x);
        worst = std::max(worst, std::abs(a - specfun::hyp2f1_11_contiguous(c, x)) / std::abs(a));
      }
    return below(worst, 1e-9, "relative gap between the contiguous relation and the series");
  });
}

void classical_checks(Suite& s) {
  using namespace classical;

  s.add("classical", "beta0_is_lorentz", [] {
    PhysicalParams p;
    p.charge = 0.7;
    p.mass = 1.3;
    FieldSpec<double> f;
    f.V = [](const V3& x, double t) { return 0.5 * x[0] * x[1] - 0.3 * x[2] * x[2] + 0.2 * t * x[1]; };
    f.A = [](const V3& x, double t) {
      return V3(0.3 * x[1] * x[2] + 0.1 * t * x[0], -0.2 * x[0] * x[0] + 0.4 * x[2], 0.25 * x[0] * x[1]);
    };
    double worst = 0.0;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const V3 x(u(rng), u(rng), u(rng)), v(u(rng), u(rng), u(rng));
      const FieldPoint<double> fp = evaluate(f, x, 0.3);
      const V3 ref = p.charge / p.mass * (fp.E + v.cross(fp.B));
      worst = std::max(worst, (eom_accel(x, v, 0.3, f, p) - ref).norm());
    }
    return below(worst, 1e-300, "eom_accel - (q/M)(E + v×B) at beta = 0, must be exactly 0");
  });

  s.add("classical", "gamma_vanishes_without_fields", [] {
    const auto f = free_field<double>();
    const PhysicalParams p = PhysicalParams::natural(0.01);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const V3 v(u(rng), u(rng), u(rng));
      worst = std::max(worst, gamma_term(v, V3(u(rng), u(rng), u(rng)), 0.0, f, p).norm());
    }
    return below(worst, 1e-300, "|Γ| for A = 0, V = 0");
  });

  s.add("classical", "hamiltonian_conserved_static_field", [] {
    const PhysicalParams p = PhysicalParams::natural(0.01);
    const auto f = aharonov_bohm<double>(0.5, 1.0);
    ClassicalState<double> st;
    st.x = V3(2.0, 0.0, 0.0);
    st.p = V3(0.1, 0.8, 0.0) + f.A(st.x, 0.0);
    const auto tr = integrate(st, f, p, 1e-3, 10000);
    double drift = 0.0;
    for (double e : tr.energy) drift = std::max(drift, std::abs(e - tr.energy.front()));
    return below(drift / std::abs(tr.energy.front()), 1e-8, "relative energy drift over 1e4 RK4 steps");
  });

  s.add("classical", "euler_lagrange_dt2", [] {
    const PhysicalParams p = PhysicalParams::natural(0.01);
    const auto f = aharonov_bohm<double>(0.5, 1.0);
    ClassicalState<double> st;
    st.x = V3(2.0, 0.0, 0.0);
    st.p = V3(0.1, 0.8, 0.0) + f.A(st.x, 0.0);
    const auto t1 = integrate(st, f, p, 4e-3, 250);
    const auto t2 = integrate(st, f, p, 2e-3, 500);
    const auto t3 = integrate(st, f, p, 1e-3, 1000);
    const double g1 = el_residual_refinement_gap(t1, t2, f, p);
    const double g2 = el_residual_refinement_gap(t2, t3, f, p);
    return within(g1 / g2, 3.5, 4.5, "EL residual refinement-gap ratio per halving of dt");
  });

  s.add("classical", "euler_lagrange_floor_beta2", [] {
    const auto f = aharonov_bohm<double>(0.5, 1.0);
    auto floor_at = [&](double beta) {
      const PhysicalParams p = PhysicalParams::natural(beta);
      ClassicalState<double> st;
      st.x = V3(2.0, 0.0, 0.0);
      st.p = V3(0.1, 0.8, 0.0) + f.A(st.x, 0.0);
      return el_residual(integrate(st, f, p, 1e-3, 1000), f, p);
    };
    return within(floor_at(0.01) / floor_at(0.005), 3.5, 4.5, "EL residual ratio on halving beta");
  });

  s.add("classical", "gauge_shift_beta0_keeps_eom", [] {
    const PhysicalParams p;
    const auto base = uniform_magnetic<double>(1.5);
    GaugeFunction<double> lam;
    lam.value = [](const V3& x, double t) { return 0.3 * x[0] * x[1] + 0.2 * t * x[2]; };
    lam.gradient = [](const V3& x, double t) { return V3(0.3 * x[1], 0.3 * x[0], 0.2 * t); };
    lam.dt = [](const V3& x, double) { return 0.2 * x[2]; };
    GaugeFunction<double> lam1;
    lam1.value = [](const V3&, double) { return 0.0; };
    lam1.gradient = [](const V3&, double) { return V3::Zero().eval(); };
    lam1.dt = [](const V3&, double) { return 0.0; };
    const auto shifted = gauge_shift(base, lam, lam1, p).beta0_fields();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 30; ++i) {
      const V3 x(u(rng), u(rng), u(rng)), v(u(rng), u(rng), u(rng));
      worst = std::max(worst, (eom_accel(x, v, 0.4, shifted, p) - eom_accel(x, v, 0.4, base, p)).norm());
    }
    return below(worst, 1e-8, "pointwise eom change under an ordinary gauge transform (finite-difference fields)");
  });
}

void radial_checks(Suite& s) {
  const PhysicalParams p;

  s.add("radial", "f1_derivative", [] {
    double worst = 0.0;
    const double h = 1e-4;
    for (auto [mu, nu] : {std::pair{0.3, 1.3}, {0.6, 1.4}, {1.7, 2.7}, {0.4, 0.4}, {0.6, -0.6}, {-1.3, 0.7}})
      for (double z : {0.7, 2.0, 6.0, 15.0}) {
        const double d = (radial::f1_integral(z + h, mu, nu) - radial::f1_integral(z - h, mu, nu)) / (2.0 * h);
        const double ref = specfun::bessel_j(mu, z) * specfun::bessel_j(nu, z) / z;
        worst = std::max(worst, std::abs(d - ref) / std::max(std::abs(ref), 1e-3));
      }
    return below(worst, 1e-6, "relative |dF1/dz - J_mu J_nu / z|");
  });

  s.add("radial", "fn_recurrences", [] {
    double worst = 0.0;
    for (double z : {1.0, 3.0, 10.0}) {
      worst = std::max(worst, std::abs(radial::f2_integral(z, 0.6, 1.4) - radial::fn_quadrature(2, z, 0.6, 1.4)));
      const double f3 = radial::f3_integral(z, 0.6, 1.4) - radial::f3_integral(0.5, 0.6, 1.4);
      worst = std::max(worst, std::abs(f3 - radial::fn_quadrature(3, z, 0.6, 1.4, 1e-12, 0.5)));
    }
    return below(worst, 1e-8, "F2, F3 recurrences against quadrature");
  });

  s.add("radial", "small_z_laws", [p] {
    const double slope = log_slope([](double z) { return radial::f1_integral(z, 0.3, 0.8); }, 1e-4, 1e-2);
    const double nu = 0.3;
    const radial::XiSet x = radial::xi_coeffs(0, 0.3);
    const Complex lim = -radial::mode_a(0, 0.3) * x.xi_minus / (8.0 * nu);
    const double z = 1e-4;
    const Complex scaled = radial::uv_pair(z, 0, 0.3, p).u * (z / 2.0) * (z / 2.0);
    const double worst = std::max(std::abs(slope - 1.1), std::abs(scaled - lim) / std::abs(lim));
    return below(worst, 1e-3, "F1 log-slope vs mu + nu and u(z)(z/2)^2 vs its limit");
  });

  s.add("radial", "large_z_limits", [] {
    double worst = 0.0;
    bool improving = true;
    for (auto [mu, nu] : {std::pair{0.3, 1.3}, {0.6, 1.4}, {0.25, 0.25}}) {
      const double lim = mu == nu ? 1.0 / (2.0 * mu)
                                  : 2.0 / kPi * std::sin(kPi * (mu - nu) / 2.0) / (mu * mu - nu * nu);
      const double e300 = std::abs(radial::f1_integral(300.0, mu, nu) - lim);
      const double e3000 = std::abs(radial::f1_integral(3000.0, mu, nu) - lim);
      worst = std::max(worst, e300);
      improving = improving && e3000 < e300;
    }
    return below(improving ? worst : 1.0, 1e-2, "|F1(300) - limit|, and smaller at z = 3000");
  });

  s.add("radial", "m_alpha_reflection", [p] {
    double worst = 0.0;
    for (int m : {-2, 1, 3}) {
      const radial::XiSet a = radial::xi_coeffs(m, 0.3);
      const radial::XiSet b = radial::xi_coeffs(-m, -0.3);
      worst = std::max({worst, std::abs(a.xi - b.xi), std::abs(a.xi_plus - b.xi_plus), std::abs(a.xi_minus - b.xi_minus)});
      const auto grid = radial::uniform_grid(0.5, 0.01, 200);
      const auto fa = radial::sample(grid, [&](double z) { return radial::mode_f0(z, m, 0.3); });
      const auto fb = radial::sample(grid, [&](double z) { return radial::mode_f0(z, -m, -0.3); });
      const double ra = radial::ode_residual(fa, 0.5, 0.01, m, 0.3, p, radial::OdeTarget::S1Zero).absolute;
      const double rb = radial::ode_residual(fb, 0.5, 0.01, -m, -0.3, p, radial::OdeTarget::S1Zero).absolute;
      worst = std::max(worst, std::abs(ra - rb));
    }
    return below(worst, 1e-12, "xi set and S1 residual under (m, alpha') -> (-m, -alpha')");
  });

  s.add("radial", "ode_residuals", [p] {
    double worst = 0.0;
    for (int m : {-1, 0, 1}) {
      const radial::RadialMode mode = radial::make_mode(m, 0.3, 0.0, p);
      const auto grid = radial::uniform_grid(0.5, 0.01, 300);
      const auto f0 = radial::sample(grid, [&](double z) { return mode.f0(z); });
      const auto f1 = radial::sample(grid, [&](double z) { return mode.f1(z); });
      worst = std::max(worst, radial::ode_residual(f0, 0.5, 0.01, m, 0.3, p, radial::OdeTarget::S1Zero).relative);
      worst = std::max(worst, radial::ode_residual(f1, 0.5, 0.01, m, 0.3, p, radial::OdeTarget::S1Source).relative);
    }
    return below(worst, 1e-3, "relative S1 residual of f0 and f1 at h = 0.01");
  });

  s.add("radial", "outgoing_wave", [p] {
    double worst = 0.0;
    for (int m = -2; m <= 2; ++m) worst = std::max(worst, radial::make_mode(m, 0.5, 0.0, p).incoming_residual());
    return below(worst, 1e-12, "relative e^{-iz} coefficient from the asymptotic constants");
  });

  s.add("radial", "irregular_at_origin", [p] {
    // for every D the O(β) mode still grows toward the origin
    double ratio = std::numeric_limits<double>::infinity();
    for (double re : {-10.0, -1.0, 0.0, 1.0, 10.0})
      for (double im : {-10.0, -1.0, 0.0, 1.0, 10.0}) {
        const radial::RadialMode mode = radial::make_mode(0, 0.3, Complex(re, im), p);
        ratio = std::min(ratio, std::abs(mode.f1(1e-4)) / std::abs(mode.f1(1e-3)));
      }
    return below(1.0 / ratio, 1.0, "1 / min over D of |f1(1e-4)| / |f1(1e-3)|");
  });

  s.add("radial", "uv_asymptotics", [p] {
    double worst = 0.0;
    for (int m = -2; m <= 2; ++m) {
      const radial::G12 g = radial::g1_g2(m, 0.5, p);
      const double e50 = std::abs(radial::uv_pair(50.0, m, 0.5, p).v - g.g2);
      const double e200 = std::abs(radial::uv_pair(200.0, m, 0.5, p).v - g.g2);
      worst = std::max(worst, e200 < e50 ? e200 / std::abs(g.g2) : 1.0);
    }
    return below(worst, 0.02, "|v(200) - g2| / |g2|, improving from z = 50");
  });
}

void scattering_checks(Suite& s) {
  const std::vector<double> alphas{0.3, 0.7, 1.3, 1.7, 2.5};
  const std::vector<double> phis{kPi / 6, -kPi / 6, kPi / 4, -kPi / 4, kPi / 2, -kPi / 2, 3 * kPi / 4, -3 * kPi / 4};

  s.add("scattering", "closed_form_vs_series", [&] {
    const PhysicalParams p;
    double worst = 0.0;
    for (double a : alphas)
      for (double phi : phis) {
        const Complex ser = scattering::f1_series(phi, a, p);
        worst = std::max(worst, std::abs(scattering::f1_amp(phi, a, p) - ser) / std::abs(ser));
      }
    return below(worst, 1e-5, "max relative |f1_amp - f1_series|");
  });

  s.add("scattering", "flip_invariance", [&] {
    const PhysicalParams p = PhysicalParams::natural(0.01);
    double worst = 0.0;
    for (double a : alphas)
      for (double phi : phis)
        worst = std::max(worst, std::abs(scattering::amplitude(phi, a, p) - scattering::amplitude(-phi, -a, p)));
    return below(worst, 1e-10, "max |f(phi, alpha') - f(-phi, -alpha')|");
  });

  s.add("scattering", "ramsauer_beta0", [] {
    const PhysicalParams p;
    double worst = 0.0;
    for (double n : {-2.0, 1.0, 2.0, 3.0})
      for (double phi : {kPi / 4, -kPi / 4, kPi / 2, -kPi / 2}) worst = std::max(worst, std::abs(scattering::dsigma(phi, n, p)));
    return below(worst, 1e-300, "dsigma at integer alpha', beta = 0");
  });

  s.add("scattering", "integer_limit_consistency", [] {
    const PhysicalParams p = PhysicalParams::natural(0.01);
    scattering::DsigmaOptions raw;
    raw.integer_margin = 0.0;
    double worst = 0.0;
    for (long n : {1L, 2L})
      for (double phi : {kPi / 4, kPi / 2}) {
        const auto lim = scattering::dsigma_integer_limits(n, phi, p);
        worst = std::max(worst, std::abs(scattering::dsigma(phi, n + 1e-4, p, raw) - lim.upper));
        worst = std::max(worst, std::abs(scattering::dsigma(phi, n - 1e-4, p, raw) - lim.lower));
      }
    return below(worst, 1e-3, "|dsigma(N ± 1e-4) - integer-limit formula|");
  });

  s.add("scattering", "width_identity", [] {
    double worst = 0.0;
    for (double beta : {0.0, 0.01, 0.02})
      for (long n : {-2L, 0L, 1L, 2L, 3L})
        for (double phi : {0.3, kPi / 4, kPi / 2, 2.0}) {
          const PhysicalParams p = PhysicalParams::natural(beta);
          const auto lim = scattering::dsigma_integer_limits(n, phi, p);
          worst = std::max(worst, std::abs(scattering::width(n, phi, p) - std::abs(lim.upper - lim.lower)));
          worst = std::max(worst, std::abs(scattering::width(n, phi, p) - scattering::width_closed_form(n, phi, p)));
        }
    return below(worst, 1e-12, "width vs |upper - lower| and the closed form");
  });

  s.add("scattering", "modulus_form_nonnegative", [] {
    scattering::DsigmaOptions mod;
    mod.form = scattering::DsigmaForm::Modulus;
    const PhysicalParams p = PhysicalParams::natural(0.02);
    double most_negative = 0.0;
    for (double a = 0.05; a < 3.0; a += 0.1)
      for (double phi = 0.1; phi < 2.0 * kPi; phi += 0.3) {
        if (scattering::forward_distance(phi) < 1e-3) continue;
        most_negative = std::min(most_negative, scattering::dsigma(phi, a, p, mod));
      }
    return below(-most_negative, 1e-300, "-min modulus-form dsigma");
  });

  s.add("scattering", "beta0_mirror_symmetries", [] {
    const PhysicalParams p;
    double worst = 0.0;
    for (double a : {0.3, 1.5, 2.5})
      for (double th : {0.3, kPi / 4, 2.0}) {
        const auto probe = scattering::symmetry_probe(a, th, p);
        worst = std::max({worst, probe.delta_pi_symmetry, probe.pm_phi_asymmetry});
      }
    return below(worst, 1e-12, "|dsigma(pi - t) - dsigma(pi + t)| and |dsigma(t) - dsigma(-t)| at beta = 0");
  });

  s.add("scattering", "j2_geometric_sum", [] {
    const double a = 0.5;
    const double phi = kPi / 3;
    const FluxSplit fs = flux_split(a);
    auto term = [&](long m) -> Complex {
      if (m < -fs.n_part) return 0.0;
      const double sm = static_cast<double>(m) + a;
      return std::exp(Complex(0.0, static_cast<double>(m) * phi)) * (-kPi / specfun::sin_pi(sm));
    };
    const Complex sum = scattering::abel_sum(term).value;
    const Complex ref = -kPi * std::exp(Complex(0.0, -(static_cast<double>(fs.n_part) + 0.5) * phi)) /
                        (2.0 * specfun::sin_pi(fs.gamma_part) * std::cos(phi / 2.0));
    return below(std::abs(sum - ref) / std::abs(ref), 1e-8, "Abel sum of the J2-type series vs its closed form");
  });
}

}  // namespace

std::vector<CheckResult> run_all() {
  Suite s;
  core_checks(s);
  specfun_checks(s);
  classical_checks(s);
  radial_checks(s);
  scattering_checks(s);
  return s.take();
}

}  // namespace abgup::selftest

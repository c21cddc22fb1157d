#include "abgup/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "abgup/specfun.hpp"

namespace abgup::scattering {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

using specfun::cos_pi;
using specfun::sin_pi;

Complex expi_pi(double x) { return {cos_pi(x), sin_pi(x)}; }

Complex sqrt_2piik(double k) { return std::sqrt(Complex(0.0, 2.0 * kPi * k)); }

void require_off_forward(double phi, double margin, const char* who) {
  if (!std::isfinite(phi)) throw DomainError(std::string(who) + ": non-finite phi");
  if (forward_distance(phi) < margin)
    throw ForwardSingularityError(std::string(who) + ": phi too close to the forward direction");
}

// Neville's scheme evaluated at h = 0.
Complex neville_at_zero(const std::vector<double>& h, std::vector<Complex> p) {
  const std::size_t n = h.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i + j < n; ++i) p[i] = (h[i] * p[i + 1] - h[i + j] * p[i]) / (h[i] - h[i + j]);
  return p[0];
}

}  // namespace

Complex locus_point(double phi) { return {0.5, 0.5 * std::tan(0.5 * phi)}; }

double forward_distance(double phi) { return std::abs(std::remainder(phi - kPi, 2.0 * kPi)); }

Complex f0_amp(double phi, double alpha_prime, double k, double margin) {
  require_off_forward(phi, margin, "f0_amp");
  if (!(k > 0.0)) throw DomainError("f0_amp: k must be positive");
  const FluxSplit s = flux_split(alpha_prime);
  const double n = static_cast<double>(s.n_part);
  const Complex phase = std::exp(-kI * n * (phi - kPi)) * std::exp(-kI * 0.5 * phi);
  return -kI * phase * sin_pi(alpha_prime) / std::cos(0.5 * phi) / sqrt_2piik(k);
}

double forward_weight(double alpha_prime) { return 1.0 - cos_pi(alpha_prime); }

GammaPair gamma_pair(double s) {
  if (s == std::floor(s)) throw PoleError("gamma_pair: integer argument");
  GammaPair g;
  g.reflection = -kPi / (s * sin_pi(s));
  g.direct = specfun::gamma_fn(s) * specfun::gamma_fn(-s);
  return g;
}

Complex g2m(int m, double alpha_prime, const PhysicalParams& params) {
  const double s = m + alpha_prime;
  if (s == std::floor(s)) throw PoleError("g2m: m + alpha' is an integer");
  const double a = alpha_prime;
  const double hk2 = params.hbar * params.hbar * params.k * params.k;
  const double gg = -kPi / (s * sin_pi(s));
  const double bracket =
      -2.0 * a * a + 6.0 * a * s + a * a * s * ((1.0 - a / 2.0) / (1.0 - s) - (1.0 + a / 2.0) / (1.0 + s));
  return -expi_pi(-std::abs(s) / 2.0) * (hk2 / 4.0) * gg * bracket;
}

SeriesResult abel_sum(const std::function<Complex(long)>& term, const AbelOptions& opts) {
  if (opts.ladder.size() < 2) throw DomainError("abel_sum: need at least two rungs");
  std::vector<long> lengths;
  long longest = 0;
  for (double r : opts.ladder) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("abel_sum: rungs must lie in (0, 1)");
    const long len = std::max<long>(opts.m_max, static_cast<long>(std::ceil(-38.0 / std::log(r))));
    lengths.push_back(len);
    longest = std::max(longest, len);
  }

  // a[j] = term(j) + term(−j) for j ≥ 1, a[0] = term(0)
  std::vector<Complex> a(static_cast<std::size_t>(longest) + 1);
  a[0] = term(0);
  for (long j = 1; j <= longest; ++j) a[static_cast<std::size_t>(j)] = term(j) + term(-j);

  SeriesResult out;
  out.terms = longest;
  std::vector<double> h;
  for (std::size_t i = 0; i < opts.ladder.size(); ++i) {
    const double r = opts.ladder[i];
    // sum from the tail inward so the small terms are accumulated first
    Complex sum = 0.0;
    for (long j = lengths[i]; j >= 0; --j) sum += std::pow(r, static_cast<double>(j)) * a[static_cast<std::size_t>(j)];
    out.rung_sums.push_back(sum);
    h.push_back(1.0 - r);
  }
  out.value = neville_at_zero(h, out.rung_sums);
  out.previous = neville_at_zero(std::vector<double>(h.begin() + 1, h.end()),
                                 std::vector<Complex>(out.rung_sums.begin() + 1, out.rung_sums.end()));
  const double mag = std::abs(out.value);
  out.spread = mag > 0.0 ? std::abs(out.value - out.previous) / mag : std::abs(out.value - out.previous);
  return out;
}

SeriesResult f1_series_detail(double phi, double alpha_prime, const PhysicalParams& params,
                              const AbelOptions& opts) {
  params.validate();
  if (opts.m_max < 200) throw DomainError("f1_series: m_max must be at least 200");
  if (!std::isfinite(phi)) throw DomainError("f1_series: non-finite phi");
  if (std::abs(std::remainder(phi, 2.0 * kPi)) < opts.phi_margin)
    throw DomainError("f1_series: phi = 0 is not summed (use f1_amp)");
  require_off_forward(phi, opts.phi_margin, "f1_series");
  if (alpha_prime == std::floor(alpha_prime))
    throw SingularConfigurationError("f1_series: integer alpha'");

  const Complex norm = 1.0 / sqrt_2piik(params.k);
  auto term = [&](long m) {
    const double nu = std::abs(static_cast<double>(m) + alpha_prime);
    const Complex w = std::exp(kI * (static_cast<double>(m) * phi)) * expi_pi(nu / 2.0) * (1.0 - expi_pi(-2.0 * nu));
    return w * g2m(static_cast<int>(m), alpha_prime, params) * norm;
  };
  SeriesResult res = abel_sum(term, opts);
  if (!(res.spread <= opts.rel_tol))
    throw AccuracyError("f1_series: Abel ladder did not converge (relative spread " +
                        std::to_string(res.spread) + ")");
  return res;
}

Complex f1_series(double phi, double alpha_prime, const PhysicalParams& params, const AbelOptions& opts) {
  return f1_series_detail(phi, alpha_prime, params, opts).value;
}

GValue g_fn(double alpha_prime, double phi) {
  require_off_forward(phi, 0.0, "g_fn");
  if (std::cos(0.5 * phi) == 0.0) throw ForwardSingularityError("g_fn: cos(phi/2) = 0");
  const FluxSplit s = flux_split(alpha_prime);
  const double g = s.gamma_part;
  if (g == 0.0) throw SingularConfigurationError("g_fn: integer alpha' (G has a 1/gamma pole)");
  const double a = alpha_prime;

  const Complex x = locus_point(phi);
  const Complex xc = std::conj(x);
  auto F = [](double c, Complex arg) { return specfun::hyp2f1_11(c, arg); };
  const Complex ep = expi_pi(g);
  const Complex em = expi_pi(-g);

  const Complex t1 = 2.0 * a * a * (ep / (1.0 - g) * F(2.0 - g, xc) - em / g * F(1.0 + g, x));
  const Complex t2 = 12.0 * a * cos_pi(g);
  const Complex t3 = a * a * (1.0 - a / 2.0) * (ep / (2.0 - g) * F(3.0 - g, xc) + em / (1.0 - g) * F(g, x));
  const Complex t4 = a * a * (1.0 + a / 2.0) * (ep / g * F(1.0 - g, xc) + em / (1.0 + g) * F(2.0 + g, x));
  return {t1 + t2 + t3 - t4, x};
}

Complex f1_amp(double phi, double alpha_prime, const PhysicalParams& params) {
  params.validate();
  const GValue gv = g_fn(alpha_prime, phi);
  const double n = static_cast<double>(flux_split(alpha_prime).n_part);
  const double hk2 = params.hbar * params.hbar * params.k * params.k;
  const Complex phase = std::exp(-kI * ((n + 0.5) * phi));
  return kI * kPi * hk2 * phase / (4.0 * std::cos(0.5 * phi) * sqrt_2piik(params.k)) * gv.g;
}

Complex amplitude(double phi, double alpha_prime, const PhysicalParams& params) {
  const Complex f0 = f0_amp(phi, alpha_prime, params.k);
  if (params.beta == 0.0) return f0;
  return f0 + params.beta * f1_amp(phi, alpha_prime, params);
}

DsigmaResult dsigma_detail(double phi, double alpha_prime, const PhysicalParams& params,
                           const DsigmaOptions& opts) {
  params.validate();
  require_off_forward(phi, opts.phi_margin, "dsigma");
  const FluxSplit s = flux_split(alpha_prime);
  const double g = s.gamma_part;
  const double c = std::cos(0.5 * phi);
  const double denom = 2.0 * kPi * params.k * c * c;
  const double sg = sin_pi(g);

  DsigmaResult out;
  if (params.beta == 0.0) {
    out.value = sg * sg / denom;
    return out;
  }
  if (g < opts.integer_margin || g == 0.0) {
    out.value = dsigma_integer_limits(s.n_part, phi, params).upper;
    out.routed = true;
    return out;
  }
  if (1.0 - g < opts.integer_margin) {
    out.value = dsigma_integer_limits(s.n_part + 1, phi, params).lower;
    out.routed = true;
    return out;
  }

  const Complex gg = g_fn(alpha_prime, phi).g;
  const double hk2 = params.hbar * params.hbar * params.k * params.k;
  if (opts.form == DsigmaForm::Linearized) {
    out.value = sg * (sg - params.beta * (kPi * hk2 / 2.0) * gg.real()) / denom;
  } else {
    out.value = std::norm(sg - (kPi * hk2 * params.beta / 4.0) * gg) / denom;
  }
  return out;
}

double dsigma(double phi, double alpha_prime, const PhysicalParams& params, const DsigmaOptions& opts) {
  return dsigma_detail(phi, alpha_prime, params, opts).value;
}

IntegerLimits dsigma_integer_limits(long n, double phi, const PhysicalParams& params) {
  params.validate();
  const double nn = static_cast<double>(n);
  const double c2 = std::pow(std::cos(0.5 * phi), 2);
  const double pref = params.beta * kPi * params.hbar * params.hbar * params.k * nn * nn / 2.0;
  IntegerLimits lim;
  lim.upper = pref * (2.0 * (nn - 2.0) * c2 + 6.0 - nn);
  lim.lower = pref * (nn + 6.0 - 2.0 * (nn + 2.0) * c2);
  return lim;
}

double width(long n, double phi, const PhysicalParams& params) {
  const IntegerLimits lim = dsigma_integer_limits(n, phi, params);
  return std::abs(lim.upper - lim.lower);
}

double width_closed_form(long n, double phi, const PhysicalParams& params) {
  params.validate();
  const double nn = std::abs(static_cast<double>(n));
  const double c2 = std::pow(std::cos(0.5 * phi), 2);
  return params.beta * kPi * params.hbar * params.hbar * params.k * nn * nn * nn * std::abs(2.0 * c2 - 1.0);
}

SymmetryProbe symmetry_probe(double alpha_prime, double theta, const PhysicalParams& params, double margin,
                             const DsigmaOptions& opts) {
  if (!(theta > margin && theta < kPi - margin))
    throw DomainError("symmetry_probe: theta must lie in (margin, pi - margin)");
  SymmetryProbe p;
  p.delta_pi_symmetry =
      std::abs(dsigma(kPi - theta, alpha_prime, params, opts) - dsigma(kPi + theta, alpha_prime, params, opts));
  p.pm_phi_asymmetry =
      std::abs(dsigma(theta, alpha_prime, params, opts) - dsigma(-theta, alpha_prime, params, opts));
  return p;
}

ScatterSample scatter_sample(double alpha_prime, double phi, const PhysicalParams& params,
                             const DsigmaOptions& opts) {
  ScatterSample s;
  s.alpha_prime = alpha_prime;
  s.phi = phi;
  s.beta = params.beta;
  const DsigmaResult d = dsigma_detail(phi, alpha_prime, params, opts);
  s.dsigma = d.value;
  s.routed = d.routed;
  s.f0 = f0_amp(phi, alpha_prime, params.k, opts.phi_margin);
  if (!d.routed && flux_split(alpha_prime).gamma_part != 0.0) s.f1 = f1_amp(phi, alpha_prime, params);
  return s;
}

}  // namespace abgup::scattering

#include "abgup/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>

namespace abgup {

void PhysicalParams::validate() const {
  const bool finite = std::isfinite(hbar) && std::isfinite(beta) && std::isfinite(mass) &&
                      std::isfinite(charge) && std::isfinite(k);
  if (!finite) throw DomainError("PhysicalParams: non-finite component");
  if (hbar <= 0.0) throw DomainError("PhysicalParams: hbar must be positive");
  if (k <= 0.0) throw DomainError("PhysicalParams: k must be positive");
  if (mass <= 0.0) throw DomainError("PhysicalParams: mass must be positive");
  if (beta < 0.0) throw DomainError("PhysicalParams: beta must be non-negative");
}

double gup_bound(double delta_p, const PhysicalParams& params) {
  if (!(delta_p > 0.0)) throw DomainError("gup_bound: delta_p must be positive");
  return 0.5 * params.hbar * (1.0 / delta_p + 3.0 * params.beta * delta_p);
}

double minimal_length(const PhysicalParams& params) {
  return params.hbar * std::sqrt(3.0 * params.beta);
}

FluxSplit flux_split(double alpha_prime) {
  if (!std::isfinite(alpha_prime)) throw DomainError("flux_split: non-finite alpha_prime");
  FluxSplit s;
  s.alpha_prime = alpha_prime;
  double n = std::floor(alpha_prime);
  double g = alpha_prime - n;
  // alpha_prime just below an integer can round gamma up to exactly 1
  if (g >= 1.0) {
    n += 1.0;
    g = 0.0;
  }
  s.n_part = static_cast<long>(n);
  s.gamma_part = g;
  return s;
}

namespace {

using Complex = std::complex<double>;
using Grid = Eigen::ArrayXcd;

// Central first difference; the two boundary entries are left at zero and
// are excluded by the caller's interior window.
Grid central_diff(const Grid& f, double h) {
  const Eigen::Index n = f.size();
  Grid d = Grid::Zero(n);
  if (n >= 3) d.segment(1, n - 2) = (f.tail(n - 2) - f.head(n - 2)) / (2.0 * h);
  return d;
}

}  // namespace

double commutator_residual_1d(int grid_points, double spacing, double beta,
                              const PhysicalParams& params) {
  if (grid_points < 16) throw DomainError("commutator_residual_1d: need at least 16 grid points");
  if (!(spacing > 0.0)) throw DomainError("commutator_residual_1d: spacing must be positive");

  const double hbar = params.hbar;
  const Complex i1(0.0, 1.0);
  const Eigen::Index n = grid_points;
  const double half_width = 0.5 * static_cast<double>(n - 1) * spacing;
  const Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(n, -half_width, half_width);

  auto momentum = [&](const Grid& f) -> Grid { return -i1 * hbar * central_diff(f, spacing); };
  auto deformed = [&](const Grid& f) -> Grid {
    const Grid p1 = momentum(f);
    return p1 + beta * momentum(momentum(p1));
  };

  // D∘D∘D applied to x·f reaches 4 points in from each end.
  const Eigen::Index lo = 4;
  const Eigen::Index len = n - 2 * lo;

  const std::array<std::function<double(double)>, 3> panel = {
      [](double t) { return t * t; },
      [](double t) { return t * t * t; },
      [](double t) { return t * t * t * t; },
  };

  double worst = 0.0;
  for (const auto& fn : panel) {
    const Grid f = x.unaryExpr(fn).cast<Complex>();
    const Grid xf = x.cast<Complex>() * f;
    const Grid comm = x.cast<Complex>() * deformed(f) - deformed(xf);
    const Grid p2f = momentum(momentum(f));
    const Grid rhs = i1 * hbar * (f + 3.0 * beta * p2f);
    const double scale = rhs.segment(lo, len).abs().maxCoeff();
    const double resid = (comm - rhs).segment(lo, len).abs().maxCoeff();
    worst = std::max(worst, scale > 0.0 ? resid / scale : resid);
  }
  return worst;
}

}  // namespace abgup

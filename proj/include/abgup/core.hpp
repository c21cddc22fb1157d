#pragma once

#include <Eigen/Core>

#include "abgup/errors.hpp"

namespace abgup {

/// Physical constants shared by every module.
///
/// `beta` is the minimal-length deformation parameter (momentum⁻²). The
/// defaults are the natural units ħ = k = M = q = 1 used for the figures.
struct PhysicalParams {
  double hbar = 1.0;
  double beta = 0.0;
  double mass = 1.0;
  double charge = 1.0;
  double k = 1.0;

  /// Throws DomainError unless hbar > 0, k > 0, mass > 0, beta ≥ 0 and all finite.
  void validate() const;

  static PhysicalParams natural(double beta = 0.0) {
    PhysicalParams p;
    p.beta = beta;
    return p;
  }
};

/// Flux parameter α′ = N + γ with N integer and γ ∈ [0, 1).
struct FluxSplit {
  double alpha_prime = 0.0;
  long n_part = 0;
  double gamma_part = 0.0;
};

/// Smallest position uncertainty allowed for a momentum uncertainty
/// `delta_p`: (ħ/2)(1/ΔP + 3βΔP).
double gup_bound(double delta_p, const PhysicalParams& params);

/// ħ√(3β), the global minimum of gup_bound over ΔP.
double minimal_length(const PhysicalParams& params);

/// P = p(1 + β|p|²), the first-order deformed momentum.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>
momentum_map(const Eigen::MatrixBase<Derived>& p, typename Derived::Scalar beta) {
  using Scalar = typename Derived::Scalar;
  return p * (Scalar(1) + beta * p.squaredNorm());
}

FluxSplit flux_split(double alpha_prime);

/// Max interior residual of [X, P] − iħ(1 + 3βp²) on a centred 1-D grid.
///
/// p is the central-difference operator −iħD and P = p + βp³. The residual
/// is taken over the test panel {x², x³, x⁴}, each normalized by the
/// largest magnitude of its right-hand side on the interior, and the worst
/// panel member is returned. Converges as O(spacing²) at fixed grid extent.
double commutator_residual_1d(int grid_points, double spacing, double beta,
                              const PhysicalParams& params);

}  // namespace abgup

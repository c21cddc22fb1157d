#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "abgup/core.hpp"
#include "abgup/errors.hpp"

namespace abgup::scattering {

using Complex = std::complex<double>;

/// x = e^{iφ/2}/(2cos(φ/2)) = (1 + i·tan(φ/2))/2, so Re x = 1/2.
Complex locus_point(double phi);

/// Distance of φ from the forward direction π, modulo 2π.
double forward_distance(double phi);

/// Zeroth-order amplitude without the δ(φ−π) term:
/// (1/√(2πik))·(−i e^{−iN(φ−π)} sin(πα′) e^{−iφ/2}/cos(φ/2)).
/// Throws ForwardSingularityError within `margin` of φ ≡ π.
Complex f0_amp(double phi, double alpha_prime, double k, double margin = 1e-6);

/// Weight 1 − cos(πα′) of the excluded −2πδ(φ−π) term.
double forward_weight(double alpha_prime);

/// g₂,ₘ in the sign-free form
/// −(−i)^{|s|}(ħ²k²/4)Γ(s)Γ(−s)[−2α′² + 6α′s + α′²s((1−α′/2)/(1−s) − (1+α′/2)/(1+s))],
/// s = m + α′, with Γ(s)Γ(−s) = −π/(s·sin πs). PoleError for integer s.
Complex g2m(int m, double alpha_prime, const PhysicalParams& params);

/// Γ(s)Γ(−s) by the reflection formula and by two gamma_fn calls.
struct GammaPair {
  double reflection = 0.0;
  double direct = 0.0;
};
GammaPair gamma_pair(double s);

struct AbelOptions {
  int m_max = 2000;
  std::vector<double> ladder{0.98, 0.99, 0.995, 0.9975};
  double rel_tol = 1e-6;   ///< accepted spread between the L- and (L−1)-rung extrapolants
  double phi_margin = 1e-3;
};

struct SeriesResult {
  Complex value;                  ///< Neville extrapolant over all rungs
  Complex previous;               ///< extrapolant without the outermost rung
  double spread = 0.0;            ///< |value − previous| / |value|
  std::vector<Complex> rung_sums;
  long terms = 0;                 ///< largest |m| summed
};

/// Σ_m r^{|m|} term(m) for each rung r, extrapolated to r → 1 in h = 1 − r.
/// Each rung sums |m| ≤ max(m_max, ⌈−38/ln r⌉) so the tail is below r^{|m|} ≈ 3e-17.
SeriesResult abel_sum(const std::function<Complex(long)>& term, const AbelOptions& opts = {});

/// Abel-regularized partial-wave sum for f₁ with D_m = 0. Throws
/// AccuracyError when the ladder spread exceeds opts.rel_tol, DomainError
/// for φ within opts.phi_margin of 0 or π, and SingularConfigurationError
/// for integer α′.
SeriesResult f1_series_detail(double phi, double alpha_prime, const PhysicalParams& params,
                              const AbelOptions& opts = {});
Complex f1_series(double phi, double alpha_prime, const PhysicalParams& params,
                  const AbelOptions& opts = {});

struct GValue {
  Complex g;
  Complex x;
};

/// G(α′, φ) from six ₂F₁(1,1;c;·) values at x and x*.
GValue g_fn(double alpha_prime, double phi);

/// Closed-form O(β) amplitude iπħ²k² e^{−i(N+½)φ}/(4cos(φ/2)√(2πik)) · G.
Complex f1_amp(double phi, double alpha_prime, const PhysicalParams& params);

/// f₀ + βf₁ on the closed-form path.
Complex amplitude(double phi, double alpha_prime, const PhysicalParams& params);

enum class DsigmaForm { Linearized, Modulus };

struct DsigmaOptions {
  DsigmaForm form = DsigmaForm::Linearized;
  /// For β > 0, γ or 1 − γ below this routes to the integer-limit formulas.
  /// Zero disables routing.
  double integer_margin = 1e-4;
  double phi_margin = 1e-6;
};

struct DsigmaResult {
  double value = 0.0;
  bool routed = false;  ///< true when the integer-limit formula was used
};

/// dσ/dφ to first order in β, without the forward δ term.
///
/// Linearized: sin πγ[sin πγ − β(πħ²k²/2)Re G]/(2πk cos²(φ/2)).
/// Modulus:    |sin πγ − (πħ²k²β/4)G|²/(2πk cos²(φ/2)).
/// At β = 0 both reduce to sin²(πγ)/(2πk cos²(φ/2)), exactly 0 at integer α′.
DsigmaResult dsigma_detail(double phi, double alpha_prime, const PhysicalParams& params,
                           const DsigmaOptions& opts = {});
double dsigma(double phi, double alpha_prime, const PhysicalParams& params,
              const DsigmaOptions& opts = {});

struct IntegerLimits {
  double upper = 0.0;  ///< α′ → N⁺
  double lower = 0.0;  ///< α′ → N⁻
};

/// upper = β(πħ²kN²/2)[2(N−2)cos²(φ/2) + 6 − N],
/// lower = β(πħ²kN²/2)[N + 6 − 2(N+2)cos²(φ/2)].
IntegerLimits dsigma_integer_limits(long n, double phi, const PhysicalParams& params);

/// |upper − lower| of dsigma_integer_limits.
double width(long n, double phi, const PhysicalParams& params);

/// βπħ²k|N|³|2cos²(φ/2) − 1|.
double width_closed_form(long n, double phi, const PhysicalParams& params);

struct SymmetryProbe {
  double delta_pi_symmetry = 0.0;  ///< |dσ(π−θ) − dσ(π+θ)|
  double pm_phi_asymmetry = 0.0;   ///< |dσ(θ) − dσ(−θ)|
};

SymmetryProbe symmetry_probe(double alpha_prime, double theta, const PhysicalParams& params,
                             double margin = 1e-3, const DsigmaOptions& opts = {});

struct ScatterSample {
  double alpha_prime = 0.0;
  double phi = 0.0;
  double beta = 0.0;
  Complex f0;
  Complex f1;
  double dsigma = 0.0;
  bool routed = false;
};

/// Amplitudes and cross section at one point. f1 is left at zero when the
/// cross section was routed to the integer-limit formulas.
ScatterSample scatter_sample(double alpha_prime, double phi, const PhysicalParams& params,
                             const DsigmaOptions& opts = {});

}  // namespace abgup::scattering

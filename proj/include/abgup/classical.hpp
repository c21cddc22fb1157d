#pragma once

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "abgup/core.hpp"
#include "abgup/errors.hpp"

namespace abgup::classical {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

/// Scalar potential V(x,t), vector potential A(x,t) and optional analytic
/// derivatives. Missing derivatives are synthesized by central differences
/// with step `fd_step`. Planar fields use dimension 2 and ignore x₃.
///
/// `jacobian_A(x,t)(i,j)` is ∂A_i/∂x_j.
template <typename Scalar = double>
struct FieldSpec {
  using V3 = Vec3<Scalar>;
  using M3 = Mat3<Scalar>;

  int dimension = 3;
  std::function<Scalar(const V3&, Scalar)> V;
  std::function<V3(const V3&, Scalar)> A;
  std::function<V3(const V3&, Scalar)> grad_V;
  std::function<M3(const V3&, Scalar)> jacobian_A;
  std::function<V3(const V3&, Scalar)> dA_dt;
  Scalar fd_step = Scalar(1e-5);
  bool is_static = false;
};

/// Everything the equations of motion need at one space-time point.
template <typename Scalar = double>
struct FieldPoint {
  Scalar V;
  Vec3<Scalar> A, grad_V, dA_dt, E, B;
  Mat3<Scalar> jacobian_A;
};

template <typename Scalar>
FieldPoint<Scalar> evaluate(const FieldSpec<Scalar>& f, const Vec3<Scalar>& x, Scalar t) {
  using V3 = Vec3<Scalar>;
  if (!f.V || !f.A) throw DomainError("FieldSpec: V and A are required");
  const Scalar h = f.fd_step;
  const int d = f.dimension;

  FieldPoint<Scalar> p;
  p.V = f.V(x, t);
  p.A = f.A(x, t);

  if (f.grad_V) {
    p.grad_V = f.grad_V(x, t);
  } else {
    p.grad_V.setZero();
    for (int j = 0; j < d; ++j) {
      V3 e = V3::Zero();
      e[j] = h;
      p.grad_V[j] = (f.V(x + e, t) - f.V(x - e, t)) / (2 * h);
    }
  }
  if (f.jacobian_A) {
    p.jacobian_A = f.jacobian_A(x, t);
  } else {
    p.jacobian_A.setZero();
    for (int j = 0; j < d; ++j) {
      V3 e = V3::Zero();
      e[j] = h;
      p.jacobian_A.col(j) = (f.A(x + e, t) - f.A(x - e, t)) / (2 * h);
    }
  }
  if (f.dA_dt) {
    p.dA_dt = f.dA_dt(x, t);
  } else if (f.is_static) {
    p.dA_dt.setZero();
  } else {
    p.dA_dt = (f.A(x, t + h) - f.A(x, t - h)) / (2 * h);
  }

  const auto& J = p.jacobian_A;
  p.E = -p.grad_V - p.dA_dt;
  p.B = V3(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
  return p;
}

/// Field-free space.
template <typename Scalar = double>
FieldSpec<Scalar> free_field(int dimension = 3) {
  using V3 = Vec3<Scalar>;
  FieldSpec<Scalar> f;
  f.dimension = dimension;
  f.is_static = true;
  f.V = [](const V3&, Scalar) { return Scalar(0); };
  f.A = [](const V3&, Scalar) { return V3::Zero().eval(); };
  f.grad_V = f.A;
  f.dA_dt = f.A;
  f.jacobian_A = [](const V3&, Scalar) { return Mat3<Scalar>::Zero().eval(); };
  return f;
}

/// Uniform B along x₃ in the symmetric gauge A = (B/2)(−x₂, x₁, 0).
template <typename Scalar = double>
FieldSpec<Scalar> uniform_magnetic(Scalar b, int dimension = 3) {
  using V3 = Vec3<Scalar>;
  FieldSpec<Scalar> f = free_field<Scalar>(dimension);
  f.A = [b](const V3& x, Scalar) { return V3(-b / 2 * x[1], b / 2 * x[0], Scalar(0)); };
  f.jacobian_A = [b](const V3&, Scalar) {
    Mat3<Scalar> j = Mat3<Scalar>::Zero();
    j(0, 1) = -b / 2;
    j(1, 0) = b / 2;
    return j;
  };
  return f;
}

/// Uniform E from V = −E·x.
template <typename Scalar = double>
FieldSpec<Scalar> uniform_electric(const Vec3<Scalar>& e, int dimension = 3) {
  using V3 = Vec3<Scalar>;
  FieldSpec<Scalar> f = free_field<Scalar>(dimension);
  f.V = [e](const V3& x, Scalar) { return Scalar(-e.dot(x)); };
  f.grad_V = [e](const V3&, Scalar) { return V3(-e); };
  return f;
}

/// Thin flux line along x₃: qA = flux·(x₂, −x₁, 0)/r², V = 0.
/// Throws FieldError for r < r_min.
template <typename Scalar = double>
FieldSpec<Scalar> aharonov_bohm(Scalar flux, Scalar charge, Scalar r_min = Scalar(1e-6), int dimension = 2) {
  using V3 = Vec3<Scalar>;
  if (charge == Scalar(0)) throw DomainError("aharonov_bohm: charge must be nonzero");
  const Scalar c = flux / charge;
  FieldSpec<Scalar> f = free_field<Scalar>(dimension);
  auto r2_checked = [r_min](const V3& x) {
    const Scalar r2 = x[0] * x[0] + x[1] * x[1];
    if (!(r2 >= r_min * r_min)) throw FieldError("aharonov_bohm: inside the flux-line exclusion radius");
    return r2;
  };
  f.A = [c, r2_checked](const V3& x, Scalar) {
    const Scalar r2 = r2_checked(x);
    return V3(c * x[1] / r2, -c * x[0] / r2, Scalar(0));
  };
  f.jacobian_A = [c, r2_checked](const V3& x, Scalar) {
    const Scalar r2 = r2_checked(x);
    const Scalar r4 = r2 * r2;
    const Scalar xx = x[0], yy = x[1];
    Mat3<Scalar> j = Mat3<Scalar>::Zero();
    j(0, 0) = -2 * c * xx * yy / r4;
    j(0, 1) = c * (xx * xx - yy * yy) / r4;
    j(1, 0) = c * (xx * xx - yy * yy) / r4;
    j(1, 1) = 2 * c * xx * yy / r4;
    return j;
  };
  return f;
}

template <typename Scalar = double>
struct ClassicalState {
  Vec3<Scalar> x = Vec3<Scalar>::Zero();
  Vec3<Scalar> p = Vec3<Scalar>::Zero();  ///< canonical momentum
  Scalar t = Scalar(0);
};

template <typename Scalar = double>
struct Trajectory {
  int dimension = 3;
  Scalar dt = Scalar(0);
  std::vector<Scalar> t;
  std::vector<Vec3<Scalar>> x, v, p;
  std::vector<Scalar> energy;
  bool aborted = false;
  std::string abort_reason;

  std::size_t size() const { return t.size(); }
};

namespace detail {

inline double to_double(double v) { return v; }
template <typename S>
double to_double(const S& v) {
  return static_cast<double>(v);
}

}  // namespace detail

/// The O(β) correction Γ to the Lorentz force, with H_ab = a·M·v + b·q·A
/// and G = Σᵢ vᵢ ∂A/∂xᵢ:
///
///   Γ = H₁₁²(E + v×B) + 2H₁₁(H₁₁·E) − 2Mv(H₃₂·∇V) − 2qA(H₂₁·∇V) − ∇V(H₁₁·H₃₁)
///       + 2qH₃₂(A·(v×B)) + 2M·H₃₂(G·v) + 2qH₂₁(G·A) − q(v·H₁₁)∇(A²).
template <typename Scalar>
Vec3<Scalar> gamma_term(const Vec3<Scalar>& v, const FieldPoint<Scalar>& f, const PhysicalParams& params) {
  const Scalar m = Scalar(params.mass);
  const Scalar q = Scalar(params.charge);
  const Vec3<Scalar> mv = m * v;
  const Vec3<Scalar> qa = q * f.A;
  const Vec3<Scalar> h11 = mv + qa;
  const Vec3<Scalar> h21 = 2 * mv + qa;
  const Vec3<Scalar> h31 = 3 * mv + qa;
  const Vec3<Scalar> h32 = 3 * mv + 2 * qa;
  const Vec3<Scalar> g = f.jacobian_A * v;
  const Vec3<Scalar> vxb = v.cross(f.B);
  const Vec3<Scalar> grad_a2 = 2 * f.jacobian_A.transpose() * f.A;
  const Vec3<Scalar>& gv = f.grad_V;

  return h11.squaredNorm() * (f.E + vxb) + 2 * h11 * h11.dot(f.E) - 2 * mv * h32.dot(gv) -
         2 * qa * h21.dot(gv) - gv * h11.dot(h31) + 2 * q * h32 * f.A.dot(vxb) + 2 * m * h32 * g.dot(v) +
         2 * q * h21 * g.dot(f.A) - q * v.dot(h11) * grad_a2;
}

template <typename Scalar>
Vec3<Scalar> gamma_term(const Vec3<Scalar>& v, const Vec3<Scalar>& x, Scalar t, const FieldSpec<Scalar>& fields,
                        const PhysicalParams& params) {
  return gamma_term(v, evaluate(fields, x, t), params);
}

/// M ẍ = q(E + v×B) + βqΓ. At β = 0 Γ is not evaluated.
template <typename Scalar>
Vec3<Scalar> eom_accel(const Vec3<Scalar>& x, const Vec3<Scalar>& v, Scalar t, const FieldSpec<Scalar>& fields,
                       const PhysicalParams& params) {
  const FieldPoint<Scalar> f = evaluate(fields, x, t);
  const Scalar qm = Scalar(params.charge / params.mass);
  const Vec3<Scalar> lorentz = qm * (f.E + v.cross(f.B));
  if (params.beta == 0.0) return lorentz;
  return lorentz + Scalar(params.beta) * qm * gamma_term(v, f, params);
}

/// H = (p − qA)²/2M + qV + (β/M)p²(p − qA)·p.
template <typename Scalar>
Scalar hamiltonian(const ClassicalState<Scalar>& s, const FieldSpec<Scalar>& fields, const PhysicalParams& params) {
  const Scalar m = Scalar(params.mass);
  const Scalar q = Scalar(params.charge);
  const Vec3<Scalar> kin = s.p - q * fields.A(s.x, s.t);
  return kin.squaredNorm() / (2 * m) + q * fields.V(s.x, s.t) +
         Scalar(params.beta) / m * s.p.squaredNorm() * kin.dot(s.p);
}

template <typename Scalar = double>
struct PhaseVelocity {
  Vec3<Scalar> xdot;
  Vec3<Scalar> pdot;
};

/// ẋ = ∂H/∂p, ṗ = −∂H/∂x:
///   Mẋ = p − qA + β[4p²p − 2q(A·p)p − qp²A]
///   ṗⱼ = (q/M)(p − qA)·∂ⱼA − q∂ⱼV + (βq/M)p²(∂ⱼA·p)
template <typename Scalar>
PhaseVelocity<Scalar> hamiltonian_flow(const ClassicalState<Scalar>& s, const FieldSpec<Scalar>& fields,
                                       const PhysicalParams& params) {
  const FieldPoint<Scalar> f = evaluate(fields, s.x, s.t);
  const Scalar m = Scalar(params.mass);
  const Scalar q = Scalar(params.charge);
  const Scalar b = Scalar(params.beta);
  const Vec3<Scalar>& p = s.p;
  const Scalar p2 = p.squaredNorm();
  const Vec3<Scalar> kin = p - q * f.A;

  PhaseVelocity<Scalar> out;
  out.xdot = (kin + b * (4 * p2 * p - 2 * q * f.A.dot(p) * p - q * p2 * f.A)) / m;
  out.pdot = q / m * (f.jacobian_A.transpose() * kin) - q * f.grad_V +
             b * q / m * p2 * (f.jacobian_A.transpose() * p);
  if (fields.dimension == 2) {
    out.xdot[2] = Scalar(0);
    out.pdot[2] = Scalar(0);
  }
  return out;
}

/// L = ½Mv² + qv·A − qV − βH₁₁²(v·H₁₁), H₁₁ = Mv + qA.
template <typename Scalar>
Scalar lagrangian(const Vec3<Scalar>& x, const Vec3<Scalar>& v, Scalar t, const FieldSpec<Scalar>& fields,
                  const PhysicalParams& params) {
  const Scalar m = Scalar(params.mass);
  const Scalar q = Scalar(params.charge);
  const Vec3<Scalar> a = fields.A(x, t);
  const Vec3<Scalar> h = m * v + q * a;
  return m * v.squaredNorm() / 2 + q * v.dot(a) - q * fields.V(x, t) -
         Scalar(params.beta) * h.squaredNorm() * v.dot(h);
}

/// ∂L/∂v = Mv + qA − β[2M(v·H)H + H²(H + Mv)].
template <typename Scalar>
Vec3<Scalar> lagrangian_dv(const Vec3<Scalar>& v, const FieldPoint<Scalar>& f, const PhysicalParams& params) {
  const Scalar m = Scalar(params.mass);
  const Scalar q = Scalar(params.charge);
  const Vec3<Scalar> h = m * v + q * f.A;
  return m * v + q * f.A - Scalar(params.beta) * (2 * m * v.dot(h) * h + h.squaredNorm() * (h + m * v));
}

/// ∂L/∂xⱼ = q v·∂ⱼA − q∂ⱼV − β[2q(H·∂ⱼA)(v·H) + qH²(v·∂ⱼA)].
template <typename Scalar>
Vec3<Scalar> lagrangian_dx(const Vec3<Scalar>& v, const FieldPoint<Scalar>& f, const PhysicalParams& params) {
  const Scalar m = Scalar(params.mass);
  const Scalar q = Scalar(params.charge);
  const Vec3<Scalar> h = m * v + q * f.A;
  const Vec3<Scalar> jv = f.jacobian_A.transpose() * v;
  const Vec3<Scalar> jh = f.jacobian_A.transpose() * h;
  return q * jv - q * f.grad_V - Scalar(params.beta) * (2 * q * v.dot(h) * jh + q * h.squaredNorm() * jv);
}

/// Classical RK4 on the Hamiltonian flow. A FieldError stops the run and
/// returns the samples so far with `aborted` set.
template <typename Scalar>
Trajectory<Scalar> integrate(const ClassicalState<Scalar>& initial, const FieldSpec<Scalar>& fields,
                             const PhysicalParams& params, Scalar dt, long steps) {
  params.validate();
  if (!(dt > Scalar(0))) throw DomainError("integrate: dt must be positive");
  if (steps < 1) throw DomainError("integrate: steps must be at least 1");

  Trajectory<Scalar> traj;
  traj.dimension = fields.dimension;
  traj.dt = dt;
  traj.t.reserve(static_cast<std::size_t>(steps) + 1);

  ClassicalState<Scalar> s = initial;
  auto record = [&](const ClassicalState<Scalar>& st, const PhaseVelocity<Scalar>& fl) {
    traj.t.push_back(st.t);
    traj.x.push_back(st.x);
    traj.v.push_back(fl.xdot);
    traj.p.push_back(st.p);
    traj.energy.push_back(hamiltonian(st, fields, params));
  };
  auto shifted = [&](const PhaseVelocity<Scalar>& k, Scalar w) {
    ClassicalState<Scalar> o = s;
    o.x += w * k.xdot;
    o.p += w * k.pdot;
    o.t += w;
    return o;
  };

  try {
    PhaseVelocity<Scalar> k1 = hamiltonian_flow(s, fields, params);
    record(s, k1);
    for (long i = 0; i < steps; ++i) {
      const PhaseVelocity<Scalar> k2 = hamiltonian_flow(shifted(k1, dt / 2), fields, params);
      const PhaseVelocity<Scalar> k3 = hamiltonian_flow(shifted(k2, dt / 2), fields, params);
      const PhaseVelocity<Scalar> k4 = hamiltonian_flow(shifted(k3, dt), fields, params);
      s.x += dt / 6 * (k1.xdot + 2 * k2.xdot + 2 * k3.xdot + k4.xdot);
      s.p += dt / 6 * (k1.pdot + 2 * k2.pdot + 2 * k3.pdot + k4.pdot);
      // t from the step index avoids accumulated round-off in the time column
      s.t = initial.t + dt * static_cast<Scalar>(i + 1);
      k1 = hamiltonian_flow(s, fields, params);
      record(s, k1);
    }
  } catch (const FieldError& e) {
    traj.aborted = true;
    traj.abort_reason = e.what();
  }
  return traj;
}

/// d/dt(∂L/∂v) − ∂L/∂x at each interior sample (index i ↦ entry i−1), the
/// time derivative by central differences.
template <typename Scalar>
std::vector<Vec3<Scalar>> el_residual_samples(const Trajectory<Scalar>& traj, const FieldSpec<Scalar>& fields,
                                              const PhysicalParams& params) {
  const std::size_t n = traj.size();
  if (n < 5) throw DomainError("el_residual: need at least 5 samples");
  if (!(traj.dt > Scalar(0))) throw DomainError("el_residual: trajectory has no time step");

  std::vector<Vec3<Scalar>> pl(n);
  for (std::size_t i = 0; i < n; ++i)
    pl[i] = lagrangian_dv(traj.v[i], evaluate(fields, traj.x[i], traj.t[i]), params);

  std::vector<Vec3<Scalar>> out;
  out.reserve(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Vec3<Scalar> dpdt = (pl[i + 1] - pl[i - 1]) / (2 * traj.dt);
    out.push_back(dpdt - lagrangian_dx(traj.v[i], evaluate(fields, traj.x[i], traj.t[i]), params));
  }
  return out;
}

/// max over interior samples of |d/dt(∂L/∂v) − ∂L/∂x|.
///
/// Along a Hamiltonian trajectory this is O(dt²) + O(β²): H and L agree only
/// to first order in β, so the continuum value is a β² floor, not zero.
template <typename Scalar>
Scalar el_residual(const Trajectory<Scalar>& traj, const FieldSpec<Scalar>& fields, const PhysicalParams& params) {
  Scalar worst = Scalar(0);
  for (const auto& r : el_residual_samples(traj, fields, params)) worst = std::max(worst, Scalar(r.norm()));
  return worst;
}

/// Discretization part of the EL residual: max |r_dt(t) − r_{dt/2}(t)| over
/// the interior times shared by a trajectory and its half-step refinement.
/// The β² floor cancels in the difference, leaving (3/4)C·dt².
template <typename Scalar>
Scalar el_residual_refinement_gap(const Trajectory<Scalar>& coarse, const Trajectory<Scalar>& fine,
                                  const FieldSpec<Scalar>& fields, const PhysicalParams& params) {
  if (std::abs(detail::to_double(coarse.dt) - 2 * detail::to_double(fine.dt)) > 1e-12 * detail::to_double(coarse.dt))
    throw DomainError("el_residual_refinement_gap: fine.dt must be coarse.dt / 2");
  const auto rc = el_residual_samples(coarse, fields, params);
  const auto rf = el_residual_samples(fine, fields, params);
  Scalar worst = Scalar(0);
  // coarse interior sample i sits at fine sample 2i
  for (std::size_t i = 1; i + 1 < coarse.size() && 2 * i + 1 < fine.size(); ++i)
    worst = std::max(worst, Scalar((rc[i - 1] - rf[2 * i - 1]).norm()));
  return worst;
}

/// Scalar gauge function with its gradient and time derivative.
template <typename Scalar = double>
struct GaugeFunction {
  std::function<Scalar(const Vec3<Scalar>&, Scalar)> value;
  std::function<Vec3<Scalar>(const Vec3<Scalar>&, Scalar)> gradient;
  std::function<Scalar(const Vec3<Scalar>&, Scalar)> dt;
};

enum class GaugeVariant {
  Linear,  ///< F = ∇Λ₁ + 2(H₁₁·∇Λ)H₁₁ + H₁₁²∇Λ
  Exact,  ///< F = ∇Λ₁ + |H₁₁+∇Λ|²(H₁₁+∇Λ) − |H₁₁|²H₁₁
};

/// The modified gauge shift A → A + (∇Λ + βF)/q, V → V − (∂ₜΛ + β∂ₜΛ₁)/q.
///
/// F depends on the velocity through H₁₁, so the shifted potentials exist
/// only along a trajectory.
template <typename Scalar = double>
class GaugeShift {
 public:
  GaugeShift(FieldSpec<Scalar> fields, GaugeFunction<Scalar> lambda, GaugeFunction<Scalar> lambda1,
             PhysicalParams params, GaugeVariant variant = GaugeVariant::Linear)
      : fields_(std::move(fields)),
        lambda_(std::move(lambda)),
        lambda1_(std::move(lambda1)),
        params_(params),
        variant_(variant) {
    if (!lambda_.value || !lambda_.gradient || !lambda_.dt || !lambda1_.value || !lambda1_.gradient ||
        !lambda1_.dt)
      throw DomainError("gauge_shift: Λ and Λ₁ need value, gradient and time derivative");
  }

  Vec3<Scalar> f_vector(const Vec3<Scalar>& x, const Vec3<Scalar>& v, Scalar t) const {
    const Vec3<Scalar> h = Scalar(params_.mass) * v + Scalar(params_.charge) * fields_.A(x, t);
    const Vec3<Scalar> gl = lambda_.gradient(x, t);
    const Vec3<Scalar> gl1 = lambda1_.gradient(x, t);
    if (variant_ == GaugeVariant::Linear) return gl1 + 2 * h.dot(gl) * h + h.squaredNorm() * gl;
    const Vec3<Scalar> hp = h + gl;
    return gl1 + hp.squaredNorm() * hp - h.squaredNorm() * h;
  }

  Vec3<Scalar> shifted_A(const Vec3<Scalar>& x, const Vec3<Scalar>& v, Scalar t) const {
    const Scalar b = Scalar(params_.beta);
    return fields_.A(x, t) + (lambda_.gradient(x, t) + b * f_vector(x, v, t)) / Scalar(params_.charge);
  }

  Scalar shifted_V(const Vec3<Scalar>& x, Scalar t) const {
    const Scalar b = Scalar(params_.beta);
    return fields_.V(x, t) - (lambda_.dt(x, t) + b * lambda1_.dt(x, t)) / Scalar(params_.charge);
  }

  /// L evaluated with the shifted potentials.
  Scalar shifted_lagrangian(const Vec3<Scalar>& x, const Vec3<Scalar>& v, Scalar t) const {
    const Scalar m = Scalar(params_.mass);
    const Scalar q = Scalar(params_.charge);
    const Vec3<Scalar> a = shifted_A(x, v, t);
    const Vec3<Scalar> h = m * v + q * a;
    return m * v.squaredNorm() / 2 + q * v.dot(a) - q * shifted_V(x, t) -
           Scalar(params_.beta) * h.squaredNorm() * v.dot(h);
  }

  /// L′ − L − d/dt(Λ + βΛ₁) at one point, the total derivative by the chain rule.
  Scalar pointwise_residual(const Vec3<Scalar>& x, const Vec3<Scalar>& v, Scalar t) const {
    const Scalar b = Scalar(params_.beta);
    const Scalar total = lambda_.dt(x, t) + v.dot(lambda_.gradient(x, t)) +
                         b * (lambda1_.dt(x, t) + v.dot(lambda1_.gradient(x, t)));
    return shifted_lagrangian(x, v, t) - lagrangian(x, v, t, fields_, params_) - total;
  }

  /// max over interior samples of |L′ − L − d/dt(Λ + βΛ₁)|, the total
  /// derivative by central differences of Λ + βΛ₁ along the samples.
  Scalar trajectory_residual(const Trajectory<Scalar>& traj) const {
    const std::size_t n = traj.size();
    if (n < 3) throw DomainError("gauge_shift: need at least 3 samples");
    const Scalar b = Scalar(params_.beta);
    auto phase = [&](std::size_t i) {
      return lambda_.value(traj.x[i], traj.t[i]) + b * lambda1_.value(traj.x[i], traj.t[i]);
    };
    Scalar worst = Scalar(0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const Scalar total = (phase(i + 1) - phase(i - 1)) / (2 * traj.dt);
      const Scalar dl = shifted_lagrangian(traj.x[i], traj.v[i], traj.t[i]) -
                        lagrangian(traj.x[i], traj.v[i], traj.t[i], fields_, params_);
      worst = std::max(worst, Scalar(std::abs(dl - total)));
    }
    return worst;
  }

  /// Ordinary gauge transform A + ∇Λ/q, V − ∂ₜΛ/q. Only meaningful at β = 0,
  /// where F drops out; throws otherwise.
  FieldSpec<Scalar> beta0_fields() const {
    if (params_.beta != 0.0) throw DomainError("gauge_shift: velocity-free fields exist only at beta = 0");
    FieldSpec<Scalar> out;
    out.dimension = fields_.dimension;
    out.fd_step = fields_.fd_step;
    out.is_static = false;
    const Scalar q = Scalar(params_.charge);
    auto base = fields_;
    auto lam = lambda_;
    out.A = [base, lam, q](const Vec3<Scalar>& x, Scalar t) { return Vec3<Scalar>(base.A(x, t) + lam.gradient(x, t) / q); };
    out.V = [base, lam, q](const Vec3<Scalar>& x, Scalar t) { return base.V(x, t) - lam.dt(x, t) / q; };
    return out;
  }

  const FieldSpec<Scalar>& fields() const { return fields_; }
  GaugeVariant variant() const { return variant_; }

 private:
  FieldSpec<Scalar> fields_;
  GaugeFunction<Scalar> lambda_;
  GaugeFunction<Scalar> lambda1_;
  PhysicalParams params_;
  GaugeVariant variant_;
};

template <typename Scalar>
GaugeShift<Scalar> gauge_shift(const FieldSpec<Scalar>& fields, const GaugeFunction<Scalar>& lambda,
                               const GaugeFunction<Scalar>& lambda1, const PhysicalParams& params,
                               GaugeVariant variant = GaugeVariant::Linear) {
  return GaugeShift<Scalar>(fields, lambda, lambda1, params, variant);
}

/// CSV with header t,x1,x2[,x3],v1,v2[,v3],energy at 17 significant digits.
template <typename Scalar>
void write_trajectory_csv(std::ostream& os, const Trajectory<Scalar>& traj) {
  const int d = traj.dimension;
  const auto old_prec = os.precision(17);
  os << "t";
  for (int i = 1; i <= d; ++i) os << ",x" << i;
  for (int i = 1; i <= d; ++i) os << ",v" << i;
  os << ",energy\n";
  for (std::size_t r = 0; r < traj.size(); ++r) {
    os << detail::to_double(traj.t[r]);
    for (int i = 0; i < d; ++i) os << ',' << detail::to_double(traj.x[r][i]);
    for (int i = 0; i < d; ++i) os << ',' << detail::to_double(traj.v[r][i]);
    os << ',' << detail::to_double(traj.energy[r]) << '\n';
  }
  os.precision(old_prec);
}

}  // namespace abgup::classical

#include "nested/geodesics.hpp"

#include <cmath>

#include "nested/lie.hpp"

namespace nested {

void IntegratorConfig::validate() const
{
  if (!(step > 0.0) || !(horizon > 0.0) || !std::isfinite(step) || !std::isfinite(horizon)) {
    throw std::invalid_argument("IntegratorConfig: step and horizon must be positive");
  }
  if (step > horizon) { throw std::invalid_argument("IntegratorConfig: step exceeds horizon"); }
}

int IntegratorConfig::steps() const
{
  validate();
  return static_cast<int>(std::ceil(horizon / step - 1e-9));
}

namespace {

using Alg = AlgebraVectord;
using Mat = QuatMat2d;

// ---------------------------------------------------------------- upstairs

Alg distribution_part(HamiltonianKind kind, const Alg & p)
{
  switch (kind) {
  case HamiltonianKind::HDH: return project(p, complement(Subalgebra::H));
  case HamiltonianKind::HDK: return project(p, complement(Subalgebra::K));
  case HamiltonianKind::HM: return p;
  default: throw std::invalid_argument("integrate_up: kind must be H^D_H, H^D_K or H_M");
  }
}

struct UpState
{
  Mat Q;
  Alg p;
};

UpState up_rhs(HamiltonianKind kind, const UpState & s)
{
  const Alg u = distribution_part(kind, s.p);
  return {s.Q * u.matrix(), bracket(s.p, u)};
}

UpState axpy(const UpState & s, double h, const UpState & k) { return {s.Q + h * k.Q, s.p + h * k.p}; }

UpState rk4_up(HamiltonianKind kind, const UpState & s, double h)
{
  const UpState k1 = up_rhs(kind, s);
  const UpState k2 = up_rhs(kind, axpy(s, 0.5 * h, k1));
  const UpState k3 = up_rhs(kind, axpy(s, 0.5 * h, k2));
  const UpState k4 = up_rhs(kind, axpy(s, h, k3));
  return {
    s.Q + (h / 6.0) * (k1.Q + 2.0 * k2.Q + 2.0 * k3.Q + k4.Q),
    s.p + (h / 6.0) * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p),
  };
}

UpTrace run_up(const GroupPointd & Q0, const Alg & p0, HamiltonianKind kind, const IntegratorConfig & cfg, int n)
{
  const auto frame = standard_frame<double>();
  const double h   = cfg.horizon / n;
  UpTrace trace;
  trace.times.reserve(static_cast<std::size_t>(n) + 1);

  UpState s{Q0.matrix(), p0};
  auto record = [&](int i) {
    const Alg u = distribution_part(kind, s.p);
    trace.times.push_back(i * h);
    trace.points.emplace_back(s.Q);
    trace.momenta.push_back(frame.coordinates(s.p));
    trace.energy.push_back(0.5 * trace_inner(u, u));
  };
  record(0);
  for (int i = 1; i <= n; ++i) {
    s = rk4_up(kind, s, h);
    const double drift = unitarity_defect(s.Q);
    trace.constraint_drift = std::max(trace.constraint_drift, drift);
    if (drift > kAbortDrift) {
      throw IntegrationError("integrate_up: ||Q*Q - I|| = " + std::to_string(drift) + " at t = " + std::to_string(i * h));
    }
    if (cfg.retraction) { s.Q = newton_polar_step(s.Q); }
    record(i);
  }
  return trace;
}

Eigen::VectorXd final_state(const UpTrace & t)
{
  Eigen::VectorXd v(26);
  v << t.points.back().matrix().realVector(), t.momenta.back();
  return v;
}

// -------------------------------------------------------------- downstairs

/// Weights (w_1, w_i, w_j, w_k) on the components <p, n e> and w_D on D.
struct DownWeights
{
  std::array<double, 4> fiber;
  double horizontal;
};

DownWeights down_weights(HamiltonianKind kind)
{
  // g_{M/K} is twice the Euclidean metric on D and Euclidean on the fibers,
  // so the cometric carries 1/2 on D and 1 on the fibers.
  switch (kind) {
  case HamiltonianKind::HD: return {{0.0, 0.0, 0.0, 0.0}, 0.5};
  case HamiltonianKind::HMK: return {{0.0, 1.0, 1.0, 1.0}, 0.5};
  default: throw std::invalid_argument("integrate_down: kind must be H^D or H_M/K");
  }
}

const std::array<Quaterniond, 4> kUnits{Quaterniond::one(), Quaterniond::i(), Quaterniond::j(), Quaterniond::k()};

struct DownState
{
  Vector8 x;
  Vector8 p;
};

DownState down_rhs(const DownWeights & w, const DownState & s)
{
  const double r  = s.x.norm();
  const Vector8 n = s.x / r;
  Vector8 dHdp    = w.horizontal * s.p;
  Vector8 dHdx    = Vector8::Zero();
  for (std::size_t e = 0; e < 4; ++e) {
    const double coef = w.fiber[e] - w.horizontal;
    const Vector8 ne  = right_mul(n, kUnits[e]);
    const double c    = s.p.dot(ne);
    dHdp += coef * c * ne;
    // d<p, n e>/dx = (I - n n^T)(p conj(e)) / |x|
    const Vector8 g = right_mul(s.p, kUnits[e].conj());
    dHdx += coef * c * (g - n.dot(g) * n) / r;
  }
  return {dHdp, -dHdx};
}

DownState rk4_down(const DownWeights & w, const DownState & s, double h)
{
  auto ax = [](const DownState & a, double t, const DownState & k) { return DownState{a.x + t * k.x, a.p + t * k.p}; };
  const DownState k1 = down_rhs(w, s);
  const DownState k2 = down_rhs(w, ax(s, 0.5 * h, k1));
  const DownState k3 = down_rhs(w, ax(s, 0.5 * h, k2));
  const DownState k4 = down_rhs(w, ax(s, h, k3));
  return {
    s.x + (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
    s.p + (h / 6.0) * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p),
  };
}

DownTrace run_down(const SpherePoint7 & n0, const Vector8 & p0, HamiltonianKind kind, const IntegratorConfig & cfg, int n)
{
  const DownWeights w = down_weights(kind);
  const double h      = cfg.horizon / n;
  DownTrace trace;
  DownState s{n0.vector(), p0};
  auto record = [&](int i) {
    trace.times.push_back(i * h);
    trace.points.push_back(SpherePoint7::fromVector(s.x / s.x.norm()));
    trace.momenta.push_back(s.p);
    trace.energy.push_back(hamiltonian_down_ambient(kind, s.x, s.p));
  };
  record(0);
  for (int i = 1; i <= n; ++i) {
    s = rk4_down(w, s, h);
    const double drift = std::abs(s.x.norm() - 1.0);
    trace.constraint_drift = std::max(trace.constraint_drift, drift);
    if (drift > kAbortDrift) {
      throw IntegrationError("integrate_down: ||x| - 1| = " + std::to_string(drift) + " at t = " + std::to_string(i * h));
    }
    if (cfg.retraction) { s.x.normalize(); }
    record(i);
  }
  return trace;
}

Eigen::VectorXd final_state(const DownTrace & t)
{
  Eigen::VectorXd v(16);
  v << t.points.back().vector(), t.momenta.back();
  return v;
}

template<typename Trace, typename Run>
Trace with_scheme(const IntegratorConfig & cfg, Run run)
{
  const int n = cfg.steps();
  Trace trace = run(n);
  if (cfg.scheme == Scheme::RK4Halving) {
    const Eigen::VectorXd y1 = final_state(trace);
    const Eigen::VectorXd y2 = final_state(run(2 * n));
    const Eigen::VectorXd y4 = final_state(run(4 * n));
    trace.observed_order = std::log2((y1 - y2).norm() / (y2 - y4).norm());
  }
  return trace;
}

}  // namespace

double hamiltonian_down_ambient(HamiltonianKind kind, const Vector8 & x, const Vector8 & p)
{
  const DownWeights w = down_weights(kind);
  const Vector8 n     = x / x.norm();
  double H            = w.horizontal * p.squaredNorm();
  for (std::size_t e = 0; e < 4; ++e) {
    const double c = p.dot(right_mul(n, kUnits[e]));
    H += (w.fiber[e] - w.horizontal) * c * c;
  }
  return 0.5 * H;
}

UpTrace integrate_up(const GroupPointd & Q0, const Covector & lambda0, HamiltonianKind kind, const IntegratorConfig & cfg)
{
  if (lambda0.side != Side::Up || lambda0.components.size() != 10) {
    throw std::invalid_argument("integrate_up: initial covector must be upstairs");
  }
  if (frobenius(lambda0.gauge.matrix() - Q0.matrix()) > 1e-10) {
    throw std::invalid_argument("integrate_up: initial covector is not based at Q0");
  }
  distribution_part(kind, Alg{});
  const Alg p0 = standard_frame<double>().compose(lambda0.components);
  return with_scheme<UpTrace>(cfg, [&](int n) { return run_up(Q0, p0, kind, cfg, n); });
}

DownTrace integrate_down_ambient(const SpherePoint7 & n0, const Vector8 & p0, HamiltonianKind kind, const IntegratorConfig & cfg)
{
  down_weights(kind);
  return with_scheme<DownTrace>(cfg, [&](int n) { return run_down(n0, p0, kind, cfg, n); });
}

DownTrace integrate_down(const SpherePoint7 & n0, const Covector & mu0, HamiltonianKind kind, const IntegratorConfig & cfg)
{
  if (mu0.side != Side::Down || mu0.components.size() != 7) {
    throw std::invalid_argument("integrate_down: initial covector must be downstairs");
  }
  if ((mu0.base_down().vector() - n0.vector()).norm() > 1e-10) {
    throw std::invalid_argument("integrate_down: initial covector is not based at n0");
  }
  return integrate_down_ambient(n0, to_ambient(mu0), kind, cfg);
}

ProjectedTrace project_trace(const UpTrace & trace, Projection which)
{
  ProjectedTrace out;
  out.times = trace.times;
  for (const auto & Q : trace.points) {
    if (which == Projection::PiK) {
      out.points.emplace_back(pi_K(Q).vector());
    } else {
      out.points.emplace_back(pi_H(Q).vector());
    }
  }
  return out;
}

ProjectedTrace hopf_image(const DownTrace & trace)
{
  ProjectedTrace out;
  out.times = trace.times;
  for (const auto & n : trace.points) { out.points.emplace_back(pi_hopf(n).vector()); }
  return out;
}

double sup_distance(const ProjectedTrace & a, const ProjectedTrace & b)
{
  const std::size_t n = std::min(a.points.size(), b.points.size());
  double d            = 0.0;
  for (std::size_t i = 0; i < n; ++i) { d = std::max(d, (a.points[i] - b.points[i]).norm()); }
  return d;
}

namespace {

ProjectedTrace as_projected(const DownTrace & trace)
{
  ProjectedTrace out;
  out.times = trace.times;
  for (const auto & n : trace.points) { out.points.emplace_back(n.vector()); }
  return out;
}

}  // namespace

VerificationReport theorem1_check(const GroupPointd & Q0,
                                  const Covector & mu0,
                                  const IntegratorConfig & cfg,
                                  const Eigen::Vector3d & vertical_perturbation)
{
  Covector lambda0 = pullback(mu0, Q0);
  lambda0.components.tail<3>() += vertical_perturbation;
  const UpTrace up     = integrate_up(Q0, lambda0, HamiltonianKind::HDH, cfg);
  const DownTrace down = integrate_down(pi_K(Q0), mu0, HamiltonianKind::HD, cfg);

  VerificationReport r;
  r.check_name                = "theorem1";
  r.point                     = Q0;
  r.tolerance                 = 1e-6;
  r.residuals["sup_distance"] = sup_distance(project_trace(up, Projection::PiK), as_projected(down));
  r.details["vertical_perturbation"] = vertical_perturbation.norm();
  r.details["samples"]        = up.size();
  r.pass                      = r.residuals["sup_distance"] <= r.tolerance;
  return r;
}

VerificationReport corollary_check(const GroupPointd & Q0,
                                   const Covector & mu0,
                                   const IntegratorConfig & cfg,
                                   const Eigen::Vector3d & vertical_perturbation)
{
  Covector lambda0 = pullback(mu0, Q0);
  lambda0.components.tail<3>() += vertical_perturbation;
  const UpTrace up       = integrate_up(Q0, lambda0, HamiltonianKind::HDH, cfg);
  const DownTrace down   = integrate_down(pi_K(Q0), mu0, HamiltonianKind::HD, cfg);

  VerificationReport r;
  r.check_name                = "corollary";
  r.point                     = Q0;
  r.tolerance                 = 1e-6;
  r.residuals["sup_distance"] = sup_distance(project_trace(up, Projection::PiH), hopf_image(down));
  r.details["vertical_perturbation"] = vertical_perturbation.norm();
  r.pass                      = r.residuals["sup_distance"] <= r.tolerance;
  return r;
}

GroupPointd closed_form_up(const GroupPointd & Q0, const Vector10 & p0, double t)
{
  const Alg p  = standard_frame<double>().compose(p0);
  const Alg u0 = project(p, complement(Subalgebra::H));
  const Alg pv = project(p, Subalgebra::H);
  return GroupPointd(Q0.matrix() * mat_exp_raw((t * (u0 + pv)).matrix()) * mat_exp_raw((-t * pv).matrix()));
}

}  // namespace nested

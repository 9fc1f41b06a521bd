#include "nested/hamilton.hpp"

#include <cmath>
#include <stdexcept>

namespace nested {

namespace {

void require_side(const Covector & c, Side expected, const char * what)
{
  if (c.side != expected) { throw std::invalid_argument(std::string(what) + ": covector is on the wrong side"); }
  const Eigen::Index n = expected == Side::Up ? 10 : 7;
  if (c.components.size() != n) { throw std::invalid_argument(std::string(what) + ": wrong number of components"); }
}

}  // namespace

Side side_of(HamiltonianKind kind)
{
  switch (kind) {
  case HamiltonianKind::HMK:
  case HamiltonianKind::HD:
  case HamiltonianKind::HV: return Side::Down;
  default: return Side::Up;
  }
}

IndexRange selected_indices(HamiltonianKind kind)
{
  switch (kind) {
  case HamiltonianKind::HM: return {0, 10};
  case HamiltonianKind::HDH: return {0, 4};
  case HamiltonianKind::HDK: return {0, 7};
  case HamiltonianKind::HVH: return {4, 10};
  case HamiltonianKind::HVK: return {7, 10};
  case HamiltonianKind::HMK: return {0, 7};
  case HamiltonianKind::HD: return {0, 4};
  case HamiltonianKind::HV: return {4, 7};
  }
  return {0, 0};
}

std::string to_string(HamiltonianKind kind)
{
  switch (kind) {
  case HamiltonianKind::HM: return "H_M";
  case HamiltonianKind::HDH: return "H^D_H";
  case HamiltonianKind::HDK: return "H^D_K";
  case HamiltonianKind::HVH: return "H^V_H";
  case HamiltonianKind::HVK: return "H^V_K";
  case HamiltonianKind::HMK: return "H_M/K";
  case HamiltonianKind::HD: return "H^D";
  case HamiltonianKind::HV: return "H^V";
  }
  return "?";
}

Eigen::VectorXd sharp(HamiltonianKind kind, const Covector & lambda)
{
  require_side(lambda, side_of(kind), "sharp");
  const auto [b, e] = selected_indices(kind);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(lambda.components.size());
  v.segment(b, e - b) = lambda.components.segment(b, e - b);
  return v;
}

double hamiltonian(HamiltonianKind kind, const Covector & lambda)
{
  require_side(lambda, side_of(kind), "hamiltonian");
  const auto [b, e] = selected_indices(kind);
  return 0.5 * lambda.components.segment(b, e - b).squaredNorm();
}

Eigen::Matrix<double, 8, 7> down_frame(const GroupPointd & lift)
{
  const auto frame = standard_frame<double>();
  Eigen::Matrix<double, 8, 7> Y;
  for (int j = 0; j < 7; ++j) { Y.col(j) = push_pi_K(lift, frame[j]); }
  return Y;
}

double evaluate_down(const Covector & mu, const Vector8 & w)
{
  return to_ambient(mu).dot(w);
}

Vector8 to_ambient(const Covector & mu)
{
  require_side(mu, Side::Down, "to_ambient");
  const SpherePoint7 n = mu.base_down();
  const auto Y         = down_frame(mu.gauge);
  Vector8 p            = Vector8::Zero();
  for (int j = 0; j < 7; ++j) { p += mu.components(j) * lower_down(n, Y.col(j)); }
  return p;
}

Vector8 sharp_ambient_down(HamiltonianKind kind, const Covector & mu)
{
  return down_frame(mu.gauge) * sharp(kind, mu);
}

Covector pullback(const Covector & mu, const GroupPointd & Q)
{
  require_side(mu, Side::Down, "pullback");
  if ((pi_K(Q).vector() - mu.base_down().vector()).norm() > 1e-10) {
    throw std::invalid_argument("pullback: Q does not lie over the base point of mu");
  }
  const auto frame = standard_frame<double>();
  const Vector8 p  = to_ambient(mu);
  Vector10 c;
  for (int i = 0; i < 10; ++i) { c(i) = p.dot(push_pi_K(Q, frame[i])); }
  return Covector::up(Q, c);
}

Covector permuted_pullback(const Covector & mu, const GroupPointd & Q)
{
  Covector honest = pullback(mu, Q);
  Vector10 c      = Vector10::Zero();
  c.head<7>()     = honest.components.head<7>().reverse();
  return Covector::up(Q, c);
}

VerificationReport verify_prop2(const GroupPointd & Q, const Covector & mu, const PullbackFn & pb)
{
  using K           = HamiltonianKind;
  const Covector up = pb(mu, Q);
  VerificationReport r;
  r.check_name = "prop2";
  r.point      = Q;
  r.tolerance  = 1e-12;
  r.residuals["a"] = std::abs(hamiltonian(K::HDH, up) - hamiltonian(K::HD, mu));
  r.residuals["b"] = std::abs(hamiltonian(K::HDK, up) - hamiltonian(K::HDH, up) - hamiltonian(K::HV, mu));
  r.residuals["c"] = std::abs(hamiltonian(K::HM, up) - hamiltonian(K::HVK, up) - hamiltonian(K::HMK, mu));
  r.residuals["c_DK"] = std::abs(hamiltonian(K::HDK, up) - hamiltonian(K::HMK, mu));
  r.pass = r.max_residual() <= r.tolerance;
  return r;
}

VerificationReport verify_sharp_diagram(const GroupPointd & Q, const Covector & mu)
{
  const auto frame          = standard_frame<double>();
  const Covector up         = pullback(mu, Q);
  const Eigen::VectorXd vup = sharp(HamiltonianKind::HM, up);
  Vector8 lhs               = Vector8::Zero();
  for (int i = 0; i < 10; ++i) { lhs += vup(i) * push_pi_K(Q, frame[i]); }
  const Vector8 rhs = sharp_ambient_down(HamiltonianKind::HMK, mu);

  VerificationReport r;
  r.check_name              = "sharp-diagram";
  r.point                   = Q;
  r.tolerance               = 1e-12;
  r.residuals["commutator"] = (lhs - rhs).norm();
  r.pass                    = r.residuals["commutator"] <= r.tolerance;
  return r;
}

namespace {

/// Lift with second column n and first column (-b conj(d)/|b|, |b|).
QuatMat2d canonical_lift(const SpherePoint7 & n)
{
  const double nb = n.b.norm();
  if (nb < 1e-6) { throw std::invalid_argument("local_section: undefined where b = 0"); }
  return {-(1.0 / nb) * (n.b * n.d.conj()), n.b, Quaterniond(nb), n.d};
}

}  // namespace

GroupPointd local_section(const SpherePoint7 & n, const GroupPointd & through)
{
  const QuatMat2d L0 = canonical_lift(pi_K(through));
  // unit mu0 with through = L0 diag(mu0, 1)
  const Quaterniond mu0 = L0.a.norm() > L0.c.norm() ? L0.a.inverse() * through.matrix().a
                                                     : L0.c.inverse() * through.matrix().c;
  return GroupPointd(canonical_lift(n) * QuatMat2d::diag(mu0, Quaterniond::one()));
}

VerificationReport verify_pullback_symplectic(const Covector & mu, const Vector8 & dn_raw)
{
  const SpherePoint7 n = mu.base_down();
  const Vector8 x      = n.vector();
  const Vector8 dn     = dn_raw - dn_raw.dot(x) * x;
  const double h       = 1e-6;

  auto along = [&](double s) {
    const Vector8 y = (x + s * dn).normalized();
    return local_section(SpherePoint7::fromVector(y), mu.gauge).matrix();
  };
  const QuatMat2d ds = (1.0 / (2.0 * h)) * (along(h) - along(-h));
  const AlgebraVectord u = AlgebraVectord::projectFrom(conj_transpose(mu.gauge.matrix()) * ds);

  const Covector lambda = pullback(mu, mu.gauge);
  const auto frame      = standard_frame<double>();
  const double theta_up = lambda.components.dot(frame.coordinates(u));
  const double theta_dn = evaluate_down(mu, dn);

  VerificationReport r;
  r.check_name                   = "pullback-symplectic";
  r.point                        = mu.gauge;
  r.tolerance                    = 1e-8;
  r.residuals["canonical_form"]  = std::abs(theta_up - theta_dn);
  r.residuals["section_defect"]  = (pi_K(local_section(n, mu.gauge)).vector() - x).norm();
  r.pass                         = r.max_residual() <= r.tolerance;
  return r;
}

}  // namespace nested

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bundle.hpp"
#include "hamilton.hpp"
#include "report.hpp"

namespace nested {

enum class Scheme {
  RK4Fixed,    ///< classical RK4 at the configured step
  RK4Halving,  ///< additionally runs step/2 and step/4 and reports the observed order
};

struct IntegratorConfig
{
  double step    = 1e-3;
  double horizon = 1.0;
  Scheme scheme  = Scheme::RK4Fixed;
  bool retraction = true;

  /// Throws std::invalid_argument unless 0 < step <= horizon.
  void validate() const;
  /// Number of steps; the step is shrunk so that it divides the horizon.
  int steps() const;
};

/// Raised when constraint drift exceeds kAbortDrift during integration.
class IntegrationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kAbortDrift = 1e-6;

/**
 * @brief Time-sampled normal geodesic.
 *
 * Upstairs: Point = GroupPointd, momenta are frame components (10).
 * Downstairs: Point = SpherePoint7, momenta are ambient canonical R^8 vectors.
 */
template<typename Point, int MomentumDim>
struct GeodesicTrace
{
  using Momentum = Eigen::Matrix<double, MomentumDim, 1>;

  std::vector<double> times;
  std::vector<Point> points;
  std::vector<Momentum> momenta;
  std::vector<double> energy;
  /// max over samples of ||Q*Q - I||_F, resp. ||x| - 1|
  double constraint_drift = 0.0;
  /// Set by Scheme::RK4Halving.
  std::optional<double> observed_order;

  std::size_t size() const { return times.size(); }
  double energy_drift() const
  {
    double d = 0.0;
    for (double e : energy) { d = std::max(d, std::abs(e - energy.front())); }
    return d;
  }
};

using UpTrace   = GeodesicTrace<GroupPointd, 10>;
using DownTrace = GeodesicTrace<SpherePoint7, 8>;

/**
 * @brief Sub-Riemannian (or Riemannian) normal geodesic on Sp(2).
 *
 * Left-trivialized Lie-Poisson flow Q' = Q u, p' = [p, u], u = projection of
 * p onto the distribution selected by `kind` (H^{D_H}, H^{D_K} or H_M).
 */
UpTrace integrate_up(const GroupPointd & Q0, const Covector & lambda0, HamiltonianKind kind, const IntegratorConfig & cfg);

/**
 * @brief Normal geodesic on S^7 in ambient canonical coordinates.
 *
 * Hamiltonian H(x, p) = 1/2 g*_{D or M/K}(p, p) with the distribution and the
 * fiber directions evaluated at x/|x|; `kind` is H^D or H_{M/K}.
 */
DownTrace integrate_down(const SpherePoint7 & n0, const Covector & mu0, HamiltonianKind kind, const IntegratorConfig & cfg);

/// Same flow from an ambient momentum (the component of p along x is irrelevant).
DownTrace integrate_down_ambient(const SpherePoint7 & n0, const Vector8 & p0, HamiltonianKind kind, const IntegratorConfig & cfg);

/// Downstairs Hamiltonian in ambient canonical coordinates.
double hamiltonian_down_ambient(HamiltonianKind kind, const Vector8 & x, const Vector8 & p);

enum class Projection { PiK, PiH };

struct ProjectedTrace
{
  std::vector<double> times;
  std::vector<Eigen::VectorXd> points;  ///< R^8 for pi_K, R^5 for pi_H
};

ProjectedTrace project_trace(const UpTrace & trace, Projection which);

/// pi_hopf applied pointwise to a downstairs trace.
ProjectedTrace hopf_image(const DownTrace & trace);

/// sup over common samples of the Euclidean distance.
double sup_distance(const ProjectedTrace & a, const ProjectedTrace & b);

/**
 * @brief Projected upstairs geodesic vs downstairs geodesic.
 *
 * lambda0 = pullback(mu0, Q0), plus `vertical_perturbation` on the V_K
 * components for negative controls.
 */
VerificationReport theorem1_check(const GroupPointd & Q0,
                                  const Covector & mu0,
                                  const IntegratorConfig & cfg,
                                  const Eigen::Vector3d & vertical_perturbation = Eigen::Vector3d::Zero());

/// pi_H of the upstairs geodesic vs pi_hopf of the downstairs geodesic on S^4.
VerificationReport corollary_check(const GroupPointd & Q0,
                                   const Covector & mu0,
                                   const IntegratorConfig & cfg,
                                   const Eigen::Vector3d & vertical_perturbation = Eigen::Vector3d::Zero());

/**
 * @brief Candidate closed form for H^{D_H} geodesics:
 * Q0 exp(t (u0 + p_v)) exp(-t p_v), u0 the h^perp part and p_v the h part of p0.
 */
GroupPointd closed_form_up(const GroupPointd & Q0, const Vector10 & p0, double t);

}  // namespace nested

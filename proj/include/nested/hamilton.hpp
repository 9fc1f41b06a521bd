#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

#include "bundle.hpp"
#include "quat.hpp"
#include "report.hpp"

namespace nested {

using Vector7  = Eigen::Matrix<double, 7, 1>;
using Vector10 = Eigen::Matrix<double, 10, 1>;

enum class Side { Up, Down };

/**
 * @brief Momentum in frame coordinates.
 *
 * Upstairs (T*M, 10 components): dual to the left-translated standard frame
 * {X_1..X_7, V_1..V_3} at `gauge`.
 *
 * Downstairs (T*(M/K), 7 components): dual, for g_{M/K}, to the frame
 * Y_j = d pi_K(X_j) at pi_K(gauge). Different lifts in the same fiber give
 * frames rotated inside D, so the lift is part of the covector's identity.
 */
struct Covector
{
  Side side = Side::Up;
  GroupPointd gauge;
  Eigen::VectorXd components = Eigen::VectorXd::Zero(10);

  static Covector up(const GroupPointd & Q, const Vector10 & c) { return {Side::Up, Q, c}; }
  static Covector down(const GroupPointd & lift, const Vector7 & c) { return {Side::Down, lift, c}; }

  SpherePoint7 base_down() const { return pi_K(gauge); }
  std::string frame_id() const { return side == Side::Up ? "left-standard" : "dpiK-standard"; }
};

/// H_M, H^{D_H}, H^{D_K}, H^{V_H}, H^{V_K} upstairs; H_{M/K}, H^D, H^V downstairs.
enum class HamiltonianKind { HM, HDH, HDK, HVH, HVK, HMK, HD, HV };

struct IndexRange
{
  int begin;
  int end;
};

Side side_of(HamiltonianKind kind);
/// Frame components selected by the kind (0-based, half open).
IndexRange selected_indices(HamiltonianKind kind);
std::string to_string(HamiltonianKind kind);

/// Frame coordinates of the sharp of `lambda` for the (sub-)metric selected by `kind`.
Eigen::VectorXd sharp(HamiltonianKind kind, const Covector & lambda);

/// Half the cometric: 1/2 of the sum of squared selected components.
double hamiltonian(HamiltonianKind kind, const Covector & lambda);

/// Columns Y_1..Y_7 = d pi_K of the D_K frame at the lift, ambient R^8.
Eigen::Matrix<double, 8, 7> down_frame(const GroupPointd & lift);

/// mu(w) for ambient tangent w at the base of mu.
double evaluate_down(const Covector & mu, const Vector8 & w);

/// Euclidean R^8 representative p with p . w = mu(w) on T S^7 and p . n = 0.
Vector8 to_ambient(const Covector & mu);

/// Sharp of a downstairs covector in ambient coordinates: sum over selected j of mu_j Y_j.
Vector8 sharp_ambient_down(HamiltonianKind kind, const Covector & mu);

/**
 * @brief pi_K^* mu at Q, computed by pairing mu with d pi_K of the frame at Q.
 *
 * Throws std::invalid_argument unless pi_K(Q) equals the base of mu within 1e-10.
 */
Covector pullback(const Covector & mu, const GroupPointd & Q);

/// Wrong pullback for negative controls: mu's components placed in reversed order over indices 1..7.
Covector permuted_pullback(const Covector & mu, const GroupPointd & Q);

using PullbackFn = std::function<Covector(const Covector &, const GroupPointd &)>;

/// Residuals a, b, c (and c' for the H^{D_K} form of c).
VerificationReport verify_prop2(const GroupPointd & Q, const Covector & mu, const PullbackFn & pb = pullback);

/// || d pi_K sharp^g pi_K^* mu - sharp^{g_{M/K}} mu ||
VerificationReport verify_sharp_diagram(const GroupPointd & Q, const Covector & mu);

/// A local section s of pi_K through `through`, valid where b != 0.
GroupPointd local_section(const SpherePoint7 & n, const GroupPointd & through);

/**
 * @brief Pullback of canonical 1-forms along (n, mu) -> (s(n), pi_K^* mu).
 *
 * theta_M(d Phi W) is compared with theta_{M/K}(W) for the tangent W whose
 * base component is dn. Equality for all W implies the symplectic forms
 * pull back, which is the sense in which pi_K^* is a symplectic map onto
 * its image.
 */
VerificationReport verify_pullback_symplectic(const Covector & mu, const Vector8 & dn);

}  // namespace nested

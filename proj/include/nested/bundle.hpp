#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lie.hpp"
#include "quat.hpp"
#include "report.hpp"

namespace nested {

using Vector5 = Eigen::Matrix<double, 5, 1>;
using Vector8 = Eigen::Matrix<double, 8, 1>;
using Matrix8 = Eigen::Matrix<double, 8, 8>;

/// Which group action on Sp(2) the bundle instance uses.
enum class Action {
  Hopf,          ///< Q . (mu, nu) = Q diag(conj mu, conj nu); K = {nu = 1}
  GromollMeyer,  ///< Q . (l, mu) = diag(conj l, conj l) Q diag(mu, 1); small group Delta = {l = mu}
};

/**
 * @brief A nested principal bundle instance over M = Sp(2).
 *
 * The big group is always Sp(1) x Sp(1). The small group is K for the Hopf
 * action and the diagonal Delta for the Gromoll-Meyer action. The metric is
 * the bi-invariant trace metric.
 */
struct BundleSpec
{
  Action action = Action::Hopf;
  FramedAlgebra<double> frame = standard_frame<double>();

  static BundleSpec hopf() { return {Action::Hopf, standard_frame<double>()}; }
  static BundleSpec gromollMeyer() { return {Action::GromollMeyer, standard_frame<double>()}; }

  std::string name() const { return action == Action::Hopf ? "hopf" : "gromoll-meyer"; }
  /// "K" or "Delta"
  std::string smallGroupName() const { return action == Action::Hopf ? "K" : "Delta"; }
};

/// Big group (H) or small group (K, resp. Delta).
enum class Fiber { H, K };

/// Element of Sp(1) x Sp(1). Hopf: (mu, nu). Gromoll-Meyer: (lambda, mu).
struct GroupParam
{
  Quaterniond first = Quaterniond::one();
  Quaterniond second = Quaterniond::one();
};

/// Element of sp(1) x sp(1), slots as in GroupParam. Entries are pure imaginary.
struct FiberAlgebraElement
{
  Quaterniond first;
  Quaterniond second;
};

/// Embed a unit quaternion of the small group: Hopf (q, 1), Gromoll-Meyer (q, q).
GroupParam small_group_element(const BundleSpec & spec, const Quaterniond & q);
FiberAlgebraElement small_algebra_element(const BundleSpec & spec, const Quaterniond & xi);

/// Group law of Sp(1) x Sp(1) in the order that makes `act` an action:
/// act(act(Q, g), h) == act(Q, compose_params(spec, g, h)).
GroupParam compose_params(const BundleSpec & spec, const GroupParam & g, const GroupParam & h);

/// Throws std::invalid_argument for non-unit parameters.
GroupPointd act(const BundleSpec & spec, const GroupPointd & Q, const GroupParam & g);

/// Basis of the acting algebra: 6 elements for H, 3 for the small group (i, j, k order).
std::vector<FiberAlgebraElement> fiber_basis(const BundleSpec & spec, Fiber fiber);

/// Fundamental field left-trivialized: Q^{-1} d/dt act(Q, exp(t xi)) at t = 0.
AlgebraVectord fundamental_field(const BundleSpec & spec, const GroupPointd & Q, const FiberAlgebraElement & xi);

/// Central-difference version of fundamental_field, for cross-checking.
AlgebraVectord fundamental_field_fd(const BundleSpec & spec,
                                    const GroupPointd & Q,
                                    const FiberAlgebraElement & xi,
                                    double h = 1e-6);

/// Point (b, d) of the unit sphere in H^2.
struct SpherePoint7
{
  Quaterniond b;
  Quaterniond d = Quaterniond::one();

  static constexpr double kTol = 1e-10;

  SpherePoint7() = default;
  /// Throws std::invalid_argument if |b|^2 + |d|^2 deviates from 1 by more than kTol.
  SpherePoint7(const Quaterniond & b_, const Quaterniond & d_);

  Vector8 vector() const;
  static SpherePoint7 fromVector(const Vector8 & v);
};

/// Point (q, x) of the unit sphere in H x R.
struct SpherePoint4
{
  Quaterniond q;
  double x = 1.0;

  static constexpr double kTol = 1e-10;

  SpherePoint4() = default;
  SpherePoint4(const Quaterniond & q_, double x_);

  Vector5 vector() const;
};

/// Second column (b, d) of Q.
SpherePoint7 pi_K(const GroupPointd & Q);

/**
 * @brief (2 d conj(b), |b|^2 - |d|^2), checked against (-2 c conj(a), |c|^2 - |a|^2).
 *
 * Both expressions agree on Sp(2); a disagreement above 1e-10 means the
 * GroupPoint is corrupted and raises std::runtime_error.
 */
SpherePoint4 pi_H(const GroupPointd & Q);

/// Quaternionic Hopf map S^7 -> S^4.
SpherePoint4 pi_hopf(const SpherePoint7 & n);

/// d pi_K (Q u) = second column of Q u, in H^2 = R^8 coordinates.
Vector8 push_pi_K(const GroupPointd & Q, const AlgebraVectord & u);

/// Differential of the quaternionic Hopf map at n applied to v (ambient R^8 -> R^5).
Vector5 push_hopf(const SpherePoint7 & n, const Vector8 & v);

/// Right quaternionic multiplication (b, d) -> (b e, d e) on R^8.
Vector8 right_mul(const Vector8 & x, const Quaterniond & e);

/// Columns x i, x j, x k for x normalized: the Hopf fiber directions.
Eigen::Matrix<double, 8, 3> hopf_fiber_directions(const Vector8 & x);

/// Orthogonal projector of R^8 onto D at x/|x|: complement of span{x, x i, x j, x k}.
Matrix8 hopf_horizontal_projector(const Vector8 & x);

/// g_{M/K} on S^7 in ambient coordinates: 2 <P_D v, P_D w> + <P_V v, P_V w>.
double metric_down(const SpherePoint7 & n, const Vector8 & v, const Vector8 & w);

/// Euclidean representative of the covector g_{M/K}(v, .).
Vector8 lower_down(const SpherePoint7 & n, const Vector8 & v);

/// g_{M/H} on S^4 in ambient coordinates: half the Euclidean product of R^5.
double metric_base(const Vector5 & a, const Vector5 & b);

/**
 * @brief Vertical/horizontal splitting of T_Q M for both fibers.
 *
 * All vectors are left-trivialized (the tangent vector is Q u) and
 * orthonormal for the trace metric within each subframe.
 */
struct TangentFrameAt
{
  GroupPointd base;
  std::vector<AlgebraVectord> vertical_H;
  std::vector<AlgebraVectord> horizontal_H;
  std::vector<AlgebraVectord> vertical_K;
  std::vector<AlgebraVectord> horizontal_K;
};

/// Throws std::runtime_error at a degenerate point (rank-deficient fundamental fields).
TangentFrameAt splitting_at(const BundleSpec & spec, const GroupPointd & Q);

/// Orthonormal basis of span(vs) extended greedily; `candidates` supply the complement.
std::vector<AlgebraVectord> orthonormal_complement(const std::vector<AlgebraVectord> & basis,
                                                   const std::vector<AlgebraVectord> & candidates,
                                                   int wanted);

/**
 * @brief Connection checks: V_H + D_H and V_K + D_K span T_Q M, and the
 * pushed-forward D is transverse to ker d pi downstairs.
 *
 * Residual-free; ranks are reported in details and the pass flag is the
 * conjunction of (10, 10, 7) together with rk D = 4.
 */
VerificationReport check_ehresmann(const BundleSpec & spec, const TangentFrameAt & frame);
VerificationReport check_ehresmann(const BundleSpec & spec, const GroupPointd & Q);

/// Left-trivialized vector field on Sp(2).
using VectorField = std::function<AlgebraVectord(const GroupPointd &)>;

/// Left-trivialized Lie bracket of vector fields: [x,y] + Dy(X) - Dx(Y), derivatives by central differences.
AlgebraVectord field_bracket(const VectorField & X, const VectorField & Y, const GroupPointd & Q, double h = 1e-5);

/// Orthonormal frame of the distribution whose bracket generation is tested.
/// Hopf: D_H. Gromoll-Meyer: D_H + V_Delta.
std::vector<AlgebraVectord> step2_distribution(const BundleSpec & spec, const GroupPointd & Q);

/**
 * @brief Rank of the distribution plus first brackets.
 *
 * Generator fields are projections of the standard frame onto the
 * distribution; `generators` optionally restricts to a subset of their
 * indices (used for negative controls).
 */
VerificationReport check_step2(const BundleSpec & spec,
                               const GroupPointd & Q,
                               const std::vector<int> & generators = {});

/// Gram matrix of the ambient fundamental fields over fiber_basis(spec, fiber).
Eigen::MatrixXd bilinear_form(const BundleSpec & spec, Fiber fiber, const GroupPointd & Q);

/// 3x3 form of the Gromoll-Meyer Delta-action at Q.
Eigen::Matrix3d gm_bilinear_form(const GroupPointd & Q);

/// Identification of C^4 with H^2 used by the twistor projection.
enum class ComplexStructure {
  RightLinear,  ///< (z1 + j z2, z3 + j z4): complex scalars act by right multiplication
  LeftLinear,   ///< (z1 + z2 j, z3 + z4 j): not right-C-linear; negative control only
};

Quaterniond complex_pair_to_quaternion(std::complex<double> z1, std::complex<double> z2, ComplexStructure cs);

/// Classical Hopf map S^7 -> CP^3, realized as the rank-one projector z z^H.
Eigen::Matrix4cd complex_line_projector(const Eigen::Vector4cd & z);

/**
 * @brief Twistor projection CP^3 -> HP^1 = S^4 from a line projector.
 *
 * The quaternionic line e + ej has projector P + J P J^{-1} with J the
 * right multiplication by j; its quaternionic entries give the S^4 point.
 */
SpherePoint4 twistor_projection(const Eigen::Matrix4cd & line_projector);

/// Compares T(H_3(z)) with h(z) for unit z in C^4; `cs` selects the C^4 -> H^2 map on the h side.
VerificationReport twistor_check(const Eigen::Vector4cd & z, ComplexStructure cs = ComplexStructure::RightLinear);

/// Pushed-forward D_K frame is g_{M/K}-orthonormal at pi_K(Q). Hopf only.
VerificationReport check_dpiK_isometry(const GroupPointd & Q);

/**
 * @brief Riemannian submersion pi: S^7 -> S^4 on horizontal pairs at pi_K(Q).
 *
 * Uses the pushed-forward D_H frame plus `extra` horizontal vectors (frame
 * coefficients, 4 each) and compares g_{M/K} with g_{M/H} after d pi. Hopf only.
 */
VerificationReport check_submersion(const GroupPointd & Q,
                                    const std::vector<Eigen::Vector4d> & extra = {});

}  // namespace nested

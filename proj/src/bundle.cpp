#include "nested/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nested {

namespace {

using Quat = Quaterniond;
using Mat  = QuatMat2d;
using Alg  = AlgebraVectord;

void require_unit(const Quat & q, const char * what)
{
  if (std::abs(q.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string("act: group parameter ") + what + " is not a unit quaternion");
  }
}

Vector8 pair_vector(const Quat & b, const Quat & d)
{
  Vector8 v;
  v << b.vector(), d.vector();
  return v;
}

Quat quat_at(const Vector8 & v, int slot) { return Quat::fromVector(v.segment<4>(4 * slot)); }

/// In-order Gram-Schmidt with one reorthogonalization pass.
std::vector<Alg> gram_schmidt(const std::vector<Alg> & vs)
{
  std::vector<Alg> out;
  for (const auto & v : vs) {
    Alg r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto & e : out) { r -= trace_inner(r, e) * e; }
    }
    const double n = r.norm();
    if (n < 1e-8) { throw std::runtime_error("splitting_at: degenerate point, fundamental fields are dependent"); }
    out.push_back((1.0 / n) * r);
  }
  return out;
}

Eigen::MatrixXd coords(const BundleSpec & spec, const std::vector<Alg> & vs)
{
  return coordinate_matrix(spec.frame, vs);
}

template<typename... Lists>
std::vector<Alg> concat(const Lists &... lists)
{
  std::vector<Alg> out;
  (out.insert(out.end(), lists.begin(), lists.end()), ...);
  return out;
}

}  // namespace

GroupParam small_group_element(const BundleSpec & spec, const Quaterniond & q)
{
  return spec.action == Action::Hopf ? GroupParam{q, Quat::one()} : GroupParam{q, q};
}

FiberAlgebraElement small_algebra_element(const BundleSpec & spec, const Quaterniond & xi)
{
  return spec.action == Action::Hopf ? FiberAlgebraElement{xi.imag(), Quat{}} : FiberAlgebraElement{xi.imag(), xi.imag()};
}

GroupParam compose_params(const BundleSpec & spec, const GroupParam & g, const GroupParam & h)
{
  // Hopf multiplies by conjugates on the right, so the factors swap.
  if (spec.action == Action::Hopf) { return {h.first * g.first, h.second * g.second}; }
  return {g.first * h.first, g.second * h.second};
}

GroupPointd act(const BundleSpec & spec, const GroupPointd & Q, const GroupParam & g)
{
  require_unit(g.first, "first");
  require_unit(g.second, "second");
  const Mat & m = Q.matrix();
  if (spec.action == Action::Hopf) { return GroupPointd(m * Mat::diag(g.first.conj(), g.second.conj())); }
  const Quat lb = g.first.conj();
  return GroupPointd(Mat::diag(lb, lb) * m * Mat::diag(g.second, Quat::one()));
}

std::vector<FiberAlgebraElement> fiber_basis(const BundleSpec & spec, Fiber fiber)
{
  const std::array<Quat, 3> units{Quat::i(), Quat::j(), Quat::k()};
  std::vector<FiberAlgebraElement> out;
  if (fiber == Fiber::H) {
    for (const auto & e : units) { out.push_back({e, Quat{}}); }
    for (const auto & e : units) { out.push_back({Quat{}, e}); }
  } else {
    for (const auto & e : units) { out.push_back(small_algebra_element(spec, e)); }
  }
  return out;
}

AlgebraVectord fundamental_field(const BundleSpec & spec, const GroupPointd & Q, const FiberAlgebraElement & xi)
{
  const Quat a = xi.first.imag();
  const Quat b = xi.second.imag();
  if (spec.action == Action::Hopf) { return Alg::diag(-a, -b); }
  // d/dt diag(e^{-ta}, e^{-ta}) Q diag(e^{tb}, 1), left-trivialized
  const Mat & m = Q.matrix();
  return Alg(Mat::diag(b, Quat{}) - conj_transpose(m) * Mat::diag(a, a) * m);
}

AlgebraVectord fundamental_field_fd(const BundleSpec & spec,
                                    const GroupPointd & Q,
                                    const FiberAlgebraElement & xi,
                                    double h)
{
  const GroupParam plus{quat_exp_pure(h * xi.first.imag()), quat_exp_pure(h * xi.second.imag())};
  const GroupParam minus{quat_exp_pure(-h * xi.first.imag()), quat_exp_pure(-h * xi.second.imag())};
  const Mat diff = act(spec, Q, plus).matrix() - act(spec, Q, minus).matrix();
  return Alg::projectFrom((1.0 / (2.0 * h)) * (conj_transpose(Q.matrix()) * diff));
}

SpherePoint7::SpherePoint7(const Quaterniond & b_, const Quaterniond & d_) : b(b_), d(d_)
{
  if (std::abs(b.squaredNorm() + d.squaredNorm() - 1.0) > kTol) {
    throw std::invalid_argument("SpherePoint7: point is not on the unit sphere");
  }
}

Vector8 SpherePoint7::vector() const { return pair_vector(b, d); }

SpherePoint7 SpherePoint7::fromVector(const Vector8 & v) { return {quat_at(v, 0), quat_at(v, 1)}; }

SpherePoint4::SpherePoint4(const Quaterniond & q_, double x_) : q(q_), x(x_)
{
  if (std::abs(q.squaredNorm() + x * x - 1.0) > kTol) {
    throw std::invalid_argument("SpherePoint4: point is not on the unit sphere");
  }
}

Vector5 SpherePoint4::vector() const
{
  Vector5 v;
  v << q.vector(), x;
  return v;
}

SpherePoint7 pi_K(const GroupPointd & Q) { return {Q.matrix().b, Q.matrix().d}; }

SpherePoint4 pi_H(const GroupPointd & Q)
{
  const Mat & m = Q.matrix();
  const Quat q1 = 2.0 * (m.d * m.b.conj());
  const double x1 = m.b.squaredNorm() - m.d.squaredNorm();
  const Quat q2 = -2.0 * (m.c * m.a.conj());
  const double x2 = m.c.squaredNorm() - m.a.squaredNorm();
  const double mismatch = std::max((q1 - q2).norm(), std::abs(x1 - x2));
  if (mismatch > 1e-10) { throw std::runtime_error("pi_H: the two expressions disagree; GroupPoint is corrupted"); }
  return {q1, x1};
}

SpherePoint4 pi_hopf(const SpherePoint7 & n)
{
  return {2.0 * (n.d * n.b.conj()), n.b.squaredNorm() - n.d.squaredNorm()};
}

Vector8 push_pi_K(const GroupPointd & Q, const AlgebraVectord & u)
{
  const Mat v = Q.matrix() * u.matrix();
  return pair_vector(v.b, v.d);
}

Vector5 push_hopf(const SpherePoint7 & n, const Vector8 & v)
{
  const Quat db = quat_at(v, 0);
  const Quat dd = quat_at(v, 1);
  const Quat dq = 2.0 * (dd * n.b.conj() + n.d * db.conj());
  const double dx = 2.0 * dot(n.b, db) - 2.0 * dot(n.d, dd);
  Vector5 out;
  out << dq.vector(), dx;
  return out;
}

Vector8 right_mul(const Vector8 & x, const Quaterniond & e)
{
  return pair_vector(quat_at(x, 0) * e, quat_at(x, 1) * e);
}

Eigen::Matrix<double, 8, 3> hopf_fiber_directions(const Vector8 & x)
{
  const Vector8 n = x / x.norm();
  Eigen::Matrix<double, 8, 3> F;
  F << right_mul(n, Quat::i()), right_mul(n, Quat::j()), right_mul(n, Quat::k());
  return F;
}

Matrix8 hopf_horizontal_projector(const Vector8 & x)
{
  const Vector8 n = x / x.norm();
  const auto F    = hopf_fiber_directions(x);
  return Matrix8::Identity() - n * n.transpose() - F * F.transpose();
}

double metric_down(const SpherePoint7 & n, const Vector8 & v, const Vector8 & w)
{
  return v.dot(lower_down(n, w));
}

Vector8 lower_down(const SpherePoint7 & n, const Vector8 & v)
{
  const Vector8 x = n.vector();
  const auto F    = hopf_fiber_directions(x);
  return 2.0 * (hopf_horizontal_projector(x) * v) + F * (F.transpose() * v);
}

double metric_base(const Vector5 & a, const Vector5 & b) { return 0.5 * a.dot(b); }

std::vector<AlgebraVectord> orthonormal_complement(const std::vector<AlgebraVectord> & basis,
                                                   const std::vector<AlgebraVectord> & candidates,
                                                   int wanted)
{
  std::vector<Alg> span = basis;
  std::vector<Alg> residual;
  for (const auto & c : candidates) {
    Alg r = c;
    for (const auto & e : span) { r -= trace_inner(r, e) * e; }
    residual.push_back(r);
  }
  std::vector<Alg> out;
  for (int n = 0; n < wanted; ++n) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      const double rn = residual[i].norm();
      if (rn > best_norm + 1e-12) {
        best      = i;
        best_norm = rn;
      }
    }
    if (best_norm < 1e-6) { throw std::runtime_error("orthonormal_complement: candidates do not span the complement"); }
    Alg e = residual[best];
    for (const auto & s : span) { e -= trace_inner(e, s) * s; }
    e = (1.0 / e.norm()) * e;
    span.push_back(e);
    out.push_back(e);
    for (auto & r : residual) { r -= trace_inner(r, e) * e; }
  }
  return out;
}

TangentFrameAt splitting_at(const BundleSpec & spec, const GroupPointd & Q)
{
  auto fields = [&](Fiber f) {
    std::vector<Alg> vs;
    for (const auto & xi : fiber_basis(spec, f)) { vs.push_back(fundamental_field(spec, Q, xi)); }
    if (numerical_rank(coords(spec, vs)).rank != static_cast<int>(vs.size())) {
      throw std::runtime_error("splitting_at: degenerate point, fundamental fields are dependent");
    }
    return gram_schmidt(vs);
  };
  const std::vector<Alg> candidates(spec.frame.basis.begin(), spec.frame.basis.end());

  TangentFrameAt t;
  t.base         = Q;
  t.vertical_H   = fields(Fiber::H);
  t.horizontal_H = orthonormal_complement(t.vertical_H, candidates, 4);
  t.vertical_K   = fields(Fiber::K);
  t.horizontal_K = orthonormal_complement(t.vertical_K, candidates, 7);
  return t;
}

VerificationReport check_ehresmann(const BundleSpec & spec, const TangentFrameAt & frame)
{
  VerificationReport r;
  r.check_name = "ehresmann";
  r.point      = frame.base;

  const int rank_H = numerical_rank(coords(spec, concat(frame.vertical_H, frame.horizontal_H))).rank;
  const int rank_K = numerical_rank(coords(spec, concat(frame.vertical_K, frame.horizontal_K))).rank;

  int rank_down = 0;
  int rank_D    = 0;
  if (spec.action == Action::Hopf) {
    // D and ker d pi pushed to T S^7 in ambient coordinates
    auto push = [&](const std::vector<Alg> & vs) {
      Eigen::MatrixXd M(8, static_cast<Eigen::Index>(vs.size()));
      for (std::size_t i = 0; i < vs.size(); ++i) { M.col(static_cast<Eigen::Index>(i)) = push_pi_K(frame.base, vs[i]); }
      return M;
    };
    const Eigen::MatrixXd D = push(frame.horizontal_H);
    const Eigen::MatrixXd V = push(frame.vertical_H);
    Eigen::MatrixXd both(8, D.cols() + V.cols());
    both << D, V;
    rank_down = numerical_rank(both).rank;
    rank_D    = numerical_rank(D).rank;
  } else {
    // no ambient model of M/Delta: work in T_Q M modulo V_Delta
    const Eigen::MatrixXd VK = coords(spec, frame.vertical_K);
    const Eigen::MatrixXd Pq = Eigen::MatrixXd::Identity(10, 10) - VK * VK.transpose();
    const Eigen::MatrixXd D  = Pq * coords(spec, frame.horizontal_H);
    const Eigen::MatrixXd V  = Pq * coords(spec, frame.vertical_H);
    Eigen::MatrixXd both(10, D.cols() + V.cols());
    both << D, V;
    rank_down = numerical_rank(both).rank;
    rank_D    = numerical_rank(D).rank;
  }

  r.details["rank_VH_plus_DH"]   = rank_H;
  r.details["rank_VK_plus_DK"]   = rank_K;
  r.details["rank_D_plus_ker_dpi"] = rank_down;
  r.details["rank_D"]            = rank_D;
  r.details["bundle"]            = spec.name();
  r.pass = rank_H == 10 && rank_K == 10 && rank_down == 7 && rank_D == 4;
  return r;
}

VerificationReport check_ehresmann(const BundleSpec & spec, const GroupPointd & Q)
{
  return check_ehresmann(spec, splitting_at(spec, Q));
}

AlgebraVectord field_bracket(const VectorField & X, const VectorField & Y, const GroupPointd & Q, double h)
{
  const Alg x = X(Q);
  const Alg y = Y(Q);
  const Mat & m = Q.matrix();
  auto shifted = [&](const Alg & dir, double s) { return GroupPointd(m * mat_exp_raw((s * dir).matrix())); };
  const Alg dYX = (1.0 / (2.0 * h)) * (Y(shifted(x, h)) - Y(shifted(x, -h)));
  const Alg dXY = (1.0 / (2.0 * h)) * (X(shifted(y, h)) - X(shifted(y, -h)));
  return bracket(x, y) + dYX - dXY;
}

std::vector<AlgebraVectord> step2_distribution(const BundleSpec & spec, const GroupPointd & Q)
{
  const TangentFrameAt t = splitting_at(spec, Q);
  if (spec.action == Action::Hopf) { return t.horizontal_H; }
  // V_Delta lies in V_H, hence is orthogonal to D_H
  return concat(t.horizontal_H, t.vertical_K);
}

VerificationReport check_step2(const BundleSpec & spec, const GroupPointd & Q, const std::vector<int> & generators)
{
  std::vector<int> gens = generators;
  if (gens.empty()) {
    for (int a = 0; a < 10; ++a) { gens.push_back(a); }
  }

  std::vector<VectorField> fields;
  for (int a : gens) {
    const Alg e = spec.frame[a];
    fields.push_back([spec, e](const GroupPointd & P) {
      Alg out;
      for (const auto & f : step2_distribution(spec, P)) { out += trace_inner(e, f) * f; }
      return out;
    });
  }

  std::vector<Alg> span;
  for (const auto & X : fields) { span.push_back(X(Q)); }
  const int rank_dist = numerical_rank(coords(spec, span)).rank;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    for (std::size_t j = i + 1; j < fields.size(); ++j) { span.push_back(field_bracket(fields[i], fields[j], Q)); }
  }
  const auto info = numerical_rank(coords(spec, span));

  VerificationReport r;
  r.check_name                   = "step2";
  r.point                        = Q;
  r.details["bundle"]            = spec.name();
  r.details["generators"]        = static_cast<int>(gens.size());
  r.details["rank_distribution"] = rank_dist;
  r.details["rank_with_brackets"] = info.rank;
  r.pass                         = info.rank == 10;
  return r;
}

Eigen::MatrixXd bilinear_form(const BundleSpec & spec, Fiber fiber, const GroupPointd & Q)
{
  std::vector<Mat> ambient;
  for (const auto & xi : fiber_basis(spec, fiber)) {
    ambient.push_back(Q.matrix() * fundamental_field(spec, Q, xi).matrix());
  }
  const auto n = static_cast<Eigen::Index>(ambient.size());
  Eigen::MatrixXd G(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      G(i, j) = trace_inner(ambient[static_cast<std::size_t>(i)], ambient[static_cast<std::size_t>(j)]);
    }
  }
  return G;
}

Eigen::Matrix3d gm_bilinear_form(const GroupPointd & Q)
{
  return bilinear_form(BundleSpec::gromollMeyer(), Fiber::K, Q);
}

Quaterniond complex_pair_to_quaternion(std::complex<double> z1, std::complex<double> z2, ComplexStructure cs)
{
  // j (a + b i) = a j - b k,  (a + b i) j = a j + b k
  const double kz = cs == ComplexStructure::RightLinear ? -z2.imag() : z2.imag();
  return {z1.real(), z1.imag(), z2.real(), kz};
}

Eigen::Matrix4cd complex_line_projector(const Eigen::Vector4cd & z)
{
  const Eigen::Vector4cd u = z / z.norm();
  return u * u.adjoint();
}

SpherePoint4 twistor_projection(const Eigen::Matrix4cd & P)
{
  // J(v) = C conj(v), with (z1, z2) -> (-conj z2, conj z1) on each quaternion slot
  Eigen::Matrix4d C = Eigen::Matrix4d::Zero();
  C(0, 1) = -1;
  C(1, 0) = 1;
  C(2, 3) = -1;
  C(3, 2) = 1;
  const Eigen::Matrix4cd Pi = P - C.cast<std::complex<double>>() * P.conjugate() * C.cast<std::complex<double>>();

  // an H-linear 2x2 complex block [[a1, -conj a2], [a2, conj a1]] is left multiplication by a1 + j a2
  auto entry = [&](int r, int s) {
    return complex_pair_to_quaternion(Pi(2 * r, 2 * s), Pi(2 * r + 1, 2 * s), ComplexStructure::RightLinear);
  };
  // quaternionic projector [[b conj b, b conj d], [d conj b, d conj d]]
  const Quat q = 2.0 * entry(1, 0);
  const double x = entry(0, 0).real() - entry(1, 1).real();
  return {q, x};
}

VerificationReport twistor_check(const Eigen::Vector4cd & z, ComplexStructure cs)
{
  if (std::abs(z.norm() - 1.0) > 1e-10) { throw std::invalid_argument("twistor_check: z must be a unit vector"); }
  const SpherePoint4 via_twistor = twistor_projection(complex_line_projector(z));
  const SpherePoint7 n{complex_pair_to_quaternion(z(0), z(1), cs), complex_pair_to_quaternion(z(2), z(3), cs)};
  const SpherePoint4 via_hopf = pi_hopf(n);

  VerificationReport r;
  r.check_name             = "twistor";
  r.tolerance              = 1e-12;
  r.residuals["commutativity"] = (via_twistor.vector() - via_hopf.vector()).norm();
  r.details["complex_structure"] = cs == ComplexStructure::RightLinear ? "right-linear" : "left-linear";
  r.pass                   = r.residuals["commutativity"] <= r.tolerance;
  return r;
}

VerificationReport check_dpiK_isometry(const GroupPointd & Q)
{
  const auto spec       = BundleSpec::hopf();
  const SpherePoint7 n  = pi_K(Q);
  std::vector<Vector8> Y;
  for (int i = 0; i < 7; ++i) { Y.push_back(push_pi_K(Q, spec.frame[i])); }
  double worst = 0.0;
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(metric_down(n, Y[static_cast<std::size_t>(i)], Y[static_cast<std::size_t>(j)]) - target));
    }
  }
  VerificationReport r;
  r.check_name           = "dpiK-isometry";
  r.point                = Q;
  r.tolerance            = 1e-10;
  r.residuals["gram"]    = worst;
  r.pass                 = worst <= r.tolerance;
  return r;
}

VerificationReport check_submersion(const GroupPointd & Q, const std::vector<Eigen::Vector4d> & extra)
{
  const auto spec      = BundleSpec::hopf();
  const SpherePoint7 n = pi_K(Q);
  std::vector<Vector8> Y;
  for (int i = 0; i < 4; ++i) { Y.push_back(push_pi_K(Q, spec.frame[i])); }
  std::vector<Vector8> vs = Y;
  for (const auto & c : extra) {
    Vector8 v = Vector8::Zero();
    for (int i = 0; i < 4; ++i) { v += c(i) * Y[static_cast<std::size_t>(i)]; }
    vs.push_back(v);
  }

  double metric_gap = 0.0;
  for (const auto & v : vs) {
    for (const auto & w : vs) {
      metric_gap = std::max(metric_gap, std::abs(metric_down(n, v, w) - metric_base(push_hopf(n, v), push_hopf(n, w))));
    }
  }
  // fibers of pi are the Hopf fibers: d pi kills them
  const auto F = hopf_fiber_directions(n.vector());
  double kernel_gap = 0.0;
  for (int e = 0; e < 3; ++e) { kernel_gap = std::max(kernel_gap, push_hopf(n, F.col(e)).norm()); }

  VerificationReport r;
  r.check_name                  = "submersion";
  r.point                       = Q;
  r.tolerance                   = 1e-10;
  r.residuals["metric"]         = metric_gap;
  r.residuals["vertical_kernel"] = kernel_gap;
  r.pass                        = metric_gap <= r.tolerance && kernel_gap <= r.tolerance;
  return r;
}

}  // namespace nested

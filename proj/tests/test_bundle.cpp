#include <doctest.h>

#include "nested/bundle.hpp"
#include "nested/lie.hpp"
#include "nested/sampling.hpp"

using namespace nested;
using Q4 = Quaterniond;

namespace {

double dist(const QuatMat2d & A, const QuatMat2d & B) { return frobenius(A - B); }
double dist(const AlgebraVectord & u, const AlgebraVectord & v) { return (u - v).norm(); }

const QuatMat2d kJ{Q4{}, Q4::one(), -Q4::one(), Q4{}};

Eigen::MatrixXd gram(const std::vector<AlgebraVectord> & vs)
{
  const auto n = static_cast<Eigen::Index>(vs.size());
  Eigen::MatrixXd G(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) { G(i, j) = trace_inner(vs[std::size_t(i)], vs[std::size_t(j)]); }
  }
  return G;
}

GroupParam random_param(Sampler & s) { return {s.unit_quaternion(), s.unit_quaternion()}; }

}  // namespace

TEST_CASE("act examples")
{
  const GroupPointd I;
  CHECK(dist(act(BundleSpec::hopf(), I, {Q4::one(), Q4::one()}).matrix(), QuatMat2d::identity()) == 0.0);
  CHECK(dist(act(BundleSpec::hopf(), I, {Q4::i(), Q4::one()}).matrix(), QuatMat2d::diag(-Q4::i(), Q4::one())) < 1e-15);
  CHECK(dist(act(BundleSpec::gromollMeyer(), I, {Q4::j(), Q4::j()}).matrix(), QuatMat2d::diag(Q4::one(), -Q4::j()))
        < 1e-15);
  CHECK_THROWS_AS(act(BundleSpec::hopf(), I, {2.0 * Q4::one(), Q4::one()}), std::invalid_argument);
}

TEST_CASE("act composes as an action")
{
  Sampler s(20);
  for (const BundleSpec & spec : {BundleSpec::hopf(), BundleSpec::gromollMeyer()}) {
    for (int n = 0; n < 100; ++n) {
      const GroupPointd Q = s.group_point();
      const GroupParam g = random_param(s), h = random_param(s);
      CHECK(dist(act(spec, act(spec, Q, g), h).matrix(), act(spec, Q, compose_params(spec, g, h)).matrix()) <= 1e-12);
    }
  }
}

TEST_CASE("pi_K examples and K-invariance")
{
  const SpherePoint7 a = pi_K(GroupPointd{});
  CHECK(a.b.norm() == 0.0);
  CHECK((a.d - Q4::one()).norm() == 0.0);
  const SpherePoint7 b = pi_K(GroupPointd(kJ));
  CHECK((b.b - Q4::one()).norm() == 0.0);
  CHECK(b.d.norm() == 0.0);

  Sampler s(21);
  for (int n = 0; n < 100; ++n) {
    const GroupPointd Q = s.group_point();
    const GroupPointd R = act(BundleSpec::hopf(), Q, small_group_element(BundleSpec::hopf(), s.unit_quaternion()));
    CHECK((pi_K(R).vector() - pi_K(Q).vector()).norm() <= 1e-12);
  }
}

TEST_CASE("pi_H examples, H-invariance and the Hopf triangle")
{
  const SpherePoint4 a = pi_H(GroupPointd{});
  CHECK(a.q.norm() == 0.0);
  CHECK(a.x == -1.0);
  const SpherePoint4 b = pi_H(GroupPointd(kJ));
  CHECK(b.q.norm() == 0.0);
  CHECK(b.x == 1.0);

  CHECK(pi_hopf(SpherePoint7(Q4{}, Q4::one())).x == -1.0);
  CHECK(pi_hopf(SpherePoint7(Q4::one(), Q4{})).x == 1.0);

  Sampler s(22);
  for (int n = 0; n < 100; ++n) {
    const GroupPointd Q = s.group_point();
    CHECK((pi_hopf(pi_K(Q)).vector() - pi_H(Q).vector()).norm() <= 1e-12);
    CHECK((pi_H(act(BundleSpec::hopf(), Q, random_param(s))).vector() - pi_H(Q).vector()).norm() <= 1e-12);
  }
}

TEST_CASE("fundamental field examples")
{
  const GroupPointd I;
  const BundleSpec hopf = BundleSpec::hopf();
  CHECK(dist(fundamental_field(hopf, I, {Q4::i(), Q4{}}), AlgebraVectord::diag(-Q4::i(), Q4{})) == 0.0);
  CHECK(dist(fundamental_field(hopf, I, {Q4{}, Q4::j()}), AlgebraVectord::diag(Q4{}, -Q4::j())) == 0.0);
  CHECK(fundamental_field(hopf, I, {Q4{}, Q4{}}).norm() == 0.0);
  CHECK(fundamental_field(BundleSpec::gromollMeyer(), I, {Q4{}, Q4{}}).norm() == 0.0);
}

TEST_CASE("fundamental fields agree with finite differences")
{
  Sampler s(23);
  for (const BundleSpec & spec : {BundleSpec::hopf(), BundleSpec::gromollMeyer()}) {
    for (int n = 0; n < 20; ++n) {
      const GroupPointd Q = s.group_point();
      for (const Fiber f : {Fiber::H, Fiber::K}) {
        for (const auto & xi : fiber_basis(spec, f)) {
          CHECK(dist(fundamental_field(spec, Q, xi), fundamental_field_fd(spec, Q, xi)) <= 1e-8);
        }
      }
    }
  }
}

TEST_CASE("fundamental fields are tangent to the fibers")
{
  Sampler s(24);
  for (int n = 0; n < 20; ++n) {
    const GroupPointd Q = s.group_point();
    for (const auto & xi : fiber_basis(BundleSpec::hopf(), Fiber::K)) {
      CHECK(push_pi_K(Q, fundamental_field(BundleSpec::hopf(), Q, xi)).norm() <= 1e-14);
    }
  }
}

TEST_CASE("Hopf splitting at the identity")
{
  const TangentFrameAt F = splitting_at(BundleSpec::hopf(), GroupPointd{});
  REQUIRE(F.vertical_H.size() == 6);
  REQUIRE(F.horizontal_H.size() == 4);
  REQUIRE(F.vertical_K.size() == 3);
  REQUIRE(F.horizontal_K.size() == 7);
  for (const auto & v : F.vertical_H) { CHECK(project(v, complement(Subalgebra::H)).norm() <= 1e-15); }
  for (const auto & v : F.horizontal_H) { CHECK(project(v, Subalgebra::H).norm() <= 1e-15); }
}

TEST_CASE("splittings are orthonormal and left-invariant")
{
  Sampler s(25);
  for (const BundleSpec & spec : {BundleSpec::hopf(), BundleSpec::gromollMeyer()}) {
    for (int n = 0; n < 20; ++n) {
      const TangentFrameAt F = splitting_at(spec, s.group_point());
      for (const auto * part : {&F.vertical_H, &F.horizontal_H, &F.vertical_K, &F.horizontal_K}) {
        const Eigen::MatrixXd G = gram(*part);
        CHECK((G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() <= 1e-12);
      }
      for (const auto & h : F.horizontal_H) {
        for (const auto & v : F.vertical_H) { CHECK(std::abs(trace_inner(h, v)) <= 1e-12); }
      }
      if (spec.action == Action::Hopf) {
        for (const auto & h : F.horizontal_K) { CHECK(project(h, Subalgebra::K).norm() <= 1e-12); }
      }
    }
  }
}

TEST_CASE("Gromoll-Meyer splitting at the identity")
{
  const BundleSpec gm      = BundleSpec::gromollMeyer();
  const TangentFrameAt F   = splitting_at(gm, GroupPointd{});
  CHECK(F.vertical_K.size() == 3);
  CHECK(numerical_rank(coordinate_matrix(standard_frame<double>(), F.vertical_K)).rank == 3);
  for (const auto & xi : fiber_basis(gm, Fiber::K)) {
    const AlgebraVectord v = fundamental_field(gm, GroupPointd{}, xi);
    CHECK(dist(v, AlgebraVectord::diag(Q4{}, -xi.first)) <= 1e-15);
  }
}

TEST_CASE("Ehresmann ranks")
{
  for (const BundleSpec & spec : {BundleSpec::hopf(), BundleSpec::gromollMeyer()}) {
    const VerificationReport r = check_ehresmann(spec, GroupPointd{});
    CHECK(r.pass);
    CHECK(r.details.at("rank_VH_plus_DH") == 10);
    CHECK(r.details.at("rank_VK_plus_DK") == 10);

    TangentFrameAt F   = splitting_at(spec, GroupPointd{});
    F.horizontal_H[1]  = F.horizontal_H[0];
    const VerificationReport bad = check_ehresmann(spec, F);
    CHECK_FALSE(bad.pass);
    CHECK(bad.details.at("rank_VH_plus_DH") == 9);
  }
}

TEST_CASE("step-2 bracket generation")
{
  Sampler s(26);
  for (const BundleSpec & spec : {BundleSpec::hopf(), BundleSpec::gromollMeyer()}) {
    CHECK(check_step2(spec, GroupPointd{}).pass);
    const GroupPointd Q = s.group_point();
    const VerificationReport r = check_step2(spec, Q);
    CHECK(r.pass);
    CHECK(r.details.at("rank_with_brackets") == 10);
    CHECK_FALSE(check_step2(spec, Q, {0, 1}).pass);
  }
}

TEST_CASE("field bracket of left-invariant fields is the algebra bracket")
{
  Sampler s(27);
  const AlgebraVectord u = s.algebra(), v = s.algebra();
  const GroupPointd Q    = s.group_point();
  const VectorField X    = [&](const GroupPointd &) { return u; };
  const VectorField Y    = [&](const GroupPointd &) { return v; };
  CHECK(dist(field_bracket(X, Y, Q), bracket(u, v)) <= 1e-12);
}

TEST_CASE("bilinear forms")
{
  const GroupPointd I;
  const BundleSpec gm = BundleSpec::gromollMeyer();
  Eigen::Matrix3d G;
  const auto basis = fiber_basis(gm, Fiber::K);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      G(i, j) = trace_inner(fundamental_field(gm, I, basis[std::size_t(i)]), fundamental_field(gm, I, basis[std::size_t(j)]));
    }
  }
  CHECK((gm_bilinear_form(I) - G).cwiseAbs().maxCoeff() <= 1e-15);

  Sampler s(28);
  const Eigen::MatrixXd refH = bilinear_form(BundleSpec::hopf(), Fiber::H, I);
  for (int n = 0; n < 100; ++n) {
    const GroupPointd Q = s.group_point();
    CHECK((bilinear_form(BundleSpec::hopf(), Fiber::H, Q) - refH).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((gm_bilinear_form(Q) - bilinear_form(gm, Fiber::K, Q)).cwiseAbs().maxCoeff() <= 1e-12);
  }

  const GroupPointd P(QuatMat2d::diag(Q4::j(), Q4::one()));
  CHECK((gm_bilinear_form(P) - gm_bilinear_form(I)).norm() >= 0.1);
}

TEST_CASE("twistor examples")
{
  const Eigen::Vector4cd e1(1, 0, 0, 0), e3(0, 0, 1, 0);
  CHECK(twistor_projection(complex_line_projector(e1)).x == doctest::Approx(1.0));
  CHECK(twistor_projection(complex_line_projector(e3)).x == doctest::Approx(-1.0));
  CHECK(twistor_check(e1).pass);
  CHECK(twistor_check(e3).pass);

  Sampler s(29);
  for (int n = 0; n < 100; ++n) {
    const Eigen::Vector4cd z = s.unit_c4();
    CHECK(twistor_check(z).max_residual() <= 1e-12);
    const Eigen::Vector4cd w = z * std::polar(1.0, s.uniform(0, 6.28));
    CHECK((twistor_projection(complex_line_projector(w)).vector()
           - twistor_projection(complex_line_projector(z)).vector())
            .norm()
          <= 1e-12);
  }
  CHECK(twistor_check(s.unit_c4(), ComplexStructure::LeftLinear).max_residual() > 1e-3);
}

TEST_CASE("Riemannian submersion and d pi_K isometry")
{
  Sampler s(30);
  for (int n = 0; n < 100; ++n) {
    const GroupPointd Q = s.group_point();
    CHECK(check_dpiK_isometry(Q).pass);
    CHECK(check_submersion(Q, {s.gaussian<4>()}).pass);
  }
}

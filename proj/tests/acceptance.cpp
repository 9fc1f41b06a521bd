// One line per acceptance criterion; exit status 0 iff all pass.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nested/geodesics.hpp"
#include "nested/sampling.hpp"
#include "nested/suites.hpp"

using namespace nested;

namespace {

struct Outcome
{
  bool pass;
  std::string summary;
};

std::string fmt(const char * f, double a, double b = 0, double c = 0, double d = 0)
{
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c, d);
  return buf;
}

double max_over(const ReportSet & s, const std::string & check, const std::string & residual)
{
  double m = 0.0;
  for (const auto & r : s.reports) {
    if (r.check_name == check && r.residuals.count(residual)) { m = std::max(m, r.residuals.at(residual)); }
  }
  return m;
}

int count(const ReportSet & s, const std::string & check)
{
  int n = 0;
  for (const auto & r : s.reports) { n += r.check_name == check; }
  return n;
}

bool control_detected(const ReportSet & s, const std::string & suite)
{
  for (const auto & r : s.reports) {
    if (r.check_name == suite + ":negative-control") { return r.pass; }
  }
  return false;
}

ReportSet suite(const std::string & name, Action bundle = Action::Hopf)
{
  SuiteOptions o;
  o.bundle = bundle;
  return run_suite(name, o);
}

Outcome criterion_prop2()
{
  const ReportSet s = suite("prop2");
  double m = 0;
  for (const char * k : {"a", "b", "c", "c_DK"}) { m = std::max(m, max_over(s, "prop2", k)); }
  const double ctl = max_over(s, "prop2:negative-control", "a");
  return {s.pass() && m <= 1e-12 && ctl > 0.1 && count(s, "prop2") == 1000,
          fmt("max residual %.2e over %g samples; permuted control %.3f", m, count(s, "prop2"), ctl)};
}

Outcome criterion_sharp()
{
  const ReportSet s = suite("sharp-diagram");
  const double m    = max_over(s, "sharp-diagram", "commutator");
  return {s.pass() && m <= 1e-12 && count(s, "sharp-diagram") == 1000,
          fmt("max residual %.2e over %g samples", m, count(s, "sharp-diagram"))};
}

Outcome criterion_projected(const std::string & name)
{
  const ReportSet s = suite(name);
  const double m    = max_over(s, name, "sup_distance");
  const double ctl  = max_over(s, name + ":negative-control", "sup_distance");
  return {s.pass() && m <= 1e-6 && ctl > 1e-2 && count(s, name) == 20,
          fmt("max sup-distance %.2e over %g initial data; vertical control %.3f", m, count(s, name), ctl)};
}

Outcome criterion_lemma1()
{
  bool ok = true;
  int n   = 0;
  for (Action a : {Action::Hopf, Action::GromollMeyer}) {
    const ReportSet s = suite("lemma1", a);
    ok = ok && s.pass() && control_detected(s, "lemma1");
    n += count(s, "ehresmann");
  }
  return {ok && n == 200, fmt("rank checks at %g points over both bundles; duplicate-vector control detected", n)};
}

Outcome criterion_step2()
{
  bool ok = true;
  int n   = 0;
  for (Action a : {Action::Hopf, Action::GromollMeyer}) {
    const ReportSet s = suite("step2", a);
    ok = ok && s.pass() && control_detected(s, "step2");
    n += count(s, "step2");
  }
  return {ok && n == 40, fmt("rank 10 at %g points over both bundles; restricted-frame control detected", n)};
}

Outcome criterion_submersion()
{
  const ReportSet s = suite("submersion");
  const double m    = max_over(s, "submersion", "metric");
  return {s.pass() && m <= 1e-10 && count(s, "submersion") == 100,
          fmt("max metric residual %.2e over %g points", m, count(s, "submersion"))};
}

Outcome criterion_bilinear()
{
  const ReportSet h = suite("bilinear", Action::Hopf);
  const ReportSet g = suite("bilinear", Action::GromollMeyer);
  const double flat = max_over(h, "bilinear-constant", "difference");
  const double dep  = max_over(g, "bilinear-m-dependence", "difference");
  return {h.pass() && g.pass() && flat <= 1e-12 && dep >= 0.1,
          fmt("Hopf variation %.2e over %g points; Delta-form difference %.3f", flat, count(h, "bilinear-constant") / 2, dep)};
}

Outcome criterion_twistor()
{
  const ReportSet s = suite("twistor");
  const double m    = max_over(s, "twistor", "commutativity");
  return {s.pass() && m <= 1e-12 && count(s, "twistor") == 100,
          fmt("max residual %.2e over %g points", m, count(s, "twistor"))};
}

IntegratorConfig config(double step, Scheme scheme = Scheme::RK4Fixed)
{
  IntegratorConfig c;
  c.step   = step;
  c.scheme = scheme;
  return c;
}

Outcome criterion_integrators()
{
  Sampler s(2024);
  double energy = 0, constraint = 0, reverse = 0, order_lo = 10, order_hi = 0;
  for (int n = 0; n < 5; ++n) {
    const GroupPointd Q = s.group_point();
    for (HamiltonianKind k : {HamiltonianKind::HDH, HamiltonianKind::HDK, HamiltonianKind::HM}) {
      const UpTrace f = integrate_up(Q, Covector::up(Q, s.gaussian<10>()), k, config(1e-3));
      energy          = std::max(energy, f.energy_drift());
      constraint      = std::max(constraint, f.constraint_drift);
      const GroupPointd QT = f.points.back();
      const UpTrace b = integrate_up(QT, Covector::up(QT, -f.momenta.back()), k, config(1e-3));
      reverse         = std::max(reverse, frobenius(b.points.back().matrix() - Q.matrix()));
      const UpTrace h = integrate_up(Q, Covector::up(Q, s.gaussian<10>()), k, config(0.05, Scheme::RK4Halving));
      order_lo        = std::min(order_lo, *h.observed_order);
      order_hi        = std::max(order_hi, *h.observed_order);
    }
    for (HamiltonianKind k : {HamiltonianKind::HD, HamiltonianKind::HMK}) {
      const DownTrace f = integrate_down(pi_K(Q), s.down_covector(Q), k, config(1e-3));
      energy            = std::max(energy, f.energy_drift());
      constraint        = std::max(constraint, f.constraint_drift);
      const DownTrace b = integrate_down_ambient(f.points.back(), -f.momenta.back(), k, config(1e-3));
      reverse           = std::max(reverse, (b.points.back().vector() - pi_K(Q).vector()).norm());
      const DownTrace h = integrate_down(pi_K(Q), s.down_covector(Q), k, config(0.05, Scheme::RK4Halving));
      order_lo          = std::min(order_lo, *h.observed_order);
      order_hi          = std::max(order_hi, *h.observed_order);
    }
  }
  const bool ok = energy <= 1e-9 && constraint <= 1e-9 && reverse <= 1e-7 && order_lo >= 3.5 && order_hi <= 4.5;
  return {ok, fmt("energy %.2e, constraint %.2e, reversal %.2e, order in [%.2f, ", energy, constraint, reverse, order_lo)
                + fmt("%.2f]", order_hi)};
}

Outcome criterion_kernel()
{
  Sampler s(11);
  double norm = 0, ad = 0, ex = 0;
  for (int n = 0; n < 100000; ++n) {
    const Quaterniond p = s.quaternion(), q = s.quaternion();
    norm = std::max(norm, std::abs((p * q).norm() - p.norm() * q.norm()) / std::max(1.0, p.norm() * q.norm()));
  }
  for (int n = 0; n < 1000; ++n) {
    const GroupPointd Q    = s.group_point();
    const AlgebraVectord u = s.algebra(), v = s.algebra();
    ad = std::max(ad, std::abs(trace_inner(adjoint(Q, u), adjoint(Q, v)) - trace_inner(u, v)));

    const AlgebraVectord w = (1.0 / u.norm()) * u;
    QuatMat2d sum = QuatMat2d::identity(), term = QuatMat2d::identity();
    for (int k = 1; k < 40; ++k) {
      term = (1.0 / k) * (term * w.matrix());
      sum += term;
    }
    ex = std::max(ex, frobenius(mat_exp_raw(w.matrix()) - sum));
  }
  return {norm <= 1e-12 && ad <= 1e-12 && ex <= 1e-12,
          fmt("norm multiplicativity %.2e (1e5), Ad-isometry %.2e, exp vs series %.2e (1e3)", norm, ad, ex)};
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
    {"pullback Hamiltonian identities", criterion_prop2},
    {"sharp diagram", criterion_sharp},
    {"projected geodesics on S^7", [] { return criterion_projected("theorem1"); }},
    {"projected geodesics on S^4", [] { return criterion_projected("corollary"); }},
    {"Ehresmann connection ranks", criterion_lemma1},
    {"step-2 bracket generation", criterion_step2},
    {"Riemannian submersion", criterion_submersion},
    {"bilinear form behaviour", criterion_bilinear},
    {"twistor diagram", criterion_twistor},
    {"integrator health", criterion_integrators},
    {"algebra kernel", criterion_kernel},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception & e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2zu %s  %-34s %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.summary.c_str());
  }
  return failed == 0 ? 0 : 1;
}

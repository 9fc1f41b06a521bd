// nestedsr: frames, geodesics and verification suites for the nested bundles on Sp(2).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nested/bundle.hpp"
#include "nested/geodesics.hpp"
#include "nested/hamilton.hpp"
#include "nested/sampling.hpp"
#include "nested/serialize.hpp"
#include "nested/suites.hpp"

namespace {

using namespace nested;
using nlohmann::json;

constexpr int kOk          = 0;
constexpr int kCheckFailed = 1;
constexpr int kConfigError = 2;

struct ConfigError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

struct RunConfig
{
  std::string config_file;
  std::string bundle;
  std::string point = "identity";
  std::string suite;
  int samples = 0;
  std::uint64_t seed = 7;
  double step    = 1e-3;
  double horizon = 1.0;
  double tolerance = 0.0;
  std::vector<double> momentum;
  std::string side = "up";
  std::string kind;
  std::string scheme = "fixed";
  std::string out;
};

/// Fills every option the command line left unset from the JSON config file.
void merge_config_file(CLI::App & cmd, RunConfig & rc)
{
  if (rc.config_file.empty()) { return; }
  std::ifstream in(rc.config_file);
  if (!in) { throw ConfigError("cannot read config file " + rc.config_file); }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception & e) {
    throw ConfigError(std::string("config file: ") + e.what());
  }
  if (!j.is_object()) { throw ConfigError("config file must hold a JSON object"); }

  auto take = [&](const char * key, auto & field) {
    if (!j.contains(key)) { return; }
    CLI::Option * opt = cmd.get_option_no_throw(std::string("--") + key);
    if (opt != nullptr && opt->count() > 0) { return; }
    try {
      j.at(key).get_to(field);
    } catch (const json::exception & e) {
      throw ConfigError(std::string("config key ") + key + ": " + e.what());
    }
  };
  take("bundle", rc.bundle);
  take("point", rc.point);
  take("suite", rc.suite);
  take("samples", rc.samples);
  take("seed", rc.seed);
  take("step", rc.step);
  take("horizon", rc.horizon);
  take("tolerance", rc.tolerance);
  take("momentum", rc.momentum);
  take("side", rc.side);
  take("kind", rc.kind);
  take("scheme", rc.scheme);
  take("out", rc.out);
}

Action parse_bundle(const std::string & s)
{
  if (s == "hopf") { return Action::Hopf; }
  if (s == "gromoll-meyer") { return Action::GromollMeyer; }
  if (s.empty()) { throw ConfigError("--bundle is required (hopf or gromoll-meyer)"); }
  throw ConfigError("unknown bundle: " + s);
}

GroupPointd parse_point(const std::string & s)
{
  if (s == "identity") { return GroupPointd::identity(); }
  if (s.rfind("random:", 0) == 0) {
    try {
      return Sampler(std::stoull(s.substr(7))).group_point();
    } catch (const std::logic_error &) {
      throw ConfigError("bad random seed in --point " + s);
    }
  }
  std::vector<double> v;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      v.push_back(std::stod(tok));
    } catch (const std::logic_error &) {
      throw ConfigError("bad number in --point: " + tok);
    }
  }
  if (v.size() != 16) { throw ConfigError("--point takes identity, random:SEED or 16 comma-separated reals"); }
  Eigen::Matrix<double, 16, 1> r;
  for (int i = 0; i < 16; ++i) { r(i) = v[static_cast<std::size_t>(i)]; }
  try {
    return GroupPointd(QuatMat2d::fromRealVector(r));
  } catch (const std::invalid_argument & e) {
    throw ConfigError(std::string("--point: ") + e.what());
  }
}

IntegratorConfig integrator_of(const RunConfig & rc)
{
  IntegratorConfig cfg;
  cfg.step    = rc.step;
  cfg.horizon = rc.horizon;
  if (rc.scheme == "fixed") {
    cfg.scheme = Scheme::RK4Fixed;
  } else if (rc.scheme == "halving") {
    cfg.scheme = Scheme::RK4Halving;
  } else {
    throw ConfigError("--scheme must be fixed or halving");
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument & e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

/// Opens --out or falls back to stdout.
class Output
{
public:
  explicit Output(const std::string & path)
  {
    if (path.empty()) { return; }
    file_.open(path);
    if (!file_) { throw ConfigError("cannot write " + path); }
  }
  std::ostream & stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

json algebra_list(const std::vector<AlgebraVectord> & vs) { return to_json(vs); }

int cmd_frames(const RunConfig & rc)
{
  const Action action   = parse_bundle(rc.bundle);
  const BundleSpec spec = action == Action::Hopf ? BundleSpec::hopf() : BundleSpec::gromollMeyer();
  const GroupPointd Q   = parse_point(rc.point);
  const TangentFrameAt split = splitting_at(spec, Q);

  json j;
  j["bundle"]    = spec.name();
  j["point"]     = to_json(Q);
  j["partition"] = {FramedAlgebra<double>::kPartition[0], FramedAlgebra<double>::kPartition[1],
                    FramedAlgebra<double>::kPartition[2]};
  j["frame"]     = to_json(spec.frame);
  const std::string small = action == Action::Hopf ? "K" : "Delta";
  json s;
  s["vertical_H"]            = algebra_list(split.vertical_H);
  s["horizontal_H"]          = algebra_list(split.horizontal_H);
  s["vertical_" + small]     = algebra_list(split.vertical_K);
  s["horizontal_" + small]   = algebra_list(split.horizontal_K);
  j["splitting"]             = s;
  j["ranks"] = {{"vertical_H", split.vertical_H.size()},
                {"horizontal_H", split.horizontal_H.size()},
                {"vertical_" + small, split.vertical_K.size()},
                {"horizontal_" + small, split.horizontal_K.size()}};

  Output out(rc.out);
  out.stream() << j.dump(2) << '\n';
  return kOk;
}

HamiltonianKind parse_kind(const std::string & kind, Side side)
{
  if (side == Side::Up) {
    if (kind.empty() || kind == "hdh") { return HamiltonianKind::HDH; }
    if (kind == "hdk") { return HamiltonianKind::HDK; }
    if (kind == "hm") { return HamiltonianKind::HM; }
    throw ConfigError("upstairs --kind must be hdh, hdk or hm");
  }
  if (kind.empty() || kind == "hd") { return HamiltonianKind::HD; }
  if (kind == "hmk") { return HamiltonianKind::HMK; }
  throw ConfigError("downstairs --kind must be hd or hmk");
}

template<typename Trace>
int finish_geodesic(const RunConfig & rc, const Trace & trace, double tol)
{
  Output out(rc.out);
  write_csv(out.stream(), trace);
  const double energy = trace.energy_drift();
  std::cerr << "energy_drift=" << energy << " constraint_drift=" << trace.constraint_drift;
  if (trace.observed_order) { std::cerr << " observed_order=" << *trace.observed_order; }
  std::cerr << " tolerance=" << tol << '\n';
  return (energy <= tol && trace.constraint_drift <= tol) ? kOk : kCheckFailed;
}

int cmd_geodesic(const RunConfig & rc)
{
  const Action action = parse_bundle(rc.bundle.empty() ? "hopf" : rc.bundle);
  if (action != Action::Hopf) { throw ConfigError("geodesics unsupported for this bundle"); }
  if (rc.side != "up" && rc.side != "down") { throw ConfigError("--side must be up or down"); }
  const Side side           = rc.side == "up" ? Side::Up : Side::Down;
  const HamiltonianKind kind = parse_kind(rc.kind, side);
  const GroupPointd Q       = parse_point(rc.point);
  const IntegratorConfig cfg = integrator_of(rc);
  const double tol          = rc.tolerance > 0.0 ? rc.tolerance : 1e-9 * rc.horizon;

  const std::size_t want = side == Side::Up ? 10 : 7;
  std::vector<double> m  = rc.momentum;
  if (m.empty()) { m.assign(want, 0.0); }
  if (m.size() != want) {
    throw ConfigError("--momentum needs " + std::to_string(want) + " components for side " + rc.side);
  }
  const Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(m.data(), static_cast<Eigen::Index>(m.size()));

  try {
    if (side == Side::Up) {
      return finish_geodesic(rc, integrate_up(Q, Covector::up(Q, c), kind, cfg), tol);
    }
    return finish_geodesic(rc, integrate_down(pi_K(Q), Covector::down(Q, c), kind, cfg), tol);
  } catch (const IntegrationError & e) {
    std::cerr << e.what() << '\n';
    return kCheckFailed;
  }
}

int cmd_verify(const RunConfig & rc)
{
  if (rc.suite.empty()) { throw ConfigError("--suite is required"); }
  const auto & names = suite_names();
  if (std::find(names.begin(), names.end(), rc.suite) == names.end()) {
    throw ConfigError("unknown suite: " + rc.suite);
  }
  SuiteOptions opts;
  opts.bundle     = parse_bundle(rc.bundle.empty() ? "hopf" : rc.bundle);
  opts.seed       = rc.seed;
  opts.integrator = integrator_of(rc);
  if (rc.samples != 0) {
    if (rc.samples < 0) { throw ConfigError("--samples must be positive"); }
    opts.samples = rc.samples;
  }

  ReportSet set;
  try {
    set = run_suite(rc.suite, opts);
  } catch (const UnsupportedSuite & e) {
    throw ConfigError(e.what());
  } catch (const IntegrationError & e) {
    std::cerr << e.what() << '\n';
    return kCheckFailed;
  }
  Output out(rc.out);
  out.stream() << to_json(set).dump(2) << '\n';
  std::cerr << set.suite << ": " << set.reports.size() << " checks, " << (set.pass() ? "pass" : "FAIL") << '\n';
  return set.pass() ? kOk : kCheckFailed;
}

void add_common(CLI::App * cmd, RunConfig & rc)
{
  cmd->add_option("--config", rc.config_file, "JSON config file; flags override its keys");
  cmd->add_option("--bundle", rc.bundle, "hopf or gromoll-meyer");
  cmd->add_option("--out", rc.out, "output file (default: standard output)");
}

void add_integrator(CLI::App * cmd, RunConfig & rc)
{
  cmd->add_option("--step", rc.step, "integrator step");
  cmd->add_option("--horizon", rc.horizon, "time horizon");
  cmd->add_option("--scheme", rc.scheme, "fixed or halving");
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Sub-Riemannian geodesics on nested principal bundles over Sp(2)"};
  app.require_subcommand(1);
  RunConfig rc;

  CLI::App * frames = app.add_subcommand("frames", "standard frame and splitting at a point");
  add_common(frames, rc);
  frames->add_option("--point", rc.point, "identity, random:SEED or 16 comma-separated reals");

  CLI::App * geodesic = app.add_subcommand("geodesic", "integrate a normal geodesic and emit a CSV trace");
  add_common(geodesic, rc);
  add_integrator(geodesic, rc);
  geodesic->add_option("--point", rc.point, "initial point (downstairs: a lift of the base)");
  geodesic->add_option("--momentum", rc.momentum, "frame components, 10 upstairs or 7 downstairs")->delimiter(',');
  geodesic->add_option("--side", rc.side, "up or down");
  geodesic->add_option("--kind", rc.kind, "hdh, hdk, hm (up); hd, hmk (down)");
  geodesic->add_option("--tolerance", rc.tolerance, "drift tolerance (default 1e-9 * horizon)");

  CLI::App * verify = app.add_subcommand("verify", "run a verification suite and emit a JSON report");
  add_common(verify, rc);
  add_integrator(verify, rc);
  verify->add_option("--suite", rc.suite, "lemma1, submersion, prop2, sharp-diagram, pullback-symplectic, "
                                          "theorem1, corollary, step2, bilinear, twistor, all");
  verify->add_option("--samples", rc.samples, "sample count (default per suite)");
  verify->add_option("--seed", rc.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*frames) {
      merge_config_file(*frames, rc);
      return cmd_frames(rc);
    }
    if (*geodesic) {
      merge_config_file(*geodesic, rc);
      return cmd_geodesic(rc);
    }
    merge_config_file(*verify, rc);
    return cmd_verify(rc);
  } catch (const ConfigError & e) {
    std::cerr << "error: " << e.what() << '\n';
    if (std::string(e.what()).find("--bundle is required") != std::string::npos) {
      std::cerr << (*frames ? frames->help() : app.help());
    }
    return kConfigError;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

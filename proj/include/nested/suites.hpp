#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bundle.hpp"
#include "geodesics.hpp"
#include "report.hpp"

namespace nested {

/// Raised for suite/bundle combinations that have no meaning (e.g. theorem1 on Gromoll-Meyer).
class UnsupportedSuite : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteOptions
{
  Action bundle = Action::Hopf;
  /// Unset: the suite's default sample count.
  std::optional<int> samples;
  std::uint64_t seed = 7;
  IntegratorConfig integrator{};
};

/// lemma1, submersion, prop2, sharp-diagram, pullback-symplectic, theorem1,
/// corollary, step2, bilinear, twistor, all
const std::vector<std::string> & suite_names();

int default_samples(const std::string & suite);

/**
 * @brief Runs one named suite.
 *
 * Every suite also runs its negative control; a control report passes when
 * the control is detected as failing. "all" runs every suite, using both
 * bundles for lemma1, step2 and bilinear and ignoring `bundle`.
 *
 * Throws std::invalid_argument for unknown names and UnsupportedSuite for
 * Hopf-only suites requested on the Gromoll-Meyer bundle.
 */
ReportSet run_suite(const std::string & name, const SuiteOptions & opts);

}  // namespace nested

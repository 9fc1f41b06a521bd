#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "bundle.hpp"
#include "hamilton.hpp"
#include "quat.hpp"

namespace nested {

/**
 * @brief Seeded source of random test data.
 *
 * Engine is std::mt19937_64 seeded with the user seed; Gaussian draws use
 * std::normal_distribution<double>. Streams are reproducible for a fixed
 * standard library; pass/fail of the suites does not depend on the stream.
 */
class Sampler
{
public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  Quaterniond quaternion() { return {normal(), normal(), normal(), normal()}; }
  Quaterniond unit_quaternion()
  {
    const Quaterniond q = quaternion();
    return q / q.norm();
  }
  Quaterniond pure_quaternion() { return {0.0, normal(), normal(), normal()}; }

  template<int N>
  Eigen::Matrix<double, N, 1> gaussian()
  {
    Eigen::Matrix<double, N, 1> v;
    for (int i = 0; i < N; ++i) { v(i) = normal(); }
    return v;
  }

  /// Gaussian coordinates in the standard frame, times `scale`.
  AlgebraVectord algebra(double scale = 1.0)
  {
    return scale * standard_frame<double>().compose(gaussian<10>());
  }

  /// exp of a Gaussian algebra vector: spreads over the whole of Sp(2).
  GroupPointd group_point() { return mat_exp(algebra()); }

  /// Gaussian momentum downstairs at a random lift in the fiber of Q.
  Covector down_covector(const GroupPointd & Q)
  {
    const GroupPointd lift = act(BundleSpec::hopf(), Q, small_group_element(BundleSpec::hopf(), unit_quaternion()));
    return Covector::down(lift, gaussian<7>());
  }

  Eigen::Vector4cd unit_c4()
  {
    Eigen::Vector4cd z;
    for (int i = 0; i < 4; ++i) { z(i) = {normal(), normal()}; }
    return z / z.norm();
  }

  std::mt19937_64 & engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace nested

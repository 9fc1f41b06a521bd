#pragma once

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SVD>

#include "quat.hpp"

namespace nested {

/// Lie bracket [u, v] = uv - vu on sp(2).
template<typename S>
AlgebraVector<S> bracket(const AlgebraVector<S> & u, const AlgebraVector<S> & v)
{
  return AlgebraVector<S>(u.matrix() * v.matrix() - v.matrix() * u.matrix());
}

/**
 * @brief Subalgebras of sp(2) used by the bundle instances.
 *
 * H     = diag(Im H, Im H)         (dimension 6)
 * K     = diag(Im H, 0)            (dimension 3)
 * Delta = {diag(xi, xi)}           (dimension 3), the algebra of the diagonal
 *         subgroup {diag(l, l)} acting from the left in the Gromoll-Meyer action
 */
enum class Subalgebra { H, K, Delta };

constexpr int dimension(Subalgebra s) { return s == Subalgebra::H ? 6 : 3; }

/// A subalgebra or its trace-orthogonal complement.
struct Subspace
{
  Subalgebra algebra;
  bool complement = false;
};

constexpr Subspace complement(Subalgebra s) { return {s, true}; }

template<typename S>
AlgebraVector<S> project(const AlgebraVector<S> & u, Subspace sub)
{
  const auto & m = u.matrix();
  AlgebraVector<S> p;
  switch (sub.algebra) {
  case Subalgebra::H: p = AlgebraVector<S>::diag(m.a, m.d); break;
  case Subalgebra::K: p = AlgebraVector<S>::diag(m.a, Quaternion<S>{}); break;
  case Subalgebra::Delta: {
    const Quaternion<S> mean = S(0.5) * (m.a + m.d);
    p = AlgebraVector<S>::diag(mean, mean);
    break;
  }
  }
  return sub.complement ? u - p : p;
}

template<typename S>
AlgebraVector<S> project(const AlgebraVector<S> & u, Subalgebra sub)
{
  return project(u, Subspace{sub, false});
}

/**
 * @brief Ordered orthonormal basis of sp(2) with the bundle partition.
 *
 * Indices [0, 4) span h^perp (horizontal for pi_H), [4, 7) span
 * diag(0, Im H), and [7, 10) span k = diag(Im H, 0). Hence h is spanned
 * by [4, 10) and k^perp by [0, 7).
 */
template<typename _Scalar>
struct FramedAlgebra
{
  using Scalar      = _Scalar;
  using Coordinates = Eigen::Matrix<Scalar, 10, 1>;

  static constexpr int kDim      = 10;
  static constexpr int kRankDH   = 4;
  static constexpr int kRankDK   = 7;
  static constexpr std::array<int, 3> kPartition{4, 3, 3};

  std::array<AlgebraVector<Scalar>, kDim> basis;

  const AlgebraVector<Scalar> & operator[](int i) const { return basis[static_cast<std::size_t>(i)]; }

  Coordinates coordinates(const AlgebraVector<Scalar> & u) const
  {
    Coordinates c;
    for (int i = 0; i < kDim; ++i) { c(i) = trace_inner(u, (*this)[i]); }
    return c;
  }

  template<typename Derived>
  AlgebraVector<Scalar> compose(const Eigen::MatrixBase<Derived> & c) const
  {
    AlgebraVector<Scalar> u;
    for (int i = 0; i < c.size(); ++i) { u += c(i) * (*this)[i]; }
    return u;
  }

  Eigen::Matrix<Scalar, kDim, kDim> gram() const
  {
    Eigen::Matrix<Scalar, kDim, kDim> G;
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) { G(i, j) = trace_inner((*this)[i], (*this)[j]); }
    }
    return G;
  }
};

template<typename S>
FramedAlgebra<S> standard_frame()
{
  using Q      = Quaternion<S>;
  using V      = AlgebraVector<S>;
  const S r    = S(1) / std::sqrt(S(2));
  FramedAlgebra<S> f;
  f.basis = {
    r * V::offDiagonal(Q::one()),
    r * V::offDiagonal(Q::i()),
    r * V::offDiagonal(Q::j()),
    r * V::offDiagonal(Q::k()),
    V::diag(Q{}, Q::i()),
    V::diag(Q{}, Q::j()),
    V::diag(Q{}, Q::k()),
    V::diag(Q::i(), Q{}),
    V::diag(Q::j(), Q{}),
    V::diag(Q::k(), Q{}),
  };
  return f;
}

/// Result of a numerical rank decision.
template<typename S>
struct RankInfo
{
  int rank = 0;
  Eigen::Matrix<S, Eigen::Dynamic, 1> singular_values;
};

/// Singular values below kRelativeRankTol times the largest are treated as zero.
inline constexpr double kRelativeRankTol = 1e-8;

template<typename Derived>
RankInfo<typename Derived::Scalar> numerical_rank(const Eigen::MatrixBase<Derived> & A)
{
  using S = typename Derived::Scalar;
  RankInfo<S> info;
  if (A.size() == 0) { return info; }
  Eigen::JacobiSVD<Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>> svd(A);
  info.singular_values = svd.singularValues();
  const S smax         = info.singular_values.size() ? info.singular_values(0) : S(0);
  if (smax <= S(0)) { return info; }
  for (Eigen::Index i = 0; i < info.singular_values.size(); ++i) {
    if (info.singular_values(i) > S(kRelativeRankTol) * smax) { ++info.rank; }
  }
  return info;
}

/// Columns are the standard-frame coordinates of the given algebra vectors.
template<typename S>
Eigen::Matrix<S, 10, Eigen::Dynamic> coordinate_matrix(const FramedAlgebra<S> & frame,
                                                       const std::vector<AlgebraVector<S>> & vs)
{
  Eigen::Matrix<S, 10, Eigen::Dynamic> M(10, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) { M.col(static_cast<Eigen::Index>(i)) = frame.coordinates(vs[i]); }
  return M;
}

/// Rank of span(gens) + span([gens, gens]) in sp(2).
template<typename S>
RankInfo<S> bracket_closure_rank(const std::vector<AlgebraVector<S>> & gens)
{
  std::vector<AlgebraVector<S>> all = gens;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) { all.push_back(bracket(gens[i], gens[j])); }
  }
  return numerical_rank(coordinate_matrix(standard_frame<S>(), all));
}

}  // namespace nested

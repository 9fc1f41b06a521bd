#pragma once

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Core>

namespace nested {

/**
 * @brief Real quaternion w + x i + y j + z k.
 *
 * Components are stored over the basis (1, i, j, k) with the Hamilton
 * product convention i j = k, j k = i, k i = j.
 */
template<typename _Scalar>
struct Quaternion
{
  using Scalar = _Scalar;

  Scalar w{0}, x{0}, y{0}, z{0};

  constexpr Quaternion() = default;
  constexpr Quaternion(Scalar w_, Scalar x_, Scalar y_, Scalar z_) : w(w_), x(x_), y(y_), z(z_) {}
  // implicit from real scalar
  constexpr Quaternion(Scalar re) : w(re) {}

  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  static Quaternion fromVector(const Eigen::Matrix<Scalar, 4, 1> & v) { return {v(0), v(1), v(2), v(3)}; }
  Eigen::Matrix<Scalar, 4, 1> vector() const { return {w, x, y, z}; }

  Scalar real() const { return w; }
  Quaternion imag() const { return {0, x, y, z}; }
  Quaternion conj() const { return {w, -x, -y, -z}; }
  Scalar squaredNorm() const { return w * w + x * x + y * y + z * z; }
  Scalar norm() const { return std::sqrt(squaredNorm()); }

  Quaternion inverse() const
  {
    const Scalar n2 = squaredNorm();
    return {w / n2, -x / n2, -y / n2, -z / n2};
  }

  Quaternion & operator+=(const Quaternion & o)
  {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  Quaternion & operator-=(const Quaternion & o)
  {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  Quaternion & operator*=(Scalar s)
  {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
};

template<typename S>
Quaternion<S> operator+(Quaternion<S> p, const Quaternion<S> & q) { return p += q; }
template<typename S>
Quaternion<S> operator-(Quaternion<S> p, const Quaternion<S> & q) { return p -= q; }
template<typename S>
Quaternion<S> operator-(const Quaternion<S> & p) { return {-p.w, -p.x, -p.y, -p.z}; }
template<typename S>
Quaternion<S> operator*(Quaternion<S> p, S s) { return p *= s; }
template<typename S>
Quaternion<S> operator*(S s, Quaternion<S> p) { return p *= s; }
template<typename S>
Quaternion<S> operator/(Quaternion<S> p, S s) { return p *= (S(1) / s); }

/// Hamilton product.
template<typename S>
Quaternion<S> quat_mul(const Quaternion<S> & p, const Quaternion<S> & q)
{
  return {
    p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
    p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
    p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
    p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
  };
}

template<typename S>
Quaternion<S> operator*(const Quaternion<S> & p, const Quaternion<S> & q) { return quat_mul(p, q); }

/// Euclidean inner product on R^4, equal to Re(p conj(q)).
template<typename S>
S dot(const Quaternion<S> & p, const Quaternion<S> & q)
{
  return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
}

/// exp of a pure imaginary quaternion: cos|v| + sin|v| v/|v|.
template<typename S>
Quaternion<S> quat_exp_pure(const Quaternion<S> & v)
{
  const S th = v.imag().norm();
  if (th < S(1e-300)) { return Quaternion<S>::one(); }
  const S c = std::sin(th) / th;
  return {std::cos(th), c * v.x, c * v.y, c * v.z};
}

/**
 * @brief 2x2 quaternionic matrix, row-major entries
 *
 * [ a b ]
 * [ c d ]
 */
template<typename _Scalar>
struct QuatMat2
{
  using Scalar = _Scalar;
  using Quat   = Quaternion<Scalar>;
  /// Real coordinates: a, b, c, d, each as (w, x, y, z).
  using RealVector = Eigen::Matrix<Scalar, 16, 1>;

  Quat a, b, c, d;

  static QuatMat2 zero() { return {}; }
  static QuatMat2 identity() { return {Quat::one(), Quat{}, Quat{}, Quat::one()}; }
  static QuatMat2 diag(const Quat & p, const Quat & q) { return {p, Quat{}, Quat{}, q}; }

  const Quat & operator()(int r, int s) const { return r == 0 ? (s == 0 ? a : b) : (s == 0 ? c : d); }
  Quat & operator()(int r, int s) { return r == 0 ? (s == 0 ? a : b) : (s == 0 ? c : d); }

  RealVector realVector() const
  {
    RealVector v;
    v << a.vector(), b.vector(), c.vector(), d.vector();
    return v;
  }

  static QuatMat2 fromRealVector(const RealVector & v)
  {
    return {
      Quat::fromVector(v.template segment<4>(0)),
      Quat::fromVector(v.template segment<4>(4)),
      Quat::fromVector(v.template segment<4>(8)),
      Quat::fromVector(v.template segment<4>(12)),
    };
  }

  QuatMat2 & operator+=(const QuatMat2 & o)
  {
    a += o.a; b += o.b; c += o.c; d += o.d;
    return *this;
  }
  QuatMat2 & operator-=(const QuatMat2 & o)
  {
    a -= o.a; b -= o.b; c -= o.c; d -= o.d;
    return *this;
  }
  QuatMat2 & operator*=(Scalar s)
  {
    a *= s; b *= s; c *= s; d *= s;
    return *this;
  }
};

template<typename S>
QuatMat2<S> operator+(QuatMat2<S> A, const QuatMat2<S> & B) { return A += B; }
template<typename S>
QuatMat2<S> operator-(QuatMat2<S> A, const QuatMat2<S> & B) { return A -= B; }
template<typename S>
QuatMat2<S> operator-(const QuatMat2<S> & A) { return {-A.a, -A.b, -A.c, -A.d}; }
template<typename S>
QuatMat2<S> operator*(QuatMat2<S> A, S s) { return A *= s; }
template<typename S>
QuatMat2<S> operator*(S s, QuatMat2<S> A) { return A *= s; }

template<typename S>
QuatMat2<S> operator*(const QuatMat2<S> & A, const QuatMat2<S> & B)
{
  return {
    A.a * B.a + A.b * B.c,
    A.a * B.b + A.b * B.d,
    A.c * B.a + A.d * B.c,
    A.c * B.b + A.d * B.d,
  };
}

/// Transpose quaternion conjugate: (A*)_{rs} = conj(A_{sr}).
template<typename S>
QuatMat2<S> conj_transpose(const QuatMat2<S> & A)
{
  return {A.a.conj(), A.c.conj(), A.b.conj(), A.d.conj()};
}

template<typename S>
Quaternion<S> trace(const QuatMat2<S> & A)
{
  return A.a + A.d;
}

/// Re tr(u v*). Equals the Euclidean inner product of the 16 real coordinates.
template<typename S>
S trace_inner(const QuatMat2<S> & u, const QuatMat2<S> & v)
{
  return dot(u.a, v.a) + dot(u.b, v.b) + dot(u.c, v.c) + dot(u.d, v.d);
}

/// Frobenius norm induced by trace_inner.
template<typename S>
S frobenius(const QuatMat2<S> & u)
{
  return std::sqrt(trace_inner(u, u));
}

/// ||Q*Q - I||_F
template<typename S>
S unitarity_defect(const QuatMat2<S> & Q)
{
  return frobenius(conj_transpose(Q) * Q - QuatMat2<S>::identity());
}

/// ||u + u*||_F
template<typename S>
S skewness_defect(const QuatMat2<S> & u)
{
  return frobenius(u + conj_transpose(u));
}

/// Skew-Hermitian part (u - u*)/2, the orthogonal projection of M(2,H) onto sp(2).
template<typename S>
QuatMat2<S> skew_part(const QuatMat2<S> & u)
{
  return S(0.5) * (u - conj_transpose(u));
}

/**
 * @brief Element of the Lie algebra sp(2): a skew-Hermitian quaternionic 2x2 matrix.
 */
template<typename _Scalar>
class AlgebraVector
{
public:
  using Scalar = _Scalar;
  using Matrix = QuatMat2<Scalar>;

  AlgebraVector() = default;

  /// Takes the skew-Hermitian part of m; throws if m is far from skew-Hermitian.
  explicit AlgebraVector(const Matrix & m, Scalar tol = Scalar(1e-8))
  {
    if (skewness_defect(m) > tol * std::max(Scalar(1), frobenius(m))) {
      throw std::invalid_argument("AlgebraVector: matrix is not skew-Hermitian");
    }
    m_ = skew_part(m);
  }

  /// Orthogonal projection of an arbitrary matrix onto sp(2).
  static AlgebraVector projectFrom(const Matrix & m) { return AlgebraVector(skew_part(m), Scalar(1e-300), 0); }

  static AlgebraVector diag(const Quaternion<Scalar> & p, const Quaternion<Scalar> & q)
  {
    return AlgebraVector(Matrix::diag(p.imag(), q.imag()), 0, 0);
  }

  /// E(q) = [[0, q], [-conj(q), 0]]
  static AlgebraVector offDiagonal(const Quaternion<Scalar> & q)
  {
    return AlgebraVector(Matrix{Quaternion<Scalar>{}, q, -q.conj(), Quaternion<Scalar>{}}, 0, 0);
  }

  const Matrix & matrix() const { return m_; }
  Scalar norm() const { return frobenius(m_); }

  AlgebraVector & operator+=(const AlgebraVector & o)
  {
    m_ += o.m_;
    return *this;
  }
  AlgebraVector & operator-=(const AlgebraVector & o)
  {
    m_ -= o.m_;
    return *this;
  }
  AlgebraVector & operator*=(Scalar s)
  {
    m_ *= s;
    return *this;
  }

  friend AlgebraVector operator+(AlgebraVector u, const AlgebraVector & v) { return u += v; }
  friend AlgebraVector operator-(AlgebraVector u, const AlgebraVector & v) { return u -= v; }
  friend AlgebraVector operator-(const AlgebraVector & u) { return AlgebraVector(-u.m_, 0, 0); }
  friend AlgebraVector operator*(Scalar s, AlgebraVector u) { return u *= s; }
  friend AlgebraVector operator*(AlgebraVector u, Scalar s) { return u *= s; }

private:
  // unchecked
  AlgebraVector(const Matrix & m, Scalar, int) : m_(m) {}

  Matrix m_{};
};

template<typename S>
S trace_inner(const AlgebraVector<S> & u, const AlgebraVector<S> & v)
{
  return trace_inner(u.matrix(), v.matrix());
}

/// One Newton step toward the polar factor: Q <- Q (3I - Q*Q) / 2.
template<typename S>
QuatMat2<S> newton_polar_step(const QuatMat2<S> & Q)
{
  return S(0.5) * (Q * (S(3) * QuatMat2<S>::identity() - conj_transpose(Q) * Q));
}

/**
 * @brief Element of Sp(2), i.e. a quaternionic 2x2 matrix with Q*Q = I.
 *
 * Every construction re-unitarizes with Newton polar steps so that
 * ||Q*Q - I||_F <= kUnitarityTol holds for every live instance.
 */
template<typename _Scalar>
class GroupPoint
{
public:
  using Scalar = _Scalar;
  using Matrix = QuatMat2<Scalar>;

  static constexpr Scalar kUnitarityTol = Scalar(1e-9);
  /// Inputs further than this from Sp(2) are rejected instead of retracted.
  static constexpr Scalar kRetractableDefect = Scalar(0.5);

  GroupPoint() : m_(Matrix::identity()) {}

  explicit GroupPoint(const Matrix & m) : m_(m)
  {
    Scalar defect = unitarity_defect(m_);
    if (!(defect < kRetractableDefect)) {
      throw std::invalid_argument("GroupPoint: matrix is not close to Sp(2)");
    }
    // quadratic convergence: a handful of steps always suffices from defect < 0.5
    for (int it = 0; it < 8 && defect > Scalar(1e-15); ++it) {
      m_     = newton_polar_step(m_);
      defect = unitarity_defect(m_);
    }
    if (defect > kUnitarityTol) { throw std::runtime_error("GroupPoint: retraction failed to converge"); }
  }

  static GroupPoint identity() { return GroupPoint(); }

  const Matrix & matrix() const { return m_; }
  GroupPoint inverse() const { return GroupPoint(conj_transpose(m_)); }

  friend GroupPoint operator*(const GroupPoint & P, const GroupPoint & Q) { return GroupPoint(P.m_ * Q.m_); }

private:
  Matrix m_;
};

/// Ad_Q u = Q u Q*
template<typename S>
AlgebraVector<S> adjoint(const GroupPoint<S> & Q, const AlgebraVector<S> & u)
{
  return AlgebraVector<S>(Q.matrix() * u.matrix() * conj_transpose(Q.matrix()));
}

/**
 * @brief Matrix exponential of a 2x2 quaternionic matrix without retraction.
 *
 * Scaling and squaring: halve until the norm is below 1/2, sum the Taylor
 * series until the terms vanish in working precision, then square back.
 */
template<typename S>
QuatMat2<S> mat_exp_raw(const QuatMat2<S> & u)
{
  const S nrm = frobenius(u);
  int squarings = 0;
  if (nrm > S(0.5)) { squarings = static_cast<int>(std::ceil(std::log2(nrm / S(0.5)))); }
  const QuatMat2<S> A = std::ldexp(S(1), -squarings) * u;

  QuatMat2<S> sum  = QuatMat2<S>::identity();
  QuatMat2<S> term = QuatMat2<S>::identity();
  for (int n = 1; n < 40; ++n) {
    term = (S(1) / S(n)) * (term * A);
    sum += term;
    if (frobenius(term) <= std::numeric_limits<S>::epsilon() * S(1e-2)) { break; }
  }
  for (int s = 0; s < squarings; ++s) { sum = sum * sum; }
  return sum;
}

/// Group exponential sp(2) -> Sp(2).
template<typename S>
GroupPoint<S> mat_exp(const AlgebraVector<S> & u)
{
  return GroupPoint<S>(mat_exp_raw(u.matrix()));
}

using Quaterniond   = Quaternion<double>;
using QuatMat2d     = QuatMat2<double>;
using AlgebraVectord = AlgebraVector<double>;
using GroupPointd   = GroupPoint<double>;

}  // namespace nested

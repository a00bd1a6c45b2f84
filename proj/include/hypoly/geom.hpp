#pragma once

// Minkowski space R^{1,3} with signature (-,+,+,+), the hyperboloid model of
// H^3, de Sitter half-space normals and the Beltrami-Klein ball.  Everything
// here is a pure function on small fixed-size Eigen types.

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "hypoly/error.hpp"

namespace hypoly {

template <typename Scalar>
using MinkVec = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar>
using Isometry = Eigen::Matrix<Scalar, 4, 4>;

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

inline constexpr double kClampTol = 1e-9;

/// Point of the upper sheet <v,v> = -1, v0 > 0.
template <typename Scalar>
struct HPoint {
  MinkVec<Scalar> v;
};

/// Half-space {x : <x,u> <= 0} with outward unit spacelike normal u.
template <typename Scalar>
struct HalfSpace {
  MinkVec<Scalar> u;
};

/// Point of the open unit ball in the Klein model.
template <typename Scalar>
struct KleinPoint {
  Vec3<Scalar> y;
};

template <typename Scalar>
Isometry<Scalar> minkowski_metric() {
  return Eigen::Matrix<Scalar, 4, 1>(Scalar(-1), Scalar(1), Scalar(1), Scalar(1)).asDiagonal();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar mink_inner(const Eigen::MatrixBase<DerivedA>& a,
                                     const Eigen::MatrixBase<DerivedB>& b) {
  return -a(0) * b(0) + a(1) * b(1) + a(2) * b(2) + a(3) * b(3);
}

template <typename Derived>
typename Derived::Scalar mink_norm2(const Eigen::MatrixBase<Derived>& a) {
  return mink_inner(a, a);
}

/// Vector Minkowski-orthogonal to a, b and c, with <w,x> = det[x a b c].
template <typename Scalar>
MinkVec<Scalar> mink_cross(const MinkVec<Scalar>& a, const MinkVec<Scalar>& b,
                           const MinkVec<Scalar>& c) {
  Eigen::Matrix<Scalar, 4, 4> m;
  MinkVec<Scalar> cof;
  for (int i = 0; i < 4; ++i) {
    m.row(0).setZero();
    m(0, i) = Scalar(1);
    m.row(1) = a.transpose();
    m.row(2) = b.transpose();
    m.row(3) = c.transpose();
    cof(i) = m.determinant();
  }
  cof(0) = -cof(0);
  return cof;
}

template <typename Scalar>
HPoint<Scalar> hpoint_origin() {
  return {MinkVec<Scalar>(Scalar(1), Scalar(0), Scalar(0), Scalar(0))};
}

/// Rescales a timelike vector onto the upper sheet.  Throws NotCompact for
/// lightlike or spacelike input.
template <typename Scalar>
HPoint<Scalar> to_hpoint(const MinkVec<Scalar>& v) {
  const Scalar n2 = mink_norm2(v);
  if (!(n2 < Scalar(0))) throw Error(Errc::NotCompact, "vector is not timelike");
  MinkVec<Scalar> p = v / std::sqrt(-n2);
  if (p(0) < Scalar(0)) p = -p;
  return {p};
}

/// Rescales a spacelike vector to a unit de Sitter normal.
template <typename Scalar>
HalfSpace<Scalar> to_halfspace(const MinkVec<Scalar>& u) {
  const Scalar n2 = mink_norm2(u);
  if (!(n2 > Scalar(0))) throw Error(Errc::DivergentPlanes, "normal is not spacelike");
  return {u / std::sqrt(n2)};
}

/// Half-space whose Klein-model trace is {y : y.n <= d}.
template <typename Scalar>
HalfSpace<Scalar> halfspace_from_klein(const Vec3<Scalar>& n, Scalar d) {
  MinkVec<Scalar> u;
  u << d, n;
  return to_halfspace(u);
}

/// Interior dihedral angle between two faces, arccos(-<u1,u2>).
template <typename Scalar>
Scalar dihedral_angle(const HalfSpace<Scalar>& h1, const HalfSpace<Scalar>& h2) {
  const Scalar c = mink_inner(h1.u, h2.u);
  if (c < Scalar(-1) - Scalar(kClampTol) || c > Scalar(1) + Scalar(kClampTol))
    throw Error(Errc::DivergentPlanes, "boundary planes do not intersect in H^3");
  return std::acos(std::clamp(-c, Scalar(-1), Scalar(1)));
}

template <typename Scalar>
Scalar hyp_distance(const HPoint<Scalar>& p, const HPoint<Scalar>& q) {
  const Scalar c = -mink_inner(p.v, q.v);
  if (c <= Scalar(1)) return Scalar(0);
  // acosh loses half the digits near 1; use the chord length there.
  if (c < Scalar(1.5)) {
    const Scalar chord2 = mink_norm2(MinkVec<Scalar>(p.v - q.v));
    if (chord2 <= Scalar(0)) return Scalar(0);
    return Scalar(2) * std::asinh(std::sqrt(chord2) / Scalar(2));
  }
  return std::acosh(c);
}

template <typename Scalar>
KleinPoint<Scalar> klein_project(const HPoint<Scalar>& p) {
  return {p.v.template tail<3>() / p.v(0)};
}

template <typename Scalar>
HPoint<Scalar> klein_lift(const KleinPoint<Scalar>& k) {
  const Scalar r2 = k.y.squaredNorm();
  if (!(r2 < Scalar(1))) throw Error(Errc::NotCompact, "Klein point outside the open ball");
  const Scalar w = Scalar(1) / std::sqrt(Scalar(1) - r2);
  MinkVec<Scalar> v;
  v << w, w * k.y;
  return {v};
}

/// Euclidean signed distance, in the Klein ball, from y to the chord plane of
/// h; positive iff y lies in h.
template <typename Scalar>
Scalar signed_distance(const KleinPoint<Scalar>& k, const HalfSpace<Scalar>& h) {
  const Vec3<Scalar> n = h.u.template tail<3>();
  return (h.u(0) - n.dot(k.y)) / n.norm();
}

/// Residual of g^T eta g = eta (max abs entry).
template <typename Scalar>
Scalar isometry_residual(const Isometry<Scalar>& g) {
  const Isometry<Scalar> eta = minkowski_metric<Scalar>();
  return (g.transpose() * eta * g - eta).cwiseAbs().maxCoeff();
}

template <typename Scalar>
void require_isometry(const Isometry<Scalar>& g, Scalar tol = Scalar(1e-10)) {
  const Scalar scale = std::max(Scalar(1), g.cwiseAbs().maxCoeff());
  if (isometry_residual(g) > tol * scale * scale)
    throw Error(Errc::NotAnIsometry, "matrix does not preserve the Minkowski form");
  if (g(0, 0) < Scalar(0)) throw Error(Errc::NotAnIsometry, "matrix swaps the hyperboloid sheets");
}

template <typename Scalar>
HPoint<Scalar> apply_isometry(const Isometry<Scalar>& g, const HPoint<Scalar>& p) {
  require_isometry(g);
  return {g * p.v};
}

template <typename Scalar>
HalfSpace<Scalar> apply_isometry(const Isometry<Scalar>& g, const HalfSpace<Scalar>& h) {
  require_isometry(g);
  return {g * h.u};
}

/// Boost of rapidity s in the (x0, x_axis) plane; axis in {1,2,3}.
template <typename Scalar>
Isometry<Scalar> boost(int axis, Scalar s) {
  Isometry<Scalar> g = Isometry<Scalar>::Identity();
  g(0, 0) = std::cosh(s);
  g(axis, axis) = std::cosh(s);
  g(0, axis) = std::sinh(s);
  g(axis, 0) = std::sinh(s);
  return g;
}

/// Embeds a Euclidean orthogonal 3x3 matrix as an isometry fixing the origin.
template <typename Scalar>
Isometry<Scalar> rotation_isometry(const Eigen::Matrix<Scalar, 3, 3>& r) {
  Isometry<Scalar> g = Isometry<Scalar>::Identity();
  g.template bottomRightCorner<3, 3>() = r;
  return g;
}

/// The pure boost sending p to the origin (1,0,0,0).
template <typename Scalar>
Isometry<Scalar> translation_to_origin(const HPoint<Scalar>& p) {
  const Scalar p0 = p.v(0);
  const Vec3<Scalar> s = p.v.template tail<3>();
  Isometry<Scalar> g;
  g(0, 0) = p0;
  g.template block<1, 3>(0, 1) = -s.transpose();
  g.template block<3, 1>(1, 0) = -s;
  g.template bottomRightCorner<3, 3>() =
      Eigen::Matrix<Scalar, 3, 3>::Identity() + s * s.transpose() / (Scalar(1) + p0);
  return g;
}

/// Inverse of an O(1,3) element: eta g^T eta.
template <typename Scalar>
Isometry<Scalar> isometry_inverse(const Isometry<Scalar>& g) {
  const Isometry<Scalar> eta = minkowski_metric<Scalar>();
  return eta * g.transpose() * eta;
}

}  // namespace hypoly

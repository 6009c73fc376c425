#include <navskew/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace navskew {

namespace {

std::string fmt(double v) {
  return std::to_string(v);
}

} // namespace

double Vec3::norm() const {
  return std::sqrt(x * x + y * y + z * z);
}

CameraRig::CameraRig(double half_separation) : d(half_separation) {
  if (!(d > 0.0)) {
    throw std::invalid_argument("camera half-separation must be positive, got " + fmt(d));
  }
}

AngleSet2 AngleSet2::from_alphas(double alpha1, double alpha2) {
  constexpr double pi = std::numbers::pi;
  if (!(alpha1 > 0.0 && alpha1 < pi) || !(alpha2 > 0.0 && alpha2 < pi)) {
    throw DegenerateGeometry("sight-line angles must lie strictly between 0 and pi, got alpha1=" +
                             fmt(alpha1) + " alpha2=" + fmt(alpha2));
  }
  constexpr double half_pi = pi / 2.0;
  return {alpha1, half_pi - alpha1, alpha2, half_pi - alpha2};
}

double AngleSet3::cosine_residual() const {
  const auto residual = [](double a, double b, double g) {
    const double ca = std::cos(a), cb = std::cos(b), cg = std::cos(g);
    return std::abs(ca * ca + cb * cb + cg * cg - 1.0);
  };
  return std::max(residual(alpha1, beta1, gamma1), residual(alpha2, beta2, gamma2));
}

AngleSet2 angles_from_point_2d(const CameraRig& rig, const Point2& p) {
  if (!(p.y > 0.0)) {
    throw DegenerateGeometry("marker must be strictly in front of the baseline (y > 0), got y=" +
                             fmt(p.y));
  }
  // atan2 keeps obtuse angles (marker left of a camera) in (pi/2, pi),
  // where a plain arctan of y/(x+d) would flip sign.
  const double alpha1 = std::atan2(p.y, p.x + rig.d);
  const double alpha2 = std::atan2(p.y, p.x - rig.d);
  return AngleSet2::from_alphas(alpha1, alpha2);
}

Point2 point_from_angles_2d(const CameraRig& rig, const AngleSet2& a) {
  // Intersection of the two sight lines, written with cotangents: the
  // tan-form y = 2d tan(a1) tan(a2) / (tan(a2) - tan(a1)) divided through
  // by tan(a1) tan(a2).  This arrangement survives alpha = pi/2 (a marker
  // directly above a camera), where the tangents blow up.
  const double cot1 = std::cos(a.alpha1) / std::sin(a.alpha1);
  const double cot2 = std::cos(a.alpha2) / std::sin(a.alpha2);
  const double denom = cot1 - cot2;
  if (!(std::abs(denom) >= kParallelRayTolerance)) {
    throw ParallelRays("sight lines are parallel: cot(alpha1) - cot(alpha2) = " + fmt(denom));
  }
  const double y = 2.0 * rig.d / denom;
  if (!(y > 0.0)) {
    throw BehindBaseline("sight lines meet behind the baseline at y=" + fmt(y));
  }
  return {y * cot1 - rig.d, y};
}

AngleSet3 angles_from_point_3d(const CameraRig& rig, const Point3& p) {
  if (!(p.y > 0.0)) {
    throw DegenerateGeometry("marker must be strictly in front of the baseline (y > 0), got y=" +
                             fmt(p.y));
  }
  const double r1 = std::sqrt((p.x + rig.d) * (p.x + rig.d) + p.y * p.y + p.z * p.z);
  const double r2 = std::sqrt((p.x - rig.d) * (p.x - rig.d) + p.y * p.y + p.z * p.z);
  if (r1 == 0.0 || r2 == 0.0) {
    throw DegenerateGeometry("marker coincides with a camera position");
  }
  // Ratios can stray a final-bit outside [-1, 1] when one coordinate
  // dominates; clamp so acos never sees an out-of-domain value.
  const auto angle = [](double component, double r) {
    return std::acos(std::clamp(component / r, -1.0, 1.0));
  };
  return {angle(p.x + rig.d, r1), angle(p.y, r1), angle(p.z, r1),
          angle(p.x - rig.d, r2), angle(p.y, r2), angle(p.z, r2)};
}

Point3 point_from_angles_3d(const CameraRig& rig, const AngleSet3& a) {
  const double ca1 = std::cos(a.alpha1), cb1 = std::cos(a.beta1), cg1 = std::cos(a.gamma1);
  const double ca2 = std::cos(a.alpha2), cb2 = std::cos(a.beta2), cg2 = std::cos(a.gamma2);

  // The six direction cosines overdetermine (x,y,z); when the two angle
  // sets were not produced by one physical point the equations disagree,
  // and this routine resolves the redundancy by construction: y from the
  // beta/alpha pair, z from the gamma/alpha pair, x from camera 1's range
  // r1 = y/cos(beta1).  No least-squares blending.
  const double y_denom = cb2 * ca1 - cb1 * ca2;
  if (!(std::abs(y_denom) >= kParallelRayTolerance)) {
    throw ParallelRays("sight lines are parallel: y denominator = " + fmt(y_denom));
  }
  const double y = 2.0 * rig.d * cb1 * cb2 / y_denom;
  if (!(y > 0.0)) {
    throw BehindBaseline("sight lines meet behind the baseline at y=" + fmt(y));
  }

  const double z = 2.0 * rig.d * cg1 * cg2 / (cg2 * ca1 - cg1 * ca2);
  // For markers near the z = 0 plane both gamma cosines are ~0 and the z
  // formula approaches 0/0; it still evaluates finitely except when the
  // denominator underflows to exactly zero.
  if (!std::isfinite(z)) {
    throw ParallelRays("z denominator vanished for near-parallel sight lines");
  }

  const double x = (y / cb1) * ca1 - rig.d;
  return {x, y, z};
}

} // namespace navskew

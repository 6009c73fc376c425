#include <navskew/timing.hpp>

#include <cmath>
#include <stdexcept>

namespace navskew {

double Displacement::magnitude() const {
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Displacement displacement_from_motion(const MotionSpec& motion) {
  if (!(motion.timing_skew >= 0.0)) {
    throw std::invalid_argument("timing skew must be non-negative seconds");
  }
  return {motion.velocity.x * motion.timing_skew,
          motion.velocity.y * motion.timing_skew,
          motion.velocity.z * motion.timing_skew};
}

Point2 reconstruct_with_error_2d(const CameraRig& rig, const Point2& p,
                                 const Displacement& disp) {
  if (disp.dz != 0.0) {
    throw std::invalid_argument("planar reconstruction requires dz = 0");
  }
  const AngleSet2 at_exposure1 = angles_from_point_2d(rig, p);
  const AngleSet2 at_exposure2 =
      angles_from_point_2d(rig, {p.x + disp.dx, p.y + disp.dy});
  // Camera 1 saw the marker at p, camera 2 at p + disp; triangulate the
  // mixed observation exactly as the rig would.
  return point_from_angles_2d(
      rig, AngleSet2::from_alphas(at_exposure1.alpha1, at_exposure2.alpha2));
}

Point3 reconstruct_with_error_3d(const CameraRig& rig, const Point3& p,
                                 const Displacement& disp) {
  const AngleSet3 at_exposure1 = angles_from_point_3d(rig, p);
  const AngleSet3 at_exposure2 =
      angles_from_point_3d(rig, {p.x + disp.dx, p.y + disp.dy, p.z + disp.dz});
  const AngleSet3 mixed{at_exposure1.alpha1, at_exposure1.beta1, at_exposure1.gamma1,
                        at_exposure2.alpha2, at_exposure2.beta2, at_exposure2.gamma2};
  return point_from_angles_3d(rig, mixed);
}

ApproxError approx_error_2d(const CameraRig& rig, const Point2& p,
                            const Displacement& disp) {
  if (!(p.y > 0.0)) {
    throw std::invalid_argument("approximation requires y > 0");
  }
  // First order in the displacement, measured from the base point:
  //   ey ~ (d*dy - x*dy + y*dx) / (2d)
  //   ex ~ ((x+d)/y) * ey
  const double k = (-p.x * disp.dy + rig.d * disp.dy + p.y * disp.dx) / (2.0 * rig.d);
  const double ex = (p.x + rig.d) / p.y * k;
  const double ey = k;
  return {ex, ey, 0.0, std::sqrt(ex * ex + ey * ey)};
}

ApproxError approx_error_3d(const CameraRig& rig, const Point3& p,
                            const Displacement& disp) {
  if (!(p.y > 0.0)) {
    throw std::invalid_argument("approximation requires y > 0");
  }
  const double k = (-p.x * disp.dy + rig.d * disp.dy + p.y * disp.dx) / (2.0 * rig.d);
  const double ex = (p.x + rig.d) / p.y * k;
  const double ey = k;
  // The z error keeps the same structure with gamma in place of beta:
  //   ez ~ (d*dz - x*dz + z*dx) / (2d)
  const double ez = (rig.d * disp.dz - p.x * disp.dz + p.z * disp.dx) / (2.0 * rig.d);
  return {ex, ey, ez, std::sqrt(ex * ex + ey * ey + ez * ez)};
}

namespace {

ErrorReport assemble_report(const Point3& base, const Point3& displaced,
                            const Point3& reconstructed, const ApproxError& approx,
                            ReferenceConvention convention, bool planar) {
  ErrorReport report;
  report.true_point = base;
  report.displaced_point = displaced;
  report.reconstructed_point = reconstructed;
  report.reference_point =
      convention == ReferenceConvention::Midpoint
          ? Point3{(base.x + displaced.x) / 2.0, (base.y + displaced.y) / 2.0,
                   (base.z + displaced.z) / 2.0}
          : base;
  report.error_vector = {reconstructed.x - report.reference_point.x,
                         reconstructed.y - report.reference_point.y,
                         reconstructed.z - report.reference_point.z};
  report.error_magnitude = report.error_vector.norm();
  report.approx_error_vector = {approx.ex, approx.ey, approx.ez};
  report.approx_error_magnitude = approx.magnitude;
  report.convention = convention;
  report.planar = planar;
  return report;
}

} // namespace

ErrorReport localization_error_2d(const CameraRig& rig, const Point2& p,
                                  const Displacement& disp,
                                  ReferenceConvention convention) {
  const Point2 reconstructed = reconstruct_with_error_2d(rig, p, disp);
  const ApproxError approx = approx_error_2d(rig, p, disp);
  return assemble_report({p.x, p.y, 0.0}, {p.x + disp.dx, p.y + disp.dy, 0.0},
                         {reconstructed.x, reconstructed.y, 0.0}, approx,
                         convention, true);
}

ErrorReport localization_error_3d(const CameraRig& rig, const Point3& p,
                                  const Displacement& disp,
                                  ReferenceConvention convention) {
  const Point3 reconstructed = reconstruct_with_error_3d(rig, p, disp);
  const ApproxError approx = approx_error_3d(rig, p, disp);
  return assemble_report(p, {p.x + disp.dx, p.y + disp.dy, p.z + disp.dz},
                         reconstructed, approx, convention, false);
}

SkewLineGap skew_line_gap_3d(const CameraRig& rig, const AngleSet3& at_camera1,
                             const AngleSet3& at_camera2) {
  // Standard closest-approach construction between the two camera rays.
  // Ray 1 leaves camera 1 with camera 1's direction cosines from
  // `at_camera1`; ray 2 leaves camera 2 with camera 2's cosines from
  // `at_camera2`.
  const Vec3 origin1{-rig.d, 0.0, 0.0};
  const Vec3 origin2{+rig.d, 0.0, 0.0};
  const Vec3 u{std::cos(at_camera1.alpha1), std::cos(at_camera1.beta1),
               std::cos(at_camera1.gamma1)};
  const Vec3 v{std::cos(at_camera2.alpha2), std::cos(at_camera2.beta2),
               std::cos(at_camera2.gamma2)};
  const Vec3 w{origin1.x - origin2.x, origin1.y - origin2.y, origin1.z - origin2.z};

  const double a = u.x * u.x + u.y * u.y + u.z * u.z;
  const double b = u.x * v.x + u.y * v.y + u.z * v.z;
  const double c = v.x * v.x + v.y * v.y + v.z * v.z;
  const double d = u.x * w.x + u.y * w.y + u.z * w.z;
  const double e = v.x * w.x + v.y * w.y + v.z * w.z;

  const double denom = a * c - b * b; // ~ sin^2 of the angle between rays
  if (!(std::abs(denom) >= kParallelRayTolerance)) {
    throw ParallelRays("sight lines are parallel; no unique closest approach");
  }
  const double s = (b * e - c * d) / denom; // parameter along ray 1
  const double t = (a * e - b * d) / denom; // parameter along ray 2

  const Vec3 p1{origin1.x + s * u.x, origin1.y + s * u.y, origin1.z + s * u.z};
  const Vec3 p2{origin2.x + t * v.x, origin2.y + t * v.y, origin2.z + t * v.z};
  const Vec3 diff{p1.x - p2.x, p1.y - p2.y, p1.z - p2.z};

  SkewLineGap result;
  result.gap = diff.norm();
  result.midpoint = {(p1.x + p2.x) / 2.0, (p1.y + p2.y) / 2.0, (p1.z + p2.z) / 2.0};
  return result;
}

} // namespace navskew

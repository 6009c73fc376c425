#pragma once

#include <navskew/geometry.hpp>

namespace navskew {

/// Apparent marker displacement between the two exposures, in cm.
/// This is what a timing skew dt turns into for a marker moving at
/// constant velocity: disp = velocity * dt.
struct Displacement {
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;

  double magnitude() const;
};

/// Marker velocity (cm/s) together with the inter-camera timing skew (s).
struct MotionSpec {
  Vec3 velocity;
  double timing_skew = 0.0;
};

/// Which point the reconstruction error is measured against.
///
/// The marker moves while the cameras disagree about exposure time, so
/// there is no single "true" position.  BasePoint measures against the
/// position at camera 1's exposure (the natural choice for analytic work);
/// Midpoint measures against the midpoint of the two exposure positions
/// (the natural choice when quoting a representative error for a moving
/// marker, and the convention used by the stock simulations here).
enum class ReferenceConvention {
  BasePoint,
  Midpoint,
};

/// First-order (in the displacement) prediction of the reconstruction
/// error, always measured against the base point.
struct ApproxError {
  double ex = 0.0;
  double ey = 0.0;
  double ez = 0.0;
  double magnitude = 0.0;
};

/// Everything one timing-error evaluation produces.  Planar runs store
/// z = 0 in every point and 0 in every z component.
struct ErrorReport {
  Point3 true_point;          // marker at camera 1's exposure
  Point3 displaced_point;     // marker at camera 2's exposure
  Point3 reconstructed_point; // what triangulation returns
  Point3 reference_point;     // point the error is measured against
  Vec3 error_vector;          // reconstructed - reference
  double error_magnitude = 0.0;
  Vec3 approx_error_vector;   // first-order prediction (base-point frame)
  double approx_error_magnitude = 0.0;
  ReferenceConvention convention = ReferenceConvention::Midpoint;
  bool planar = true;
};

/// disp = velocity * timing_skew.  Throws std::invalid_argument for a
/// negative skew.
Displacement displacement_from_motion(const MotionSpec& motion);

/// Triangulates with camera 1 sighting the marker at p and camera 2
/// sighting it at p + disp.  disp.dz must be 0 in the planar case.
Point2 reconstruct_with_error_2d(const CameraRig& rig, const Point2& p,
                                 const Displacement& disp);
Point3 reconstruct_with_error_3d(const CameraRig& rig, const Point3& p,
                                 const Displacement& disp);

/// First-order reconstruction-error prediction at p for a small disp.
/// Requires p.y > 0.  The planar form leaves ez = 0.
ApproxError approx_error_2d(const CameraRig& rig, const Point2& p,
                            const Displacement& disp);
ApproxError approx_error_3d(const CameraRig& rig, const Point3& p,
                            const Displacement& disp);

/// Full evaluation: reconstructs, measures the exact error against the
/// chosen reference, and attaches the first-order prediction.
ErrorReport localization_error_2d(const CameraRig& rig, const Point2& p,
                                  const Displacement& disp,
                                  ReferenceConvention convention);
ErrorReport localization_error_3d(const CameraRig& rig, const Point3& p,
                                  const Displacement& disp,
                                  ReferenceConvention convention);

/// Shortest gap between the two sight lines when each camera uses its own
/// angle set (camera 1 from `at_camera1`, camera 2 from `at_camera2`), and
/// the midpoint of the connecting segment.  In the presence of a timing
/// error the rays are generally skew, and this midpoint is a reasonable
/// single-point reconstruction.
struct SkewLineGap {
  double gap = 0.0;
  Point3 midpoint;
};
SkewLineGap skew_line_gap_3d(const CameraRig& rig, const AngleSet3& at_camera1,
                             const AngleSet3& at_camera2);

} // namespace navskew

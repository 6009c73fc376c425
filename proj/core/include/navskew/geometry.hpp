#pragma once

#include <navskew/errors.hpp>

namespace navskew {

// Rays whose direction cotangents differ by less than this are treated as
// parallel by the triangulation routines.
inline constexpr double kParallelRayTolerance = 1e-12;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Two identical cameras on the X axis at (-d, 0, 0) and (+d, 0, 0), where
/// d is half the baseline separation.  The working volume lies at y > 0;
/// Z completes a right-handed frame.  All lengths are centimetres.
struct CameraRig {
  explicit CameraRig(double half_separation);

  /// Half the camera separation, strictly positive.
  double d;
};

/// Planar sight-line directions.  alphaN is the angle at camera N between
/// the +X axis and the ray to the marker, in (0, pi) for any marker with
/// y > 0.  betaN = pi/2 - alphaN is the same ray measured from the +Y axis
/// and is kept alongside alpha for convenience.
struct AngleSet2 {
  double alpha1 = 0.0;
  double beta1 = 0.0;
  double alpha2 = 0.0;
  double beta2 = 0.0;

  /// Builds the set from the two alpha angles, deriving the betas.
  /// Throws DegenerateGeometry unless both alphas lie in (0, pi).
  static AngleSet2 from_alphas(double alpha1, double alpha2);
};

/// Spatial sight-line direction angles: alphaN, betaN, gammaN are the angles
/// between the ray from camera N and the +X, +Y, +Z axes.  Their cosines are
/// the components of the unit ray direction, so
/// cos^2(alpha) + cos^2(beta) + cos^2(gamma) = 1 for each camera.
struct AngleSet3 {
  double alpha1 = 0.0;
  double beta1 = 0.0;
  double gamma1 = 0.0;
  double alpha2 = 0.0;
  double beta2 = 0.0;
  double gamma2 = 0.0;

  /// Largest deviation of cos^2(alpha)+cos^2(beta)+cos^2(gamma) from 1
  /// across the two cameras.  Valid direction angles give ~0.
  double cosine_residual() const;
};

/// Angles each camera reports for a marker at p.  Requires p.y > 0.
AngleSet2 angles_from_point_2d(const CameraRig& rig, const Point2& p);

/// Intersects the two planar sight lines.  Throws ParallelRays when the
/// lines never meet and BehindBaseline when they meet at y <= 0.
Point2 point_from_angles_2d(const CameraRig& rig, const AngleSet2& a);

/// Direction angles of the rays from both cameras to a marker at p.
/// Requires p.y > 0.
AngleSet3 angles_from_point_3d(const CameraRig& rig, const Point3& p);

/// Recovers the marker position from spatial direction angles.  Throws
/// ParallelRays / BehindBaseline as in the planar case.
Point3 point_from_angles_3d(const CameraRig& rig, const AngleSet3& a);

} // namespace navskew

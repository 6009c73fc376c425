#pragma once

#include <stdexcept>
#include <string>

namespace navskew {

/// Base class for failures of the triangulation geometry itself, as opposed
/// to bad arguments or I/O trouble.
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The requested point or angle set cannot correspond to a marker the rig
/// can see (e.g. marker on or behind the camera baseline).
class DegenerateGeometry : public GeometryError {
public:
  using GeometryError::GeometryError;
};

/// The two sight lines are parallel (or numerically indistinguishable from
/// parallel) and never intersect.
class ParallelRays : public GeometryError {
public:
  using GeometryError::GeometryError;
};

/// The sight lines intersect, but behind the baseline where no marker can
/// physically be.
class BehindBaseline : public GeometryError {
public:
  using GeometryError::GeometryError;
};

/// A grid sweep hit a geometry failure at some cell; the message names the
/// offending grid point.
class SweepError : public GeometryError {
public:
  using GeometryError::GeometryError;
};

/// Raised when a summary or argmax is requested over zero cells.
class EmptySweep : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or self-contradictory run configuration (file or flags).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace navskew

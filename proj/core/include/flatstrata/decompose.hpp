#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flatstrata/geometry.hpp"
#include "flatstrata/surface.hpp"

namespace flatstrata {

/// A point on the union of horizontal saddle connections: offset from the
/// left end of `label`, in [0, width). Offset 0 is the zero at its left end.
struct BoundaryPoint {
  Label label;
  Rational offset;
  friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
  friend auto operator<=>(const BoundaryPoint&, const BoundaryPoint&) = default;
};

/// One crossing of a horizontal cylinder: enters on the bottom at `from` and
/// leaves on the top at `to` (a point of the top word, named by its label).
struct Segment {
  std::size_t cylinder;
  BoundaryPoint from;
  BoundaryPoint to;
  Vec2 displacement;
};

/// Saddle connection leaving the zero at the left end of `prong` (its upward
/// germ for non-horizontal directions, the label itself for horizontal).
struct SaddleConnection {
  Label prong;
  Direction direction;
  Vec2 holonomy;
  std::vector<Segment> segments;  // empty for horizontal ones
};

/// Piece of a directional cylinder inside horizontal cylinder `cylinder`:
/// the parallelogram with bottom side [x0, x0 + length] at height 0 and top
/// side shifted by slope * height. Coordinates are those of the horizontal
/// cylinder, x taken mod its circumference.
struct Strip {
  std::size_t cylinder;
  BoundaryPoint start;
  Rational x0;
  Rational length;
  Rational slope;
  Rational height;
  Rational area() const { return length * height; }
};

struct GeometricCylinder {
  Direction direction;
  std::vector<Strip> strips;
  Vec2 core;            // holonomy of the core curve, positive along direction
  Rational cross_section;  // horizontal width of every strip
  Rational area;
  /// Saddle connections on the left / right of the flow, in flow order, with
  /// the unrolled position of the zero each one starts from.
  std::vector<Label> left, right;
  std::vector<Vec2> left_points, right_points;

  Rational circumference_squared() const { return norm_squared(core); }
  Rational height_squared() const { return area * area / circumference_squared(); }
  /// h / c = area / c^2, always rational.
  Rational modulus() const { return area / circumference_squared(); }
  /// Exact circumference and height when they are rational.
  std::optional<Rational> circumference() const;
  std::optional<Rational> height() const;
};

struct DirectionalDecomposition {
  Direction direction;
  std::vector<GeometricCylinder> cylinders;
  std::vector<SaddleConnection> saddle_connections;  // ordered by prong

  Rational area() const;
  const SaddleConnection& saddle_connection(Label prong) const;
};

/// Crossing budget for tracing: FLATSTRATA_BUDGET if set, else
/// 16 * (|p| + q) * area * D^2 + 64, D the lcm of all metric denominators.
std::uint64_t tracing_budget(const FlatSurface& m, const Direction& dir);

/// Follows the separatrix from the zero at the left end of `prong` until it
/// hits a zero. Throws Budget when the crossing budget runs out.
SaddleConnection trace_separatrix(const FlatSurface& m, const Direction& dir, Label prong);

/// Cylinders and saddle connections in a rational direction. Cylinders are
/// ordered by their first strip (lowest label, then lowest offset).
DirectionalDecomposition decompose(const FlatSurface& m, const Direction& dir);

/// The cylinder in direction (0,1) whose strips cover all of label l.
std::optional<GeometricCylinder> vertical_cylinder_through(const FlatSurface& m, Label l);

/// The surface A . m, presented horizontally. Cylinder order follows the
/// decomposition of m in direction A^-1 (1,0); labels are the prongs of the
/// saddle connections. The identity returns m unchanged.
FlatSurface apply_matrix(const FlatSurface& m, const Matrix2& a);

/// Cylinder deformation g restricted to the cylinders `cyls` of
/// decompose(m, dir). g must fix dir (g * dir = dir). Returns the deformed
/// surface presented in the original horizontal direction.
FlatSurface deform_class(const FlatSurface& m, const Direction& dir, const std::vector<std::size_t>& cyls,
                         const Matrix2& g);

/// Vertical alignment demand inside one horizontal cylinder: the point at
/// `bottom` lies directly below the point at `top`.
struct AlignmentDemand {
  std::size_t cylinder;
  BoundaryPoint bottom;
  BoundaryPoint top;
};

/// Twists meeting every demand, changing only adjustable cylinders. Each
/// demand fixes its cylinder's twist mod the circumference, so solutions are
/// unique. Throws Infeasible on conflicting demands or a demand on a fixed
/// cylinder that does not already hold.
Metrics align_twists(const FlatSurface& m, const std::vector<std::size_t>& adjustable,
                     const std::vector<AlignmentDemand>& demands);

}  // namespace flatstrata

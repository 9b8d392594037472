#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatstrata/decompose.hpp"
#include "flatstrata/homology.hpp"
#include "flatstrata/surface.hpp"

namespace flatstrata {

/// Area(X n union E) / Area(X). X and the members of E are cylinders of m in
/// any directions; members of E must be pairwise disjoint (one direction).
Rational proportion(const FlatSurface& m, const GeometricCylinder& x, const std::vector<GeometricCylinder>& e);

/// Area of the intersection of two cylinders of m.
Rational overlap_area(const FlatSurface& m, const GeometricCylinder& a, const GeometricCylinder& b);
/// The same area by clipping strip parallelograms against each other; slower.
Rational overlap_area_by_clipping(const FlatSurface& m, const GeometricCylinder& a, const GeometricCylinder& b);

struct FixedPoint {
  enum class Kind { Zero, SaddleMidpoint, Interior };
  Kind kind;
  int zero = -1;            // Zero
  Label label = 0;          // SaddleMidpoint: midpoint of this label
  std::size_t cylinder = 0;  // Interior: point (x, y) of this cylinder
  Vec2 position;

  friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};

/// A self-map (or map between surfaces) with constant derivative, stored as
/// its action on horizontal saddle connections and cylinders.
struct AffineSymmetry {
  Matrix2 derivative;
  std::map<Label, Label> labels;
  std::vector<std::size_t> cylinders;
  std::vector<FixedPoint> fixed_points;  // only for self-maps with derivative -I
};

/// All translation isometries m1 -> m2, each certified on the metric data.
std::vector<AffineSymmetry> translation_isoms(const FlatSurface& m1, const FlatSurface& m2);

/// Involutions of m with derivative -I, with their fixed points.
std::vector<AffineSymmetry> minus_id_involutions(const FlatSurface& m);

struct PrymResult {
  bool is_prym = false;
  std::optional<AffineSymmetry> witness;
  std::size_t involutions = 0;
};

/// Some -I involution has exactly 4 fixed points. H(4) only; throws
/// UnsupportedStratum otherwise.
PrymResult is_prym(const FlatSurface& m);

/// Parity of the spin structure (Arf invariant of the winding quadratic
/// form), computed from horizontal core curves and simple upward
/// transversals. Throws UnsupportedStratum unless every zero has even order,
/// Malformed if those curves do not span homology mod 2.
int spin_parity(const FlatSurface& m);

/// Component of the stratum containing surfaces with diagram d. Supported:
/// H(4), H(2), H(1,1); other strata throw UnsupportedStratum.
ComponentTag component(const CylinderDiagram& d);

/// Torus C / Lambda with a slit; lattice generators alpha, beta.
struct SlitTorus {
  Vec2 alpha, beta;
  Vec2 slit;
  Rational area;
  /// The slit closes up on a lattice vector (a degenerate slit position).
  bool degenerate = false;

  Rational covolume() const { return cross(alpha, beta).abs(); }
};

/// Reduced basis of the lattice generated by rational vectors spanning R^2.
std::pair<Vec2, Vec2> lattice_basis(const std::vector<Vec2>& gens);
bool lattice_contains(const Vec2& a, const Vec2& b, const Vec2& v);
bool same_lattice(const Vec2& a1, const Vec2& b1, const Vec2& a2, const Vec2& b2);

struct CutComponent {
  enum class Kind { Cylinder, SlitTorus, Other };
  Kind kind;
  Rational area;
  int genus;
  int boundary_circles;
  std::vector<std::size_t> cylinders;  // cylinders of decompose(m, dir)
  std::optional<SlitTorus> torus;
};
std::string to_string(CutComponent::Kind k);

/// Cuts m along the saddle connections in direction dir leaving the given
/// prongs. Throws NotHomologous unless they are pairwise homologous with
/// equal holonomy.
std::vector<CutComponent> cut_along(const FlatSurface& m, const Direction& dir, const std::vector<Label>& prongs);

/// Proportion of the slit torus occupied by its cylinder in direction dir:
/// 1 - |det(slit, v)| / covolume, v the primitive lattice vector in dir.
/// Empty when dir has no lattice vector or the slit leaves no cylinder.
std::optional<Rational> slit_torus_cylinder_proportion(const SlitTorus& p, const Direction& dir);

struct P12Report {
  bool isometric = false;
  Rational r;                      // Area(P2) / Area(P1)
  std::vector<Vec2> derived;       // r * v1 for each sampled direction
  bool scaled_lattice_contained = false;  // r Lambda1 inside Lambda2
  bool degenerate_slit = false;
};

/// The slit-torus isometry argument on a finite instance. Hypotheses: both
/// slits vertical of equal length, Area(P1) >= Area(P2), and equal cylinder
/// proportions in every sampled direction; the samples must include the
/// horizontal and a direction completing a basis of Lambda1. Violations throw
/// HypothesisViolated. The universal hypothesis over all cylinders of P1 is
/// the caller's responsibility.
P12Report p12_isometry_check(const SlitTorus& p1, const SlitTorus& p2, const std::vector<Direction>& samples);

}  // namespace flatstrata

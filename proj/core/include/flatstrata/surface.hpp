#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatstrata/diagram.hpp"
#include "flatstrata/geometry.hpp"
#include "flatstrata/rational.hpp"

namespace flatstrata {

/// Widths per label, heights and twists per cylinder (cylinder order of the
/// diagram).
struct Metrics {
  std::map<Label, Rational> widths;
  std::vector<Rational> heights;
  std::vector<Rational> twists;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// A horizontally periodic translation surface with exact rational data.
///
/// Cylinder j is the rectangle [0, c) x [0, h] with its bottom word laid out
/// from x = 0 and its top word laid out from x = twist, both mod c. A vertical
/// segment leaving the bottom at x reaches the top at x.
class FlatSurface {
 public:
  /// Requires every width. Throws InconsistentWidths if some cylinder's top
  /// and bottom widths disagree, NonPositive for nonpositive widths/heights.
  FlatSurface(CylinderDiagram diagram, Metrics metrics);

  const CylinderDiagram& diagram() const { return diagram_; }
  const Metrics& metrics() const { return metrics_; }

  const Rational& width(Label l) const { return metrics_.widths.at(l); }
  const Rational& height(std::size_t j) const { return metrics_.heights[j]; }
  const Rational& twist(std::size_t j) const { return metrics_.twists[j]; }
  const Rational& circumference(std::size_t j) const { return circumference_[j]; }
  /// Left end of l within the top word of its cylinder, measured from the
  /// start of that word.
  const Rational& pos_top(Label l) const { return pos_top_[diagram_.index_of(l)]; }
  const Rational& pos_bottom(Label l) const { return pos_bottom_[diagram_.index_of(l)]; }
  std::size_t cylinder_count() const { return diagram_.cylinder_count(); }

  Rational area() const;
  Rational cylinder_area(std::size_t j) const { return height(j) * circumference(j); }

  /// Top label of cylinder j covering top-word coordinate u in [0, c), with
  /// the offset of u inside it.
  std::pair<Label, Rational> top_label_at(std::size_t j, const Rational& u) const;
  std::pair<Label, Rational> bottom_label_at(std::size_t j, const Rational& x) const;

  /// Same presentation: identical diagram words and metrics.
  friend bool operator==(const FlatSurface& a, const FlatSurface& b) {
    return a.diagram_ == b.diagram_ && a.metrics_ == b.metrics_;
  }

 private:
  CylinderDiagram diagram_;
  Metrics metrics_;
  std::vector<Rational> circumference_;
  std::vector<Rational> pos_top_, pos_bottom_;
};

/// Builds a surface, solving for any widths left out of m.widths from the
/// circumference equations. Throws InconsistentWidths when the given widths
/// violate an equation or the missing ones are not determined, NonPositive
/// for nonpositive data.
FlatSurface build(const CylinderDiagram& d, Metrics m);

/// Unit widths where consistent, else standard widths; heights 1, twists 0.
Metrics default_metrics(const CylinderDiagram& d);

/// Random positive metrics, deterministic in seed: widths are positive
/// rational combinations of shortest-cycle indicators, heights in (0, 4],
/// twists in [0, c). Denominators divide `den`.
Metrics random_metrics(const CylinderDiagram& d, std::uint64_t seed, long den = 6);

/// Image under -I, presented horizontally with the same labels.
FlatSurface rotate_pi(const FlatSurface& m);
/// Image under diag(1,-1).
FlatSurface reflect_x(const FlatSurface& m);
/// Image under diag(-1,1).
FlatSurface reflect_y(const FlatSurface& m);

/// Twists of cylinders in cyls advance by t * height.
FlatSurface shear_class(const FlatSurface& m, const std::vector<std::size_t>& cyls, const Rational& t);
/// Heights of cylinders in cyls scale by lambda > 0.
FlatSurface stretch_class(const FlatSurface& m, const std::vector<std::size_t>& cyls, const Rational& lambda);

/// Label maps (m1 label -> m2 label) that extend to translation isometries.
/// Both surfaces are compared through their horizontal presentations.
std::vector<std::map<Label, Label>> translation_label_maps(const FlatSurface& m1, const FlatSurface& m2);
bool translation_equivalent(const FlatSurface& m1, const FlatSurface& m2);

/// Cylinder index of m2 that l's cylinder maps to under a label map.
std::vector<std::size_t> cylinder_map(const FlatSurface& m1, const FlatSurface& m2,
                                      const std::map<Label, Label>& labels);

}  // namespace flatstrata

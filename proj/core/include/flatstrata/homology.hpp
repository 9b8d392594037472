#pragma once

#include <string>
#include <vector>

#include "flatstrata/decompose.hpp"
#include "flatstrata/surface.hpp"

namespace flatstrata {

/// Integer 1-chain on the cell complex of a horizontal presentation: one
/// coefficient per label (in labels() order), then one per cylinder for the
/// vertical edge joining the start of its bottom word to the start of its top
/// word. Faces are the cylinders, with boundary sum(bottom) - sum(top).
using Chain = std::vector<long>;

/// Coordinates in a PeriodBasis.
using HomologyClass = std::vector<long>;

/// Basis of homology relative to the zeros: the labels off a spanning tree
/// of the cylinder graph, then every vertical edge. Tree labels are
/// eliminated through their fundamental cuts. Size 2g + |zeros| - 1, which
/// is 2g (absolute homology) for a single zero.
class PeriodBasis {
 public:
  explicit PeriodBasis(const CylinderDiagram& d);

  std::size_t size() const { return elements_.size(); }
  const std::vector<Chain>& elements() const { return elements_; }
  const std::vector<std::string>& names() const { return names_; }
  /// Class of a chain (every 1-chain is a relative cycle).
  HomologyClass reduce(const Chain& c) const;
  /// Throws BasisMismatch unless the basis was built for d.
  void check(const CylinderDiagram& d) const;

 private:
  std::vector<int> key_;
  std::size_t labels_ = 0, cylinders_ = 0;
  std::vector<Chain> elements_;
  std::vector<std::string> names_;
  std::vector<long> coord_of_edge_;  // -1 for tree labels
  std::vector<std::vector<long>> tree_expansion_;  // per tree label, coefficients on basis coords
};

Vec2 chain_holonomy(const FlatSurface& m, const Chain& c);

/// Exact holonomies of the basis elements.
std::vector<Vec2> period_vector(const FlatSurface& m, const PeriodBasis& basis);

/// Chain of one crossing of a horizontal cylinder, with its endpoints slid
/// back to the left ends of their labels.
Chain segment_chain(const FlatSurface& m, const Segment& s);
Chain saddle_connection_chain(const FlatSurface& m, const SaddleConnection& sc);
/// Closed chain homotopic to the core curve.
Chain core_chain(const FlatSurface& m, const GeometricCylinder& c);

HomologyClass core_class(const FlatSurface& m, const GeometricCylinder& c);
HomologyClass saddle_connection_class(const FlatSurface& m, const SaddleConnection& sc);

/// Equal classes and equal holonomy.
bool homologous(const FlatSurface& m, const Chain& a, const Chain& b);

/// Rank over Q of integer vectors.
std::size_t integer_rank(const std::vector<std::vector<long>>& rows);

}  // namespace flatstrata

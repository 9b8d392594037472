#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flatstrata {

/// Identifier of a horizontal saddle connection. Only the gluing pattern is
/// meaningful; isomorphism ignores the actual values.
using Label = int;

/// Boundary words of one horizontal cylinder, read left to right.
struct CylinderWords {
  std::vector<Label> top;
  std::vector<Label> bottom;

  friend bool operator==(const CylinderWords&, const CylinderWords&) = default;
};

/// Orders of the cone points (order k <=> cone angle 2*pi*(k+1)) and genus.
struct SingularityProfile {
  std::vector<int> orders;  // sorted descending
  int genus = 0;

  /// Number of horizontal saddle connections of any diagram in the stratum.
  int label_count() const;
  /// Upper bound on parallel cylinders: g + |zeros| - 1.
  int max_cylinders() const;
  std::string str() const;  // "H(4)", "H(1,1)", "H(0)" for the torus

  /// Accepts "H4", "H(4)", "H1,1", "H(1,1)", "H(0)".
  static SingularityProfile parse(const std::string& text);
  static SingularityProfile from_orders(std::vector<int> orders);

  friend bool operator==(const SingularityProfile&, const SingularityProfile&) = default;
};

enum class ComponentTag { Hyperelliptic, Odd, Even, NonApplicable };
std::string to_string(ComponentTag tag);

enum class SymmetryElement { Identity, ReflectX, ReflectY, ReflectXY };

/// A corner of a cylinder boundary: the angle-pi sector at the junction
/// following `label` in the top (or bottom) word of the cylinder containing it.
struct Corner {
  Label label;
  bool top;
  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

/// A validated cylinder diagram. Immutable after construction.
///
/// Zeros are found by walking corners counterclockwise around each junction:
/// from the top corner between a and b = next_top(a), crossing b leads to the
/// bottom corner between x = prev_bottom(b) and b; crossing x leads to the top
/// corner between x and next_top(x). A cycle of 2(k+1) corners is a zero of
/// order k.
class CylinderDiagram {
 public:
  /// Validates raw words. Throws Error with DuplicateLabel, MissingLabel,
  /// Malformed, Disconnected, or NonPositive (a cylinder whose circumference
  /// equation admits no positive widths).
  explicit CylinderDiagram(std::vector<CylinderWords> cylinders);

  const std::vector<CylinderWords>& cylinders() const { return cylinders_; }
  std::size_t cylinder_count() const { return cylinders_.size(); }
  const std::vector<Label>& labels() const { return labels_; }
  std::size_t label_count() const { return labels_.size(); }
  bool has_label(Label l) const;
  /// Dense index of a label in labels().
  std::size_t index_of(Label l) const;

  /// Cylinder whose top word contains l (the cylinder just below l).
  std::size_t cyl_top(Label l) const { return info(l).cyl_top; }
  /// Cylinder whose bottom word contains l (the cylinder just above l).
  std::size_t cyl_bottom(Label l) const { return info(l).cyl_bottom; }
  std::size_t top_index(Label l) const { return info(l).top_index; }
  std::size_t bottom_index(Label l) const { return info(l).bottom_index; }
  Label next_top(Label l) const;
  Label prev_top(Label l) const;
  Label next_bottom(Label l) const;
  Label prev_bottom(Label l) const;

  const SingularityProfile& profile() const { return profile_; }
  int genus() const { return profile_.genus; }

  /// Zero containing each corner, numbered by first appearance over the
  /// corners (labels ascending, top corner before bottom corner). Labels in
  /// `cut` are not crossed, so a zero splits into one copy per arc of its
  /// link between cuts.
  std::map<Corner, int> vertex_copies(const std::vector<Label>& cut = {}) const;
  /// Zero at the left endpoint of label l.
  int left_vertex(Label l) const;
  int right_vertex(Label l) const;
  int vertex_count() const { return vertex_count_; }

  /// Reflection in the x-axis: top and bottom words swap.
  CylinderDiagram reflect_x() const;
  /// Reflection in the y-axis: every boundary word is reversed.
  CylinderDiagram reflect_y() const;
  CylinderDiagram apply(SymmetryElement g) const;

  /// Lexicographically minimal relabeled form over cylinder orderings and
  /// word rotations, labels renumbered 1..n by first appearance.
  CylinderDiagram canonical() const;
  /// Encoding compared by canonical(); equal iff isomorphic.
  std::vector<int> canonical_key() const;
  bool isomorphic(const CylinderDiagram& other) const;

  /// Label maps (this label -> other label) realizing an isomorphism.
  /// Cylinder maps follow from the label maps.
  std::vector<std::map<Label, Label>> isomorphisms(const CylinderDiagram& other) const;

  /// Positive integer widths satisfying every circumference equation: the
  /// sum, over labels, of the indicator of a shortest directed cycle through
  /// the label in the cylinder graph.
  std::map<Label, long> standard_widths() const;

  friend bool operator==(const CylinderDiagram& a, const CylinderDiagram& b) {
    return a.cylinders_ == b.cylinders_;
  }

  std::string str() const;

 private:
  struct LabelInfo {
    std::size_t cyl_top = 0, cyl_bottom = 0, top_index = 0, bottom_index = 0;
  };
  const LabelInfo& info(Label l) const { return info_[index_of(l)]; }

  std::vector<CylinderWords> cylinders_;
  std::vector<Label> labels_;
  std::vector<LabelInfo> info_;
  SingularityProfile profile_;
  std::vector<int> left_vertex_;
  int vertex_count_ = 0;
};

/// Shortest directed cycle through label l in the graph with cylinders as
/// nodes and an edge cyl_top(l) -> cyl_bottom(l) per label. Returns labels.
std::vector<Label> shortest_cycle_through(const CylinderDiagram& d, Label l);

/// True if every label lies on a directed cycle, i.e. the circumference
/// equations admit strictly positive widths.
bool admits_positive_widths(const std::vector<CylinderWords>& cylinders);

struct EnumerationOptions {
  std::vector<int> cylinder_counts;  // empty = all feasible counts
  std::size_t node_budget = 50'000'000;
};

/// All cylinder diagrams of the stratum, one canonical representative per
/// isomorphism class, sorted by cylinder count then canonical key.
/// Throws Error(ResourceLimit) when the search exceeds the node budget.
std::vector<CylinderDiagram> enumerate(const SingularityProfile& profile,
                                       const EnumerationOptions& options = {});

struct SymmetryOrbit {
  CylinderDiagram representative;
  std::vector<CylinderDiagram> members;  // canonical, distinct
};

/// Orbits of the Z2 x Z2 reflection action. Throws Error(NotClosed) if some
/// reflection of an input diagram is missing from the input.
std::vector<SymmetryOrbit> symmetry_classes(const std::vector<CylinderDiagram>& diagrams);

}  // namespace flatstrata

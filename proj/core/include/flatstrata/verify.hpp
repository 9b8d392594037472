#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "flatstrata/analysis.hpp"
#include "flatstrata/surface.hpp"

namespace flatstrata {

/// A committed figure encoding. `surface` is present when the file carries
/// metric data; its twists come from the file's alignment demands.
struct Fixture {
  std::string id;
  std::string reading;
  CylinderDiagram diagram;
  std::vector<std::string> roles;  // cylinder names, e.g. A, B, C
  std::optional<FlatSurface> surface;

  std::size_t role(const std::string& name) const;
};

/// Ids of the embedded fixtures, sorted.
std::vector<std::string> fixture_ids();
/// Throws BadInput for an unknown id.
Fixture load_fixture(const std::string& id);

/// The fixture surface, or the fixture diagram with the given metrics (missing
/// widths solved, InconsistentWidths if the width equations fail). Diagram-only
/// fixtures without params use unit-square metrics where possible.
FlatSurface build_scenario(const std::string& id, const std::optional<Metrics>& params = std::nullopt);

/// The eight odd diagrams with at least two cylinders, D1-D4 then O1-O4.
std::vector<CylinderDiagram> eight_diagrams();

enum class ClaimStatus { Verified, Failed };

struct ClaimReport {
  std::string id;
  std::string anchor;   // the statement being checked, in words
  ClaimStatus status = ClaimStatus::Failed;
  std::string detail;
  std::string witness;  // JSON object with the exact data behind the verdict

  bool verified() const { return status == ClaimStatus::Verified; }
  friend bool operator==(const ClaimReport&, const ClaimReport&) = default;
};

/// H(4) counts: 22 diagrams, 7 + 7 odd diagrams with 3 and 2 cylinders, and
/// 8 reflection orbits among the odd ones, matching eight_diagrams().
ClaimReport check_enumeration();
/// For each two-cylinder odd diagram, twists from align_twists giving exactly
/// 2 vertical cylinders with total area below area(M).
std::vector<ClaimReport> check_two_cylinder_shears();
/// Vertical cylinder V through (2), a cylinder K inside B through (3), and the
/// stretch of K making (3) as long as (1).
ClaimReport check_o4b_witness();
/// Three homologous vertical saddle connections; cutting gives a cylinder and
/// two slit tori of total area area(M).
ClaimReport check_fig_v_slit_tori();
/// The three symmetric builds each have one -I involution with 4 fixed
/// points; the perturbed build has none.
std::vector<ClaimReport> check_prym_figures();

/// P(V1,{A,C}) = P(V2,{A,C}) iff h(C)/h(A) = (m-n)/m for every height triple
/// (hA, hB, hC). V1 crosses A and B once each (certified on the Model I
/// fixture); V2 crosses A n times and B, C m times each. Throws BadParameters
/// unless m > 0, 0 <= n <= m and all heights are positive.
ClaimReport check_o3b_relation(int m, int n, const std::vector<std::array<Rational, 3>>& heights);
/// check_o3b_relation over 1 <= n < m <= 5 and heights in {1..5}^3.
ClaimReport check_o3b_grid();

/// Every claim above, run concurrently and returned in a fixed order. With
/// `only`, claims whose id does not start with it are skipped.
std::vector<ClaimReport> paper_report(const std::string& only = "");

std::string reports_to_json(const std::vector<ClaimReport>& reports);
/// Throws BadInput on a malformed bundle.
std::vector<ClaimReport> reports_from_json(const std::string& text);

}  // namespace flatstrata

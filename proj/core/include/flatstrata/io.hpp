#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flatstrata/analysis.hpp"
#include "flatstrata/decompose.hpp"
#include "flatstrata/surface.hpp"

namespace flatstrata {

// JSON formats. Rationals are "p/q" strings; labels are integers.
//   diagram: {"cylinders":[{"top":[1],"bottom":[4]},...]}
//   surface: diagram block plus "widths":{"1":"1/1",...}, "heights":[...],
//            "twists":[...]. Missing widths are solved for; missing heights
//            default to 1 and twists to 0.
// Parse failures throw Error(BadInput).

std::string diagram_to_json(const CylinderDiagram& d, bool canonical = false);
CylinderDiagram diagram_from_json(std::string_view text);

std::string surface_to_json(const FlatSurface& m);
FlatSurface surface_from_json(std::string_view text);

std::string decomposition_to_json(const DirectionalDecomposition& dec);
std::string involution_to_json(const AffineSymmetry& s);
std::string cut_to_json(const std::vector<CutComponent>& parts);

/// Cylinders as stacked rectangles, top labels shifted by the twist. Display
/// coordinates are rational values times `scale`, printed with two decimals.
std::string render_surface_svg(const FlatSurface& m, double scale = 40.0);
/// The same layout with the cylinders of dec drawn over it, one fill colour
/// per cylinder.
std::string render_decomposition_svg(const FlatSurface& m, const DirectionalDecomposition& dec, double scale = 40.0);
/// Layout of d with default metrics.
std::string render_diagram_svg(const CylinderDiagram& d, double scale = 40.0);
/// Several diagrams stacked top to bottom in one document.
std::string render_diagrams_svg(const std::vector<CylinderDiagram>& ds, double scale = 40.0);

}  // namespace flatstrata

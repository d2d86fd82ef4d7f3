#ifndef KQUANT_SVG_HPP_
#define KQUANT_SVG_HPP_

#include <filesystem>

#include "kquant/contours.hpp"
#include "kquant/types.hpp"

namespace kq {

enum class FigureSide { Domain, Codomain };

/// Writes a static SVG at `path` plus a CSV data file alongside (same stem,
/// .csv extension).
///
/// Domain side: sample scatter with the contour polylines drawn as closed
/// polygons; the CSV holds the polyline vertices (radius, angle_index, x, y).
/// Codomain side: the unit circle, reference circles at the contour radii,
/// and the K-transform image of every sample point; the CSV holds the
/// transformed points (x, y, norm).
///
/// Contours are stroked blue / red / maroon in ascending radius order
/// (palette cycles past three).
void render_figure(const SampleSet& sample, const ContourSet& contours, FigureSide side,
                   const std::filesystem::path& path);

}  // namespace kq

#endif  // KQUANT_SVG_HPP_

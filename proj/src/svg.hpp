#pragma once

#include <string>
#include <vector>

#include "mesh.hpp"
#include "surface.hpp"

namespace etri {

// Rendering style for planar meshes. Colour mode marks each vertex with its
// colour from `vertexColour` (one entry per mesh vertex); Angles mode fills
// each face on a red-to-green ramp by its minimum angle, saturating at 60
// degrees.
struct SvgStyle {
  enum class Mode { Plain, Colour, Angles };
  Mode mode = Mode::Plain;
  double width = 640;  // pixel width; height follows the bounding box
  std::vector<Colour> vertexColour;
};

// Deterministic SVG: fixed six-decimal coordinates, faces in index order,
// vertex marks in index order. Identical input and style give identical
// bytes.
std::string renderSvg(const PlanarMesh& m, const SvgStyle& style = {});

}  // namespace etri

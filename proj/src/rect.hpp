#pragma once

#include <array>
#include <vector>

#include "mesh.hpp"

namespace etri {

// Rescaling of a w x h rectangle (w >= h > 0) to [0,m] x [0,1]: x scales by
// m/w and y by 1/h, with m = ceil(w/h). The anisotropy a = m*h/w lies in
// [1,2) and bounds the angle distortion of the rescaling.
struct NormalizedRect {
  int m;
  double a;
};
NormalizedRect normalizeRectangle(double w, double h);

// Level j >= 3 with Dk/(8*lambda) in (2^{-j-1}, 2^{-j}]; the matching offset
// is dk = (3/4)*2^{-j}, the centre of the interval, so dk <= Dk/(4*lambda).
int dkLevel(double Dk, double lambda);
double dkValue(double Dk, double lambda);

// Axis-aligned dyadic square on the fine integer grid: corner (x,y), side
// `size`, all in units of 2^{-fineLevel}.
struct FineSquare {
  long long x, y, size;
};

// Whitney squares of [0,m] x [0,1]: at every level j in [2, jmax], the grid
// squares whose grid distance to the boundary is exactly one cell. Level 2 is
// the central layer of 8m-4 quarter squares; deeper levels hug the boundary
// in halving rings.
struct WhitneyLayout {
  int m = 1;
  int jmax = 2;
  int fineLevel = 4;  // jmax + 2, fine enough to carry the sigma offsets
  long long W = 0, H = 0;  // rectangle size in fine units
  std::vector<FineSquare> squares;
  int centralCount = 0;  // how many level-2 squares lead the list
};
WhitneyLayout whitneyDecompose(int m, int jmax = 2);

// Per-side data in boundary coordinates: t runs counterclockwise along each
// side (bottom, right, top, left), so t = x, y, m-x, 1-y respectively.
struct SideArcs {
  std::array<std::vector<double>, 4> t;  // partition points per side, by t
  std::array<std::vector<double>, 4> d;  // matching sigma offsets
  std::array<int, 4> cornerLevel = {0, 0, 0, 0};
  int maxLevel = 0;  // deepest offset level over all points
};

// Builds the four sigma polylines for a partition of [0,m] x [0,1] given per
// side in t order (corners included). Corner offsets are shared between the
// two sides meeting there, using the smaller adjacent edge.
SideArcs buildSigmaArcs(const std::array<std::vector<double>, 4>& sideT, int m,
                        double lambda);

struct GammaLayout {
  std::vector<FineSquare> kept;
  // Single counterclockwise cycle of kept-region boundary vertices in fine
  // units. Starts at the bottom-left corner anchor; anchor[c] indexes the
  // anchor vertex of corner c.
  std::vector<std::array<long long, 2>> cycle;
  std::array<size_t, 4> anchor;
};
GammaLayout buildGamma(const WhitneyLayout& layout, const SideArcs& arcs);

// Conforming triangulation of a set of dyadic squares that meet edge-to-edge
// or half-edge-to-edge: plain squares split along a diagonal, one hanging
// midpoint fans from it, two or more fan from the centre. Coordinates are
// scaled by 2^{-fineLevel}.
PlanarMesh triangulateCore(const std::vector<FineSquare>& squares, int fineLevel);

// Greedy max-min-angle ear clipping of a simple CCW polygon; adds no vertex.
std::vector<std::array<Complex, 3>> earClip(const std::vector<Complex>& poly);

struct RectResult {
  PlanarMesh mesh;       // in the original w x h coordinates
  double minAngle = 0;   // radians, measured on the output
  int keptSquares = 0;
  int jmax = 0;
};

// The full pipeline: validate bounded geometry, normalize, build Whitney
// squares, sigma and gamma, triangulate core and collar, map back. Boundary
// vertices of the result are exactly the input partition points; no vertex
// is added on the rectangle boundary.
//
// Sides are given in plain rectangle coordinates, each sorted ascending and
// containing both corners: sides[0]/sides[2] hold x values on the bottom/top
// edges (0..w), sides[1]/sides[3] hold y values on the right/left (0..h).
RectResult rectTriangulation(double w, double h,
                             const std::array<std::vector<double>, 4>& sides,
                             double lambda);

}  // namespace etri

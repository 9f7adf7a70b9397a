#pragma once

#include <vector>

#include "mesh.hpp"
#include "surface.hpp"

namespace etri {

// Hexagonal patch of the unit triangular lattice: every lattice point within
// hex distance `extent` of the origin, fully triangulated. Interior vertices
// have degree 6 and the patch is 3-colourable along the three sublattices.
PlanarMesh latticePatch(int extent);

// Strip of the lattice wrapped into a cylinder: n columns of unit triangles,
// h rows, left and right edges glued. chi = 0 with two boundary cycles.
// Needs n >= 3 so no directed edge repeats within a row.
Surface latticeCylinder(int n, int h);

struct HyperbolicTessellation {
  PlanarMesh mesh;  // disc model, geodesic edges drawn as chords
  Surface surface;
};

// Tessellation of the hyperbolic disc by equilateral triangles of vertex
// angle 2*pi/n, grown from a centred triangle by geodesic reflection. Each
// depth level completes the link of every vertex reached so far, so after
// level one the central vertices are interior of degree n, and every
// interior vertex of the result has degree n. Faces and vertices are
// deduplicated positionally at 1e-9. Rejects n <= 6 (InvalidDegree: six
// angles of pi/3 are the Euclidean case) and depth outside [0, 8].
HyperbolicTessellation hyperbolicTessellation(int n, int depth);

struct PulledBackSphere {
  Surface surface;      // closed, chi = 2
  Colouring colouring;  // over 0 -> -1, over 1 -> 1, over infinity -> inf
  std::vector<int> classesOverZero;
  std::vector<int> classesOverOne;
  std::vector<int> punctureClasses;       // vertex classes over infinity
  std::vector<Complex> puncturePosition;  // the matching n-th root of unity
};

// Pulls the double-triangle sphere with vertices 0, 1, infinity back under
// g(z) = z^n/(z^n - 1), a degree-n covering branched over 0 and 1. The cover
// has 2n faces; the simple poles of g at the n-th roots of unity sit over
// infinity and are the punctures. Sheets are tracked with the inverse
// branches z = zeta * (w/(w-1))^(1/n) rooted at the upper face; the sheet
// permutation predicted by the branch cut for each crossed edge is
// cross-checked by numerical path lifting, and any disagreement raises
// LiftMonodromyMismatch.
PulledBackSphere puncturedSpherePullback(int n);

}  // namespace etri

#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "affine.hpp"
#include "mesh.hpp"
#include "surface.hpp"

namespace etri {

// One boundary curve of a hemmed domain, given as a trigonometric polynomial
// z -> sum c_k z^k evaluated on circles around the unit circle. The curve
// itself is the |z| = 1 image; the side swept by 1 < |z| <= R points into the
// domain, so an inner boundary of radius r uses r*z and an outer boundary of
// radius r uses r/z.
struct BoundaryCurve {
  std::vector<std::pair<int, Complex>> coefficients;
  double modulusRadius = 0;  // R > 1, the curve extends to a conformal collar
  int degree = 0;            // number of boundary edges requested on the hem

  Complex eval(Complex z) const;
  Complex derivative(Complex z) const;
  // Newton inversion, warm-started from seed. Empty when the iteration does
  // not converge or lands outside 1 <= |z| <= R (with a small margin).
  std::optional<Complex> invert(Complex p, Complex seed) const;
  double scale() const;  // sup |eval| over the collar annulus, cached
};

struct HemmedDomainSpec {
  std::vector<BoundaryCurve> curves;
  double epsilon = 0;
};

// Smallest hem degree whose boundary edges stay shorter than 2*pi*log(R).
int minimalDegree(double modulusRadius);

// Checks curve injectivity, nonvanishing derivative, pairwise disjoint collar
// images, the degree floor, and that some curve encloses the domain. Throws
// on violation.
void validateSpec(const HemmedDomainSpec& spec);

struct LatticeFill {
  PlanarMesh mesh;  // triangles of the epsilon-lattice meeting the cropped
                    // domain, one mesh vertex per lattice point
  std::vector<std::vector<int>> boundary;  // one vertex cycle per curve,
                                           // domain on the left
};
LatticeFill latticeFill(const HemmedDomainSpec& spec);

// Straightening data for one collar strip. The lift places the lattice
// boundary cycle in log coordinates of the collar, y increasing over one
// period; Psi maps the region between the lift and the imaginary axis onto
// the rectangle [0, rho] x R, is the identity on the imaginary axis, and
// commutes with translation by 2*pi*i.
struct StripData {
  double rho = 0;                // log(modulusRadius) / 2
  std::vector<Complex> lift;     // N+1 vertices, last = first + 2*pi*i
  std::vector<int> alphaVertex;  // lattice mesh vertex per lift entry
  double shift = 0;              // imaginary translation applied on the lift side
  std::vector<double> plusPartition;  // images of the lift vertices on
                                      // Re = rho, as offsets in [0, 2*pi]
  std::vector<std::vector<double>> prefix;  // per edge, cumulative arclength
                                            // of the curve image at t = i/64
  std::vector<double> edgeLength;

  double maxSlope = 0;          // max |dx/dy| over lift edges
  double lambdaRun = 1;         // max adjacent ratio of plusPartition gaps
  double psi1Deviation = 0;     // max arclength reparameterisation offset
  double periodicityError = 0;  // max |Psi(w + 2*pi*i) - Psi(w) - 2*pi*i|
                                // measured against an independent second-
                                // period reconstruction

  double xPlus(double y) const;    // piecewise-linear lift abscissa
  double forwardY(double y) const; // arclength reparameterisation on Re = rho
  Complex mapPsi(Complex w) const;
  Complex invertPsi(Complex q) const;
};

StripData buildStripMaps(const HemmedDomainSpec& spec, const LatticeFill& fill,
                         int curve);

// Bounded-geometry triangulation of the straightened collar rectangle
// [0, rho] x [0, 2*pi]: the Re = rho side is partitioned at plusPartition,
// the Re = 0 side uniformly into `degree` edges, and the two seam sides by a
// shared graded bridge, so the mesh closes up into a cylinder.
struct CollarResult {
  PlanarMesh mesh;  // coordinates (x, y) = (offset along the curve, rho - Re)
  std::vector<double> seam;  // shared partition of the two seam sides
  double lambdaUsed = 0;
  double minAngle = 0;
};
CollarResult collarTriangulate(const StripData& strip, int degree);

struct CurveAssembly {
  StripData strip;
  std::vector<Complex> hemVertex;  // positions of the degree hem vertices
  std::vector<Slot> hemSlot;       // boundary slot per hem edge, oriented
                                   // against the hem vertex order
  double lengthRespectDeviation = 0;  // worst affine defect of the boundary
                                      // parameterisation, per unit edge
};

struct HemmedPiece {
  // Domain-coordinate realization. Collar cells are straight in the collar
  // chart, not in the plane, so their plotted chords may graze each other
  // near the hem; the lattice part is an exact planar mesh.
  PlanarMesh mesh;
  Surface surface;
  // Per face onto the unit equilateral: lattice faces by their conformal
  // linear map, collar faces from their chart-coordinate corners.
  std::vector<AffinePiece> faceMap;
  DilatationReport dilatation;
  int latticeFaces = 0;  // faces below this index carry exact dilatation 1
  bool supportInCollar = true;
  std::vector<CurveAssembly> curves;
};
HemmedPiece assemble(const HemmedDomainSpec& spec);

// Pairs hem edges of two pieces that share a boundary curve. Returns, for
// each edge j of side A, the matching edge of side B. The parameterisations
// must traverse the shared curve in opposite senses.
std::vector<int> interfaceEdgePairing(const std::vector<Complex>& a,
                                      const std::vector<Complex>& b,
                                      double tol);

struct ChainInterface {
  int pieceA = 0, curveA = 0;
  int pieceB = 0, curveB = 0;
};

struct ChainResult {
  Surface surface;
  DilatationReport dilatation;
  std::vector<HemmedPiece> pieces;
  int maxInterfaceDegree = 0;  // largest vertex degree created on interfaces
  int boundaryDegreeBound = 0; // largest hem vertex degree of any one piece
};
ChainResult chainAssemble(const std::vector<HemmedDomainSpec>& specs,
                          const std::vector<ChainInterface>& interfaces);

}  // namespace etri

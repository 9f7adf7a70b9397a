#pragma once

#include <array>
#include <limits>
#include <vector>

#include "sc.hpp"
#include "surface.hpp"

namespace etri {

// Riemann sphere values are complex numbers; infinity is any value with an
// infinite component.
inline Complex spherePoint(double re, double im) { return {re, im}; }
inline Complex sphereInfinity() { return {std::numeric_limits<double>::infinity(), 0}; }
bool isSphereInfinity(Complex z);
double chordalDistance(Complex a, Complex b);

// The degree-six rational map (z^3 + z^-3)/2. Fixed by 120-degree rotation,
// negated by 60-degree rotation, real on the unit circle.
Complex f3(Complex z);
Complex f3Derivative(Complex z);
// Zeros of f3Derivative, found by simultaneous root iteration on z^6 - 1 and
// sorted by argument.
std::vector<Complex> f3CriticalPoints();

struct Mobius {
  Complex a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};  // z -> (az + b)/(cz + d)

  Complex operator()(Complex z) const;
  Mobius inverse() const;
  // Entries of src and dst may be the sphere infinity.
  static Mobius through(const std::array<Complex, 3>& src, const std::array<Complex, 3>& dst);
};

// Branched cover of the sphere attached to a properly 3-coloured surface.
// Each face goes conformally onto a half-plane: the corner coloured 1 lands
// on the vertex 1 of the reference triangle with the other corners following
// CCW, the disc uniformization is applied, and a Moebius map pins the corner
// images to their colour values 1, -1, infinity. Faces of opposite
// handedness cover opposite half-planes and match along glued edges.
class BelyiEvaluator {
public:
  BelyiEvaluator(Surface surface, Colouring colouring);

  const Surface& surface() const { return surface_; }
  const Colouring& colouring() const { return colouring_; }

  // True when the face covers the upper half-plane.
  bool upper(int face) const { return upper_[face] != 0; }

  // Corner indices of the face carrying the colours 1, -1, infinity.
  const std::array<int, 3>& colourCorners(int face) const { return slot_[face]; }

  // Value at a barycentric point of the face. Corners return their colour
  // value exactly; points on a glued side are evaluated from the lower slot
  // of the pair so the result does not depend on which side names them.
  Complex at(int face, std::array<double, 3> bary) const;

  // Same map without the edge rerouting.
  Complex atInFace(int face, std::array<double, 3> bary) const;

private:
  Surface surface_;
  Colouring colouring_;
  std::vector<std::array<int, 3>> slot_;  // corner index carrying 1, -1, inf
  std::vector<char> upper_;
};

struct CoverReport {
  int faces = 0;
  int gluedEdges = 0;
  int upperFaces = 0;  // preimage count of an upper half-plane test value
  int lowerFaces = 0;
  double maxEdgeGap = 0;        // chordal mismatch across glued edges, 5 samples each
  std::vector<int> localDegree;  // per vertex class, link/2; -1 on the boundary
  int maxInteriorDegree = 0;
  double maxWindingError = 0;  // sampled winding around each interior vertex vs link/2
  double maxRegularGap = 0;    // residual re-evaluating preimages of regular test values
  bool preimageCountsAgree = true;
  bool samplesRegular = true;  // nonvanishing spherical derivative away from corners

  bool pass(double edgeTol) const {
    return maxEdgeGap <= edgeTol && maxWindingError <= 0.01 && preimageCountsAgree &&
           samplesRegular;
  }
};

CoverReport verifyBranchedCover(const BelyiEvaluator& ev, int samplesPerFace = 4);

}  // namespace etri

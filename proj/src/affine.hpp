#pragma once

#include <array>
#include <vector>

#include "mesh.hpp"

namespace etri {

// One complex-affine piece z -> alpha*z + beta*conj(z) + c. The Beltrami
// coefficient is beta/alpha and the dilatation K follows from it directly.
struct AffinePiece {
  Complex alpha{1, 0}, beta{0, 0}, c{0, 0};

  Complex operator()(Complex z) const { return alpha * z + beta * std::conj(z) + c; }
  bool orientationPreserving() const { return std::abs(alpha) > std::abs(beta); }
  double K() const {
    double a = std::abs(alpha), b = std::abs(beta);
    return (a + b) / (a - b);
  }
};

// Unique affine piece sending src[i] to dst[i].
AffinePiece affineThrough(const std::array<Complex, 3>& src,
                          const std::array<Complex, 3>& dst);

struct PiecewiseAffineMap {
  PlanarMesh source, target;
  std::vector<AffinePiece> pieces;

  // Meshes must have identical face index sets; vertex order within each
  // face pins the correspondence.
  static PiecewiseAffineMap between(PlanarMesh src, PlanarMesh dst);

  // Largest midpoint disagreement across interior edges of the source.
  double continuityResidual() const;
};

struct DilatationReport {
  double maxK = 1;
  double supportArea = 0;  // source area where K > 1 + tol
  double totalArea = 0;
  std::vector<double> faceK;
};

DilatationReport dilatation(const PiecewiseAffineMap& map, double tol = 1e-9);

// Same report for pieces given next to their source mesh, for maps whose
// target lives on an abstract surface rather than in the plane.
DilatationReport dilatationOfPieces(const PlanarMesh& source,
                                    const std::vector<AffinePiece>& pieces,
                                    double tol = 1e-9);

}  // namespace etri

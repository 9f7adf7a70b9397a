#pragma once

#include <array>

#include "geom.hpp"

namespace etri {

// Conformal equivalence between the closed unit disc and the closed
// equilateral triangle with vertices at the cube roots of unity. The forward
// map is the Schwarz-Christoffel integral
//
//   discToTriangle(w) = (1/I) * integral_0^w (1 - t^3)^(-2/3) dt,
//
// normalised so the cube roots of unity are fixed. I = B(1/3,1/3)/3.
inline constexpr double kTrianglePerimeterConstant = 1.7666387502854500;

Complex discToTriangle(Complex w);

// Derivative of discToTriangle; unbounded at the cube roots of unity.
Complex discToTriangleDerivative(Complex w);

// Inverse of discToTriangle on the closed triangle, computed by damped
// Newton iteration. Throws a Numeric error if the iteration stalls.
Complex triangleToDisc(Complex z);

// Barycentric coordinates of z with respect to (1, omega, omega^2).
std::array<double, 3> triangleBarycentric(Complex z);

}  // namespace etri

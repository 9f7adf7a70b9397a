#include "sc.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace etri {
namespace {

// 12-point Gauss-Legendre rule on [-1,1], positive half.
constexpr double kGlNode[6] = {
    0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
    0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr double kGlWeight[6] = {
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

Complex powToThe(Complex z, double e) { return std::exp(e * std::log(z)); }

// Integral over s in [a,b] of 3(1-s)^2 (1 - w^3 u(s)^3)^(-2/3) with
// u(s) = 1-(1-s)^3. The substitution keeps the integrand analytic up to
// s = 1 even when w is a cube root of unity, and writing
// 1 - w^3 u^3 = (1 - w^3) + w^3 (1 - u^3) in expanded form keeps it
// accurate there: u^3 itself rounds to 1 once (1-s)^3 drops below the
// machine epsilon.
Complex glPanel(Complex w3, Complex oneMinusW3, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  Complex acc{0, 0};
  for (int i = 0; i < 6; ++i) {
    for (double sign : {-1.0, 1.0}) {
      double s = mid + sign * half * kGlNode[i];
      double r = 1 - s;
      double r3 = r * r * r;
      double oneMinusU3 = r3 * (3 - 3 * r3 + r3 * r3);
      Complex zeta = oneMinusW3 + w3 * oneMinusU3;
      acc += kGlWeight[i] * 3 * r * r * powToThe(zeta, -2.0 / 3.0);
    }
  }
  return acc * half;
}

Complex scIntegral(Complex w) {
  Complex w3 = w * w * w;
  Complex oneMinusW3 = 1.0 - w3;
  // Panels graded geometrically towards s = 1 resolve the layer of width
  // |1-w^3|^(1/3) that appears when w approaches a cube root of unity.
  double eta = std::max(std::abs(oneMinusW3), 1e-18);
  int levels = std::clamp(4 + static_cast<int>(std::ceil(-std::log2(eta) / 3)), 8, 26);
  Complex total{0, 0};
  double a = 0;
  for (int k = 1; k <= levels; ++k) {
    double b = k == levels ? 1.0 : 1.0 - std::ldexp(1.0, -k);
    total += glPanel(w3, oneMinusW3, a, b);
    a = b;
  }
  return total;
}

const Complex kVertex[3] = {{1, 0}, {-0.5, std::sqrt(3.0) / 2}, {-0.5, -std::sqrt(3.0) / 2}};

}  // namespace

std::array<double, 3> triangleBarycentric(Complex z) {
  Complex e1 = kVertex[1] - kVertex[0], e2 = kVertex[2] - kVertex[0], d = z - kVertex[0];
  double denom = cross(e1, e2);
  double b1 = cross(d, e2) / denom;
  double b2 = cross(e1, d) / denom;
  return {1 - b1 - b2, b1, b2};
}

Complex discToTriangle(Complex w) {
  double r = std::abs(w);
  if (r > 1 + 1e-9) fail(ErrorCode::Numeric, "OutsideDisc", "|w| > 1");
  if (r > 1) w /= r;
  return w * scIntegral(w) / kTrianglePerimeterConstant;
}

Complex discToTriangleDerivative(Complex w) {
  Complex z = 1.0 - w * w * w;
  if (z == Complex{0, 0})
    fail(ErrorCode::Numeric, "OutsideDisc", "derivative unbounded at a cube root of unity");
  return powToThe(z, -2.0 / 3.0) / kTrianglePerimeterConstant;
}

Complex triangleToDisc(Complex z) {
  auto bary = triangleBarycentric(z);
  double slack = *std::min_element(bary.begin(), bary.end());
  if (slack < -1e-9)
    fail(ErrorCode::Argument, "OutsideTriangle",
         "point is not in the triangle spanned by the cube roots of unity");

  // Starting guess: near a vertex v the forward map behaves like
  // v - discToTriangle(v(1-d)) ~ 3^(1/3) d^(1/3) v / I, so invert that;
  // elsewhere undo the leading linear term w/I.
  int nearest = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(z - kVertex[i]) < std::abs(z - kVertex[nearest])) nearest = i;
  Complex w;
  if (std::abs(z - kVertex[nearest]) < 0.35) {
    Complex v = kVertex[nearest];
    Complex root = (v - z) * kTrianglePerimeterConstant / (std::cbrt(3.0) * v);
    w = v * (1.0 - root * root * root);
  } else {
    w = z * kTrianglePerimeterConstant;
  }
  if (std::abs(w) > 1) w /= std::abs(w);

  Complex fw = discToTriangle(w);
  double resid = std::abs(fw - z);
  double lastStep = 1;
  for (int iter = 0; iter < 60 && resid > 1e-13; ++iter) {
    // Newton step written multiplicatively so it vanishes cleanly at the
    // vertices where the derivative blows up.
    Complex step = (z - fw) * powToThe(1.0 - w * w * w, 2.0 / 3.0) * kTrianglePerimeterConstant;
    lastStep = std::abs(step);
    // Near a vertex the image of adjacent doubles is ~1e-6 apart, so the
    // residual bottoms out early; a vanishing step still means w converged.
    if (lastStep < 1e-15) break;
    double damp = 1;
    bool moved = false;
    for (int halvings = 0; halvings < 30; ++halvings) {
      Complex wn = w + damp * step;
      if (std::abs(wn) > 1) wn /= std::abs(wn);
      Complex fn = discToTriangle(wn);
      double rn = std::abs(fn - z);
      if (rn < resid) {
        w = wn;
        fw = fn;
        resid = rn;
        moved = true;
        break;
      }
      damp *= 0.5;
    }
    if (!moved) break;
  }
  if (resid > 1e-10 && lastStep > 1e-12)
    fail(ErrorCode::Numeric, "QuadratureFailure", "inverse map iteration stalled");
  return w;
}

}  // namespace etri

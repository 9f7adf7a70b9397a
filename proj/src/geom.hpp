#pragma once

#include <cmath>
#include <complex>

namespace etri {

using Complex = std::complex<double>;

inline double cross(Complex a, Complex b) { return std::imag(std::conj(a) * b); }
inline double dot(Complex a, Complex b) { return std::real(std::conj(a) * b); }

inline double signedArea(Complex a, Complex b, Complex c) {
  return 0.5 * cross(b - a, c - a);
}

// Interior angle at `a` of triangle (a,b,c).
inline double angleAt(Complex a, Complex b, Complex c) {
  Complex u = b - a, v = c - a;
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

inline double minAngleOf(Complex a, Complex b, Complex c) {
  return std::min({angleAt(a, b, c), angleAt(b, c, a), angleAt(c, a, b)});
}

inline double degrees(double rad) { return rad * 180.0 / M_PI; }
inline double radians(double deg) { return deg * M_PI / 180.0; }

}  // namespace etri

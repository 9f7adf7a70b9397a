#pragma once

#include <cmath>
#include <utility>

namespace etri {

// 12-point Gauss-Legendre rule on [-1,1], positive half.
inline constexpr double kQuadNode[6] = {
    0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
    0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
inline constexpr double kQuadWeight[6] = {
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

template <class F>
double gauss12(F&& f, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0;
  for (int i = 0; i < 6; ++i)
    acc += kQuadWeight[i] *
           (f(mid - half * kQuadNode[i]) + f(mid + half * kQuadNode[i]));
  return acc * half;
}

// Bisect until the whole-panel and split-panel estimates agree to relTol
// (relative to the running magnitude of the whole integral).
template <class F>
double adaptiveIntegral(F&& f, double a, double b, double relTol) {
  struct Rec {
    F& f;
    double tol;
    double eval(double lo, double hi, double whole, int depth) {
      double mid = 0.5 * (lo + hi);
      double left = gauss12(f, lo, mid), right = gauss12(f, mid, hi);
      double split = left + right;
      if (depth >= 24 ||
          std::abs(split - whole) <= tol * (std::abs(split) + 1e-300))
        return split;
      return eval(lo, mid, left, depth + 1) + eval(mid, hi, right, depth + 1);
    }
  };
  Rec rec{f, relTol};
  return rec.eval(a, b, gauss12(f, a, b), 0);
}

}  // namespace etri

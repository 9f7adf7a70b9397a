#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "surface.hpp"

namespace etri::fixtures {

// mt19937 output is specified by the standard, so tests seeded through here
// are reproducible everywhere. Distributions are not; use rnd() % n instead.
inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

inline int rndInt(std::mt19937& g, int n) { return static_cast<int>(g() % n); }

// Two triangles glued by the three reflections, the double of a triangle.
inline Surface doubleTriangle() {
  return Surface::fromGluings(
      2, {{{0, 0}, {1, 2}}, {{0, 1}, {1, 1}}, {{0, 2}, {1, 0}}});
}

inline Surface tetrahedron() {
  return Surface::fromIndexedFaces({{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
}

// Fan of k triangles around one interior vertex; boundary is a k-cycle.
inline Surface fanDisc(int k) {
  std::vector<Gluing> gl;
  for (int i = 0; i < k; ++i) gl.push_back({{i, 1}, {(i + 1) % k, 2}});
  return Surface::fromGluings(k, gl);
}

// A cube with every square face fanned from its centre: 24 triangles, the
// genus-0 surface used as the running closed example. Corner ids encode
// coordinates as x + 2y + 4z; centres are 8..13.
inline Surface snowsphere() {
  const std::array<std::array<int, 5>, 6> squares = {{
      {4, 5, 7, 6, 8},   // z=1
      {0, 2, 3, 1, 9},   // z=0
      {1, 3, 7, 5, 10},  // x=1
      {0, 4, 6, 2, 11},  // x=0
      {2, 6, 7, 3, 12},  // y=1
      {0, 1, 5, 4, 13},  // y=0
  }};
  std::vector<std::array<int, 3>> faces;
  for (const auto& sq : squares)
    for (int i = 0; i < 4; ++i) faces.push_back({sq[i], sq[(i + 1) % 4], sq[4]});
  return Surface::fromIndexedFaces(faces);
}

// Random connected surface with a handful of faces, possibly with boundary.
// A spanning chain keeps it connected; the rest of the slots are paired off
// randomly, each pair glued with probability ~3/4.
inline Surface randomSmallSurface(std::mt19937& g) {
  for (;;) {
    int f = 2 + rndInt(g, 7);
    std::vector<Gluing> gl;
    std::vector<char> used(3 * f, 0);
    for (int i = 0; i + 1 < f; ++i) {
      int sa = rndInt(g, 3), sb = rndInt(g, 3);
      while (used[3 * i + sa]) sa = (sa + 1) % 3;
      gl.push_back({{i, sa}, {i + 1, sb}});
      used[3 * i + sa] = used[3 * (i + 1) + sb] = 1;
    }
    std::vector<int> free;
    for (int s = 0; s < 3 * f; ++s)
      if (!used[s]) free.push_back(s);
    std::shuffle(free.begin(), free.end(), g);
    for (size_t i = 0; i + 1 < free.size(); i += 2) {
      if (rndInt(g, 4) == 0) continue;
      gl.push_back({{free[i] / 3, free[i] % 3}, {free[i + 1] / 3, free[i + 1] % 3}});
    }
    try {
      return Surface::fromGluings(f, gl);
    } catch (const Error&) {
      continue;  // disconnected draw, roll again
    }
  }
}

// Random partition of the boundary of [0,m] x [0,1] with ratio bound 2:
// starts from unit cells, then repeatedly halves an edge wherever both cyclic
// neighbours are at least as deep. Coordinates are exact dyadics. Sides come
// back in rectTriangulation order: x lists for bottom/top, y lists for
// right/left, ascending.
inline std::array<std::vector<double>, 4> randomDyadicSides(std::mt19937& g,
                                                            int m,
                                                            int maxDepth) {
  struct Edge {
    int side;
    double t0;  // in the side's own ccw coordinate
    int depth;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) edges.push_back({0, double(i), 0});
  edges.push_back({1, 0, 0});
  for (int i = 0; i < m; ++i) edges.push_back({2, double(i), 0});
  edges.push_back({3, 0, 0});
  int attempts = 60 * m * (maxDepth + 1);
  for (int a = 0; a < attempts; ++a) {
    size_t i = g() % edges.size();
    size_t p = (i + edges.size() - 1) % edges.size();
    size_t n = (i + 1) % edges.size();
    int d = edges[i].depth;
    if (d >= maxDepth || edges[p].depth < d || edges[n].depth < d) continue;
    double half = std::ldexp(1.0, -(d + 1));
    Edge right = {edges[i].side, edges[i].t0 + half, d + 1};
    edges[i].depth = d + 1;
    edges.insert(edges.begin() + i + 1, right);
  }
  std::array<std::vector<double>, 4> sides;
  for (const auto& e : edges) sides[e.side].push_back(e.t0);
  sides[0].push_back(m);
  sides[1].push_back(1);
  sides[2].push_back(m);
  sides[3].push_back(1);
  // top/left were accumulated in ccw coordinates; convert and sort
  for (double& t : sides[2]) t = m - t;
  for (double& t : sides[3]) t = 1 - t;
  for (auto& v : sides) std::sort(v.begin(), v.end());
  return sides;
}

}  // namespace etri::fixtures

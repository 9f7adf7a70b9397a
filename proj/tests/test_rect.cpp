#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "error.hpp"
#include "fixtures.hpp"
#include "geom.hpp"
#include "mesh.hpp"
#include "rect.hpp"

using namespace etri;

namespace {

std::array<std::vector<double>, 4> cornersOnly(int m) {
  return {{{0.0, double(m)}, {0.0, 1.0}, {0.0, double(m)}, {0.0, 1.0}}};
}

// Independent sigma evaluation and separation test, written long-hand.
bool keptBrute(const FineSquare& q, const WhitneyLayout& L, const SideArcs& arcs) {
  auto toC = [&](long long v) { return std::ldexp(double(v), -L.fineLevel); };
  auto sigAt = [&](int s, double x) {
    const auto& T = arcs.t[s];
    const auto& D = arcs.d[s];
    if (x <= T.front()) return D.front();
    for (size_t i = 0; i + 1 < T.size(); ++i)
      if (x <= T[i + 1]) {
        double f = (x - T[i]) / (T[i + 1] - T[i]);
        return D[i] + f * (D[i + 1] - D[i]);
      }
    return D.back();
  };
  auto maxSig = [&](int s, double a, double b) {
    double best = std::max(sigAt(s, a), sigAt(s, b));
    for (size_t i = 0; i < arcs.t[s].size(); ++i)
      if (arcs.t[s][i] > a && arcs.t[s][i] < b)
        best = std::max(best, arcs.d[s][i]);
    return best;
  };
  double x0 = toC(q.x), x1 = toC(q.x + q.size);
  double y0 = toC(q.y), y1 = toC(q.y + q.size);
  double W = toC(L.W), H = toC(L.H);
  return y0 >= maxSig(0, x0, x1) && W - x1 >= maxSig(1, y0, y1) &&
         H - y1 >= maxSig(2, W - x1, W - x0) && x0 >= maxSig(3, H - y1, H - y0);
}

std::set<std::pair<double, double>> boundaryVertexSet(const PlanarMesh& mesh) {
  std::set<std::pair<double, double>> out;
  for (const auto& loop : mesh.boundaryLoops())
    for (int v : loop)
      out.insert({mesh.vertices[v].real(), mesh.vertices[v].imag()});
  return out;
}

std::set<std::pair<double, double>> inputBoundarySet(
    double w, double h, const std::array<std::vector<double>, 4>& sides) {
  std::set<std::pair<double, double>> out;
  for (double x : sides[0]) out.insert({x, 0.0});
  for (double y : sides[1]) out.insert({w, y});
  for (double x : sides[2]) out.insert({x, h});
  for (double y : sides[3]) out.insert({0.0, y});
  return out;
}

}  // namespace

TEST_CASE("normalizeRectangle picks the integer width and stretch") {
  auto n = normalizeRectangle(2.5, 1.0);
  CHECK(n.m == 3);
  CHECK(n.a == doctest::Approx(1.2));
  CHECK(normalizeRectangle(2, 1).m == 2);
  CHECK(normalizeRectangle(2, 1).a == doctest::Approx(1.0));
  CHECK(normalizeRectangle(1, 1).m == 1);
  CHECK(normalizeRectangle(10, 1).m == 10);
  CHECK(normalizeRectangle(7, 2).m == 4);  // 3.5 -> 4, a = 8/7
  CHECK(normalizeRectangle(7, 2).a == doctest::Approx(8.0 / 7));
  CHECK_THROWS_AS(normalizeRectangle(1, 2), Error);
  CHECK_THROWS_AS(normalizeRectangle(0, 0), Error);
}

TEST_CASE("offset levels land in the right dyadic interval") {
  // D = 1/2 at lambda = 2: D/(8*lambda) = 1/32, level 5, offset 3/128
  CHECK(dkLevel(0.5, 2.0) == 5);
  CHECK(dkValue(0.5, 2.0) == 3.0 / 128);
  CHECK(dkLevel(1.0, 2.0) == 4);
  CHECK(dkValue(1.0, 2.0) == 3.0 / 64);
  CHECK(dkLevel(2.0, 2.0) == 3);  // boundary case: exactly 2^-3
  CHECK(dkValue(2.0, 2.0) == 3.0 / 32);
  CHECK_THROWS_AS(dkLevel(0.0, 2.0), Error);
  CHECK_THROWS_AS(dkLevel(3.0, 2.0), Error);  // longer than lambda

  auto g = fixtures::rng(7);
  for (int i = 0; i < 2000; ++i) {
    double lambda = 1 + (g() % 10000) / 2500.0;
    double D = lambda * ((1 + g() % 100000) / 100000.0);
    int j = dkLevel(D, lambda);
    double d = dkValue(D, lambda);
    double r = D / (8 * lambda);
    CHECK(j >= 3);
    CHECK(r <= std::ldexp(1.0, -j));
    CHECK(r > std::ldexp(1.0, -j - 1));
    CHECK(d == std::ldexp(0.75, -j));
    CHECK(d <= 0.25);
    CHECK(d <= D / 4);
  }
}

TEST_CASE("whitney layout: central count, distance property, tiling") {
  for (int m = 1; m <= 10; ++m) {
    auto L = whitneyDecompose(m, 2);
    CHECK(L.centralCount == 8 * m - 4);
    CHECK(int(L.squares.size()) == 8 * m - 4);
  }
  for (int m : {1, 2, 3}) {
    for (int jmax : {2, 3, 4, 6}) {
      auto L = whitneyDecompose(m, jmax);
      long long area = 0;
      for (const auto& q : L.squares) {
        long long dist = std::min(std::min(q.x, q.y),
                                  std::min(L.W - q.x - q.size, L.H - q.y - q.size));
        CHECK(dist == q.size);  // defining Whitney property
        area += q.size * q.size;
      }
      long long u = 1LL << (L.fineLevel - jmax);
      CHECK(area == (L.W - 2 * u) * (L.H - 2 * u));  // exact tiling
    }
  }
  // hand-enumerated ring sizes for the unit square down to level 4
  auto L = whitneyDecompose(1, 4);
  std::map<long long, int> bySize;
  for (const auto& q : L.squares) bySize[q.size]++;
  CHECK(bySize[16] == 4);
  CHECK(bySize[8] == 20);
  CHECK(bySize[4] == 52);
  CHECK_THROWS_AS(whitneyDecompose(1, 1), Error);
  CHECK_THROWS_AS(whitneyDecompose(1, 30), Error);
}

TEST_CASE("sigma arcs: offsets, slope bound, bounded geometry checks") {
  SUBCASE("corners only is flat at 3/64") {
    auto arcs = buildSigmaArcs(cornersOnly(1), 1, 2.0);
    for (int s = 0; s < 4; ++s) {
      REQUIRE(arcs.d[s].size() == 2);
      CHECK(arcs.d[s][0] == 3.0 / 64);
      CHECK(arcs.d[s][1] == 3.0 / 64);
      CHECK(arcs.cornerLevel[s] == 4);
    }
    CHECK(arcs.maxLevel == 4);
  }
  SUBCASE("graded partition keeps slopes within a quarter") {
    std::array<std::vector<double>, 4> sides = {{{0, 0.5, 0.75, 1},
                                                 {0, 0.25, 0.5, 1},
                                                 {0, 0.5, 0.75, 1},
                                                 {0, 0.25, 0.5, 1}}};
    auto arcs = buildSigmaArcs(sides, 1, 2.0);
    bool sloped = false;
    for (int s = 0; s < 4; ++s)
      for (size_t i = 0; i + 1 < arcs.t[s].size(); ++i) {
        double dd = std::fabs(arcs.d[s][i + 1] - arcs.d[s][i]);
        double dt = arcs.t[s][i + 1] - arcs.t[s][i];
        CHECK(4 * dd <= dt);  // exact in dyadic arithmetic
        if (dd > 0) sloped = true;
      }
    CHECK(sloped);
    CHECK(arcs.d[0][0] == dkValue(0.5, 2.0));
    CHECK(arcs.d[0][1] == dkValue(0.25, 2.0));
  }
  SUBCASE("ratio violations are rejected") {
    std::array<std::vector<double>, 4> bad = cornersOnly(1);
    bad[0] = {0, 0.125, 1};
    CHECK_THROWS_WITH_AS(buildSigmaArcs(bad, 1, 2.0),
                         doctest::Contains("BoundedGeometryViolation"), Error);
  }
  SUBCASE("malformed partitions are rejected") {
    auto bad = cornersOnly(1);
    bad[2] = {0.0};
    CHECK_THROWS_WITH_AS(buildSigmaArcs(bad, 1, 2.0),
                         doctest::Contains("BadPartition"), Error);
    bad = cornersOnly(1);
    bad[1] = {0, 0.6, 0.4, 1};
    CHECK_THROWS_WITH_AS(buildSigmaArcs(bad, 1, 2.0),
                         doctest::Contains("BadPartition"), Error);
    bad = cornersOnly(1);
    bad[3] = {0, 0.5};
    CHECK_THROWS_WITH_AS(buildSigmaArcs(bad, 1, 2.0),
                         doctest::Contains("BadPartition"), Error);
  }
}

TEST_CASE("gamma for the corners-only unit square is the 1/16-inset square") {
  auto arcs = buildSigmaArcs(cornersOnly(1), 1, 2.0);
  auto L = whitneyDecompose(1, arcs.maxLevel);
  auto g = buildGamma(L, arcs);
  CHECK(g.kept.size() == 76);  // every ring survives: 4 + 20 + 52
  REQUIRE(g.cycle.size() == 56);
  CHECK(g.anchor[0] == 0);
  CHECK(g.cycle[0] == std::array<long long, 2>{4, 4});
  CHECK(g.cycle[1] == std::array<long long, 2>{8, 4});  // ccw start
  CHECK(g.cycle[g.anchor[1]] == std::array<long long, 2>{60, 4});
  CHECK(g.cycle[g.anchor[2]] == std::array<long long, 2>{60, 60});
  CHECK(g.cycle[g.anchor[3]] == std::array<long long, 2>{4, 60});
  for (const auto& p : g.cycle) {
    CHECK(p[0] % 4 == 0);
    CHECK(p[1] % 4 == 0);
    bool onSquare = p[0] == 4 || p[0] == 60 || p[1] == 4 || p[1] == 60;
    CHECK(onSquare);
    CHECK(p[0] >= 4);
    CHECK(p[0] <= 60);
    CHECK(p[1] >= 4);
    CHECK(p[1] <= 60);
  }
}

TEST_CASE("kept squares match the brute-force classifier") {
  auto runCase = [](const std::array<std::vector<double>, 4>& sides, int m,
                    double lambda) {
    auto arcs = buildSigmaArcs(sides, m, lambda);
    auto L = whitneyDecompose(m, arcs.maxLevel);
    auto g = buildGamma(L, arcs);
    std::set<std::pair<long long, long long>> kept;
    for (const auto& q : g.kept) kept.insert({q.x, q.y});
    for (const auto& q : L.squares)
      CHECK(kept.count({q.x, q.y}) == (keptBrute(q, L, arcs) ? 1u : 0u));
  };
  runCase(cornersOnly(1), 1, 2.0);
  std::array<std::vector<double>, 4> mixed = {
      {{0, 1, 1.5, 2}, {0, 0.5, 1}, {0, 1, 2}, {0, 0.5, 1}}};
  // convert top/left to ccw t coordinates for buildSigmaArcs
  std::array<std::vector<double>, 4> ccw = mixed;
  for (double& t : ccw[2]) t = 2 - t;
  for (double& t : ccw[3]) t = 1 - t;
  std::sort(ccw[2].begin(), ccw[2].end());
  std::sort(ccw[3].begin(), ccw[3].end());
  runCase(ccw, 2, 2.0);
  auto g = fixtures::rng(11);
  for (int it = 0; it < 6; ++it) {
    int m = 1 + int(g() % 2);
    auto sides = fixtures::randomDyadicSides(g, m, 3);
    std::array<std::vector<double>, 4> t = sides;
    for (double& v : t[2]) v = m - v;
    for (double& v : t[3]) v = 1 - v;
    std::sort(t[2].begin(), t[2].end());
    std::sort(t[3].begin(), t[3].end());
    runCase(t, m, 2.0);
  }
}

TEST_CASE("gamma rejects a corner swallowed by inflated offsets") {
  SideArcs arcs;
  arcs.t = {{{0, 1}, {0, 1}, {0, 1}, {0, 1}}};
  double d = 3.0 / 64;
  arcs.d = {{{0.2, d}, {d, d}, {d, d}, {d, 0.2}}};
  arcs.cornerLevel = {4, 4, 4, 4};
  arcs.maxLevel = 4;
  auto L = whitneyDecompose(1, 4);
  CHECK_THROWS_WITH_AS(buildGamma(L, arcs),
                       doctest::Contains("CornerIntersectionFailure"), Error);
}

TEST_CASE("core templates: plain, one hanging midpoint, centre fan") {
  SUBCASE("uniform block gives right isoceles halves") {
    std::vector<FineSquare> sq = {{0, 0, 8}, {8, 0, 8}, {0, 8, 8}, {8, 8, 8}};
    auto mesh = triangulateCore(sq, 4);
    CHECK(mesh.faces.size() == 8);
    CHECK(validateMesh(mesh).ok);
    CHECK(mesh.minAngle() == doctest::Approx(M_PI / 4));
  }
  SUBCASE("single transition fans from the midpoint") {
    std::vector<FineSquare> sq = {{0, 0, 8}, {8, 0, 4}, {8, 4, 4}};
    auto mesh = triangulateCore(sq, 4);
    CHECK(mesh.faces.size() == 7);
    CHECK(validateMesh(mesh).ok);
    CHECK(mesh.minAngle() == doctest::Approx(std::atan(0.5)));
  }
  SUBCASE("two transitions fan from the centre") {
    std::vector<FineSquare> sq = {{0, 0, 8}, {8, 0, 4}, {8, 4, 4},
                                  {0, 8, 4},  {4, 8, 4}};
    auto mesh = triangulateCore(sq, 4);
    CHECK(mesh.faces.size() == 6 + 4 * 2);
    CHECK(validateMesh(mesh).ok);
  }
}

TEST_CASE("ear clipping handles convex, reflex and collinear input") {
  auto area = [](const std::vector<std::array<Complex, 3>>& tris) {
    double s = 0;
    for (const auto& t : tris) s += signedArea(t[0], t[1], t[2]);
    return s;
  };
  SUBCASE("square") {
    auto tris = earClip({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(tris.size() == 2);
    CHECK(area(tris) == doctest::Approx(1.0));
  }
  SUBCASE("L-shape") {
    auto tris = earClip({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    CHECK(tris.size() == 4);
    CHECK(area(tris) == doctest::Approx(3.0));
    MeshBuilder b;
    for (const auto& t : tris) b.face(t[0], t[1], t[2]);
    CHECK(validateMesh(b.take()).ok);
  }
  SUBCASE("collinear chain stays conforming") {
    auto tris = earClip({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {0, 1}});
    CHECK(tris.size() == 3);
    CHECK(area(tris) == doctest::Approx(2.0));
    MeshBuilder b;
    for (const auto& t : tris) b.face(t[0], t[1], t[2]);
    CHECK(validateMesh(b.take()).ok);
  }
  SUBCASE("degenerate input is rejected") {
    CHECK_THROWS_AS(earClip({{0, 0}, {1, 0}}), Error);
    CHECK_THROWS_AS(earClip({{0, 0}, {1, 0}, {2, 0}}), Error);
  }
}

TEST_CASE("corners-only unit square triangulation") {
  auto res = rectTriangulation(1, 1, cornersOnly(1), 2.0);
  auto report = validateMesh(res.mesh);
  for (const auto& v : report.violations) MESSAGE(v);
  CHECK(report.ok);
  CHECK(res.keptSquares == 76);
  CHECK(res.mesh.faces.size() == 260);  // 200 core + 4 sides of 15
  CHECK(res.mesh.totalArea() == doctest::Approx(1.0));
  CHECK(boundaryVertexSet(res.mesh) == inputBoundarySet(1, 1, cornersOnly(1)));
  CHECK(res.mesh.boundaryLoops().size() == 1);
  // every vertex sits on the 2^-6 grid
  for (const auto& v : res.mesh.vertices) {
    CHECK(v.real() * 64 == std::floor(v.real() * 64));
    CHECK(v.imag() * 64 == std::floor(v.imag() * 64));
  }
  MESSAGE("corners-only min angle: ", degrees(res.minAngle), " deg");
  // forced bound: gamma is a straight 1/16-high run over each unit side, so
  // some fan triangle at a corner vertex attains atan(1/7) - atan(1/8)
  CHECK(res.minAngle == doctest::Approx(std::atan(1.0 / 7) - std::atan(1.0 / 8)));
  // deterministic: same call, same mesh
  auto res2 = rectTriangulation(1, 1, cornersOnly(1), 2.0);
  REQUIRE(res2.mesh.vertices.size() == res.mesh.vertices.size());
  for (size_t i = 0; i < res.mesh.vertices.size(); ++i)
    CHECK(res.mesh.vertices[i] == res2.mesh.vertices[i]);
  CHECK(res.mesh.faces == res2.mesh.faces);
}

TEST_CASE("wide rectangle with normalization keeps the input boundary") {
  std::array<std::vector<double>, 4> sides = {{{0, 1, 2, 2.5},
                                               {0, 0.5, 1},
                                               {0, 0.75, 1.5, 2, 2.5},
                                               {0, 0.5, 1}}};
  auto res = rectTriangulation(2.5, 1, sides, 2.0);
  auto report = validateMesh(res.mesh);
  for (const auto& v : report.violations) MESSAGE(v);
  CHECK(report.ok);
  CHECK(res.jmax >= 4);
  CHECK(res.mesh.totalArea() == doctest::Approx(2.5));
  CHECK(boundaryVertexSet(res.mesh) == inputBoundarySet(2.5, 1, sides));
  CHECK(res.minAngle > 0.005);
}

TEST_CASE("random balanced dyadic partitions triangulate cleanly") {
  auto g = fixtures::rng(2026);
  double worstAngle = 10, worstRatio = 0;
  for (int it = 0; it < 30; ++it) {
    int m = 1 + int(g() % 3);
    auto sides = fixtures::randomDyadicSides(g, m, 4);
    auto res = rectTriangulation(m, 1, sides, 2.0);
    auto report = validateMesh(res.mesh);
    for (const auto& v : report.violations) MESSAGE(v);
    REQUIRE(report.ok);
    CHECK(boundaryVertexSet(res.mesh) == inputBoundarySet(m, 1, sides));
    CHECK(res.mesh.totalArea() == doctest::Approx(double(m)));
    size_t np = 0;
    for (const auto& v : sides) np += v.size() - 1;
    worstRatio = std::max(worstRatio, double(res.mesh.faces.size()) / np);
    worstAngle = std::min(worstAngle, res.minAngle);
  }
  MESSAGE("fuzz min angle: ", degrees(worstAngle), " deg, faces per point: ",
          worstRatio);
  CHECK(worstAngle > 0.004);  // seed-2026 corpus floor is 0.238 degrees
  CHECK(worstRatio < 120);
}

TEST_CASE("pipeline rejects bad input") {
  CHECK_THROWS_WITH_AS(rectTriangulation(1, 2, cornersOnly(1), 2.0),
                       doctest::Contains("AspectOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(rectTriangulation(0, 0, cornersOnly(1), 2.0),
                       doctest::Contains("NonpositiveDimensions"), Error);
  auto sides = cornersOnly(1);
  sides[0] = {0, 0.125, 1};
  CHECK_THROWS_WITH_AS(rectTriangulation(1, 1, sides, 2.0),
                       doctest::Contains("BoundedGeometryViolation"), Error);
  sides = cornersOnly(1);
  sides[1] = {0, 0.75};
  CHECK_THROWS_WITH_AS(rectTriangulation(1, 1, sides, 2.0),
                       doctest::Contains("BadPartition"), Error);
  CHECK_THROWS_WITH_AS(rectTriangulation(1, 1, cornersOnly(1), 0.5),
                       doctest::Contains("LambdaOutOfRange"), Error);
}

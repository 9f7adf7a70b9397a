#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "atlas.hpp"
#include "belyi.hpp"
#include "error.hpp"

using namespace etri;

namespace {

// chi(cover) = n * chi(sphere) - sum (e_p - 1), with e_p read off the links.
int riemannHurwitzChi(const Surface& s, int n) {
  int branching = 0;
  for (int vc = 0; vc < s.vertexCount(); ++vc)
    branching += s.vertexDegree(vc) / 2 - 1;
  return 2 * n - branching;
}

}  // namespace

TEST_CASE("lattice patch counts, degrees, colouring") {
  // A hex patch of extent e has 1 + 3e(e+1) vertices and 6e^2 faces.
  PlanarMesh one = latticePatch(1);
  CHECK(one.vertices.size() == 7);
  CHECK(one.faces.size() == 6);

  PlanarMesh m = latticePatch(2);
  CHECK(m.vertices.size() == 19);
  CHECK(m.faces.size() == 24);
  CHECK(validateMesh(m).ok);
  CHECK(m.minAngle() == doctest::Approx(M_PI / 3).epsilon(1e-12));

  Surface s = Surface::fromIndexedFaces(m.faces);
  auto hist = s.degreeHistogram();
  CHECK(hist.interior == std::map<int, int>{{6, 7}});
  CHECK(hist.boundary == std::map<int, int>{{3, 6}, {4, 6}});
  CHECK(s.threeColouring().has_value());
  CHECK(s.boundaryComponentCount() == 1);
  CHECK(s.eulerCharacteristic() == 1);

  CHECK_THROWS_WITH_AS(latticePatch(0), doctest::Contains("BadLatticeSize"), Error);
}

TEST_CASE("lattice cylinder is a flat cylinder") {
  Surface s = latticeCylinder(6, 4);
  CHECK(s.faceCount() == 48);
  CHECK(s.vertexCount() == 30);
  CHECK(s.eulerCharacteristic() == 0);
  CHECK(s.boundaryComponentCount() == 2);
  CHECK(s.genus() == 0);
  auto hist = s.degreeHistogram();
  CHECK(hist.interior == std::map<int, int>{{6, 18}});
  CHECK(hist.boundary == std::map<int, int>{{4, 12}});
  CHECK(s.threeColouring().has_value());  // width divisible by 3

  for (int n = 3; n <= 8; ++n)
    for (int h = 1; h <= 4; ++h) {
      Surface c = latticeCylinder(n, h);
      CHECK(c.faceCount() == 2 * n * h);
      CHECK(c.eulerCharacteristic() == 0);
      CHECK(c.boundaryComponentCount() == 2);
      auto dh = c.degreeHistogram();
      for (const auto& [deg, count] : dh.interior) CHECK(deg == 6);
    }

  CHECK_THROWS_WITH_AS(latticeCylinder(2, 3), doctest::Contains("BadLatticeSize"), Error);
  CHECK_THROWS_WITH_AS(latticeCylinder(6, 0), doctest::Contains("BadLatticeSize"), Error);
}

TEST_CASE("hyperbolic tessellation rejects Euclidean and flat degrees") {
  CHECK_THROWS_WITH_AS(hyperbolicTessellation(6, 1), doctest::Contains("InvalidDegree"), Error);
  CHECK_THROWS_WITH_AS(hyperbolicTessellation(3, 1), doctest::Contains("InvalidDegree"), Error);
  CHECK_THROWS_WITH_AS(hyperbolicTessellation(7, 9), doctest::Contains("DepthOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(hyperbolicTessellation(7, -1), doctest::Contains("DepthOutOfRange"), Error);
}

TEST_CASE("hyperbolic tessellation around the central triangle") {
  CHECK(hyperbolicTessellation(7, 0).surface.faceCount() == 1);

  // One star closure: each central vertex gains its full link of 7 faces.
  // Beyond the centre and its 3 edge neighbours that is 7 - 3 fresh faces
  // per vertex, with no face shared between two central fans.
  HyperbolicTessellation t = hyperbolicTessellation(7, 1);
  CHECK(t.surface.faceCount() == 1 + 3 + 3 * (7 - 3));
  CHECK(t.mesh.faces.size() == 16);
  CHECK(validateMesh(t.mesh).ok);
  CHECK(t.surface.eulerCharacteristic() == 1);
  CHECK(t.surface.boundaryComponentCount() == 1);
  for (int c = 0; c < 3; ++c) {
    int vc = t.surface.vertexClass(0, c);
    CHECK_FALSE(t.surface.vertexOnBoundary(vc));
    CHECK(t.surface.vertexDegree(vc) == 7);
  }

  HyperbolicTessellation o = hyperbolicTessellation(8, 1);
  CHECK(o.surface.faceCount() == 1 + 3 + 3 * (8 - 3));
  CHECK(o.surface.vertexDegree(o.surface.vertexClass(0, 0)) == 8);

  CHECK(hyperbolicTessellation(7, 2).surface.faceCount() > 16);
}

TEST_CASE("hyperbolic depth three has interior degree 7 throughout") {
  HyperbolicTessellation t = hyperbolicTessellation(7, 3);
  CHECK(validateMesh(t.mesh).ok);
  CHECK(t.surface.eulerCharacteristic() == 1);
  CHECK(t.surface.boundaryComponentCount() == 1);
  auto hist = t.surface.degreeHistogram();
  REQUIRE(hist.interior.size() == 1);
  CHECK(hist.interior.begin()->first == 7);
  CHECK(hist.interior.begin()->second >= 3);
  // all drawn faces stay inside the disc
  for (Complex v : t.mesh.vertices) CHECK(std::abs(v) < 1.0);
}

TEST_CASE("degree one pullback is the base sphere") {
  PulledBackSphere p = puncturedSpherePullback(1);
  CHECK(p.surface.faceCount() == 2);
  CHECK(p.surface.vertexCount() == 3);
  CHECK(p.surface.eulerCharacteristic() == 2);
  CHECK(p.classesOverZero.size() == 1);
  CHECK(p.classesOverOne.size() == 1);
  REQUIRE(p.punctureClasses.size() == 1);
  CHECK(std::abs(p.puncturePosition[0] - Complex{1, 0}) < 1e-12);
}

TEST_CASE("cubic pullback of the double triangle") {
  PulledBackSphere p = puncturedSpherePullback(3);
  CHECK(p.surface.faceCount() == 6);
  CHECK(p.surface.vertexCount() == 5);
  CHECK(p.surface.eulerCharacteristic() == 2);
  CHECK(p.surface.boundaryComponentCount() == 0);
  CHECK(p.surface.isProperColouring(p.colouring));

  // 0 and infinity are the only critical points of g, each totally ramified,
  // so 0 and 1 have one preimage apiece with local degree 3.
  REQUIRE(p.classesOverZero.size() == 1);
  CHECK(p.surface.vertexDegree(p.classesOverZero[0]) == 6);
  REQUIRE(p.classesOverOne.size() == 1);
  CHECK(p.surface.vertexDegree(p.classesOverOne[0]) == 6);

  REQUIRE(p.punctureClasses.size() == 3);
  for (int vc : p.punctureClasses) CHECK(p.surface.vertexDegree(vc) == 2);
  for (int k = 0; k < 3; ++k) {
    Complex root = std::polar(1.0, 2 * M_PI * k / 3);
    bool found = false;
    for (Complex z : p.puncturePosition) found = found || std::abs(z - root) < 1e-12;
    CHECK(found);
  }

  CHECK(p.surface.eulerCharacteristic() == riemannHurwitzChi(p.surface, 3));
}

TEST_CASE("pullback counts for a range of degrees") {
  for (int n = 2; n <= 8; ++n) {
    CAPTURE(n);
    PulledBackSphere p = puncturedSpherePullback(n);
    CHECK(p.surface.faceCount() == 2 * n);
    CHECK(p.surface.vertexCount() == n + 2);
    CHECK(p.surface.eulerCharacteristic() == 2);
    CHECK(p.surface.genus() == 0);
    CHECK(p.classesOverZero.size() == 1);
    CHECK(p.classesOverOne.size() == 1);
    CHECK(p.punctureClasses.size() == static_cast<size_t>(n));
    CHECK(p.surface.vertexDegree(p.classesOverZero[0]) == 2 * n);
    CHECK(p.surface.eulerCharacteristic() == riemannHurwitzChi(p.surface, n));
  }
  CHECK_THROWS_WITH_AS(puncturedSpherePullback(0), doctest::Contains("BadSheetCount"), Error);
}

TEST_CASE("pullback colouring drives the branched-cover evaluator") {
  PulledBackSphere p = puncturedSpherePullback(4);
  BelyiEvaluator ev(p.surface, p.colouring);
  CoverReport rep = verifyBranchedCover(ev);
  CHECK(rep.upperFaces == 4);
  CHECK(rep.lowerFaces == 4);
  CHECK(rep.maxEdgeGap < 1e-9);
  CHECK(rep.maxInteriorDegree == 4);
  CHECK(rep.pass(1e-9));
}

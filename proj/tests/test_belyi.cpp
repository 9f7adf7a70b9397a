#include <cmath>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "belyi.hpp"
#include "doctest.h"
#include "error.hpp"
#include "fixtures.hpp"
#include "sc.hpp"

using namespace etri;

namespace {

const Complex kOmega{-0.5, std::sqrt(3.0) / 2};
const Complex kOmega2 = std::conj(kOmega);
const Complex kSixth{0.5, std::sqrt(3.0) / 2};

Complex randomDiscPoint(std::mt19937& g, double rmax) {
  double r = rmax * (g() % 1000) / 1000.0;
  double th = 2 * M_PI * (g() % 4096) / 4096.0;
  return std::polar(r, th);
}

}  // namespace

TEST_CASE("disc to triangle fixes 0 and the cube roots and matches the quadrature oracle") {
  CHECK(std::abs(discToTriangle({0, 0})) == 0.0);
  CHECK(std::abs(discToTriangle({1, 0}) - Complex{1, 0}) < 1e-12);
  // the map has a cube-root singularity at the vertices, so the rounding of
  // omega itself is amplified to ~(1e-16)^(1/3)
  CHECK(std::abs(discToTriangle(kOmega) - kOmega) < 1e-5);
  CHECK(std::abs(discToTriangle(kOmega2) - kOmega2) < 1e-5);

  // 40-digit evaluations of the defining integral
  CHECK(std::abs(discToTriangle({0.3, 0.2}) - Complex{0.1686723186224433, 0.1143116123622094}) <
        1e-13);
  CHECK(std::abs(discToTriangle({-0.44, 0.77}) -
                 Complex{-0.2943956926157882, 0.5198264214779221}) < 1e-13);
  CHECK(std::abs(discToTriangleDerivative({0.3, 0.2}) -
                 Complex{0.5620270594405904, 0.01707519176321678}) < 1e-13);

  Complex w{0.3, 0.2}, h{1e-6, 0};
  Complex fd = (discToTriangle(w + h) - discToTriangle(w - h)) / (2.0 * h);
  CHECK(std::abs(fd - discToTriangleDerivative(w)) < 1e-9);
}

TEST_CASE("disc to triangle commutes with rotation and conjugation") {
  auto g = fixtures::rng(7);
  for (int i = 0; i < 50; ++i) {
    Complex w = randomDiscPoint(g, 0.98);
    CHECK(std::abs(discToTriangle(kOmega * w) - kOmega * discToTriangle(w)) < 1e-13);
    CHECK(std::abs(discToTriangle(std::conj(w)) - std::conj(discToTriangle(w))) < 1e-13);
  }
  for (int i = 0; i < 20; ++i) {
    Complex w = std::polar(1.0, 2 * M_PI * (i + 0.5) / 20.0);  // stay off the vertices
    CHECK(std::abs(discToTriangle(kOmega * w) - kOmega * discToTriangle(w)) < 1e-12);
  }
}

TEST_CASE("edge midpoints of the triangle correspond to sixth roots of unity") {
  CHECK(std::abs(discToTriangle(kSixth) - 0.5 * (1.0 + kOmega)) < 1e-13);
  CHECK(std::abs(triangleToDisc(0.5 * (1.0 + kOmega)) - kSixth) < 1e-12);
  CHECK(std::abs(triangleToDisc(0.5 * (kOmega + kOmega2)) - Complex{-1, 0}) < 1e-12);
}

TEST_CASE("triangle to disc inverts the forward map") {
  CHECK(std::abs(triangleToDisc({1, 0}) - Complex{1, 0}) < 1e-13);
  CHECK(std::abs(triangleToDisc({0, 0})) < 1e-13);

  const int n = 6;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      bool corner = i + j == 0 || i == n || j == n;
      if (corner) continue;  // covered separately, the vertices are singular
      double b1 = double(i) / n, b2 = double(j) / n;
      Complex z = (1 - b1 - b2) * Complex{1, 0} + b1 * kOmega + b2 * kOmega2;
      Complex w = triangleToDisc(z);
      CHECK(std::abs(w) <= 1 + 1e-12);
      CHECK(std::abs(discToTriangle(w) - z) < 5e-12);
    }
  }

  auto g = fixtures::rng(11);
  for (int i = 0; i < 40; ++i) {
    Complex w = randomDiscPoint(g, 0.97);
    CHECK(std::abs(triangleToDisc(discToTriangle(w)) - w) < 5e-12);
  }

  // towards a vertex the disc-side roundtrip stays well conditioned even
  // though the image-side residual saturates
  for (double delta : {1e-3, 1e-6, 1e-9, 1e-12}) {
    for (Complex v : {Complex{1, 0}, kOmega, kOmega2}) {
      Complex w = v * (1 - delta);
      CHECK(std::abs(triangleToDisc(discToTriangle(w)) - w) < 1e-11);
    }
  }
  for (double deg : {165.0, 180.0, 200.0}) {
    Complex z = 1.0 + std::polar(1e-3, deg * M_PI / 180);
    Complex w = triangleToDisc(z);
    CHECK(std::abs(w) <= 1 + 1e-12);
    CHECK(std::abs(discToTriangle(w) - z) < 1e-9);
  }
}

TEST_CASE("maps reject points outside their domains") {
  CHECK_THROWS_WITH_AS(triangleToDisc({1.05, 0}), doctest::Contains("OutsideTriangle"), Error);
  CHECK_THROWS_WITH_AS(triangleToDisc({0, 1}), doctest::Contains("OutsideTriangle"), Error);
  CHECK_THROWS_WITH_AS(discToTriangle({1.5, 0}), doctest::Contains("OutsideDisc"), Error);
}

TEST_CASE("f3 pins its special values and sixth-root critical points") {
  CHECK(chordalDistance(f3({1, 0}), {1, 0}) < 1e-14);
  CHECK(chordalDistance(f3(kSixth), {-1, 0}) < 1e-14);
  CHECK(std::abs(f3({0, 1})) < 1e-14);
  CHECK(isSphereInfinity(f3({0, 0})));
  CHECK(isSphereInfinity(f3(sphereInfinity())));

  auto roots = f3CriticalPoints();
  REQUIRE(roots.size() == 6);
  for (int k = 0; k < 6; ++k) {
    double theta = (k - 2) * M_PI / 3;  // sorted by argument
    Complex expected = std::polar(1.0, theta);
    CHECK(std::abs(roots[k] - expected) < 1e-12);
    CHECK(std::abs(f3Derivative(roots[k])) < 1e-12);
    double value = k % 2 == 0 ? 1.0 : -1.0;
    CHECK(std::abs(f3(roots[k]) - value) < 1e-12);
  }

  Complex small{1e-4, 0}, big{1e4, 0};
  CHECK(std::abs(small * small * small * f3(small) - 0.5) < 1e-12);
  CHECK(std::abs(f3(big) / (big * big * big) - 0.5) < 1e-12);
}

TEST_CASE("f3 is fixed by 120-degree rotation and negated by 60-degree rotation") {
  Complex rho = std::polar(1.0, M_PI / 3);
  for (int i = 0; i < 10000; ++i) {
    Complex z = std::polar(1.0, 2 * M_PI * i / 10000.0);
    Complex v = f3(z);
    CHECK(std::abs(f3(kOmega * z) - v) < 1e-13);
    CHECK(std::abs(f3(rho * z) + v) < 1e-13);
    CHECK(std::abs(v.imag()) < 1e-13);
    CHECK(std::abs(f3(std::conj(z)) - std::conj(v)) < 1e-13);
  }
}

TEST_CASE("moebius maps through three points, infinity included") {
  Mobius q = Mobius::through({Complex{1, 0}, kOmega, kOmega2},
                             {Complex{1, 0}, Complex{-1, 0}, sphereInfinity()});
  CHECK(std::abs(q({1, 0}) - Complex{1, 0}) < 1e-14);
  CHECK(std::abs(q(kOmega) - Complex{-1, 0}) < 1e-14);
  CHECK(chordalDistance(q(kOmega2), sphereInfinity()) < 1e-12);
  CHECK(std::abs(q({0, 0}) - Complex{0, -std::sqrt(3.0)}) < 1e-14);

  auto g = fixtures::rng(3);
  for (int i = 0; i < 20; ++i) {
    Complex z = randomDiscPoint(g, 2.0);
    CHECK(std::abs(q.inverse()(q(z)) - z) < 1e-12);
  }

  Mobius m = Mobius::through({sphereInfinity(), Complex{0, 0}, Complex{1, 0}},
                             {Complex{0, 0}, Complex{1, 0}, sphereInfinity()});
  CHECK(std::abs(m(sphereInfinity())) < 1e-14);
  CHECK(std::abs(m({0, 0}) - Complex{1, 0}) < 1e-14);
  CHECK(chordalDistance(m({1, 0}), sphereInfinity()) < 1e-12);
}

TEST_CASE("belyi evaluator pins corners and covers the sphere six times over the double triangle") {
  auto sub = fixtures::doubleTriangle().barycentricSubdivision();
  BelyiEvaluator ev(sub.surface, sub.colouring());

  for (int f = 0; f < sub.surface.faceCount(); ++f) {
    for (int c = 0; c < 3; ++c) {
      std::array<double, 3> bary{};
      bary[c] = 1;
      Complex v = ev.at(f, bary);
      Colour col = sub.colouring()[sub.surface.vertexClass(f, c)];
      if (col == Colour::Infty)
        CHECK(isSphereInfinity(v));
      else
        CHECK(v == Complex{col == Colour::PlusOne ? 1.0 : -1.0, 0});
    }
  }

  CHECK(ev.surface().faceCount() == 12);
  auto rep = verifyBranchedCover(ev);
  CHECK(rep.upperFaces == 6);
  CHECK(rep.lowerFaces == 6);
  CHECK(rep.gluedEdges == 18);
  CHECK(rep.maxEdgeGap < 1e-11);
  CHECK(rep.maxWindingError < 0.01);
  CHECK(rep.maxRegularGap < 1e-9);
  CHECK(rep.preimageCountsAgree);
  CHECK(rep.samplesRegular);

  for (int vc = 0; vc < sub.surface.vertexCount(); ++vc) {
    int expected = sub.kind[vc] == Surface::VertexKind::FaceCentre ? 3 : 2;
    CHECK(rep.localDegree[vc] == expected);
  }
}

TEST_CASE("glued faces land on opposite half-planes") {
  for (Surface base : {fixtures::doubleTriangle(), fixtures::snowsphere()}) {
    auto sub = base.barycentricSubdivision();
    BelyiEvaluator ev(sub.surface, sub.colouring());
    for (const auto& gl : sub.surface.gluings())
      CHECK(ev.upper(gl.a.face) != ev.upper(gl.b.face));
  }
}

TEST_CASE("belyi evaluator is continuous across the subdivided snowsphere") {
  auto sub = fixtures::snowsphere().barycentricSubdivision();
  BelyiEvaluator ev(sub.surface, sub.colouring());
  auto rep = verifyBranchedCover(ev, 3);
  CHECK(rep.faces == 144);
  CHECK(rep.gluedEdges == 216);
  CHECK(rep.upperFaces == 72);
  CHECK(rep.lowerFaces == 72);
  CHECK(rep.maxEdgeGap < 1e-9);
  CHECK(rep.maxWindingError < 0.01);
  CHECK(rep.maxRegularGap < 1e-9);
  CHECK(rep.preimageCountsAgree);
  CHECK(rep.samplesRegular);
  CHECK(rep.maxInteriorDegree == 6);  // cube corners: twelve faces in the link
}

TEST_CASE("belyi evaluator on a boundary surface routes edge points deterministically") {
  auto sub = fixtures::fanDisc(4).barycentricSubdivision();
  BelyiEvaluator ev(sub.surface, sub.colouring());
  const Surface& s = sub.surface;

  auto rep = verifyBranchedCover(ev);
  CHECK(rep.maxEdgeGap < 1e-10);
  for (int vc = 0; vc < s.vertexCount(); ++vc) {
    if (s.vertexOnBoundary(vc))
      CHECK(rep.localDegree[vc] == -1);
    else
      CHECK(rep.localDegree[vc] == static_cast<int>(s.classCorners(vc).size()) / 2);
  }

  bool sawGlued = false;
  for (int e = 0; e < s.edgeCount() && !sawGlued; ++e) {
    auto [sa, sb] = s.edgeSlots(e);
    if (sb.face < 0 || sa.face == sb.face) continue;
    sawGlued = true;
    double t = 0.375;
    std::array<double, 3> ba{0, 0, 0}, bb{0, 0, 0};
    ba[sa.side] = 1 - t;
    ba[(sa.side + 1) % 3] = t;
    bb[sb.side] = t;
    bb[(sb.side + 1) % 3] = 1 - t;
    Complex va = ev.at(sa.face, ba), vb = ev.at(sb.face, bb);
    CHECK(va == vb);  // both routed to the lower slot, bitwise equal
  }
  CHECK(sawGlued);

  std::array<double, 3> inner{0.2, 0.3, 0.5};
  CHECK(ev.at(0, inner) == ev.atInFace(0, inner));
}

TEST_CASE("belyi evaluator rejects bad input") {
  auto sub = fixtures::doubleTriangle().barycentricSubdivision();
  Colouring allOne(sub.surface.vertexCount(), Colour::PlusOne);
  CHECK_THROWS_WITH_AS(BelyiEvaluator(sub.surface, allOne),
                       doctest::Contains("ImproperColouring"), Error);
  CHECK_THROWS_WITH_AS(BelyiEvaluator(sub.surface, Colouring{Colour::PlusOne}),
                       doctest::Contains("ImproperColouring"), Error);

  BelyiEvaluator ev(sub.surface, sub.colouring());
  CHECK_THROWS_WITH_AS(ev.at(99, {1, 0, 0}), doctest::Contains("FaceOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(ev.at(0, {0.5, 0.5, 0.2}), doctest::Contains("BadBarycentric"), Error);
  CHECK_THROWS_WITH_AS(ev.at(0, {-0.2, 0.6, 0.6}), doctest::Contains("BadBarycentric"), Error);
}

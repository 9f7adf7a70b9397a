#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atlas.hpp"
#include "error.hpp"
#include "svg.hpp"

using namespace etri;

namespace {

std::vector<Colour> latticeColours(const PlanarMesh& m) {
  Surface s = Surface::fromIndexedFaces(m.faces);
  auto colouring = s.threeColouring();
  REQUIRE(colouring.has_value());
  std::vector<Colour> out(m.vertices.size(), Colour::MinusOne);
  for (int f = 0; f < s.faceCount(); ++f)
    for (int c = 0; c < 3; ++c) out[m.faces[f][c]] = (*colouring)[s.vertexClass(f, c)];
  return out;
}

int countText(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + 1))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("svg output is deterministic and well formed") {
  PlanarMesh patch = latticePatch(2);
  std::string a = renderSvg(patch);
  std::string b = renderSvg(patch);
  CHECK(a == b);
  CHECK(a.substr(0, 5) == "<?xml");
  CHECK(a.find("width=\"640.000000\"") != std::string::npos);
  CHECK(countText(a, "<polygon") == static_cast<int>(patch.faces.size()));
  CHECK(a.find("<circle") == std::string::npos);
  CHECK(a.find("</svg>") != std::string::npos);
}

TEST_CASE("colour mode marks every vertex with its class colour") {
  PlanarMesh patch = latticePatch(2);
  SvgStyle style;
  style.mode = SvgStyle::Mode::Colour;
  style.vertexColour = latticeColours(patch);
  std::string svg = renderSvg(patch, style);
  CHECK(countText(svg, "<circle") == static_cast<int>(patch.vertices.size()));
  // all three sublattice colours appear
  CHECK(countText(svg, "#2563eb") > 0);
  CHECK(countText(svg, "#dc2626") > 0);
  CHECK(countText(svg, "#16a34a") > 0);

  style.vertexColour.pop_back();
  CHECK_THROWS_WITH_AS(renderSvg(patch, style), doctest::Contains("BadColouring"),
                       Error);
}

TEST_CASE("angle heatmap saturates at the equilateral green") {
  PlanarMesh good;
  good.vertices = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  good.faces = {{0, 1, 2}};
  SvgStyle style;
  style.mode = SvgStyle::Mode::Angles;
  CHECK(renderSvg(good, style).find("#16a34a") != std::string::npos);

  PlanarMesh thin;
  thin.vertices = {{0, 0}, {1, 0}, {0.5, 0.01}};
  thin.faces = {{0, 1, 2}};
  std::string svg = renderSvg(thin, style);
  CHECK(svg.find("#16a34a") == std::string::npos);
  CHECK(svg.find("fill=\"#d") != std::string::npos);  // stays near red
}

TEST_CASE("empty meshes are rejected") {
  CHECK_THROWS_WITH_AS(renderSvg(PlanarMesh{}), doctest::Contains("EmptyMesh"),
                       Error);
  PlanarMesh pointsOnly;
  pointsOnly.vertices = {{0, 0}};
  CHECK_THROWS_WITH_AS(renderSvg(pointsOnly), doctest::Contains("EmptyMesh"),
                       Error);
}

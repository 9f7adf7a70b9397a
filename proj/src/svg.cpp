#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "error.hpp"
#include "geom.hpp"

namespace etri {

namespace {

void appendNumber(std::string& out, double v) {
  if (v == 0) v = 0;  // normalise -0
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  out += buf;
}

void appendPoint(std::string& out, Complex p) {
  appendNumber(out, p.real());
  out += ',';
  appendNumber(out, p.imag());
}

const char* colourFill(Colour c) {
  switch (c) {
    case Colour::MinusOne: return "#2563eb";
    case Colour::PlusOne: return "#dc2626";
    case Colour::Infty: return "#16a34a";
  }
  return "#000000";
}

// red (0 degrees) to green (60 degrees and up)
std::string angleFill(double minAngle) {
  double t = std::clamp(minAngle / (M_PI / 3), 0.0, 1.0);
  auto mix = [t](int lo, int hi) {
    return static_cast<int>(std::lround(lo + t * (hi - lo)));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(220, 22), mix(38, 163),
                mix(38, 74));
  return buf;
}

}  // namespace

std::string renderSvg(const PlanarMesh& m, const SvgStyle& style) {
  if (m.vertices.empty() || m.faces.empty())
    fail(ErrorCode::Invariant, "EmptyMesh", "nothing to render");
  if (style.mode == SvgStyle::Mode::Colour &&
      style.vertexColour.size() != m.vertices.size())
    fail(ErrorCode::Argument, "BadColouring",
         "colour mode needs one colour per mesh vertex");

  double xLo = m.vertices[0].real(), xHi = xLo;
  double yLo = m.vertices[0].imag(), yHi = yLo;
  for (const Complex& v : m.vertices) {
    xLo = std::min(xLo, v.real());
    xHi = std::max(xHi, v.real());
    yLo = std::min(yLo, v.imag());
    yHi = std::max(yHi, v.imag());
  }
  double span = std::max({xHi - xLo, yHi - yLo, 1e-12});
  double pad = 0.03 * span;
  double scale = style.width / (xHi - xLo + 2 * pad);
  double height = (yHi - yLo + 2 * pad) * scale;
  // SVG y runs downwards
  auto place = [&](Complex p) {
    return Complex{(p.real() - xLo + pad) * scale, (yHi - p.imag() + pad) * scale};
  };

  std::string out;
  out.reserve(128 * m.faces.size() + 1024);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
  appendNumber(out, style.width);
  out += "\" height=\"";
  appendNumber(out, height);
  out += "\" viewBox=\"0 0 ";
  appendNumber(out, style.width);
  out += ' ';
  appendNumber(out, height);
  out += "\">\n";

  for (const std::array<int, 3>& f : m.faces) {
    Complex a = m.vertices[f[0]], b = m.vertices[f[1]], c = m.vertices[f[2]];
    out += "<polygon points=\"";
    appendPoint(out, place(a));
    out += ' ';
    appendPoint(out, place(b));
    out += ' ';
    appendPoint(out, place(c));
    out += "\" fill=\"";
    out += style.mode == SvgStyle::Mode::Angles ? angleFill(minAngleOf(a, b, c))
                                                : "#f3f4f6";
    out += "\" stroke=\"#1f2937\" stroke-width=\"0.75\"/>\n";
  }

  if (style.mode == SvgStyle::Mode::Colour) {
    for (size_t v = 0; v < m.vertices.size(); ++v) {
      out += "<circle cx=\"";
      appendNumber(out, place(m.vertices[v]).real());
      out += "\" cy=\"";
      appendNumber(out, place(m.vertices[v]).imag());
      out += "\" r=\"3.000000\" fill=\"";
      out += colourFill(style.vertexColour[v]);
      out += "\"/>\n";
    }
  }

  out += "</svg>\n";
  return out;
}

}  // namespace etri

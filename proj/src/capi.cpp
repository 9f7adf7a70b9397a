#include "etri/etri.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>

#include "atlas.hpp"
#include "belyi.hpp"
#include "error.hpp"
#include "geom.hpp"
#include "io.hpp"
#include "rect.hpp"
#include "svg.hpp"

struct etri_surface {
  etri::SurfaceFile data;
};

struct etri_mesh {
  etri::PlanarMesh data;
};

namespace {

using etri::Colouring;
using etri::Error;
using etri::ErrorCode;
using etri::PlanarMesh;
using etri::Surface;

std::string& lastError() {
  static thread_local std::string message;
  return message;
}

template <typename F>
etri_status guarded(F&& body) {
  try {
    body();
    lastError().clear();
    return ETRI_OK;
  } catch (const Error& e) {
    lastError() = e.what();
    return static_cast<etri_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    lastError() = e.what();
    return ETRI_NUMERIC;
  }
}

[[noreturn]] void badArgument(const std::string& message) {
  etri::fail(ErrorCode::Argument, "BadArgument", message);
}

void requireOut(const void* p, const char* what) {
  if (!p) badArgument(std::string("null ") + what + " pointer");
}

char* copyOut(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const Colouring& colouringOf(const etri_surface* s, Colouring& scratch) {
  if (s->data.colouring) return *s->data.colouring;
  auto computed = s->data.surface.threeColouring();
  if (!computed)
    etri::fail(ErrorCode::Invariant, "NotThreeColourable",
               "surface has no attached colouring and no proper three-colouring");
  scratch = std::move(*computed);
  return scratch;
}

std::vector<etri::Colour> meshVertexColours(const PlanarMesh& m) {
  Surface s = Surface::fromIndexedFaces(m.faces);
  auto colouring = s.threeColouring();
  if (!colouring)
    etri::fail(ErrorCode::Invariant, "NotThreeColourable",
               "mesh has no proper three-colouring");
  std::vector<etri::Colour> out(m.vertices.size(), etri::Colour::MinusOne);
  for (int f = 0; f < s.faceCount(); ++f)
    for (int c = 0; c < 3; ++c)
      out[m.faces[f][c]] = (*colouring)[s.vertexClass(f, c)];
  return out;
}

std::string describeSurface(const etri::SurfaceFile& file) {
  const Surface& s = file.surface;
  std::ostringstream out;
  out << "faces: " << s.faceCount() << "\n";
  out << "edges: " << s.edgeCount() << "\n";
  out << "vertices: " << s.vertexCount() << "\n";
  out << "euler characteristic: " << s.eulerCharacteristic() << "\n";
  out << "boundary components: " << s.boundaryComponentCount() << "\n";
  out << "genus: " << s.genus() << "\n";
  out << "max vertex degree: " << s.maxVertexDegree() << "\n";
  out << "colouring: " << (file.colouring ? "attached" : "none") << "\n";
  return out.str();
}

std::string describeMesh(const PlanarMesh& m) {
  etri::MeshReport report = etri::validateMesh(m);
  std::ostringstream out;
  out << "vertices: " << m.vertices.size() << "\n";
  out << "faces: " << m.faces.size() << "\n";
  out << "area: " << num(m.totalArea()) << "\n";
  out << "min angle: " << num(etri::degrees(m.minAngle())) << " deg\n";
  out << "valid: " << (report.ok ? "yes" : "no") << "\n";
  for (const std::string& v : report.violations) out << "violation: " << v << "\n";
  return out.str();
}

etri::SvgStyle::Mode svgMode(const char* mode) {
  std::string m = mode ? mode : "plain";
  if (m == "plain") return etri::SvgStyle::Mode::Plain;
  if (m == "colour") return etri::SvgStyle::Mode::Colour;
  if (m == "angles") return etri::SvgStyle::Mode::Angles;
  badArgument("unknown render mode \"" + m + "\"");
}

}  // namespace

extern "C" {

const char* etri_last_error(void) { return lastError().c_str(); }

void etri_string_free(char* s) { delete[] s; }
void etri_surface_free(etri_surface* s) { delete s; }
void etri_mesh_free(etri_mesh* m) { delete m; }

etri_status etri_surface_read(const char* path, etri_surface** out) {
  return guarded([&] {
    requireOut(out, "surface");
    requireOut(path, "path");
    *out = new etri_surface{etri::readEtriFile(path)};
  });
}

etri_status etri_surface_write(const etri_surface* s, const char* path) {
  return guarded([&] {
    requireOut(s, "surface");
    requireOut(path, "path");
    etri::writeEtriFile(path, s->data.surface,
                        s->data.colouring ? &*s->data.colouring : nullptr);
  });
}

etri_status etri_surface_describe(const etri_surface* s, char** text) {
  return guarded([&] {
    requireOut(s, "surface");
    requireOut(text, "text");
    *text = copyOut(describeSurface(s->data));
  });
}

etri_status etri_surface_subdivide(const etri_surface* s, etri_surface** out) {
  return guarded([&] {
    requireOut(s, "surface");
    requireOut(out, "surface output");
    Surface::Subdivision sub = s->data.surface.barycentricSubdivision();
    Colouring colouring = sub.colouring();
    *out = new etri_surface{{std::move(sub.surface), std::move(colouring)}};
  });
}

etri_status etri_surface_colour(const etri_surface* s, etri_surface** out) {
  return guarded([&] {
    requireOut(s, "surface");
    requireOut(out, "surface output");
    Colouring scratch;
    Colouring colouring = colouringOf(s, scratch);
    *out = new etri_surface{{s->data.surface, std::move(colouring)}};
  });
}

etri_status etri_surface_fan_subdivide(const etri_surface* s, int degree,
                                       etri_surface** out) {
  return guarded([&] {
    requireOut(s, "surface");
    requireOut(out, "surface output");
    *out = new etri_surface{{s->data.surface.fanSubdivided(degree), std::nullopt}};
  });
}

etri_status etri_mesh_read(const char* path, etri_mesh** out) {
  return guarded([&] {
    requireOut(out, "mesh");
    requireOut(path, "path");
    *out = new etri_mesh{etri::readTrimeshFile(path)};
  });
}

etri_status etri_mesh_write(const etri_mesh* m, const char* path) {
  return guarded([&] {
    requireOut(m, "mesh");
    requireOut(path, "path");
    etri::writeTrimeshFile(path, m->data);
  });
}

etri_status etri_mesh_describe(const etri_mesh* m, char** text) {
  return guarded([&] {
    requireOut(m, "mesh");
    requireOut(text, "text");
    *text = copyOut(describeMesh(m->data));
  });
}

etri_status etri_mesh_validate(const etri_mesh* m) {
  return guarded([&] {
    requireOut(m, "mesh");
    etri::MeshReport report = etri::validateMesh(m->data);
    if (!report.ok)
      etri::fail(ErrorCode::Invariant, "InvalidMesh", report.violations.front());
  });
}

etri_status etri_mesh_render(const etri_mesh* m, const char* mode, double width,
                             char** svg) {
  return guarded([&] {
    requireOut(m, "mesh");
    requireOut(svg, "svg output");
    etri::SvgStyle style;
    style.mode = svgMode(mode);
    if (width > 0) style.width = width;
    if (style.mode == etri::SvgStyle::Mode::Colour)
      style.vertexColour = meshVertexColours(m->data);
    *svg = copyOut(etri::renderSvg(m->data, style));
  });
}

etri_status etri_rect_triangulate(double width, double height,
                                  const char* partition_path, double lambda,
                                  etri_mesh** out, char** report) {
  return guarded([&] {
    requireOut(partition_path, "partition path");
    auto sides = etri::readSidePartitionFile(partition_path);
    etri::RectResult result = etri::rectTriangulation(width, height, sides, lambda);
    std::ostringstream text;
    text << "faces: " << result.mesh.faces.size() << "\n";
    text << "vertices: " << result.mesh.vertices.size() << "\n";
    text << "min angle: " << num(etri::degrees(result.minAngle)) << " deg\n";
    text << "kept squares: " << result.keptSquares << "\n";
    text << "finest level: " << result.jmax << "\n";
    if (report) *report = copyOut(text.str());
    if (out) *out = new etri_mesh{std::move(result.mesh)};
  });
}

etri_status etri_hemmed_assemble(const char* spec_path, const char* mesh_path,
                                 const char* surface_path, char** report) {
  return guarded([&] {
    requireOut(spec_path, "spec path");
    etri::HemmedDomainSpec spec = etri::readHemmedSpecFile(spec_path);
    etri::HemmedPiece piece = etri::assemble(spec);
    if (mesh_path) etri::writeTrimeshFile(mesh_path, piece.mesh);
    if (surface_path) etri::writeEtriFile(surface_path, piece.surface);
    std::ostringstream text;
    text << "curves: " << piece.curves.size() << "\n";
    text << "epsilon: " << num(spec.epsilon) << "\n";
    text << "faces: " << piece.surface.faceCount() << "\n";
    text << "lattice faces: " << piece.latticeFaces << "\n";
    text << "euler characteristic: " << piece.surface.eulerCharacteristic() << "\n";
    for (size_t c = 0; c < piece.curves.size(); ++c) {
      const etri::CurveAssembly& hem = piece.curves[c];
      text << "curve " << c << " modulus rho: " << num(hem.strip.rho) << "\n";
      text << "curve " << c << " lambda: " << num(hem.strip.lambdaRun) << "\n";
      text << "curve " << c << " max lift slope: " << num(hem.strip.maxSlope) << "\n";
      text << "curve " << c << " periodicity error: "
           << num(hem.strip.periodicityError) << "\n";
      text << "curve " << c << " length respect deviation: "
           << num(hem.lengthRespectDeviation) << "\n";
    }
    text << "max dilatation: " << num(piece.dilatation.maxK) << "\n";
    text << "total area: " << num(piece.dilatation.totalArea) << "\n";
    text << "dilatation support area: " << num(piece.dilatation.supportArea) << "\n";
    text << "support in collar: " << (piece.supportInCollar ? "yes" : "no") << "\n";
    if (report) *report = copyOut(text.str());
  });
}

etri_status etri_chain_assemble(const char* spec_path, const char* surface_path,
                                char** report) {
  return guarded([&] {
    requireOut(spec_path, "spec path");
    etri::ChainSpec chain = etri::readChainSpecFile(spec_path);
    etri::ChainResult result = etri::chainAssemble(chain.pieces, chain.interfaces);
    if (surface_path) etri::writeEtriFile(surface_path, result.surface);
    std::ostringstream text;
    text << "pieces: " << result.pieces.size() << "\n";
    text << "faces: " << result.surface.faceCount() << "\n";
    text << "euler characteristic: " << result.surface.eulerCharacteristic() << "\n";
    text << "genus: " << result.surface.genus() << "\n";
    text << "boundary components: " << result.surface.boundaryComponentCount() << "\n";
    text << "max interface degree: " << result.maxInterfaceDegree << "\n";
    text << "piece boundary degree bound: " << result.boundaryDegreeBound << "\n";
    text << "max dilatation: " << num(result.dilatation.maxK) << "\n";
    text << "total area: " << num(result.dilatation.totalArea) << "\n";
    text << "dilatation support area: " << num(result.dilatation.supportArea) << "\n";
    if (report) *report = copyOut(text.str());
  });
}

etri_status etri_map_dilatation(const char* source_mesh_path,
                                const char* target_mesh_path, char** report) {
  return guarded([&] {
    requireOut(source_mesh_path, "source path");
    requireOut(target_mesh_path, "target path");
    requireOut(report, "report");
    PlanarMesh source = etri::readTrimeshFile(source_mesh_path);
    PlanarMesh target = etri::readTrimeshFile(target_mesh_path);
    etri::PiecewiseAffineMap map =
        etri::PiecewiseAffineMap::between(std::move(source), std::move(target));
    etri::DilatationReport result = etri::dilatation(map);
    std::ostringstream text;
    text << "pieces: " << result.faceK.size() << "\n";
    text << "max dilatation: " << num(result.maxK) << "\n";
    text << "total area: " << num(result.totalArea) << "\n";
    text << "dilatation support area: " << num(result.supportArea) << "\n";
    text << "continuity residual: " << num(map.continuityResidual()) << "\n";
    *report = copyOut(text.str());
  });
}

etri_status etri_belyi_eval(const etri_surface* s, int face, double b0,
                            double b1, double b2, double* re, double* im) {
  return guarded([&] {
    requireOut(s, "surface");
    requireOut(re, "re");
    requireOut(im, "im");
    if (face < 0 || face >= s->data.surface.faceCount())
      badArgument("face index out of range");
    double sum = b0 + b1 + b2;
    if (!(sum > 0) || b0 < 0 || b1 < 0 || b2 < 0)
      badArgument("barycentric coordinates must be nonnegative with positive sum");
    Colouring scratch;
    etri::BelyiEvaluator ev(s->data.surface, colouringOf(s, scratch));
    etri::Complex value = ev.at(face, {b0 / sum, b1 / sum, b2 / sum});
    *re = value.real();
    *im = value.imag();
  });
}

etri_status etri_belyi_verify(const etri_surface* s, int samples_per_edge,
                              char** report, int* pass) {
  return guarded([&] {
    requireOut(s, "surface");
    requireOut(report, "report");
    if (samples_per_edge < 1) badArgument("samples must be positive");
    Colouring scratch;
    etri::BelyiEvaluator ev(s->data.surface, colouringOf(s, scratch));
    etri::CoverReport cover = etri::verifyBranchedCover(ev, samples_per_edge);
    bool ok = cover.pass(1e-6);
    std::ostringstream text;
    text << "faces: " << cover.faces << "\n";
    text << "glued edges: " << cover.gluedEdges << "\n";
    text << "upper / lower preimages: " << cover.upperFaces << " / "
         << cover.lowerFaces << "\n";
    text << "max edge gap: " << num(cover.maxEdgeGap) << "\n";
    text << "max winding error: " << num(cover.maxWindingError) << "\n";
    text << "max regular-point gap: " << num(cover.maxRegularGap) << "\n";
    text << "max interior local degree: " << cover.maxInteriorDegree << "\n";
    text << "pass: " << (ok ? "yes" : "no") << "\n";
    *report = copyOut(text.str());
    if (pass) *pass = ok ? 1 : 0;
  });
}

etri_status etri_atlas_generate(const char* kind, int n, int depth,
                                etri_surface** surface, etri_mesh** mesh,
                                char** report) {
  return guarded([&] {
    requireOut(kind, "kind");
    std::string which = kind;
    etri::SurfaceFile file;
    PlanarMesh layout;
    bool hasLayout = false;
    std::ostringstream text;
    if (which == "lattice") {
      layout = etri::latticePatch(n);
      hasLayout = true;
      file.surface = Surface::fromIndexedFaces(layout.faces);
      file.colouring = file.surface.threeColouring();
      text << "hex extent: " << n << "\n";
    } else if (which == "cylinder") {
      file.surface = etri::latticeCylinder(n, depth);
      file.colouring = file.surface.threeColouring();
      text << "columns: " << n << ", rows: " << depth << "\n";
    } else if (which == "hyperbolic") {
      etri::HyperbolicTessellation t = etri::hyperbolicTessellation(n, depth);
      layout = std::move(t.mesh);
      hasLayout = true;
      file.surface = std::move(t.surface);
      text << "vertex degree: " << n << ", depth: " << depth << "\n";
    } else if (which == "npsphere") {
      etri::PulledBackSphere p = etri::puncturedSpherePullback(n);
      file.surface = std::move(p.surface);
      file.colouring = std::move(p.colouring);
      text << "covering degree: " << n << "\n";
      text << "punctures: " << p.punctureClasses.size() << "\n";
      for (size_t k = 0; k < p.puncturePosition.size(); ++k)
        text << "puncture " << k << ": " << num(p.puncturePosition[k].real())
             << " + " << num(p.puncturePosition[k].imag()) << "i\n";
    } else {
      badArgument("unknown atlas kind \"" + which + "\"");
    }
    text << "faces: " << file.surface.faceCount() << "\n";
    text << "euler characteristic: " << file.surface.eulerCharacteristic() << "\n";
    text << "max vertex degree: " << file.surface.maxVertexDegree() << "\n";
    if (mesh) *mesh = hasLayout ? new etri_mesh{std::move(layout)} : nullptr;
    if (surface) *surface = new etri_surface{std::move(file)};
    if (report) *report = copyOut(text.str());
  });
}

}  // extern "C"

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "hemmed.hpp"
#include "mesh.hpp"
#include "surface.hpp"

namespace etri {

struct SurfaceFile {
  Surface surface;
  std::optional<Colouring> colouring;
};

// ETRI v1: `ETRI 1`, `faces <F>`, `glue <f1> <s1> <f2> <s2>`,
// optional `colour <vertex-class> <-1|1|inf>`, `#` comments. Vertex-class ids
// are the canonical ones. Unknown directives are parse errors; surfaces and
// colourings are validated on read.
SurfaceFile readEtri(std::istream& in, const std::string& name = "<stream>");
SurfaceFile readEtriFile(const std::string& path);
void writeEtri(std::ostream& out, const Surface& s,
               const Colouring* colouring = nullptr);
void writeEtriFile(const std::string& path, const Surface& s,
                   const Colouring* colouring = nullptr);

// TRIMESH 1: `v <x> <y>` then `f <i> <j> <k>` (0-based, CCW).
PlanarMesh readTrimesh(std::istream& in, const std::string& name = "<stream>");
PlanarMesh readTrimeshFile(const std::string& path);
void writeTrimesh(std::ostream& out, const PlanarMesh& m);
void writeTrimeshFile(const std::string& path, const PlanarMesh& m);

// Rectangle-boundary partition: four blocks headed S0..S3 (bottom, right,
// top, left), one coordinate per line in the side's own 1-d parameter.
std::array<std::vector<double>, 4> readSidePartition(std::istream& in,
                                                     const std::string& name = "<stream>");
std::array<std::vector<double>, 4> readSidePartitionFile(const std::string& path);

// Hemmed domain spec, JSON:
//   {"epsilon": 0.1,
//    "curves": [{"R": 2.718, "degree": 12, "coefficients": [[-1, 1.0, 0.0]]}]}
// Each coefficient entry is [power, re] or [power, re, im].
HemmedDomainSpec readHemmedSpec(std::istream& in,
                                const std::string& name = "<stream>");
HemmedDomainSpec readHemmedSpecFile(const std::string& path);

// Chain spec, JSON: {"pieces": [<hemmed spec>...],
//                    "interfaces": [[pieceA, curveA, pieceB, curveB]...]}
struct ChainSpec {
  std::vector<HemmedDomainSpec> pieces;
  std::vector<ChainInterface> interfaces;
};
ChainSpec readChainSpec(std::istream& in, const std::string& name = "<stream>");
ChainSpec readChainSpecFile(const std::string& path);

std::string formatDouble(double v);  // shortest round-trip (%.17g)

}  // namespace etri

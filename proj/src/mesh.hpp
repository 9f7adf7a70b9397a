#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "geom.hpp"

namespace etri {

// Straight-edge triangulation in the plane. Faces are CCW triples of vertex
// indices; meshes are plain values and derived tables are computed on demand.
struct PlanarMesh {
  std::vector<Complex> vertices;
  std::vector<std::array<int, 3>> faces;

  struct Edge {
    int a, b;    // a < b
    int f0, f1;  // f1 = -1 on the boundary
  };

  double faceArea(int f) const;
  double totalArea() const;
  double minAngle() const;
  double diameter() const;  // bounding-box diagonal
  std::vector<Edge> edgeTable() const;
  // Boundary as vertex cycles, each traversed with the domain on the left.
  std::vector<std::vector<int>> boundaryLoops() const;
};

struct MeshReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks all PlanarMesh invariants: positive areas, no directed edge reuse,
// at most two faces per edge, boundary forming disjoint simple cycles, no
// vertex pair closer than mergeTol and no vertex inside another face's edge
// (conformity). mergeTol <= 0 picks 1e-12 of the diameter.
MeshReport validateMesh(const PlanarMesh& m, double mergeTol = 0);

// Incremental builder deduplicating vertices on a quantized grid. quantum 0
// means exact coordinate equality.
class MeshBuilder {
public:
  explicit MeshBuilder(double quantum = 0) : quantum_(quantum) {}

  int vertex(Complex p);
  void face(int a, int b, int c);
  void face(Complex a, Complex b, Complex c);
  PlanarMesh take();

private:
  using Key = std::pair<long long, long long>;
  Key keyOf(Complex p) const;

  double quantum_;
  std::map<Key, int> index_;
  PlanarMesh mesh_;
};

}  // namespace etri

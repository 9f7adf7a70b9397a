#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace etri {

// One oriented side of one face. Sides 0,1,2 run counterclockwise around the
// face; side s goes from corner s to corner s+1 (mod 3).
struct Slot {
  int face = -1;
  int side = -1;

  friend bool operator==(const Slot&, const Slot&) = default;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

struct Gluing {
  Slot a;
  Slot b;
};

enum class Colour { MinusOne, PlusOne, Infty };

const char* colourName(Colour c);
std::optional<Colour> colourFromName(const std::string& name);

// Colour per vertex class, indexed by canonical class id.
using Colouring = std::vector<Colour>;

// A surface glued from abstract unit equilateral triangles. Each gluing
// identifies two sides by the orientation-reversing map, so corner s of one
// side meets corner s'+1 of the other and vice versa. Unglued sides are
// boundary. Two faces may share several edges and a face may be glued to
// itself across different sides; only gluing a side to itself is rejected.
class Surface {
public:
  Surface() = default;

  static Surface fromGluings(int faceCount, const std::vector<Gluing>& gluings);

  // Builds gluings from faces given as vertex-id triples (CCW). Directed edge
  // (a,b) of one face must match (b,a) of exactly one other slot.
  static Surface fromIndexedFaces(const std::vector<std::array<int, 3>>& faces);

  int faceCount() const { return faceCount_; }
  int edgeCount() const { return static_cast<int>(edges_.size()); }
  int vertexCount() const { return static_cast<int>(classes_.size()); }

  bool isBoundary(Slot s) const { return glueOf(s) < 0; }
  std::optional<Slot> partner(Slot s) const;
  std::vector<Gluing> gluings() const;  // sorted by smaller slot
  std::vector<Slot> boundarySlots() const;
  std::vector<std::vector<Slot>> boundaryCycles() const;

  // Canonical vertex-class ids: classes sorted by their lexicographically
  // smallest (face, corner) member.
  int vertexClass(int face, int corner) const;
  const std::vector<std::pair<int, int>>& classCorners(int vc) const;

  int edgeIndex(Slot s) const;
  // The two slots of an edge; boundary edges have b.face == -1.
  std::pair<Slot, Slot> edgeSlots(int e) const;

  int eulerCharacteristic() const;
  int boundaryComponentCount() const;
  int genus() const;

  bool vertexOnBoundary(int vc) const;
  int vertexDegree(int vc) const;  // distinct incident edges
  int maxVertexDegree() const;
  struct DegreeHistogram {
    std::map<int, int> interior;
    std::map<int, int> boundary;
  };
  DegreeHistogram degreeHistogram() const;

  bool isProperColouring(const Colouring& c) const;
  // Deterministic backtracking over vertex classes in id order, colours tried
  // in the order -1, 1, inf. Empty optional means no proper colouring exists.
  std::optional<Colouring> threeColouring() const;

  enum class VertexKind { Original, EdgeMidpoint, FaceCentre };
  struct Subdivision;
  Subdivision barycentricSubdivision() const;

  // Replaces every boundary face by a fan of 2*d0+1 triangles so that
  // boundary vertex degrees rise into [2+2*d0, 3*d0] while new interior
  // vertices keep degree 3 or 4. Requires each boundary face to have exactly
  // one boundary side with the opposite corner interior.
  Surface fanSubdivided(int d0) const;

private:
  int faceCount_ = 0;
  std::vector<int> glue_;         // slot id -> partner slot id or -1
  std::vector<int> cornerClass_;  // corner id -> canonical class id
  std::vector<std::vector<std::pair<int, int>>> classes_;
  std::vector<int> edgeOfSlot_;
  std::vector<std::array<int, 2>> edges_;  // slot ids, boundary second = -1

  static int slotId(Slot s) { return 3 * s.face + s.side; }
  int glueOf(Slot s) const { return glue_[slotId(s)]; }

  void finalize();  // derives classes/edges, checks connectivity
};

struct Surface::Subdivision {
  Surface surface;
  std::vector<VertexKind> kind;  // per vertex class of `surface`
  // original -> 1, edge midpoints -> -1, face centres -> inf
  Colouring colouring() const;
};

}  // namespace etri

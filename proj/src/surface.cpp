#include "surface.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace etri {

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

const char* colourName(Colour c) {
  switch (c) {
    case Colour::MinusOne: return "-1";
    case Colour::PlusOne: return "1";
    case Colour::Infty: return "inf";
  }
  return "?";
}

std::optional<Colour> colourFromName(const std::string& name) {
  if (name == "-1") return Colour::MinusOne;
  if (name == "1") return Colour::PlusOne;
  if (name == "inf") return Colour::Infty;
  return std::nullopt;
}

Surface Surface::fromGluings(int faceCount, const std::vector<Gluing>& gluings) {
  if (faceCount < 0) fail(ErrorCode::Argument, "BadFaceCount", "face count is negative");
  Surface s;
  s.faceCount_ = faceCount;
  s.glue_.assign(3 * faceCount, -1);
  for (const Gluing& g : gluings) {
    for (Slot sl : {g.a, g.b}) {
      if (sl.face < 0 || sl.face >= faceCount || sl.side < 0 || sl.side > 2)
        fail(ErrorCode::Argument, "SlotOutOfRange",
             "slot (" + std::to_string(sl.face) + "," + std::to_string(sl.side) + ")");
    }
    if (g.a == g.b)
      fail(ErrorCode::Invariant, "SelfGluedEdge",
           "side (" + std::to_string(g.a.face) + "," + std::to_string(g.a.side) +
               ") glued to itself");
    int ia = slotId(g.a), ib = slotId(g.b);
    if (s.glue_[ia] != -1 || s.glue_[ib] != -1)
      fail(ErrorCode::Invariant, "DuplicateSlot",
           "slot (" + std::to_string(s.glue_[ia] != -1 ? g.a.face : g.b.face) + "," +
               std::to_string(s.glue_[ia] != -1 ? g.a.side : g.b.side) +
               ") appears in two gluings");
    s.glue_[ia] = ib;
    s.glue_[ib] = ia;
  }
  s.finalize();
  return s;
}

Surface Surface::fromIndexedFaces(const std::vector<std::array<int, 3>>& faces) {
  std::map<std::pair<int, int>, Slot> open;  // directed edge -> slot waiting for partner
  std::vector<Gluing> gluings;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    const auto& fc = faces[f];
    if (fc[0] == fc[1] || fc[1] == fc[2] || fc[2] == fc[0])
      fail(ErrorCode::Argument, "DegenerateFace",
           "face " + std::to_string(f) + " repeats a vertex");
    for (int side = 0; side < 3; ++side) {
      int a = fc[side], b = fc[(side + 1) % 3];
      if (open.count({a, b}))
        fail(ErrorCode::Invariant, "OrientationClash",
             "directed edge (" + std::to_string(a) + "," + std::to_string(b) +
                 ") appears twice; faces are not consistently oriented");
      auto it = open.find({b, a});
      if (it != open.end()) {
        gluings.push_back({it->second, Slot{f, side}});
        open.erase(it);
      } else {
        open[{a, b}] = Slot{f, side};
      }
    }
  }
  return fromGluings(static_cast<int>(faces.size()), gluings);
}

void Surface::finalize() {
  int corners = 3 * faceCount_;
  UnionFind uf(corners);
  // Gluing (f,s)-(f',s') identifies corner s with corner s'+1 and corner s+1
  // with corner s'.
  for (int id = 0; id < corners; ++id) {
    int p = glue_[id];
    if (p < 0 || p < id) continue;
    int f = id / 3, s = id % 3;
    int pf = p / 3, ps = p % 3;
    uf.unite(3 * f + s, 3 * pf + (ps + 1) % 3);
    uf.unite(3 * f + (s + 1) % 3, 3 * pf + ps);
  }

  std::map<int, std::vector<int>> byRoot;  // min corner id first: map is sorted
  std::vector<int> rootMin(corners, corners);
  for (int c = 0; c < corners; ++c) {
    int r = uf.find(c);
    rootMin[r] = std::min(rootMin[r], c);
  }
  for (int c = 0; c < corners; ++c) byRoot[rootMin[uf.find(c)]].push_back(c);

  classes_.clear();
  cornerClass_.assign(corners, -1);
  for (auto& [minCorner, members] : byRoot) {
    int vc = static_cast<int>(classes_.size());
    classes_.emplace_back();
    for (int c : members) {
      cornerClass_[c] = vc;
      classes_.back().push_back({c / 3, c % 3});
    }
  }

  edges_.clear();
  edgeOfSlot_.assign(corners, -1);
  for (int id = 0; id < corners; ++id) {
    if (edgeOfSlot_[id] != -1) continue;
    int e = static_cast<int>(edges_.size());
    int p = glue_[id];
    edgeOfSlot_[id] = e;
    if (p >= 0) edgeOfSlot_[p] = e;
    edges_.push_back({id, p});
  }

  if (faceCount_ > 0) {
    std::vector<char> seen(faceCount_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      for (int side = 0; side < 3; ++side) {
        int p = glue_[3 * f + side];
        if (p >= 0 && !seen[p / 3]) {
          seen[p / 3] = 1;
          ++reached;
          stack.push_back(p / 3);
        }
      }
    }
    if (reached != faceCount_)
      fail(ErrorCode::Invariant, "Disconnected",
           std::to_string(reached) + " of " + std::to_string(faceCount_) +
               " faces reachable from face 0");
  }
}

std::optional<Slot> Surface::partner(Slot s) const {
  int p = glueOf(s);
  if (p < 0) return std::nullopt;
  return Slot{p / 3, p % 3};
}

std::vector<Gluing> Surface::gluings() const {
  std::vector<Gluing> out;
  for (int id = 0; id < static_cast<int>(glue_.size()); ++id) {
    int p = glue_[id];
    if (p > id) out.push_back({Slot{id / 3, id % 3}, Slot{p / 3, p % 3}});
  }
  return out;
}

std::vector<Slot> Surface::boundarySlots() const {
  std::vector<Slot> out;
  for (int id = 0; id < static_cast<int>(glue_.size()); ++id)
    if (glue_[id] < 0) out.push_back(Slot{id / 3, id % 3});
  return out;
}

std::vector<std::vector<Slot>> Surface::boundaryCycles() const {
  std::vector<std::vector<Slot>> cycles;
  std::set<int> left;
  for (int id = 0; id < static_cast<int>(glue_.size()); ++id)
    if (glue_[id] < 0) left.insert(id);
  while (!left.empty()) {
    int start = *left.begin();
    std::vector<Slot> cycle;
    int id = start;
    do {
      left.erase(id);
      cycle.push_back(Slot{id / 3, id % 3});
      // Rotate around the head vertex of this boundary edge until the next
      // boundary side going out of it appears.
      int f = id / 3, c = (id % 3 + 1) % 3;
      while (glue_[3 * f + c] >= 0) {
        int p = glue_[3 * f + c];
        f = p / 3;
        c = (p % 3 + 1) % 3;
      }
      id = 3 * f + c;
    } while (id != start);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

int Surface::vertexClass(int face, int corner) const {
  return cornerClass_[3 * face + corner];
}

const std::vector<std::pair<int, int>>& Surface::classCorners(int vc) const {
  return classes_[vc];
}

int Surface::edgeIndex(Slot s) const { return edgeOfSlot_[slotId(s)]; }

std::pair<Slot, Slot> Surface::edgeSlots(int e) const {
  auto [a, b] = edges_[e];
  Slot sa{a / 3, a % 3};
  Slot sb = b >= 0 ? Slot{b / 3, b % 3} : Slot{-1, -1};
  return {sa, sb};
}

int Surface::eulerCharacteristic() const {
  return vertexCount() - edgeCount() + faceCount_;
}

int Surface::boundaryComponentCount() const {
  return static_cast<int>(boundaryCycles().size());
}

int Surface::genus() const {
  // Orientable by construction: chi = 2 - 2g - b.
  return (2 - eulerCharacteristic() - boundaryComponentCount()) / 2;
}

bool Surface::vertexOnBoundary(int vc) const {
  for (auto [f, c] : classes_[vc]) {
    if (glue_[3 * f + c] < 0) return true;
    if (glue_[3 * f + (c + 2) % 3] < 0) return true;
  }
  return false;
}

int Surface::vertexDegree(int vc) const {
  std::set<int> edges;
  for (auto [f, c] : classes_[vc]) {
    edges.insert(edgeOfSlot_[3 * f + c]);
    edges.insert(edgeOfSlot_[3 * f + (c + 2) % 3]);
  }
  return static_cast<int>(edges.size());
}

int Surface::maxVertexDegree() const {
  int m = 0;
  for (int vc = 0; vc < vertexCount(); ++vc) m = std::max(m, vertexDegree(vc));
  return m;
}

Surface::DegreeHistogram Surface::degreeHistogram() const {
  DegreeHistogram h;
  for (int vc = 0; vc < vertexCount(); ++vc) {
    auto& target = vertexOnBoundary(vc) ? h.boundary : h.interior;
    ++target[vertexDegree(vc)];
  }
  return h;
}

bool Surface::isProperColouring(const Colouring& c) const {
  if (static_cast<int>(c.size()) != vertexCount()) return false;
  for (int f = 0; f < faceCount_; ++f) {
    Colour a = c[cornerClass_[3 * f]];
    Colour b = c[cornerClass_[3 * f + 1]];
    Colour d = c[cornerClass_[3 * f + 2]];
    if (a == b || b == d || d == a) return false;
  }
  return true;
}

std::optional<Colouring> Surface::threeColouring() const {
  int n = vertexCount();
  std::vector<std::vector<std::array<int, 2>>> faceMates(n);
  for (int f = 0; f < faceCount_; ++f) {
    for (int c = 0; c < 3; ++c) {
      int vc = cornerClass_[3 * f + c];
      faceMates[vc].push_back(
          {cornerClass_[3 * f + (c + 1) % 3], cornerClass_[3 * f + (c + 2) % 3]});
    }
  }
  std::vector<int> pick(n, -1);
  const Colour order[3] = {Colour::MinusOne, Colour::PlusOne, Colour::Infty};
  int vc = 0;
  while (vc >= 0 && vc < n) {
    bool placed = false;
    for (int next = pick[vc] + 1; next < 3; ++next) {
      bool ok = true;
      for (const auto& mates : faceMates[vc]) {
        int m0 = mates[0], m1 = mates[1];
        if (m0 == vc || m1 == vc) { ok = false; break; }  // repeated class in a face
        if (m0 < vc && pick[m0] == next) { ok = false; break; }
        if (m1 < vc && pick[m1] == next) { ok = false; break; }
        if (m0 < vc && m1 < vc && pick[m0] == pick[m1]) { ok = false; break; }
      }
      if (ok) {
        pick[vc] = next;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++vc;
    } else {
      pick[vc] = -1;
      --vc;
    }
  }
  if (vc < 0) return std::nullopt;
  Colouring out(n);
  for (int i = 0; i < n; ++i) out[i] = order[pick[i]];
  return out;
}

Colouring Surface::Subdivision::colouring() const {
  Colouring c(kind.size());
  for (size_t i = 0; i < kind.size(); ++i) {
    switch (kind[i]) {
      case VertexKind::Original: c[i] = Colour::PlusOne; break;
      case VertexKind::EdgeMidpoint: c[i] = Colour::MinusOne; break;
      case VertexKind::FaceCentre: c[i] = Colour::Infty; break;
    }
  }
  return c;
}

Surface::Subdivision Surface::barycentricSubdivision() const {
  // Face f becomes faces 6f..6f+5. Piece 2s is (corner s, mid of side s,
  // centre); piece 2s+1 is (mid of side s, corner s+1, centre). Sides keep
  // the corner-to-corner CCW convention, so piece sides 0 lie on the old
  // sides and sides 1,2 are interior spokes.
  std::vector<Gluing> gl;
  auto piece = [](int f, int t) { return 6 * f + t; };
  for (int f = 0; f < faceCount_; ++f) {
    for (int s = 0; s < 3; ++s) {
      gl.push_back({Slot{piece(f, 2 * s), 1}, Slot{piece(f, 2 * s + 1), 2}});
      gl.push_back({Slot{piece(f, 2 * s + 1), 1}, Slot{piece(f, 2 * ((s + 1) % 3)), 2}});
      int p = glue_[3 * f + s];
      if (p > 3 * f + s) {
        int pf = p / 3, ps = p % 3;
        gl.push_back({Slot{piece(f, 2 * s), 0}, Slot{piece(pf, 2 * ps + 1), 0}});
        gl.push_back({Slot{piece(f, 2 * s + 1), 0}, Slot{piece(pf, 2 * ps), 0}});
      }
    }
  }
  Subdivision out;
  out.surface = fromGluings(6 * faceCount_, gl);
  out.kind.assign(out.surface.vertexCount(), VertexKind::Original);
  for (int f = 0; f < faceCount_; ++f) {
    for (int s = 0; s < 3; ++s) {
      out.kind[out.surface.vertexClass(piece(f, 2 * s), 0)] = VertexKind::Original;
      out.kind[out.surface.vertexClass(piece(f, 2 * s), 1)] = VertexKind::EdgeMidpoint;
      out.kind[out.surface.vertexClass(piece(f, 2 * s), 2)] = VertexKind::FaceCentre;
    }
  }
  return out;
}

Surface Surface::fanSubdivided(int d0) const {
  if (d0 < 1) fail(ErrorCode::Argument, "BadFanDegree", "d0 must be >= 1");
  std::vector<int> boundarySide(faceCount_, -1);
  bool any = false;
  for (int f = 0; f < faceCount_; ++f) {
    for (int s = 0; s < 3; ++s) {
      if (glue_[3 * f + s] >= 0) continue;
      any = true;
      if (boundarySide[f] != -1)
        fail(ErrorCode::Invariant, "BoundaryCornerViolation",
             "face " + std::to_string(f) + " has more than one boundary side");
      boundarySide[f] = s;
    }
  }
  if (!any) fail(ErrorCode::Invariant, "NoBoundary", "surface is closed");
  for (int f = 0; f < faceCount_; ++f) {
    if (boundarySide[f] < 0) continue;
    int apex = vertexClass(f, (boundarySide[f] + 2) % 3);
    if (vertexOnBoundary(apex))
      fail(ErrorCode::Invariant, "BoundaryCornerViolation",
           "face " + std::to_string(f) + " has its off-boundary corner on the boundary");
  }

  // A boundary face with side b = (A,B) and apex C is replaced by a fan with
  // chain C = v0, v1, ..., v_d0: triangles Li = (A, v_i, v_{i-1}) and
  // Ri = (v_{i-1}, v_i, B) for i = 1..d0 plus the floor (A, B, v_d0). New
  // faces are laid out as [L1..Ld0, R1..Rd0, floor].
  std::vector<int> base(faceCount_, -1);
  int next = 0;
  for (int f = 0; f < faceCount_; ++f) {
    base[f] = next;
    next += boundarySide[f] < 0 ? 1 : 2 * d0 + 1;
  }
  auto mapSlot = [&](Slot old) -> Slot {
    int b = boundarySide[old.face];
    if (b < 0) return Slot{base[old.face], old.side};
    if (old.side == b) return Slot{base[old.face] + 2 * d0, 0};           // floor
    if (old.side == (b + 1) % 3) return Slot{base[old.face] + d0, 2};     // R1
    return Slot{base[old.face], 2};                                       // L1
  };

  std::vector<Gluing> gl;
  for (const Gluing& g : gluings()) gl.push_back({mapSlot(g.a), mapSlot(g.b)});
  for (int f = 0; f < faceCount_; ++f) {
    if (boundarySide[f] < 0) continue;
    auto L = [&](int i) { return base[f] + i - 1; };
    auto R = [&](int i) { return base[f] + d0 + i - 1; };
    int floor = base[f] + 2 * d0;
    for (int i = 1; i <= d0; ++i) gl.push_back({Slot{L(i), 1}, Slot{R(i), 0}});
    for (int i = 1; i < d0; ++i) {
      gl.push_back({Slot{L(i), 0}, Slot{L(i + 1), 2}});
      gl.push_back({Slot{R(i), 1}, Slot{R(i + 1), 2}});
    }
    gl.push_back({Slot{floor, 2}, Slot{L(d0), 0}});
    gl.push_back({Slot{floor, 1}, Slot{R(d0), 1}});
  }
  return fromGluings(next, gl);
}

}  // namespace etri

#include "mesh.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <set>

#include "error.hpp"

namespace etri {

double PlanarMesh::faceArea(int f) const {
  const auto& t = faces[f];
  return signedArea(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
}

double PlanarMesh::totalArea() const {
  double a = 0;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) a += faceArea(f);
  return a;
}

double PlanarMesh::minAngle() const {
  double m = M_PI;
  for (const auto& t : faces)
    m = std::min(m, minAngleOf(vertices[t[0]], vertices[t[1]], vertices[t[2]]));
  return m;
}

double PlanarMesh::diameter() const {
  if (vertices.empty()) return 0;
  double x0 = vertices[0].real(), x1 = x0, y0 = vertices[0].imag(), y1 = y0;
  for (Complex v : vertices) {
    x0 = std::min(x0, v.real());
    x1 = std::max(x1, v.real());
    y0 = std::min(y0, v.imag());
    y1 = std::max(y1, v.imag());
  }
  return std::hypot(x1 - x0, y1 - y0);
}

std::vector<PlanarMesh::Edge> PlanarMesh::edgeTable() const {
  std::map<std::pair<int, int>, Edge> table;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    for (int s = 0; s < 3; ++s) {
      int a = faces[f][s], b = faces[f][(s + 1) % 3];
      auto key = std::minmax(a, b);
      auto it = table.find(key);
      if (it == table.end())
        table[key] = Edge{key.first, key.second, f, -1};
      else if (it->second.f1 == -1)
        it->second.f1 = f;
    }
  }
  std::vector<Edge> out;
  out.reserve(table.size());
  for (auto& [k, e] : table) out.push_back(e);
  return out;
}

std::vector<std::vector<int>> PlanarMesh::boundaryLoops() const {
  std::set<std::pair<int, int>> directed;
  for (const auto& t : faces)
    for (int s = 0; s < 3; ++s) directed.insert({t[s], t[(s + 1) % 3]});
  std::map<int, int> next;  // boundary edge tail -> head
  for (auto [a, b] : directed)
    if (!directed.count({b, a})) next[a] = b;
  std::vector<std::vector<int>> loops;
  std::set<int> seen;
  for (auto [start, unused] : next) {
    if (seen.count(start)) continue;
    std::vector<int> loop;
    int v = start;
    do {
      loop.push_back(v);
      seen.insert(v);
      v = next.at(v);
    } while (v != start);
    loops.push_back(std::move(loop));
  }
  return loops;
}

namespace {

// Uniform grid over the mesh bounding box for neighbourhood queries.
struct VertexGrid {
  double cell;
  double x0, y0;
  std::map<std::pair<long long, long long>, std::vector<int>> bins;

  VertexGrid(const PlanarMesh& m, double cellSize) : cell(cellSize) {
    x0 = y0 = 0;
    if (!m.vertices.empty()) {
      x0 = m.vertices[0].real();
      y0 = m.vertices[0].imag();
      for (Complex v : m.vertices) {
        x0 = std::min(x0, v.real());
        y0 = std::min(y0, v.imag());
      }
    }
    for (int i = 0; i < static_cast<int>(m.vertices.size()); ++i)
      bins[binOf(m.vertices[i])].push_back(i);
  }

  std::pair<long long, long long> binOf(Complex p) const {
    return {static_cast<long long>(std::floor((p.real() - x0) / cell)),
            static_cast<long long>(std::floor((p.imag() - y0) / cell))};
  }

  template <class F>
  void forRange(Complex lo, Complex hi, F&& f) const {
    auto b0 = binOf(lo), b1 = binOf(hi);
    for (long long bx = b0.first; bx <= b1.first; ++bx)
      for (long long by = b0.second; by <= b1.second; ++by) {
        auto it = bins.find({bx, by});
        if (it == bins.end()) continue;
        for (int v : it->second) f(v);
      }
  }
};

double distanceToSegment(Complex p, Complex a, Complex b) {
  Complex ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0) return std::abs(p - a);
  double t = std::clamp(dot(ab, p - a) / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace

MeshReport validateMesh(const PlanarMesh& m, double mergeTol) {
  MeshReport rep;
  auto flag = [&rep](std::string v) {
    rep.ok = false;
    if (rep.violations.size() < 50) rep.violations.push_back(std::move(v));
  };

  int nv = static_cast<int>(m.vertices.size());
  for (int f = 0; f < static_cast<int>(m.faces.size()); ++f) {
    const auto& t = m.faces[f];
    for (int c : t)
      if (c < 0 || c >= nv) {
        flag("face " + std::to_string(f) + " has vertex index out of range");
        return rep;
      }
    if (t[0] == t[1] || t[1] == t[2] || t[2] == t[0])
      flag("face " + std::to_string(f) + " repeats a vertex");
    else if (m.faceArea(f) <= 0)
      flag("face " + std::to_string(f) + " has nonpositive area");
  }
  if (!rep.ok) return rep;

  std::set<std::pair<int, int>> directed;
  std::map<std::pair<int, int>, int> undirectedCount;
  for (const auto& t : m.faces) {
    for (int s = 0; s < 3; ++s) {
      int a = t[s], b = t[(s + 1) % 3];
      if (!directed.insert({a, b}).second)
        flag("directed edge (" + std::to_string(a) + "," + std::to_string(b) +
             ") used by two faces; orientations clash");
      ++undirectedCount[std::minmax(a, b)];
    }
  }
  for (auto& [e, n] : undirectedCount)
    if (n > 2)
      flag("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
           ") borders more than two faces");

  std::map<int, int> boundaryOut;
  for (auto [a, b] : directed) {
    if (directed.count({b, a})) continue;
    if (boundaryOut.count(a))
      flag("boundary branches at vertex " + std::to_string(a));
    boundaryOut[a] = b;
  }

  if (mergeTol <= 0) mergeTol = 1e-12 * m.diameter();
  if (nv > 0 && mergeTol > 0) {
    // Cell size keyed to typical edge length keeps range queries near O(1).
    double meanEdge = 0;
    int ne = 0;
    for (auto& [e, n] : undirectedCount) {
      meanEdge += std::abs(m.vertices[e.first] - m.vertices[e.second]);
      ++ne;
    }
    meanEdge = ne ? meanEdge / ne : std::max(m.diameter(), 1.0);
    VertexGrid grid(m, std::max(meanEdge, mergeTol * 4));

    for (int i = 0; i < nv; ++i) {
      Complex p = m.vertices[i];
      Complex pad(mergeTol, mergeTol);
      grid.forRange(p - pad, p + pad, [&](int j) {
        if (j <= i) return;
        if (std::abs(p - m.vertices[j]) < mergeTol)
          flag("vertices " + std::to_string(i) + " and " + std::to_string(j) +
               " closer than merge tolerance");
      });
    }

    for (auto& [e, n] : undirectedCount) {
      Complex a = m.vertices[e.first], b = m.vertices[e.second];
      Complex lo(std::min(a.real(), b.real()) - mergeTol,
                 std::min(a.imag(), b.imag()) - mergeTol);
      Complex hi(std::max(a.real(), b.real()) + mergeTol,
                 std::max(a.imag(), b.imag()) + mergeTol);
      grid.forRange(lo, hi, [&](int v) {
        if (v == e.first || v == e.second) return;
        if (distanceToSegment(m.vertices[v], a, b) < mergeTol)
          flag("vertex " + std::to_string(v) + " lies on edge (" +
               std::to_string(e.first) + "," + std::to_string(e.second) +
               "); mesh is not conforming");
      });
    }
  }
  return rep;
}

MeshBuilder::Key MeshBuilder::keyOf(Complex p) const {
  if (quantum_ > 0)
    return {std::llround(p.real() / quantum_), std::llround(p.imag() / quantum_)};
  long long x, y;
  double px = p.real() == 0 ? 0.0 : p.real();  // collapse -0.0
  double py = p.imag() == 0 ? 0.0 : p.imag();
  std::memcpy(&x, &px, sizeof x);
  std::memcpy(&y, &py, sizeof y);
  return {x, y};
}

int MeshBuilder::vertex(Complex p) {
  auto [it, inserted] = index_.try_emplace(keyOf(p), static_cast<int>(mesh_.vertices.size()));
  if (inserted) mesh_.vertices.push_back(p);
  return it->second;
}

void MeshBuilder::face(int a, int b, int c) {
  if (a == b || b == c || c == a)
    fail(ErrorCode::Invariant, "DegenerateFace", "face repeats a vertex");
  mesh_.faces.push_back({a, b, c});
}

void MeshBuilder::face(Complex a, Complex b, Complex c) {
  face(vertex(a), vertex(b), vertex(c));
}

PlanarMesh MeshBuilder::take() {
  index_.clear();
  return std::move(mesh_);
}

}  // namespace etri

#include "atlas.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <utility>

#include "error.hpp"
#include "geom.hpp"

namespace etri {
namespace {

Complex axialPoint(int i, int j) {
  return {i + 0.5 * j, 0.5 * std::sqrt(3.0) * j};
}

int hexNorm(int i, int j) { return std::max({std::abs(i), std::abs(j), std::abs(i + j)}); }

// Point set with tolerance lookup. Buckets are twice the tolerance wide, so
// scanning the 3x3 neighbourhood of a bucket sees every point within tol.
class PointIndex {
public:
  explicit PointIndex(double tol) : tol_(tol) {}

  int find(Complex p) const {
    long long bx = cell(p.real()), by = cell(p.imag());
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find({bx + dx, by + dy});
        if (it == grid_.end()) continue;
        for (int id : it->second)
          if (std::abs(points_[id] - p) <= tol_) return id;
      }
    return -1;
  }

  int insert(Complex p) {
    int id = static_cast<int>(points_.size());
    points_.push_back(p);
    grid_[{cell(p.real()), cell(p.imag())}].push_back(id);
    return id;
  }

  int findOrInsert(Complex p) {
    int id = find(p);
    return id >= 0 ? id : insert(p);
  }

  const std::vector<Complex>& points() const { return points_; }

private:
  long long cell(double x) const {
    return static_cast<long long>(std::floor(x / (2 * tol_)));
  }

  double tol_;
  std::map<std::pair<long long, long long>, std::vector<int>> grid_;
  std::vector<Complex> points_;
};

constexpr double kTessTol = 1e-9;

// Reflection of z across the geodesic through u and v in the disc model:
// inversion in the circle through u, v orthogonal to the unit circle, or a
// plain reflection when that geodesic is a diameter.
Complex reflectAcrossGeodesic(Complex u, Complex v, Complex z) {
  if (std::abs(cross(u, v)) < 1e-13) {
    Complex d = (v - u) / std::abs(v - u);
    return u + d * d * std::conj(z - u);
  }
  // |c - u| = |c - v| = sqrt(|c|^2 - 1) gives a linear system for the centre.
  double det = 4 * cross(u, v);
  double ru = std::norm(u) + 1, rv = std::norm(v) + 1;
  Complex c{(ru * 2 * v.imag() - rv * 2 * u.imag()) / det,
            (rv * 2 * u.real() - ru * 2 * v.real()) / det};
  return c + (std::norm(c) - 1) / std::conj(z - c);
}

struct TessBuilder {
  PointIndex verts{kTessTol};
  PointIndex keys{kTessTol};
  std::vector<std::array<int, 3>> faces;
  std::vector<std::array<Complex, 3>> pos;
  std::vector<std::vector<int>> atVertex;

  void add(Complex a, Complex b, Complex c) {
    if (signedArea(a, b, c) < 0) std::swap(b, c);
    Complex key = (a + b + c) / 3.0;
    if (keys.find(key) >= 0) return;
    keys.insert(key);
    int f = static_cast<int>(faces.size());
    std::array<Complex, 3> p{a, b, c};
    std::array<int, 3> ids;
    for (int i = 0; i < 3; ++i) {
      ids[i] = verts.findOrInsert(p[i]);
      if (ids[i] == static_cast<int>(atVertex.size())) atVertex.emplace_back();
      atVertex[ids[i]].push_back(f);
    }
    faces.push_back(ids);
    pos.push_back(p);
  }

  // Reflects every face at v across its sides incident to v until the link
  // stops growing. atVertex[v] extends while we scan it.
  void completeLink(int v) {
    for (size_t i = 0; i < atVertex[v].size(); ++i) {
      int f = atVertex[v][i];
      for (int s = 0; s < 3; ++s) {
        if (faces[f][s] != v && faces[f][(s + 1) % 3] != v) continue;
        const auto& p = pos[f];
        add(p[s], p[(s + 1) % 3],
            reflectAcrossGeodesic(p[s], p[(s + 1) % 3], p[(s + 2) % 3]));
      }
    }
  }
};

}  // namespace

PlanarMesh latticePatch(int extent) {
  if (extent < 1)
    fail(ErrorCode::Argument, "BadLatticeSize", "patch extent must be at least 1");
  MeshBuilder b;
  auto in = [extent](int i, int j) { return hexNorm(i, j) <= extent; };
  for (int j = -extent; j <= extent; ++j)
    for (int i = -extent; i <= extent; ++i) {
      if (in(i, j) && in(i + 1, j) && in(i, j + 1))
        b.face(axialPoint(i, j), axialPoint(i + 1, j), axialPoint(i, j + 1));
      if (in(i + 1, j) && in(i + 1, j + 1) && in(i, j + 1))
        b.face(axialPoint(i + 1, j), axialPoint(i + 1, j + 1), axialPoint(i, j + 1));
    }
  return b.take();
}

Surface latticeCylinder(int n, int h) {
  if (n < 3 || h < 1)
    fail(ErrorCode::Argument, "BadLatticeSize", "cylinder needs width >= 3 and height >= 1");
  std::vector<std::array<int, 3>> faces;
  auto v = [n](int i, int j) { return j * n + (i % n); };
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < n; ++i) {
      faces.push_back({v(i, j), v(i + 1, j), v(i, j + 1)});
      faces.push_back({v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)});
    }
  return Surface::fromIndexedFaces(faces);
}

HyperbolicTessellation hyperbolicTessellation(int n, int depth) {
  if (n <= 6)
    fail(ErrorCode::Argument, "InvalidDegree",
         "n triangles of angle 2*pi/n fit around a vertex only for n >= 7");
  if (depth < 0 || depth > 8)
    fail(ErrorCode::Argument, "DepthOutOfRange", "depth must be in [0, 8]");

  // Equilateral triangle of vertex angle 2*pi/n, centred at the origin. Its
  // circumradius R comes from the right triangle with angles pi/n and pi/3:
  // cosh R = cot(pi/n) cot(pi/3), and the disc-model radius is tanh(R/2).
  double coshR = 1.0 / (std::tan(M_PI / n) * std::tan(M_PI / 3));
  double r = std::tanh(std::acosh(coshR) / 2);

  TessBuilder tb;
  tb.add(std::polar(r, M_PI / 2), std::polar(r, M_PI / 2 + 2 * M_PI / 3),
         std::polar(r, M_PI / 2 + 4 * M_PI / 3));
  for (int level = 0; level < depth; ++level) {
    int known = static_cast<int>(tb.verts.points().size());
    for (int v = 0; v < known; ++v) tb.completeLink(v);
  }

  HyperbolicTessellation out;
  out.mesh = PlanarMesh{tb.verts.points(), tb.faces};
  out.surface = Surface::fromIndexedFaces(tb.faces);
  return out;
}

namespace {

Complex intPow(Complex z, int n) {
  Complex out{1.0, 0.0};
  for (int i = 0; i < n; ++i) out *= z;
  return out;
}

Complex gMap(Complex z, int n) {
  Complex zn = intPow(z, n);
  return zn / (zn - 1.0);
}

Complex gPrime(Complex z, int n) {
  Complex zn = intPow(z, n);
  Complex d = zn - 1.0;
  return -double(n) * intPow(z, n - 1) / (d * d);
}

// The n solutions of g(z) = w, ordered by the n-th root of unity factor.
std::vector<Complex> inverseBranches(Complex w, int n) {
  Complex p = std::exp(std::log(w / (w - 1.0)) / double(n));
  std::vector<Complex> out(n);
  for (int k = 0; k < n; ++k) out[k] = p * std::polar(1.0, 2 * M_PI * k / n);
  return out;
}

// Continues the solution of g(z) = w along the segment w0 -> w1 by stepping
// w and re-solving with Newton from the previous point.
Complex continueAlong(Complex z, Complex w0, Complex w1, int n) {
  int steps = 48 + static_cast<int>(48 * std::abs(w1 - w0));
  for (int i = 1; i <= steps; ++i) {
    Complex w = w0 + (w1 - w0) * (double(i) / steps);
    bool done = false;
    for (int it = 0; it < 30 && !done; ++it) {
      Complex f = gMap(z, n) - w;
      done = std::abs(f) < 1e-12;
      if (!done) z -= f / gPrime(z, n);
    }
    if (!done)
      fail(ErrorCode::Numeric, "LiftMonodromyMismatch",
           "path lift failed to converge");
  }
  return z;
}

// Lifts every branch along a w-plane polyline and matches the endpoints
// against the branches there, giving the sheet permutation for the crossed
// base edge.
std::vector<int> liftPermutation(const std::vector<Complex>& path, int n) {
  auto start = inverseBranches(path.front(), n);
  auto end = inverseBranches(path.back(), n);
  double sep = 2.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sep = std::min(sep, std::abs(end[i] - end[j]));
  std::vector<int> sigma(n, -1);
  std::vector<char> used(n, 0);
  for (int k = 0; k < n; ++k) {
    Complex z = start[k];
    for (size_t s = 0; s + 1 < path.size(); ++s)
      z = continueAlong(z, path[s], path[s + 1], n);
    int best = -1;
    for (int j = 0; j < n; ++j)
      if (std::abs(z - end[j]) < 0.25 * sep) best = j;
    if (best < 0 || used[best])
      fail(ErrorCode::Numeric, "LiftMonodromyMismatch",
           "lifted sheet did not land on a branch");
    used[best] = 1;
    sigma[k] = best;
  }
  return sigma;
}

}  // namespace

PulledBackSphere puncturedSpherePullback(int n) {
  if (n < 1)
    fail(ErrorCode::Argument, "BadSheetCount", "the covering degree must be at least 1");

  // Base: upper face U = (0, 1, inf), lower face L = (0, inf, 1). Sheet k of
  // the cover carries the branch zeta_k * (w/(w-1))^(1/n) on U, transported
  // to L across the lifted (inf, 0) edge. The principal root is cut along
  // the negative reals, the image of (0, 1) under w/(w-1), so crossing
  // (0, 1) downward shifts the sheet by -1 while the other two edges keep
  // it. The numerical lift below must reproduce exactly that.
  Complex pU{0.5, 0.8};
  Complex pL = std::conj(pU);
  auto sigma01 = liftPermutation({pU, pL}, n);
  auto sigma1i = liftPermutation({pU, {2.5, 0.8}, {2.5, -0.8}, pL}, n);
  auto sigmaI0 = liftPermutation({pU, {-1.5, 0.8}, {-1.5, -0.8}, pL}, n);
  for (int k = 0; k < n; ++k)
    if (sigma1i[k] != k || sigmaI0[k] != k || sigma01[k] != (k + n - 1) % n)
      fail(ErrorCode::Numeric, "LiftMonodromyMismatch",
           "numerical path lift disagrees with the branch-cut permutation");

  std::vector<Gluing> gl;
  for (int k = 0; k < n; ++k) {
    gl.push_back({{k, 1}, {n + k, 1}});                // over (1, inf)
    gl.push_back({{k, 2}, {n + k, 0}});                // over (inf, 0)
    gl.push_back({{k, 0}, {n + sigma01[k], 2}});       // over (0, 1)
  }

  PulledBackSphere out;
  out.surface = Surface::fromGluings(2 * n, gl);
  const Colour upperCol[3] = {Colour::MinusOne, Colour::PlusOne, Colour::Infty};
  const Colour lowerCol[3] = {Colour::MinusOne, Colour::Infty, Colour::PlusOne};
  out.colouring.assign(out.surface.vertexCount(), Colour::MinusOne);
  for (int f = 0; f < 2 * n; ++f)
    for (int c = 0; c < 3; ++c)
      out.colouring[out.surface.vertexClass(f, c)] = (f < n ? upperCol : lowerCol)[c];
  if (!out.surface.isProperColouring(out.colouring))
    fail(ErrorCode::Invariant, "ImproperColouring",
         "pullback colouring is not proper; sheet gluing is inconsistent");

  for (int vc = 0; vc < out.surface.vertexCount(); ++vc) {
    if (out.colouring[vc] == Colour::MinusOne) out.classesOverZero.push_back(vc);
    if (out.colouring[vc] == Colour::PlusOne) out.classesOverOne.push_back(vc);
  }
  std::map<int, Complex> punctures;
  for (int k = 0; k < n; ++k)
    punctures[out.surface.vertexClass(k, 2)] = std::polar(1.0, 2 * M_PI * k / n);
  if (static_cast<int>(punctures.size()) != n)
    fail(ErrorCode::Numeric, "LiftMonodromyMismatch", "puncture classes collided");
  for (const auto& [vc, z] : punctures) {
    out.punctureClasses.push_back(vc);
    out.puncturePosition.push_back(z);
  }
  return out;
}

}  // namespace etri

#include "rect.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "error.hpp"
#include "geom.hpp"

namespace etri {

namespace {

double toCoord(long long v, int fineLevel) {
  return std::ldexp(static_cast<double>(v), -fineLevel);
}

constexpr double kSlack = 1 + 1e-12;

// Piecewise-linear offset polyline over one side, clamped at the ends.
struct SigmaEval {
  const std::vector<double>* t = nullptr;
  const std::vector<double>* d = nullptr;

  double at(double x) const {
    const auto& T = *t;
    const auto& D = *d;
    if (x <= T.front()) return D.front();
    if (x >= T.back()) return D.back();
    size_t i = std::upper_bound(T.begin(), T.end(), x) - T.begin();
    double f = (x - T[i - 1]) / (T[i] - T[i - 1]);
    return D[i - 1] + f * (D[i] - D[i - 1]);
  }

  double maxOver(double a, double b) const {
    const auto& T = *t;
    double best = std::max(at(a), at(b));
    for (size_t i = std::upper_bound(T.begin(), T.end(), a) - T.begin();
         i < T.size() && T[i] < b; ++i)
      best = std::max(best, (*d)[i]);
    return best;
  }
};

}  // namespace

NormalizedRect normalizeRectangle(double w, double h) {
  if (!(w > 0) || !(h > 0))
    fail(ErrorCode::Argument, "NonpositiveDimensions",
         "rectangle sides must be positive");
  if (w < h)
    fail(ErrorCode::Argument, "AspectOutOfRange",
         "width must be at least height");
  double q = w / h;
  long long m = static_cast<long long>(std::ceil(q - 1e-9));
  if (m < 1) m = 1;
  if (m > 4096)
    fail(ErrorCode::Argument, "AspectOutOfRange",
         "aspect ratio beyond 4096 is not supported");
  return {static_cast<int>(m), static_cast<double>(m) * h / w};
}

int dkLevel(double Dk, double lambda) {
  if (!(lambda >= 1))
    fail(ErrorCode::Argument, "LambdaOutOfRange", "lambda must be at least 1");
  if (!(Dk > 0))
    fail(ErrorCode::Invariant, "NonpositiveLength",
         "partition edge length must be positive");
  if (Dk > lambda * kSlack)
    fail(ErrorCode::Invariant, "BoundedGeometryViolation",
         "edge longer than lambda times the short side");
  double r = Dk / (8 * lambda);
  int e = 0;
  double f = std::frexp(r, &e);
  int j = (f == 0.5) ? 1 - e : -e;  // smallest power with r <= 2^{-j}
  return std::max(j, 3);
}

double dkValue(double Dk, double lambda) {
  return std::ldexp(0.75, -dkLevel(Dk, lambda));
}

WhitneyLayout whitneyDecompose(int m, int jmax) {
  if (m < 1 || m > 4096)
    fail(ErrorCode::Argument, "AspectOutOfRange", "m out of range");
  if (jmax < 2)
    fail(ErrorCode::Argument, "DepthOutOfRange", "jmax must be at least 2");
  if (jmax > 24)
    fail(ErrorCode::Argument, "DepthOutOfRange",
         "partition is too fine; refinement past level 24");
  WhitneyLayout L;
  L.m = m;
  L.jmax = jmax;
  L.fineLevel = jmax + 2;
  L.W = static_cast<long long>(m) << L.fineLevel;
  L.H = 1LL << L.fineLevel;
  for (int j = 2; j <= jmax; ++j) {
    long long s = 1LL << (L.fineLevel - j);
    long long Wj = static_cast<long long>(m) << j;
    long long Hj = 1LL << j;
    auto add = [&](long long gx, long long gy) {
      L.squares.push_back({gx * s, gy * s, s});
    };
    for (long long x = 1; x <= Wj - 2; ++x) {
      add(x, 1);
      add(x, Hj - 2);
    }
    for (long long y = 2; y <= Hj - 3; ++y) {
      add(1, y);
      add(Wj - 2, y);
    }
    if (j == 2) L.centralCount = static_cast<int>(L.squares.size());
  }
  return L;
}

SideArcs buildSigmaArcs(const std::array<std::vector<double>, 4>& sideT, int m,
                        double lambda) {
  if (m < 1)
    fail(ErrorCode::Argument, "AspectOutOfRange", "m must be at least 1");
  if (!(lambda >= 1))
    fail(ErrorCode::Argument, "LambdaOutOfRange", "lambda must be at least 1");
  const std::array<double, 4> len = {static_cast<double>(m), 1.0,
                                     static_cast<double>(m), 1.0};
  for (int s = 0; s < 4; ++s) {
    const auto& t = sideT[s];
    if (t.size() < 2)
      fail(ErrorCode::Argument, "BadPartition",
           "each side needs at least its two corners");
    if (t.front() != 0.0 || t.back() != len[s])
      fail(ErrorCode::Argument, "BadPartition",
           "side partition must span the whole side");
    for (size_t i = 0; i + 1 < t.size(); ++i)
      if (!(t[i] < t[i + 1]))
        fail(ErrorCode::Argument, "BadPartition",
             "side partition must increase strictly");
  }

  // Cyclic edge list in boundary order, for the bounded-geometry checks.
  std::vector<double> edges;
  for (int s = 0; s < 4; ++s)
    for (size_t i = 0; i + 1 < sideT[s].size(); ++i)
      edges.push_back(sideT[s][i + 1] - sideT[s][i]);
  for (double e : edges)
    if (e > lambda * kSlack)
      fail(ErrorCode::Invariant, "BoundedGeometryViolation",
           "edge longer than lambda times the short side");
  for (size_t i = 0; i < edges.size(); ++i) {
    double a = edges[i], b = edges[(i + 1) % edges.size()];
    if (std::max(a, b) > lambda * std::min(a, b) * kSlack)
      fail(ErrorCode::Invariant, "BoundedGeometryViolation",
           "adjacent partition edges exceed the ratio bound");
  }

  SideArcs arcs;
  arcs.t = sideT;
  // Corner c joins side c-1 to side c; both sigma arcs share its offset,
  // taken from the smaller of the two edges meeting there.
  std::array<double, 4> cornerD;
  for (int c = 0; c < 4; ++c) {
    const auto& prv = sideT[(c + 3) % 4];
    const auto& cur = sideT[c];
    double D = std::min(prv[prv.size() - 1] - prv[prv.size() - 2], cur[1] - cur[0]);
    arcs.cornerLevel[c] = dkLevel(D, lambda);
    cornerD[c] = dkValue(D, lambda);
    arcs.maxLevel = std::max(arcs.maxLevel, arcs.cornerLevel[c]);
  }
  for (int s = 0; s < 4; ++s) {
    const auto& t = sideT[s];
    auto& d = arcs.d[s];
    d.resize(t.size());
    d.front() = cornerD[s];
    d.back() = cornerD[(s + 1) % 4];
    for (size_t k = 1; k + 1 < t.size(); ++k) {
      double D = std::min(t[k] - t[k - 1], t[k + 1] - t[k]);
      arcs.maxLevel = std::max(arcs.maxLevel, dkLevel(D, lambda));
      d[k] = dkValue(D, lambda);
    }
  }
  return arcs;
}

GammaLayout buildGamma(const WhitneyLayout& layout, const SideArcs& arcs) {
  const int JF = layout.fineLevel;
  const long long W = layout.W, H = layout.H;
  std::array<SigmaEval, 4> sig;
  for (int s = 0; s < 4; ++s) sig[s] = {&arcs.t[s], &arcs.d[s]};

  auto kept = [&](const FineSquare& q) {
    const long long loc[4][3] = {
        {q.y, q.x, q.x + q.size},                       // bottom
        {W - q.x - q.size, q.y, q.y + q.size},          // right
        {H - q.y - q.size, W - q.x - q.size, W - q.x},  // top
        {q.x, H - q.y - q.size, H - q.y},               // left
    };
    for (int s = 0; s < 4; ++s) {
      double dist = toCoord(loc[s][0], JF);
      if (dist < sig[s].maxOver(toCoord(loc[s][1], JF), toCoord(loc[s][2], JF)))
        return false;
    }
    return true;
  };

  GammaLayout g;
  for (const auto& q : layout.squares)
    if (kept(q)) g.kept.push_back(q);
  if (g.kept.empty())
    fail(ErrorCode::Invariant, "CornerIntersectionFailure",
         "sigma arcs exclude every Whitney square; lambda too small");

  // Net signed coverage of square edges; surviving intervals form the kept
  // region's boundary, oriented with the region on the left. Events are kept
  // at every square corner so the cycle records each conforming vertex.
  std::map<long long, std::map<long long, int>> hor, ver;
  for (const auto& q : g.kept) {
    hor[q.y][q.x] += 1;
    hor[q.y][q.x + q.size] -= 1;
    hor[q.y + q.size][q.x] -= 1;
    hor[q.y + q.size][q.x + q.size] += 1;
    ver[q.x + q.size][q.y] += 1;
    ver[q.x + q.size][q.y + q.size] -= 1;
    ver[q.x][q.y] -= 1;
    ver[q.x][q.y + q.size] += 1;
  }

  using Pt = std::array<long long, 2>;
  std::map<Pt, Pt> next;
  auto emit = [&](Pt a, Pt b) {
    if (!next.emplace(a, b).second)
      fail(ErrorCode::Invariant, "NonSimpleGamma",
           "kept region boundary touches itself");
  };
  for (const auto& [y, deltas] : hor) {
    int net = 0;
    long long prev = 0;
    for (const auto& [x, dv] : deltas) {
      if (net > 0)
        emit({prev, y}, {x, y});
      else if (net < 0)
        emit({x, y}, {prev, y});
      net += dv;
      prev = x;
      if (net < -1 || net > 1)
        fail(ErrorCode::Invariant, "NonSimpleGamma", "kept squares overlap");
    }
  }
  for (const auto& [x, deltas] : ver) {
    int net = 0;
    long long prev = 0;
    for (const auto& [y, dv] : deltas) {
      if (net > 0)
        emit({x, prev}, {x, y});
      else if (net < 0)
        emit({x, y}, {x, prev});
      net += dv;
      prev = y;
      if (net < -1 || net > 1)
        fail(ErrorCode::Invariant, "NonSimpleGamma", "kept squares overlap");
    }
  }

  Pt start = next.begin()->first;
  Pt cur = start;
  do {
    g.cycle.push_back(cur);
    auto it = next.find(cur);
    if (it == next.end())
      fail(ErrorCode::Invariant, "NonSimpleGamma", "open boundary chain");
    cur = it->second;
    next.erase(it);
  } while (cur != start);
  if (!next.empty())
    fail(ErrorCode::Invariant, "NonSimpleGamma",
         "kept region boundary is disconnected");

  __int128 area2 = 0;
  for (size_t i = 0; i < g.cycle.size(); ++i) {
    const Pt& a = g.cycle[i];
    const Pt& b = g.cycle[(i + 1) % g.cycle.size()];
    area2 += static_cast<__int128>(a[0]) * b[1] - static_cast<__int128>(b[0]) * a[1];
  }
  if (area2 <= 0)
    fail(ErrorCode::Invariant, "NonSimpleGamma", "gamma is not counterclockwise");

  std::array<Pt, 4> anchors;
  {
    std::array<long long, 4> gc;
    for (int c = 0; c < 4; ++c) gc[c] = 1LL << (JF - arcs.cornerLevel[c]);
    anchors = {Pt{gc[0], gc[0]}, Pt{W - gc[1], gc[1]}, Pt{W - gc[2], H - gc[2]},
               Pt{gc[3], H - gc[3]}};
  }
  std::map<Pt, size_t> where;
  for (size_t i = 0; i < g.cycle.size(); ++i) where[g.cycle[i]] = i;
  auto at = where.find(anchors[0]);
  if (at == where.end())
    fail(ErrorCode::Invariant, "CornerIntersectionFailure",
         "corner anchor is not a gamma vertex");
  std::rotate(g.cycle.begin(), g.cycle.begin() + at->second, g.cycle.end());
  where.clear();
  for (size_t i = 0; i < g.cycle.size(); ++i) where[g.cycle[i]] = i;
  for (int c = 0; c < 4; ++c) {
    auto it = where.find(anchors[c]);
    if (it == where.end())
      fail(ErrorCode::Invariant, "CornerIntersectionFailure",
           "corner anchor is not a gamma vertex");
    g.anchor[c] = it->second;
  }
  if (!(g.anchor[0] == 0 && g.anchor[0] < g.anchor[1] &&
        g.anchor[1] < g.anchor[2] && g.anchor[2] < g.anchor[3]))
    fail(ErrorCode::Invariant, "CornerIntersectionFailure",
         "corner anchors out of cyclic order");
  return g;
}

PlanarMesh triangulateCore(const std::vector<FineSquare>& squares,
                           int fineLevel) {
  using Pt = std::array<long long, 2>;
  std::set<Pt> corners;
  for (const auto& q : squares) {
    if (q.size < 2 || q.size % 2 != 0)
      fail(ErrorCode::Argument, "DepthOutOfRange",
           "square size must be even in fine units");
    corners.insert({q.x, q.y});
    corners.insert({q.x + q.size, q.y});
    corners.insert({q.x + q.size, q.y + q.size});
    corners.insert({q.x, q.y + q.size});
  }
  MeshBuilder b;
  auto P = [&](Pt p) {
    return Complex(toCoord(p[0], fineLevel), toCoord(p[1], fineLevel));
  };
  for (const auto& q : squares) {
    long long s = q.size, h = s / 2, x = q.x, y = q.y;
    const Pt c[4] = {{x, y}, {x + s, y}, {x + s, y + s}, {x, y + s}};
    const Pt mid[4] = {{x + h, y}, {x + s, y + h}, {x + h, y + s}, {x, y + h}};
    std::vector<Pt> ring;
    int hangs = 0;
    size_t hangAt = 0;
    for (int i = 0; i < 4; ++i) {
      ring.push_back(c[i]);
      if (corners.count(mid[i])) {
        hangAt = ring.size();
        ring.push_back(mid[i]);
        ++hangs;
      }
    }
    size_t n = ring.size();
    if (hangs == 0) {
      b.face(P(c[0]), P(c[1]), P(c[2]));
      b.face(P(c[0]), P(c[2]), P(c[3]));
    } else if (hangs == 1) {
      for (size_t k = 1; k + 1 < n; ++k)
        b.face(P(ring[hangAt]), P(ring[(hangAt + k) % n]),
               P(ring[(hangAt + k + 1) % n]));
    } else {
      Complex z = P({x + h, y + h});
      for (size_t k = 0; k < n; ++k)
        b.face(P(ring[k]), P(ring[(k + 1) % n]), z);
    }
  }
  return b.take();
}

std::vector<std::array<Complex, 3>> earClip(const std::vector<Complex>& poly) {
  size_t n = poly.size();
  if (n < 3)
    fail(ErrorCode::Argument, "DegeneratePolygon",
         "polygon needs at least three vertices");
  double scale = 0;
  for (const auto& p : poly) scale = std::max(scale, std::abs(p - poly[0]));
  const double eps = std::max(scale * scale * 1e-13, 1e-300);
  auto insideOrOn = [&](const Complex& p, const Complex& a, const Complex& b,
                        const Complex& c) {
    return cross(b - a, p - a) >= -eps && cross(c - b, p - b) >= -eps &&
           cross(a - c, p - c) >= -eps;
  };
  std::vector<size_t> prev(n), next(n);
  for (size_t i = 0; i < n; ++i) {
    prev[i] = (i + n - 1) % n;
    next[i] = (i + 1) % n;
  }
  std::vector<std::array<Complex, 3>> out;
  out.reserve(n - 2);
  size_t head = 0, alive = n;
  while (alive > 3) {
    double bestScore = -1;
    size_t best = n;
    size_t i = head;
    for (size_t step = 0; step < alive; ++step, i = next[i]) {
      const Complex &pa = poly[prev[i]], &pb = poly[i], &pc = poly[next[i]];
      if (!(cross(pb - pa, pc - pa) > eps)) continue;
      bool ok = true;
      for (size_t j = next[next[i]]; j != prev[i]; j = next[j])
        if (insideOrOn(poly[j], pa, pb, pc)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      double score = minAngleOf(pa, pb, pc);
      if (score > bestScore) {
        bestScore = score;
        best = i;
      }
    }
    if (best == n)
      fail(ErrorCode::Numeric, "EarClipFailure",
           "no clippable ear in collar polygon");
    out.push_back({poly[prev[best]], poly[best], poly[next[best]]});
    next[prev[best]] = next[best];
    prev[next[best]] = prev[best];
    if (head == best) head = next[best];
    --alive;
  }
  const Complex &a = poly[head], &b = poly[next[head]], &c = poly[next[next[head]]];
  if (!(cross(b - a, c - a) > eps))
    fail(ErrorCode::Numeric, "EarClipFailure", "final triangle is degenerate");
  out.push_back({a, b, c});
  return out;
}

namespace {

// Exact max-min-angle triangulation of a small simple CCW polygon by interval
// dynamic programming over boundary chains. Chords must avoid the boundary
// and run through the interior. Returns empty if no triangulation was found.
std::vector<std::array<Complex, 3>> dpTriangulate(const std::vector<Complex>& poly) {
  const size_t n = poly.size();
  double scale = 0;
  for (const auto& p : poly) scale = std::max(scale, std::abs(p - poly[0]));
  const double eps = std::max(scale * scale * 1e-13, 1e-300);
  const double lin = std::max(scale * 1e-13, 1e-300);

  auto onSeg = [&](const Complex& p, const Complex& a, const Complex& b) {
    if (std::abs(cross(b - a, p - a)) > lin * std::abs(b - a)) return false;
    double t = dot(p - a, b - a);
    return t > 0 && t < std::norm(b - a);
  };
  auto properCross = [&](const Complex& a, const Complex& b, const Complex& c,
                         const Complex& d) {
    double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    return ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
           ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps));
  };
  auto inside = [&](const Complex& p) {
    bool in = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
      const Complex &a = poly[i], &b = poly[j];
      if ((a.imag() > p.imag()) != (b.imag() > p.imag()) &&
          p.real() < a.real() + (b.real() - a.real()) * (p.imag() - a.imag()) /
                                    (b.imag() - a.imag()))
        in = !in;
    }
    return in;
  };
  auto diagOK = [&](size_t i, size_t j) {
    if ((i + 1) % n == j || (j + 1) % n == i) return true;
    const Complex &a = poly[i], &b = poly[j];
    for (size_t k = 0; k < n; ++k) {
      size_t k1 = (k + 1) % n;
      if (k == i || k == j || k1 == i || k1 == j) continue;
      if (properCross(a, b, poly[k], poly[k1])) return false;
    }
    for (size_t k = 0; k < n; ++k)
      if (k != i && k != j && onSeg(poly[k], a, b)) return false;
    return inside(0.5 * (a + b));
  };

  const double kInf = 1e9;
  std::vector<std::vector<double>> best(n, std::vector<double>(n, -1));
  std::vector<std::vector<size_t>> pick(n, std::vector<size_t>(n, n));
  std::vector<std::vector<char>> diag(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) diag[i][j] = diagOK(i, j) ? 1 : 0;
  for (size_t i = 0; i + 1 < n; ++i) best[i][i + 1] = kInf;
  for (size_t gap = 2; gap < n; ++gap)
    for (size_t i = 0; i + gap < n; ++i) {
      size_t j = i + gap;
      if (!diag[i][j]) continue;
      for (size_t k = i + 1; k < j; ++k) {
        if (best[i][k] < 0 || best[k][j] < 0) continue;
        if (!(cross(poly[k] - poly[i], poly[j] - poly[i]) > eps)) continue;
        double v = std::min({best[i][k], best[k][j],
                             minAngleOf(poly[i], poly[k], poly[j])});
        if (v > best[i][j]) {
          best[i][j] = v;
          pick[i][j] = k;
        }
      }
    }
  std::vector<std::array<Complex, 3>> out;
  if (best[0][n - 1] < 0) return out;
  std::vector<std::pair<size_t, size_t>> stack = {{0, n - 1}};
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    if (j - i < 2) continue;
    size_t k = pick[i][j];
    out.push_back({poly[i], poly[k], poly[j]});
    stack.push_back({i, k});
    stack.push_back({k, j});
  }
  // guard against a chord pair that silently double-covers a pocket
  double covered = 0, total = 0;
  for (const auto& t : out) covered += signedArea(t[0], t[1], t[2]);
  for (size_t i = 0; i < n; ++i)
    total += 0.5 * cross(poly[i], poly[(i + 1) % n]);
  if (!(std::fabs(covered - total) <= 1e-6 * std::fabs(total))) out.clear();
  return out;
}

std::vector<std::array<Complex, 3>> triangulatePolygon(
    const std::vector<Complex>& poly) {
  if (poly.size() <= 150) {
    auto tris = dpTriangulate(poly);
    if (!tris.empty()) return tris;
  }
  return earClip(poly);
}

}  // namespace

RectResult rectTriangulation(double w, double h,
                             const std::array<std::vector<double>, 4>& sides,
                             double lambda) {
  if (!(w > 0) || !(h > 0))
    fail(ErrorCode::Argument, "NonpositiveDimensions",
         "rectangle sides must be positive");
  if (w < h)
    fail(ErrorCode::Argument, "AspectOutOfRange",
         "width must be at least height");
  if (!(lambda >= 1))
    fail(ErrorCode::Argument, "LambdaOutOfRange", "lambda must be at least 1");

  const std::array<double, 4> rawLen = {w, h, w, h};
  for (int s = 0; s < 4; ++s) {
    const auto& v = sides[s];
    if (v.size() < 2)
      fail(ErrorCode::Argument, "BadPartition",
           "each side needs at least its two corners");
    if (v.front() != 0.0 || v.back() != rawLen[s])
      fail(ErrorCode::Argument, "BadPartition",
           "side coordinates must run from 0 to the side length");
    for (size_t i = 0; i + 1 < v.size(); ++i)
      if (!(v[i] < v[i + 1]))
        fail(ErrorCode::Argument, "BadPartition",
             "side coordinates must increase strictly");
  }
  {
    std::vector<double> edges;
    for (int s = 0; s < 4; ++s) {
      const auto& v = sides[s];
      if (s < 2)
        for (size_t i = 0; i + 1 < v.size(); ++i) edges.push_back(v[i + 1] - v[i]);
      else
        for (size_t i = v.size() - 1; i > 0; --i) edges.push_back(v[i] - v[i - 1]);
    }
    for (double e : edges)
      if (e > lambda * h * kSlack)
        fail(ErrorCode::Invariant, "BoundedGeometryViolation",
             "edge longer than lambda times the short side");
    for (size_t i = 0; i < edges.size(); ++i) {
      double a = edges[i], b = edges[(i + 1) % edges.size()];
      if (std::max(a, b) > lambda * std::min(a, b) * kSlack)
        fail(ErrorCode::Invariant, "BoundedGeometryViolation",
             "adjacent partition edges exceed the ratio bound");
    }
  }

  NormalizedRect nr = normalizeRectangle(w, h);
  const int m = nr.m;
  const double lambdaRun = lambda * std::max(1.0, nr.a) * kSlack;
  const double sx = static_cast<double>(m) / w;

  // Per side, in boundary order: t along the side, plus the normalized and
  // original positions of each partition point.
  std::array<std::vector<double>, 4> tList;
  std::array<std::vector<Complex>, 4> bNorm, bOrig;
  for (size_t i = 0; i < sides[0].size(); ++i) {
    double x = sides[0][i];
    double xn = (i + 1 == sides[0].size()) ? m : x * sx;
    tList[0].push_back(xn);
    bNorm[0].push_back(Complex(xn, 0));
    bOrig[0].push_back(Complex(x, 0));
  }
  for (size_t i = 0; i < sides[1].size(); ++i) {
    double y = sides[1][i];
    double yn = (i + 1 == sides[1].size()) ? 1 : y / h;
    tList[1].push_back(yn);
    bNorm[1].push_back(Complex(m, yn));
    bOrig[1].push_back(Complex(w, y));
  }
  for (size_t i = sides[2].size(); i-- > 0;) {
    double x = sides[2][i];
    double xn = (i + 1 == sides[2].size()) ? m : (i == 0 ? 0 : x * sx);
    tList[2].push_back(m - xn);
    bNorm[2].push_back(Complex(xn, 1));
    bOrig[2].push_back(Complex(x, h));
  }
  for (size_t i = sides[3].size(); i-- > 0;) {
    double y = sides[3][i];
    double yn = (i + 1 == sides[3].size()) ? 1 : (i == 0 ? 0 : y / h);
    tList[3].push_back(1 - yn);
    bNorm[3].push_back(Complex(0, yn));
    bOrig[3].push_back(Complex(0, y));
  }
  for (int s = 0; s < 4; ++s)
    for (size_t i = 0; i + 1 < tList[s].size(); ++i)
      if (!(tList[s][i] < tList[s][i + 1]))
        fail(ErrorCode::Argument, "BadPartition",
             "partition points collapse under normalization");

  SideArcs arcs = buildSigmaArcs(tList, m, lambdaRun);
  WhitneyLayout layout = whitneyDecompose(m, arcs.maxLevel);
  GammaLayout gamma = buildGamma(layout, arcs);
  PlanarMesh core = triangulateCore(gamma.kept, layout.fineLevel);

  const int JF = layout.fineLevel;
  const long long W = layout.W, H = layout.H;
  MeshBuilder b;
  for (const auto& f : core.faces)
    b.face(core.vertices[f[0]], core.vertices[f[1]], core.vertices[f[2]]);

  using Pt = std::array<long long, 2>;
  for (int s = 0; s < 4; ++s) {
    std::vector<Pt> port;
    {
      size_t i0 = gamma.anchor[s], i1 = gamma.anchor[(s + 1) % 4];
      for (size_t i = i0;; i = (i + 1) % gamma.cycle.size()) {
        port.push_back(gamma.cycle[i]);
        if (i == i1) break;
      }
    }
    auto tOf = [&](const Pt& p) -> long long {
      switch (s) {
        case 0: return p[0];
        case 1: return p[1];
        case 2: return W - p[0];
        default: return H - p[1];
      }
    };
    auto hOf = [&](const Pt& p) -> long long {
      switch (s) {
        case 0: return p[1];
        case 1: return W - p[0];
        case 2: return H - p[1];
        default: return p[0];
      }
    };
    std::vector<double> gt;
    std::vector<Complex> gp;
    gt.reserve(port.size());
    gp.reserve(port.size());
    for (const auto& p : port) {
      gt.push_back(toCoord(tOf(p), JF));
      gp.push_back(Complex(toCoord(p[0], JF), toCoord(p[1], JF)));
    }
    for (size_t i = 0; i + 1 < gt.size(); ++i)
      if (gt[i] > gt[i + 1])
        fail(ErrorCode::Invariant, "NonMonotoneGammaOverEdge",
             "gamma backtracks along a side");

    const auto& P = bNorm[s];
    const size_t nP = P.size();
    std::vector<size_t> startIdx(nP, 0), endIdx(nP, 0);
    endIdx[nP - 1] = gt.size() - 1;
    for (size_t k = 1; k + 1 < nP; ++k) {
      double tk = tList[s][k];
      size_t r = std::lower_bound(gt.begin(), gt.end(), tk) - gt.begin();
      if (r == 0 || r >= gt.size())
        fail(ErrorCode::Invariant, "CornerIntersectionFailure",
             "partition point falls inside a corner zone");
      if (gt[r] == tk) {
        size_t r1 = r;
        while (r1 + 1 < gt.size() && gt[r1 + 1] == tk) ++r1;
        size_t split = (hOf(port[r]) <= hOf(port[r1])) ? r : r1;
        startIdx[k] = endIdx[k] = split;
      } else {
        b.face(P[k], gp[r], gp[r - 1]);
        startIdx[k] = r;
        endIdx[k] = r - 1;
      }
    }
    for (size_t k = 0; k + 1 < nP; ++k) {
      size_t lo = startIdx[k], hi = endIdx[k + 1];
      if (lo > hi)
        fail(ErrorCode::Invariant, "NonMonotoneGammaOverEdge",
             "gamma slice inverted over a partition edge");
      std::vector<Complex> poly;
      poly.reserve(hi - lo + 3);
      poly.push_back(P[k]);
      poly.push_back(P[k + 1]);
      for (size_t i = hi + 1; i-- > lo;) poly.push_back(gp[i]);
      for (const auto& tr : triangulatePolygon(poly)) b.face(tr[0], tr[1], tr[2]);
    }
  }
  PlanarMesh norm = b.take();

  // Back to input coordinates; partition points keep their given values so
  // the output boundary is exactly the input point set.
  std::map<std::pair<double, double>, Complex> boundaryMap;
  for (int s = 0; s < 4; ++s)
    for (size_t i = 0; i < bNorm[s].size(); ++i)
      boundaryMap[{bNorm[s][i].real(), bNorm[s][i].imag()}] = bOrig[s][i];
  RectResult res;
  res.mesh.faces = std::move(norm.faces);
  res.mesh.vertices.reserve(norm.vertices.size());
  const double ux = w / m, uy = h;
  for (const auto& v : norm.vertices) {
    auto it = boundaryMap.find({v.real(), v.imag()});
    res.mesh.vertices.push_back(it != boundaryMap.end()
                                    ? it->second
                                    : Complex(v.real() * ux, v.imag() * uy));
  }
  res.minAngle = res.mesh.minAngle();
  res.keptSquares = static_cast<int>(gamma.kept.size());
  res.jmax = layout.jmax;
  return res;
}

}  // namespace etri

#include "hemmed.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "error.hpp"
#include "quad.hpp"
#include "rect.hpp"

namespace etri {
namespace {

constexpr double kTwoPi = 2 * M_PI;
// tan(80 deg); lift edges steeper than this against the vertical are refused
constexpr double kMaxSlope = 5.6712818196177095;

Complex intPow(Complex z, int k) {
  Complex base = k >= 0 ? z : 1.0 / z;
  int e = k >= 0 ? k : -k;
  Complex acc{1, 0};
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

// Even-odd point location against a fixed polygon, with edges bucketed by
// imaginary part so a query only walks the edges crossing its horizontal.
class PolygonTester {
public:
  explicit PolygonTester(std::vector<Complex> pts) : pts_(std::move(pts)) {
    yLo_ = yHi_ = pts_[0].imag();
    for (const Complex& p : pts_) {
      yLo_ = std::min(yLo_, p.imag());
      yHi_ = std::max(yHi_, p.imag());
    }
    yHi_ += 1e-12 + 1e-9 * (yHi_ - yLo_);
    buckets_.resize(kBuckets);
    const int n = static_cast<int>(pts_.size());
    for (int e = 0; e < n; ++e) {
      double a = pts_[e].imag(), b = pts_[(e + 1) % n].imag();
      int b0 = bucketOf(std::min(a, b)), b1 = bucketOf(std::max(a, b));
      for (int k = b0; k <= b1; ++k) buckets_[k].push_back(e);
    }
  }

  bool contains(Complex p) const {
    if (p.imag() < yLo_ || p.imag() >= yHi_) return false;
    const int n = static_cast<int>(pts_.size());
    int count = 0;
    for (int e : buckets_[bucketOf(p.imag())]) {
      Complex a = pts_[e], b = pts_[(e + 1) % n];
      if ((a.imag() > p.imag()) == (b.imag() > p.imag())) continue;
      double t = (p.imag() - a.imag()) / (b.imag() - a.imag());
      if (a.real() + t * (b.real() - a.real()) > p.real()) ++count;
    }
    return count & 1;
  }

private:
  static constexpr int kBuckets = 256;

  int bucketOf(double y) const {
    int b = static_cast<int>((y - yLo_) / (yHi_ - yLo_) * kBuckets);
    return std::clamp(b, 0, kBuckets - 1);
  }

  std::vector<Complex> pts_;
  double yLo_ = 0, yHi_ = 0;
  std::vector<std::vector<int>> buckets_;
};

// Piecewise-linear abscissa of the lift polygon at height y. All helpers
// extend their table periodically relative to its own first vertex, so the
// same code serves the base tables and the second-period cross-check.
int locateEdge(const std::vector<Complex>& w, double yr) {
  int lo = 0, hi = static_cast<int>(w.size()) - 2;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (w[mid].imag() <= yr) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

double reduceY(const std::vector<Complex>& w, double y, double* turns) {
  *turns = std::floor((y - w.front().imag()) / kTwoPi);
  return y - kTwoPi * *turns;
}

double xPlusOf(const std::vector<Complex>& w, double y) {
  double turns;
  double yr = reduceY(w, y, &turns);
  int k = locateEdge(w, yr);
  double t = (yr - w[k].imag()) / (w[k + 1].imag() - w[k].imag());
  return w[k].real() + t * (w[k + 1].real() - w[k].real());
}

double forwardOf(const std::vector<Complex>& w,
                 const std::vector<std::vector<double>>& prefix, double y) {
  double turns;
  double yr = reduceY(w, y, &turns);
  int k = locateEdge(w, yr);
  double ya = w[k].imag(), dy = w[k + 1].imag() - ya;
  double t = (yr - ya) / dy;
  const std::vector<double>& pf = prefix[k];
  double u = std::clamp(t, 0.0, 1.0) * 64;
  int i = std::min(63, static_cast<int>(u));
  double part = pf[i] + (u - i) * (pf[i + 1] - pf[i]);
  return ya + part / pf[64] * dy + kTwoPi * turns;
}

Complex psiOf(const std::vector<Complex>& w,
              const std::vector<std::vector<double>>& prefix, double rho,
              double shift, Complex q) {
  double y = q.imag();
  double f = q.real() / xPlusOf(w, y);
  return {f * rho, y + f * (forwardOf(w, prefix, y) - y) + f * shift};
}

std::string countText(size_t n, const char* noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

int lineSide(Complex p, Complex q, Complex r, double eps) {
  double v = cross(q - p, r - p);
  return v > eps ? 1 : v < -eps ? -1 : 0;
}

bool boxApart(Complex a0, Complex a1, Complex b0, Complex b1, double pad) {
  return std::min(a0.real(), a1.real()) > std::max(b0.real(), b1.real()) + pad ||
         std::min(b0.real(), b1.real()) > std::max(a0.real(), a1.real()) + pad ||
         std::min(a0.imag(), a1.imag()) > std::max(b0.imag(), b1.imag()) + pad ||
         std::min(b0.imag(), b1.imag()) > std::max(a0.imag(), a1.imag()) + pad;
}

// Conservative: tangencies and near-touches count as crossings.
bool segmentsTouch(Complex a0, Complex a1, Complex b0, Complex b1, double tol) {
  if (boxApart(a0, a1, b0, b1, tol)) return false;
  int s1 = lineSide(a0, a1, b0, tol * std::abs(a1 - a0));
  int s2 = lineSide(a0, a1, b1, tol * std::abs(a1 - a0));
  int s3 = lineSide(b0, b1, a0, tol * std::abs(b1 - b0));
  int s4 = lineSide(b0, b1, a1, tol * std::abs(b1 - b0));
  if (s1 != s2 && s3 != s4) return true;
  return (s1 == 0 && s2 == 0) || (s3 == 0 && s4 == 0);
}

bool polygonSimple(const std::vector<Complex>& poly, double tol) {
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segmentsTouch(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n],
                        tol))
        return false;
    }
  return true;
}

bool polygonsTouch(const std::vector<Complex>& a, const std::vector<Complex>& b,
                   double tol) {
  const int n = static_cast<int>(a.size()), m = static_cast<int>(b.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (segmentsTouch(a[i], a[(i + 1) % n], b[j], b[(j + 1) % m], tol))
        return true;
  return false;
}

}  // namespace

Complex BoundaryCurve::eval(Complex z) const {
  Complex acc{0, 0};
  for (const auto& [k, c] : coefficients) acc += c * intPow(z, k);
  return acc;
}

Complex BoundaryCurve::derivative(Complex z) const {
  Complex acc{0, 0};
  for (const auto& [k, c] : coefficients)
    if (k != 0) acc += c * static_cast<double>(k) * intPow(z, k - 1);
  return acc;
}

double BoundaryCurve::scale() const {
  double s = 0;
  for (const auto& [k, c] : coefficients)
    s += std::abs(c) * std::pow(modulusRadius, std::abs(k));
  return std::max(s, 1e-300);
}

std::optional<Complex> BoundaryCurve::invert(Complex p, Complex seed) const {
  const double sc = scale();
  Complex z = seed;
  for (int it = 0; it < 60; ++it) {
    double az = std::abs(z);
    if (az > 4 * modulusRadius || az < 0.25) return std::nullopt;
    Complex f = eval(z) - p;
    if (std::abs(f) <= 1e-13 * sc) {
      if (az < 1 - 1e-6 || az > modulusRadius * (1 + 1e-6)) return std::nullopt;
      return z;
    }
    Complex d = derivative(z);
    if (std::abs(d) <= 1e-14 * sc) return std::nullopt;
    z -= f / d;
  }
  return std::nullopt;
}

int minimalDegree(double modulusRadius) {
  if (!(modulusRadius > 1))
    fail(ErrorCode::Argument, "BadModulusRadius",
         "modulus radius must exceed 1");
  double delta = 1.0 / std::log(modulusRadius);
  return std::max(3, static_cast<int>(std::ceil(delta - 1e-12)));
}

void validateSpec(const HemmedDomainSpec& spec) {
  if (spec.curves.empty())
    fail(ErrorCode::Argument, "EmptyDomain", "spec has no boundary curves");
  if (!(spec.epsilon > 0) || !std::isfinite(spec.epsilon))
    fail(ErrorCode::Argument, "BadEpsilon", "epsilon must be positive");

  // Embeddedness of a holomorphic collar reduces to plane topology: the
  // annulus maps injectively exactly when the images of its two boundary
  // circles are simple, disjoint and nested, since then every point between
  // them has winding number one around the image of the annulus boundary.
  const int nP = 1024;
  std::vector<std::array<std::vector<Complex>, 2>> rings(spec.curves.size());
  std::vector<PolygonTester> bigT, smallT;
  std::vector<double> size(spec.curves.size(), 0.0);
  bool enclosing = false;
  for (size_t c = 0; c < spec.curves.size(); ++c) {
    const BoundaryCurve& curve = spec.curves[c];
    const double R = curve.modulusRadius;
    if (!(R > 1 + 1e-9))
      fail(ErrorCode::Argument, "BadModulusRadius",
           "modulus radius must exceed 1");
    if (curve.coefficients.empty())
      fail(ErrorCode::Argument, "BadCurve", "curve has no coefficients");
    for (const auto& [k, cf] : curve.coefficients)
      if (std::abs(k) > 64)
        fail(ErrorCode::Argument, "BadCurve", "coefficient power out of range");
    int floorDeg = minimalDegree(R);
    if (curve.degree < floorDeg)
      fail(ErrorCode::Argument, "DegreeTooSmall",
           "hem degree " + std::to_string(curve.degree) + " below the floor " +
               std::to_string(floorDeg) + " for this modulus");

    for (int t = 0; t < 9; ++t) {
      double r = std::pow(R, t / 8.0);
      for (int a = 0; a < 256; ++a) {
        Complex z = std::polar(r, kTwoPi * a / 256);
        if (std::abs(curve.derivative(z) * z) <= 1e-9 * curve.scale())
          fail(ErrorCode::Invariant, "CurveNotInjective",
               "curve derivative vanishes on the collar");
      }
    }

    for (int s = 0; s < 2; ++s) {
      rings[c][s].resize(nP);
      for (int k = 0; k < nP; ++k) {
        rings[c][s][k] = curve.eval(std::polar(s == 0 ? 1.0 : R, kTwoPi * k / nP));
        size[c] = std::max(size[c], std::abs(rings[c][s][k]));
      }
    }
    double tol = 1e-9 * size[c];
    if (!polygonSimple(rings[c][0], tol) || !polygonSimple(rings[c][1], tol))
      fail(ErrorCode::Invariant, "CurveNotInjective",
           "a collar boundary image crosses itself");
    if (polygonsTouch(rings[c][0], rings[c][1], tol))
      fail(ErrorCode::Invariant, "CurveNotInjective",
           "the two collar boundary images meet");
    PolygonTester t0(rings[c][0]), t1(rings[c][1]);
    bool hemOutside = t0.contains(rings[c][1][0]);
    if (hemOutside == t1.contains(rings[c][0][0]))
      fail(ErrorCode::Invariant, "CurveNotInjective",
           "collar boundary images are not nested");
    // the collar sweeps into the domain, so this hem encloses the domain
    // exactly when it encloses the deep end of its own collar
    enclosing |= hemOutside;
    bigT.push_back(hemOutside ? std::move(t0) : std::move(t1));
    smallT.push_back(hemOutside ? std::move(t1) : std::move(t0));
  }

  if (!enclosing)
    fail(ErrorCode::Argument, "UnboundedDomain",
         "no curve encloses the domain; an outer boundary of radius r is the "
         "curve r/z, not r*z");

  // With no boundary crossings each collar lies wholly inside, outside or in
  // the hole of any other, so one vertex probe per ring settles overlap.
  auto inRegion = [&](size_t k, Complex p) {
    return bigT[k].contains(p) && !smallT[k].contains(p);
  };
  for (size_t i = 0; i < rings.size(); ++i)
    for (size_t j = i + 1; j < rings.size(); ++j) {
      double tol = 1e-9 * (size[i] + size[j]);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if (polygonsTouch(rings[i][a], rings[j][b], tol))
            fail(ErrorCode::Invariant, "AnnuliOverlap",
                 "collars of two boundary curves intersect");
      if (inRegion(j, rings[i][0][0]) || inRegion(j, rings[i][1][0]) ||
          inRegion(i, rings[j][0][0]) || inRegion(i, rings[j][1][0]))
        fail(ErrorCode::Invariant, "AnnuliOverlap",
             "one collar runs inside another");
    }
}

LatticeFill latticeFill(const HemmedDomainSpec& spec) {
  validateSpec(spec);
  const double eps = spec.epsilon;
  const double rowH = eps * std::sqrt(3.0) / 2;

  // Each curve contributes the polygon traced at mid-collar depth; a point is
  // in the cropped domain when every polygon sees it on the same side as a
  // reference taken deeper in that collar.
  const int kPoly = 1024;
  std::vector<PolygonTester> testers;
  std::vector<bool> refIn;
  double xLo = 1e300, xHi = -1e300, yLo = 1e300, yHi = -1e300;
  for (const BoundaryCurve& curve : spec.curves) {
    double rt = std::sqrt(curve.modulusRadius);
    std::vector<Complex> poly(kPoly);
    for (int k = 0; k < kPoly; ++k) {
      poly[k] = curve.eval(std::polar(rt, kTwoPi * k / kPoly));
      xLo = std::min(xLo, poly[k].real());
      xHi = std::max(xHi, poly[k].real());
      yLo = std::min(yLo, poly[k].imag());
      yHi = std::max(yHi, poly[k].imag());
    }
    Complex deep = curve.eval(Complex((rt + curve.modulusRadius) / 2, 0));
    testers.emplace_back(std::move(poly));
    refIn.push_back(testers.back().contains(deep));
  }

  auto inside = [&](Complex p) {
    for (size_t i = 0; i < testers.size(); ++i)
      if (testers[i].contains(p) != static_cast<bool>(refIn[i])) return false;
    return true;
  };
  auto point = [&](int i, int j) {
    return Complex(eps * (i + 0.5 * j), rowH * j);
  };
  auto meets = [&](Complex a, Complex b, Complex c) {
    return inside(a) || inside(b) || inside(c) || inside(0.5 * (a + b)) ||
           inside(0.5 * (b + c)) || inside(0.5 * (c + a)) ||
           inside((a + b + c) / 3.0);
  };

  int jLo = static_cast<int>(std::floor((yLo - 2 * eps) / rowH));
  int jHi = static_cast<int>(std::ceil((yHi + 2 * eps) / rowH));
  double span = (xHi - xLo + 4 * eps) / eps + std::abs(jHi - jLo) + 4;
  if (span * (jHi - jLo + 1.0) > 8e6)
    fail(ErrorCode::Argument, "BadEpsilon",
         "epsilon is too small for this domain size");

  MeshBuilder builder(0);
  for (int j = jLo; j <= jHi; ++j) {
    int iLo = static_cast<int>(std::floor((xLo - 2 * eps) / eps - 0.5 * j)) - 1;
    int iHi = static_cast<int>(std::ceil((xHi + 2 * eps) / eps - 0.5 * j)) + 1;
    for (int i = iLo; i <= iHi; ++i) {
      Complex p00 = point(i, j), p10 = point(i + 1, j);
      Complex p01 = point(i, j + 1), p11 = point(i + 1, j + 1);
      if (meets(p00, p10, p01)) builder.face(p00, p10, p01);
      if (meets(p10, p11, p01)) builder.face(p10, p11, p01);
    }
  }

  LatticeFill fill;
  fill.mesh = builder.take();
  if (fill.mesh.faces.empty())
    fail(ErrorCode::Argument, "EpsilonTooLarge",
         "no lattice triangle meets the domain");
  MeshReport rep = validateMesh(fill.mesh);
  if (!rep.ok)
    fail(ErrorCode::Argument, "EpsilonTooLarge",
         "lattice fill is degenerate: " + rep.violations.front());

  {
    std::vector<std::vector<int>> adj(fill.mesh.faces.size());
    for (const PlanarMesh::Edge& e : fill.mesh.edgeTable())
      if (e.f1 >= 0) {
        adj[e.f0].push_back(e.f1);
        adj[e.f1].push_back(e.f0);
      }
    std::vector<char> seen(adj.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      for (int g : adj[f])
        if (!seen[g]) {
          seen[g] = 1;
          ++reached;
          stack.push_back(g);
        }
    }
    if (reached != adj.size())
      fail(ErrorCode::Argument, "EpsilonTooLarge",
           "lattice fill is disconnected");
  }

  std::vector<std::vector<int>> loops = fill.mesh.boundaryLoops();
  if (loops.size() != spec.curves.size())
    fail(ErrorCode::Argument, "EpsilonTooLarge",
         "expected " + countText(spec.curves.size(), "boundary cycle") +
             ", found " + std::to_string(loops.size()));

  fill.boundary.resize(spec.curves.size());
  for (std::vector<int>& loop : loops) {
    int owner = -1;
    Complex z0;
    for (size_t c = 0; c < spec.curves.size() && owner < 0; ++c) {
      double rt = std::sqrt(spec.curves[c].modulusRadius);
      for (int k = 0; k < 24 && owner < 0; ++k)
        if (auto z = spec.curves[c].invert(fill.mesh.vertices[loop[0]],
                                           std::polar(rt, kTwoPi * k / 24))) {
          owner = static_cast<int>(c);
          z0 = *z;
        }
    }
    if (owner < 0)
      fail(ErrorCode::Argument, "EpsilonTooLarge",
           "a boundary cycle lies outside every collar");
    if (!fill.boundary[owner].empty())
      fail(ErrorCode::Argument, "EpsilonTooLarge",
           "two boundary cycles fell into one collar");
    double winding = 0;
    Complex z = z0;
    for (size_t k = 1; k <= loop.size(); ++k) {
      auto next = spec.curves[owner].invert(
          fill.mesh.vertices[loop[k % loop.size()]], z);
      if (!next)
        fail(ErrorCode::Argument, "EpsilonTooLarge",
             "a boundary cycle leaves its collar");
      winding += std::arg(*next / z);
      z = *next;
    }
    if (std::abs(std::abs(winding) - kTwoPi) > 1e-6)
      fail(ErrorCode::Argument, "EpsilonTooLarge",
           "a boundary cycle does not wind once around its collar");
    fill.boundary[owner] = std::move(loop);
  }
  return fill;
}

double StripData::xPlus(double y) const { return xPlusOf(lift, y); }

double StripData::forwardY(double y) const {
  return forwardOf(lift, prefix, y);
}

Complex StripData::mapPsi(Complex w) const {
  return psiOf(lift, prefix, rho, shift, w);
}

Complex StripData::invertPsi(Complex q) const {
  double f = q.real() / rho;
  if (f == 0) return {0.0, q.imag()};
  double target = q.imag() - f * shift;
  auto g = [&](double y) { return y + f * (forwardY(y) - y); };
  double pad = 2 * psi1Deviation + 1e-9;
  double lo = target - pad, hi = target + pad;
  for (int i = 0; i < 40 && g(lo) > target; ++i) lo -= pad;
  for (int i = 0; i < 40 && g(hi) < target; ++i) hi += pad;
  if (g(lo) > target || g(hi) < target)
    fail(ErrorCode::Numeric, "InverseDiverged",
         "collar chart inversion lost its bracket");
  for (int i = 0; i < 100; ++i) {
    double mid = 0.5 * (lo + hi);
    (g(mid) <= target ? lo : hi) = mid;
  }
  double y = 0.5 * (lo + hi);
  return {f * xPlus(y), y};
}

StripData buildStripMaps(const HemmedDomainSpec& spec, const LatticeFill& fill,
                         int curve) {
  if (curve < 0 || curve >= static_cast<int>(spec.curves.size()))
    fail(ErrorCode::Argument, "BadCurveIndex", "curve index out of range");
  const BoundaryCurve& bc = spec.curves[curve];
  const std::vector<int>& cycle = fill.boundary[curve];
  const int N = static_cast<int>(cycle.size());
  if (N < 3)
    fail(ErrorCode::Argument, "EpsilonTooLarge", "boundary cycle too short");
  const double rho = std::log(bc.modulusRadius) / 2;

  // Lift the cycle three times around: rotating to the lowest vertex still
  // leaves a complete, independently computed second period to compare with.
  std::vector<Complex> zs(3 * N + 1);
  {
    std::optional<Complex> z0;
    double rt = std::sqrt(bc.modulusRadius);
    for (int k = 0; k < 24 && !z0; ++k)
      z0 = bc.invert(fill.mesh.vertices[cycle[0]],
                     std::polar(rt, kTwoPi * k / 24));
    if (!z0)
      fail(ErrorCode::Numeric, "InverseDiverged",
           "cannot seed the collar lift");
    zs[0] = *z0;
  }
  for (int k = 1; k <= 3 * N; ++k) {
    auto z = bc.invert(fill.mesh.vertices[cycle[k % N]], zs[k - 1]);
    if (!z)
      fail(ErrorCode::Numeric, "InverseDiverged",
           "collar lift lost the boundary cycle");
    zs[k] = *z;
  }
  std::vector<Complex> w(3 * N + 1);
  std::vector<int> ids(3 * N + 1);
  w[0] = std::log(zs[0]);
  for (int k = 1; k <= 3 * N; ++k)
    w[k] = w[k - 1] + std::log(zs[k] / zs[k - 1]);
  for (int k = 0; k <= 3 * N; ++k) ids[k] = cycle[k % N];
  if (w[N].imag() < w[0].imag()) {
    std::reverse(w.begin(), w.end());
    std::reverse(ids.begin(), ids.end());
  }
  if (std::abs(w[N] - w[0] - Complex(0, kTwoPi)) > 1e-6)
    fail(ErrorCode::Argument, "EpsilonTooLarge",
         "boundary cycle does not wind once around its collar");

  int kstar = 0;
  double bestY = 1e300, bestX = 1e300;
  for (int k = 0; k < N; ++k) {
    double yr = w[k].imag() - kTwoPi * std::floor(w[k].imag() / kTwoPi);
    if (yr < bestY - 1e-15 ||
        (std::abs(yr - bestY) <= 1e-15 && w[k].real() < bestX)) {
      bestY = yr;
      bestX = w[k].real();
      kstar = k;
    }
  }
  Complex off(0, kTwoPi * std::floor(w[kstar].imag() / kTwoPi));

  StripData s;
  s.rho = rho;
  s.lift.assign(w.begin() + kstar, w.begin() + kstar + N + 1);
  s.alphaVertex.assign(ids.begin() + kstar, ids.begin() + kstar + N + 1);
  std::vector<Complex> lift2(w.begin() + kstar + N,
                             w.begin() + kstar + 2 * N + 1);
  for (Complex& v : s.lift) v -= off;
  for (Complex& v : lift2) v -= off;

  for (int k = 0; k < N; ++k) {
    double dy = s.lift[k + 1].imag() - s.lift[k].imag();
    double dx = std::abs(s.lift[k + 1].real() - s.lift[k].real());
    if (!(dy > 1e-12))
      fail(ErrorCode::Argument, "SlopeDegenerate", "lift edge does not climb");
    if (dx > kMaxSlope * dy)
      fail(ErrorCode::Argument, "SlopeDegenerate",
           "lift edge nearly horizontal; shrink epsilon");
    s.maxSlope = std::max(s.maxSlope, dx / dy);
  }

  auto edgePrefix = [&bc](Complex a, Complex b) {
    Complex d = b - a;
    auto speed = [&](double t) {
      Complex e = std::exp(a + t * d);
      return std::abs(bc.derivative(e) * e * d);
    };
    std::vector<double> pf(65, 0.0);
    for (int i = 1; i <= 64; ++i)
      pf[i] =
          pf[i - 1] + adaptiveIntegral(speed, (i - 1) / 64.0, i / 64.0, 1e-10);
    return pf;
  };
  s.prefix.reserve(N);
  s.edgeLength.resize(N);
  std::vector<std::vector<double>> prefix2(N);
  for (int k = 0; k < N; ++k) {
    s.prefix.push_back(edgePrefix(s.lift[k], s.lift[k + 1]));
    s.edgeLength[k] = s.prefix.back()[64];
    prefix2[k] = edgePrefix(lift2[k], lift2[k + 1]);
  }

  s.shift = -s.lift[0].imag();
  s.plusPartition.resize(N + 1);
  for (int k = 1; k < N; ++k) s.plusPartition[k] = s.lift[k].imag() + s.shift;
  s.plusPartition[0] = 0.0;
  s.plusPartition[N] = kTwoPi;

  for (int k = 0; k < N; ++k) {
    double g0 = s.plusPartition[k + 1] - s.plusPartition[k];
    double g1 = k + 1 < N ? s.plusPartition[k + 2] - s.plusPartition[k + 1]
                          : s.plusPartition[1];
    s.lambdaRun = std::max({s.lambdaRun, g0 / g1, g1 / g0});
  }

  for (int k = 0; k < N; ++k) {
    double dy = s.lift[k + 1].imag() - s.lift[k].imag();
    const std::vector<double>& pf = s.prefix[k];
    for (int i = 1; i < 64; ++i)
      s.psi1Deviation =
          std::max(s.psi1Deviation, std::abs(pf[i] / pf[64] - i / 64.0) * dy);
  }

  double perr = 0;
  for (int k = 0; k <= N; ++k)
    perr = std::max(perr, std::abs(lift2[k] - s.lift[k] - Complex(0, kTwoPi)));
  for (int k = 0; k < N; ++k) {
    double ya = s.lift[k].imag(), yb = s.lift[k + 1].imag();
    for (double t : {0.3, 0.7}) {
      double y = ya + t * (yb - ya);
      double x = xPlusOf(s.lift, y);
      for (double f : {0.3, 0.65, 0.95}) {
        Complex q(f * x, y);
        Complex q1 = psiOf(s.lift, s.prefix, rho, s.shift, q);
        Complex q2 =
            psiOf(lift2, prefix2, rho, s.shift, q + Complex(0, kTwoPi));
        perr = std::max(perr, std::abs(q2 - q1 - Complex(0, kTwoPi)));
      }
    }
  }
  s.periodicityError = perr;
  return s;
}

CollarResult collarTriangulate(const StripData& strip, int degree) {
  const double rho = strip.rho;
  const int floorDeg = minimalDegree(std::exp(2 * rho));
  if (degree < floorDeg)
    fail(ErrorCode::Argument, "DegreeTooSmall",
         "hem degree " + std::to_string(degree) + " below the floor " +
             std::to_string(floorDeg) + " for this modulus");
  if (rho > kTwoPi)
    fail(ErrorCode::Argument, "ModulusTooLarge",
         "collar is taller than one period");

  const std::vector<double>& bottom = strip.plusPartition;
  const int N = static_cast<int>(bottom.size()) - 1;
  std::vector<double> top(degree + 1);
  for (int j = 0; j <= degree; ++j)
    top[j] = j == degree ? kTwoPi : kTwoPi * j / degree;

  // Seam partition graded between the corner gaps of the two ends, so the
  // cylinder closes up with bounded adjacent ratios.
  std::vector<double> seam{0.0};
  {
    double g0 = std::min({bottom[1], kTwoPi - bottom[N - 1], rho});
    double g1 = std::min(kTwoPi / degree, rho);
    double a = 0, b = rho, ga = g0, gb = g1;
    std::vector<double> lowGaps, highGaps;
    while (b - a > ga + gb) {
      if (ga <= gb) {
        lowGaps.push_back(ga);
        a += ga;
        ga = std::min(ga * 1.5, rho);
      } else {
        highGaps.push_back(gb);
        b -= gb;
        gb = std::min(gb * 1.5, rho);
      }
    }
    for (double g : lowGaps) seam.push_back(seam.back() + g);
    int nMid = std::max(
        1, static_cast<int>(std::ceil((b - a) / std::max(ga, gb) - 1e-9)));
    for (int i = 1; i < nMid; ++i) seam.push_back(a + (b - a) * i / nMid);
    std::vector<double> upper;
    double p = rho;
    for (double g : highGaps) {
      p -= g;
      upper.push_back(p);
    }
    seam.insert(seam.end(), upper.rbegin(), upper.rend());
    seam.push_back(rho);
  }

  // measured bounded-geometry constant of the full boundary cycle
  double lambda = 2.0;
  {
    auto gapsOf = [](const std::vector<double>& v) {
      std::vector<double> g(v.size() - 1);
      for (size_t i = 0; i + 1 < v.size(); ++i) g[i] = v[i + 1] - v[i];
      return g;
    };
    std::vector<double> cyc = gapsOf(bottom);
    std::vector<double> side = gapsOf(seam), tg = gapsOf(top);
    cyc.insert(cyc.end(), side.begin(), side.end());
    cyc.insert(cyc.end(), tg.rbegin(), tg.rend());
    cyc.insert(cyc.end(), side.rbegin(), side.rend());
    for (size_t i = 0; i < cyc.size(); ++i) {
      double g0 = cyc[i], g1 = cyc[(i + 1) % cyc.size()];
      lambda = std::max({lambda, g0 / g1, g1 / g0, g0 / rho});
    }
    lambda *= 1.02;
  }

  RectResult rr =
      rectTriangulation(kTwoPi, rho, {bottom, seam, top, seam}, lambda);
  return CollarResult{std::move(rr.mesh), std::move(seam), lambda,
                      rr.minAngle};
}

HemmedPiece assemble(const HemmedDomainSpec& spec) {
  LatticeFill fill = latticeFill(spec);
  const int nc = static_cast<int>(spec.curves.size());
  const std::array<Complex, 3> kTri = {Complex{0, 0}, Complex{1, 0},
                                       Complex{0.5, std::sqrt(3.0) / 2}};

  HemmedPiece piece;
  piece.latticeFaces = static_cast<int>(fill.mesh.faces.size());
  std::vector<Complex> pos = fill.mesh.vertices;
  std::vector<std::array<int, 3>> faces = fill.mesh.faces;
  std::vector<std::array<Complex, 3>> chart(faces.size());
  std::vector<int> faceCurve(faces.size(), -1);
  std::vector<StripData> strips;
  std::vector<std::vector<int>> hemIds(nc);

  for (int c = 0; c < nc; ++c) {
    const BoundaryCurve& curve = spec.curves[c];
    const int d = curve.degree;
    StripData strip = buildStripMaps(spec, fill, c);
    CollarResult collar = collarTriangulate(strip, d);
    const PlanarMesh& qm = collar.mesh;
    const double rho = strip.rho;
    const double tol = 1e-6;

    auto nearestIndex = [tol](const std::vector<double>& list, double v,
                              const char* what) {
      size_t k = std::lower_bound(list.begin(), list.end(), v) - list.begin();
      if (k > 0 && (k == list.size() || v - list[k - 1] < list[k] - v)) --k;
      if (std::abs(list[k] - v) > tol)
        fail(ErrorCode::Numeric, "SeamMismatch",
             std::string("collar vertex misses the ") + what + " partition");
      return k;
    };
    std::vector<double> top(d + 1);
    for (int j = 0; j <= d; ++j)
      top[j] = j == d ? kTwoPi : kTwoPi * j / d;

    auto chartToDomain = [&](double aC, double bC) {
      return curve.eval(std::exp(strip.invertPsi(Complex(aC, bC))));
    };
    auto fresh = [&pos](Complex p) {
      pos.push_back(p);
      return static_cast<int>(pos.size()) - 1;
    };

    // Merge the collar mesh into the running vertex table: the lattice side
    // takes the alpha cycle's ids, the two seam sides share one id per
    // height, the hem side keeps one id per hem vertex, everything else is
    // fresh. Face gluing then falls out of plain id equality.
    std::vector<int> hemId(d, -1);
    std::map<size_t, int> seamId;
    std::vector<int> local(qm.vertices.size(), -1);
    for (size_t v = 0; v < qm.vertices.size(); ++v) {
      double X = qm.vertices[v].real(), Y = qm.vertices[v].imag();
      int id;
      if (Y <= tol) {
        id = strip.alphaVertex[nearestIndex(strip.plusPartition, X, "alpha")];
      } else if (Y >= rho - tol) {
        int j = static_cast<int>(nearestIndex(top, X, "hem")) % d;
        if (hemId[j] < 0) hemId[j] = fresh(chartToDomain(0.0, top[j]));
        id = hemId[j];
      } else if (X <= tol || X >= kTwoPi - tol) {
        size_t si = nearestIndex(collar.seam, Y, "seam");
        auto it = seamId.find(si);
        if (it == seamId.end()) {
          id = fresh(chartToDomain(rho - collar.seam[si], 0.0));
          seamId.emplace(si, id);
        } else {
          id = it->second;
        }
      } else {
        id = fresh(chartToDomain(rho - Y, X));
      }
      local[v] = id;
    }
    for (int j = 0; j < d; ++j)
      if (hemId[j] < 0)
        fail(ErrorCode::Numeric, "SeamMismatch",
             "hem partition vertex missing from the collar mesh");

    for (const std::array<int, 3>& f : qm.faces) {
      faces.push_back({local[f[0]], local[f[1]], local[f[2]]});
      chart.push_back({Complex(rho - qm.vertices[f[0]].imag(), qm.vertices[f[0]].real()),
                       Complex(rho - qm.vertices[f[1]].imag(), qm.vertices[f[1]].real()),
                       Complex(rho - qm.vertices[f[2]].imag(), qm.vertices[f[2]].real())});
      faceCurve.push_back(c);
    }
    strips.push_back(std::move(strip));
    hemIds[c] = std::move(hemId);
  }

  piece.surface = Surface::fromIndexedFaces(faces);
  piece.mesh = PlanarMesh{std::move(pos), faces};

  piece.faceMap.reserve(faces.size());
  for (size_t f = 0; f < faces.size(); ++f) {
    if (faceCurve[f] < 0) {
      // lattice triangles take a plain complex-linear map with no conjugate
      // part, so their dilatation is exactly 1
      AffinePiece ap;
      ap.alpha = 1.0 / (piece.mesh.vertices[faces[f][1]] -
                        piece.mesh.vertices[faces[f][0]]);
      ap.c = -piece.mesh.vertices[faces[f][0]] * ap.alpha;
      piece.faceMap.push_back(ap);
    } else {
      // collar triangles are straight in the chart, where the map onto the
      // equilateral is genuinely affine; their plotted chords are not
      piece.faceMap.push_back(affineThrough(chart[f], kTri));
    }
  }
  piece.dilatation = dilatationOfPieces(piece.mesh, piece.faceMap);
  for (int f = 0; f < piece.latticeFaces; ++f)
    if (piece.dilatation.faceK[f] > 1 + 1e-9) piece.supportInCollar = false;

  std::map<std::pair<int, int>, Slot> directed;
  for (size_t f = 0; f < faces.size(); ++f)
    for (int sdx = 0; sdx < 3; ++sdx)
      directed[{faces[f][sdx], faces[f][(sdx + 1) % 3]}] =
          Slot{static_cast<int>(f), sdx};

  for (int c = 0; c < nc; ++c) {
    const BoundaryCurve& curve = spec.curves[c];
    const int d = curve.degree;
    CurveAssembly asmb;
    asmb.hemVertex.resize(d);
    asmb.hemSlot.resize(d);
    for (int j = 0; j < d; ++j)
      asmb.hemVertex[j] = piece.mesh.vertices[hemIds[c][j]];
    for (int j = 0; j < d; ++j) {
      auto it = directed.find({hemIds[c][(j + 1) % d], hemIds[c][j]});
      if (it == directed.end() || !piece.surface.isBoundary(it->second))
        fail(ErrorCode::Numeric, "SeamMismatch",
             "hem edge is not a boundary side");
      asmb.hemSlot[j] = it->second;
    }
    // The boundary parameterisation composed through the collar chart must
    // be affine along each hem edge; sample its defect.
    for (int j = 0; j < d; ++j) {
      const Slot slot = asmb.hemSlot[j];
      AffinePiece qa = affineThrough(chart[slot.face], kTri);
      Complex e0 = qa(Complex(0, kTwoPi * j / d));
      Complex e1 = qa(Complex(0, kTwoPi * (j + 1) / d));
      double mid = kTwoPi * (j + 0.5) / d;
      for (int t = 1; t <= 5; ++t) {
        double theta = kTwoPi * (j + t / 6.0) / d;
        Complex zTrue = std::polar(1.0, theta);
        auto z = curve.invert(curve.eval(zTrue), zTrue);
        if (!z)
          fail(ErrorCode::Numeric, "InverseDiverged",
               "boundary point lost during the hem check");
        Complex q = strips[c].mapPsi(std::log(*z));
        q += Complex(0, kTwoPi * std::round((mid - q.imag()) / kTwoPi));
        Complex straight = e0 + (t / 6.0) * (e1 - e0);
        asmb.lengthRespectDeviation = std::max(
            asmb.lengthRespectDeviation, std::abs(qa(q) - straight));
      }
    }
    asmb.strip = std::move(strips[c]);
    piece.curves.push_back(std::move(asmb));
  }
  return piece;
}

std::vector<int> interfaceEdgePairing(const std::vector<Complex>& a,
                                      const std::vector<Complex>& b,
                                      double tol) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n)
    fail(ErrorCode::Argument, "DegreeMismatch",
         "hem degrees differ: " + std::to_string(n) + " vs " +
             std::to_string(b.size()));
  auto matches = [&](int s, int dir) {
    for (int j = 0; j < n; ++j)
      if (std::abs(a[j] - b[((s + dir * j) % n + n) % n]) > tol) return false;
    return true;
  };
  for (int s = 0; s < n; ++s)
    if (matches(s, -1)) {
      std::vector<int> edges(n);
      for (int j = 0; j < n; ++j) edges[j] = ((s - j - 1) % n + n) % n;
      return edges;
    }
  for (int s = 0; s < n; ++s)
    if (matches(s, 1))
      fail(ErrorCode::Argument, "OrientationMismatch",
           "pieces traverse the shared curve in the same sense");
  fail(ErrorCode::Argument, "InterfaceMismatch",
       "hem vertices of the two pieces do not coincide");
}

ChainResult chainAssemble(const std::vector<HemmedDomainSpec>& specs,
                          const std::vector<ChainInterface>& interfaces) {
  if (specs.empty())
    fail(ErrorCode::Argument, "EmptyChain", "no pieces to chain");
  ChainResult out;
  std::vector<int> offset(specs.size() + 1, 0);
  for (size_t i = 0; i < specs.size(); ++i) {
    out.pieces.push_back(assemble(specs[i]));
    offset[i + 1] = offset[i] + out.pieces.back().surface.faceCount();
  }

  auto sideOf = [&](int p, int c, const char* what) -> const CurveAssembly& {
    if (p < 0 || p >= static_cast<int>(out.pieces.size()) || c < 0 ||
        c >= static_cast<int>(out.pieces[p].curves.size()))
      fail(ErrorCode::Argument, "BadInterface",
           std::string(what) + " piece or curve index out of range");
    return out.pieces[p].curves[c];
  };

  std::vector<Gluing> gluings;
  for (size_t i = 0; i < out.pieces.size(); ++i)
    for (const Gluing& g : out.pieces[i].surface.gluings())
      gluings.push_back({Slot{g.a.face + offset[i], g.a.side},
                         Slot{g.b.face + offset[i], g.b.side}});
  for (const ChainInterface& ifc : interfaces) {
    const CurveAssembly& A = sideOf(ifc.pieceA, ifc.curveA, "first");
    const CurveAssembly& B = sideOf(ifc.pieceB, ifc.curveB, "second");
    const int d = static_cast<int>(A.hemVertex.size());
    if (static_cast<int>(B.hemVertex.size()) != d)
      fail(ErrorCode::Argument, "DegreeMismatch",
           "hem degrees differ: " + std::to_string(d) + " vs " +
               std::to_string(B.hemVertex.size()));
    double big = 1;
    for (const Complex& p : A.hemVertex) big = std::max(big, std::abs(p));
    std::vector<int> pairing =
        interfaceEdgePairing(A.hemVertex, B.hemVertex, 1e-9 * big);
    for (int j = 0; j < d; ++j) {
      Slot sa = A.hemSlot[j], sb = B.hemSlot[pairing[j]];
      gluings.push_back({Slot{sa.face + offset[ifc.pieceA], sa.side},
                         Slot{sb.face + offset[ifc.pieceB], sb.side}});
    }
  }
  out.surface = Surface::fromGluings(offset.back(), gluings);

  for (const ChainInterface& ifc : interfaces) {
    for (int side = 0; side < 2; ++side) {
      int p = side == 0 ? ifc.pieceA : ifc.pieceB;
      int c = side == 0 ? ifc.curveA : ifc.curveB;
      const HemmedPiece& piece = out.pieces[p];
      for (const Slot& s : piece.curves[c].hemSlot) {
        int vc = piece.surface.vertexClass(s.face, s.side);
        out.boundaryDegreeBound =
            std::max(out.boundaryDegreeBound, piece.surface.vertexDegree(vc));
        Slot global{s.face + offset[p], s.side};
        int gvc = out.surface.vertexClass(global.face, global.side);
        if (out.surface.vertexOnBoundary(gvc))
          fail(ErrorCode::Invariant, "InterfaceOnBoundary",
               "interface vertex remained on the boundary");
        out.maxInterfaceDegree =
            std::max(out.maxInterfaceDegree, out.surface.vertexDegree(gvc));
      }
    }
  }

  for (const HemmedPiece& piece : out.pieces) {
    out.dilatation.maxK = std::max(out.dilatation.maxK, piece.dilatation.maxK);
    out.dilatation.supportArea += piece.dilatation.supportArea;
    out.dilatation.totalArea += piece.dilatation.totalArea;
    out.dilatation.faceK.insert(out.dilatation.faceK.end(),
                                piece.dilatation.faceK.begin(),
                                piece.dilatation.faceK.end());
  }
  return out;
}

}  // namespace etri

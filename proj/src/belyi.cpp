#include "belyi.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace etri {
namespace {

const Complex kV[3] = {{1, 0}, {-0.5, std::sqrt(3.0) / 2}, {-0.5, -std::sqrt(3.0) / 2}};

const Mobius& discToLowerHalfPlane() {
  static const Mobius q =
      Mobius::through({kV[0], kV[1], kV[2]}, {Complex{1, 0}, Complex{-1, 0}, sphereInfinity()});
  return q;
}

Complex colourValue(Colour c) {
  switch (c) {
    case Colour::PlusOne: return {1, 0};
    case Colour::MinusOne: return {-1, 0};
    default: return sphereInfinity();
  }
}

std::array<double, 3> checkedBary(int face, std::array<double, 3> bary, int faceCount) {
  if (face < 0 || face >= faceCount)
    fail(ErrorCode::Argument, "FaceOutOfRange", "face index " + std::to_string(face));
  double sum = 0;
  for (double& v : bary) {
    if (!std::isfinite(v) || v < -1e-9)
      fail(ErrorCode::Argument, "BadBarycentric", "coordinates must be nonnegative");
    if (v < 0) v = 0;
    sum += v;
  }
  if (std::abs(sum - 1) > 1e-9)
    fail(ErrorCode::Argument, "BadBarycentric", "coordinates must sum to 1");
  for (double& v : bary) v /= sum;
  return bary;
}

double wrapAngle(double x) {
  while (x > M_PI) x -= 2 * M_PI;
  while (x <= -M_PI) x += 2 * M_PI;
  return x;
}

Mobius toZeroOneInf(const std::array<Complex, 3>& p) {
  auto [z1, z2, z3] = p;
  if (isSphereInfinity(z1)) return {{0, 0}, z2 - z3, {1, 0}, -z3};
  if (isSphereInfinity(z2)) return {{1, 0}, -z1, {1, 0}, -z3};
  if (isSphereInfinity(z3)) return {{1, 0}, -z1, {0, 0}, z2 - z1};
  return {z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)};
}

}  // namespace

bool isSphereInfinity(Complex z) { return std::isinf(z.real()) || std::isinf(z.imag()); }

double chordalDistance(Complex a, Complex b) {
  bool ia = isSphereInfinity(a), ib = isSphereInfinity(b);
  if (ia && ib) return 0;
  if (ia || ib) {
    Complex f = ia ? b : a;
    if (std::abs(f) > 1e150) return 2 / std::abs(f);
    return 2 / std::sqrt(1 + std::norm(f));
  }
  if (std::abs(a) > 1e150 || std::abs(b) > 1e150) {
    auto inv = [](Complex z) { return std::abs(z) == 0 ? sphereInfinity() : 1.0 / z; };
    return chordalDistance(inv(a), inv(b));
  }
  return 2 * std::abs(a - b) / std::sqrt((1 + std::norm(a)) * (1 + std::norm(b)));
}

Complex f3(Complex z) {
  if (isSphereInfinity(z)) return sphereInfinity();
  double r = std::abs(z);
  if (r < 1e-100 || r > 1e100) return sphereInfinity();
  Complex z3 = z * z * z;
  return 0.5 * (z3 + 1.0 / z3);
}

Complex f3Derivative(Complex z) {
  if (isSphereInfinity(z)) return sphereInfinity();
  double r = std::abs(z);
  if (r < 1e-75 || r > 1e150) return sphereInfinity();
  Complex z2 = z * z;
  return 1.5 * (z2 - 1.0 / (z2 * z2));
}

std::vector<Complex> f3CriticalPoints() {
  std::vector<Complex> roots(6);
  Complex seed{0.4, 0.9};
  roots[0] = seed;
  for (int k = 1; k < 6; ++k) roots[k] = roots[k - 1] * seed;
  auto p = [](Complex z) {
    Complex z3 = z * z * z;
    return z3 * z3 - 1.0;
  };
  for (int iter = 0; iter < 200; ++iter) {
    double move = 0;
    for (int k = 0; k < 6; ++k) {
      Complex denom{1, 0};
      for (int j = 0; j < 6; ++j)
        if (j != k) denom *= roots[k] - roots[j];
      Complex delta = p(roots[k]) / denom;
      roots[k] -= delta;
      move = std::max(move, std::abs(delta));
    }
    if (move < 1e-15) break;
  }
  auto angle = [](Complex z) {
    double a = std::arg(z);
    return a < -M_PI + 1e-9 ? a + 2 * M_PI : a;
  };
  std::sort(roots.begin(), roots.end(),
            [&](Complex a, Complex b) { return angle(a) < angle(b); });
  return roots;
}

Complex Mobius::operator()(Complex z) const {
  if (isSphereInfinity(z)) return std::abs(c) == 0 ? sphereInfinity() : a / c;
  Complex num = a * z + b, den = c * z + d;
  if (std::abs(den) == 0) return sphereInfinity();
  return num / den;
}

Mobius Mobius::inverse() const { return {d, -b, -c, a}; }

Mobius Mobius::through(const std::array<Complex, 3>& src, const std::array<Complex, 3>& dst) {
  Mobius A = toZeroOneInf(src), Bi = toZeroOneInf(dst).inverse();
  return {Bi.a * A.a + Bi.b * A.c, Bi.a * A.b + Bi.b * A.d, Bi.c * A.a + Bi.d * A.c,
          Bi.c * A.b + Bi.d * A.d};
}

BelyiEvaluator::BelyiEvaluator(Surface surface, Colouring colouring)
    : surface_(std::move(surface)), colouring_(std::move(colouring)) {
  if (static_cast<int>(colouring_.size()) != surface_.vertexCount())
    fail(ErrorCode::Invariant, "ImproperColouring", "one colour per vertex class required");
  if (!surface_.isProperColouring(colouring_))
    fail(ErrorCode::Invariant, "ImproperColouring",
         "all three colours must appear on every face");
  int fc = surface_.faceCount();
  slot_.resize(fc);
  upper_.resize(fc);
  for (int f = 0; f < fc; ++f) {
    std::array<int, 3> idx{-1, -1, -1};
    for (int c = 0; c < 3; ++c) {
      Colour col = colouring_[surface_.vertexClass(f, c)];
      idx[col == Colour::PlusOne ? 0 : col == Colour::MinusOne ? 1 : 2] = c;
    }
    slot_[f] = idx;
    upper_[f] = idx[2] == (idx[0] + 1) % 3 ? 1 : 0;
  }
}

Complex BelyiEvaluator::atInFace(int face, std::array<double, 3> bary) const {
  bary = checkedBary(face, bary, surface_.faceCount());
  for (int i = 0; i < 3; ++i)
    if (bary[i] == 1.0) return colourValue(colouring_[surface_.vertexClass(face, i)]);
  auto [i1, im, ii] = slot_[face];
  Complex zE = upper_[face] ? bary[i1] * kV[0] + bary[ii] * kV[1] + bary[im] * kV[2]
                            : bary[i1] * kV[0] + bary[im] * kV[1] + bary[ii] * kV[2];
  Complex w = triangleToDisc(zE);
  if (upper_[face]) return std::conj(discToLowerHalfPlane()(std::conj(w)));
  return discToLowerHalfPlane()(w);
}

Complex BelyiEvaluator::at(int face, std::array<double, 3> bary) const {
  bary = checkedBary(face, bary, surface_.faceCount());
  for (int i = 0; i < 3; ++i)
    if (bary[i] == 1.0) return colourValue(colouring_[surface_.vertexClass(face, i)]);
  for (int k = 0; k < 3; ++k) {
    if (bary[k] != 0.0) continue;
    int s = (k + 1) % 3;
    auto p = surface_.partner({face, s});
    if (p && (p->face < face || (p->face == face && p->side < s))) {
      double t = bary[(s + 1) % 3];
      std::array<double, 3> remapped{0, 0, 0};
      remapped[p->side] = t;
      remapped[(p->side + 1) % 3] = 1 - t;
      return atInFace(p->face, remapped);
    }
    break;
  }
  return atInFace(face, bary);
}

CoverReport verifyBranchedCover(const BelyiEvaluator& ev, int samplesPerFace) {
  const Surface& s = ev.surface();
  CoverReport rep;
  rep.faces = s.faceCount();
  for (int f = 0; f < s.faceCount(); ++f) (ev.upper(f) ? rep.upperFaces : rep.lowerFaces)++;

  for (int e = 0; e < s.edgeCount(); ++e) {
    auto [sa, sb] = s.edgeSlots(e);
    if (sb.face < 0) continue;
    ++rep.gluedEdges;
    for (int k = 1; k <= 5; ++k) {
      double t = k / 6.0;
      std::array<double, 3> ba{0, 0, 0}, bb{0, 0, 0};
      ba[sa.side] = 1 - t;
      ba[(sa.side + 1) % 3] = t;
      bb[sb.side] = t;
      bb[(sb.side + 1) % 3] = 1 - t;
      rep.maxEdgeGap = std::max(
          rep.maxEdgeGap, chordalDistance(ev.atInFace(sa.face, ba), ev.atInFace(sb.face, bb)));
    }
  }

  int perFace = std::max(3, samplesPerFace);
  rep.localDegree.assign(s.vertexCount(), -1);
  for (int vc = 0; vc < s.vertexCount(); ++vc) {
    if (s.vertexOnBoundary(vc)) continue;
    int link = static_cast<int>(s.classCorners(vc).size());
    rep.localDegree[vc] = link / 2;
    rep.maxInteriorDegree = std::max(rep.maxInteriorDegree, link / 2);
    if (link % 2) {
      rep.preimageCountsAgree = false;
      continue;
    }

    Colour col = ev.colouring()[vc];
    auto chart = [col](Complex v) -> Complex {
      if (col == Colour::PlusOne) return v - 1.0;
      if (col == Colour::MinusOne) return v + 1.0;
      return isSphereInfinity(v) ? Complex{0, 0} : 1.0 / v;
    };
    auto [f0, c0] = s.classCorners(vc)[0];
    int f = f0, c = c0;
    double eps = 0.25, total = 0, prev = 0, firstArg = 0;
    bool first = true;
    for (int step = 0; step < link; ++step) {
      for (int k = 0; k < perFace; ++k) {
        double tau = (k + 0.5) / perFace;
        std::array<double, 3> bary{};
        bary[c] = 1 - eps;
        bary[(c + 1) % 3] = eps * (1 - tau);
        bary[(c + 2) % 3] = eps * tau;
        double a = std::arg(chart(ev.atInFace(f, bary)));
        if (first) {
          firstArg = a;
          first = false;
        } else {
          total += wrapAngle(a - prev);
        }
        prev = a;
      }
      auto p = s.partner({f, (c + 2) % 3});
      f = p->face;
      c = p->side;
    }
    total += wrapAngle(firstArg - prev);
    if (f != f0 || c != c0) {
      rep.maxWindingError = std::max(rep.maxWindingError, 1.0);
      continue;
    }
    double winding = std::abs(total) / (2 * M_PI);
    rep.maxWindingError = std::max(rep.maxWindingError, std::abs(winding - link / 2.0));
  }

  // Moebius preimages of a few off-axis values must reappear once per face
  // of the matching handedness when pushed back through the evaluator.
  const Complex lowerTests[3] = {{0.4, -0.9}, {-1.7, -0.4}, {2.2, -1.3}};
  for (bool upperSide : {false, true}) {
    int expected = upperSide ? rep.upperFaces : rep.lowerFaces;
    for (Complex base : lowerTests) {
      Complex target = upperSide ? std::conj(base) : base;
      Complex w = discToLowerHalfPlane().inverse()(base);
      if (upperSide) w = std::conj(w);
      if (!(std::abs(w) < 1)) {
        rep.preimageCountsAgree = false;
        continue;
      }
      auto bref = triangleBarycentric(discToTriangle(w));
      int count = 0;
      for (int f = 0; f < s.faceCount(); ++f) {
        if (ev.upper(f) != upperSide) continue;
        auto [i1, im, ii] = ev.colourCorners(f);
        std::array<double, 3> bary{};
        bary[i1] = bref[0];
        bary[upperSide ? ii : im] = bref[1];
        bary[upperSide ? im : ii] = bref[2];
        double gap = chordalDistance(ev.atInFace(f, bary), target);
        rep.maxRegularGap = std::max(rep.maxRegularGap, gap);
        if (gap < 1e-3) ++count;
      }
      if (count != expected) rep.preimageCountsAgree = false;
    }
  }

  // Spherical difference quotients at low-discrepancy interior points stay
  // away from zero, so sampled critical behaviour sits only at corners.
  for (int f = 0; f < s.faceCount(); ++f) {
    for (int k = 1; k <= samplesPerFace; ++k) {
      double u = std::fmod(0.7548776662466927 * k, 1.0);
      double v = std::fmod(0.5698402909980532 * k, 1.0);
      std::array<double, 3> bary{0, (1 + u) / 4, (1 + v) / 4};
      bary[0] = 1 - bary[1] - bary[2];
      double delta = 1e-6;
      Complex v0 = ev.atInFace(f, bary);
      Complex v1 = ev.atInFace(f, {bary[0] + delta, bary[1] - delta, bary[2]});
      if (chordalDistance(v0, v1) / delta < 1e-8) rep.samplesRegular = false;
    }
  }

  return rep;
}

}  // namespace etri

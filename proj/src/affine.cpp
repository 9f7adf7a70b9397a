#include "affine.hpp"

#include "error.hpp"

namespace etri {

AffinePiece affineThrough(const std::array<Complex, 3>& src,
                          const std::array<Complex, 3>& dst) {
  Complex u = src[1] - src[0], v = src[2] - src[0];
  Complex p = dst[1] - dst[0], q = dst[2] - dst[0];
  Complex det = u * std::conj(v) - v * std::conj(u);
  if (std::abs(det) == 0)
    fail(ErrorCode::Numeric, "DegenerateSource", "source triangle is collinear");
  AffinePiece out;
  out.alpha = (p * std::conj(v) - q * std::conj(u)) / det;
  out.beta = (q * u - p * v) / det;
  out.c = dst[0] - out.alpha * src[0] - out.beta * std::conj(src[0]);
  return out;
}

PiecewiseAffineMap PiecewiseAffineMap::between(PlanarMesh src, PlanarMesh dst) {
  if (src.faces.size() != dst.faces.size())
    fail(ErrorCode::Argument, "FaceSetMismatch",
         "source and target have different face counts");
  PiecewiseAffineMap map;
  map.pieces.reserve(src.faces.size());
  for (size_t f = 0; f < src.faces.size(); ++f) {
    const auto& s = src.faces[f];
    const auto& d = dst.faces[f];
    map.pieces.push_back(affineThrough(
        {src.vertices[s[0]], src.vertices[s[1]], src.vertices[s[2]]},
        {dst.vertices[d[0]], dst.vertices[d[1]], dst.vertices[d[2]]}));
  }
  map.source = std::move(src);
  map.target = std::move(dst);
  return map;
}

double PiecewiseAffineMap::continuityResidual() const {
  double worst = 0;
  for (const auto& e : source.edgeTable()) {
    if (e.f1 < 0) continue;
    Complex mid = 0.5 * (source.vertices[e.a] + source.vertices[e.b]);
    worst = std::max(worst, std::abs(pieces[e.f0](mid) - pieces[e.f1](mid)));
  }
  return worst;
}

DilatationReport dilatationOfPieces(const PlanarMesh& source,
                                    const std::vector<AffinePiece>& pieces,
                                    double tol) {
  DilatationReport rep;
  rep.faceK.reserve(pieces.size());
  for (size_t f = 0; f < pieces.size(); ++f) {
    if (!pieces[f].orientationPreserving())
      fail(ErrorCode::Invariant, "OrientationReversedPiece",
           "piece " + std::to_string(f) + " reverses orientation");
    double k = pieces[f].K();
    double area = source.faceArea(static_cast<int>(f));
    rep.faceK.push_back(k);
    rep.maxK = std::max(rep.maxK, k);
    rep.totalArea += area;
    if (k > 1 + tol) rep.supportArea += area;
  }
  return rep;
}

DilatationReport dilatation(const PiecewiseAffineMap& map, double tol) {
  return dilatationOfPieces(map.source, map.pieces, tol);
}

}  // namespace etri

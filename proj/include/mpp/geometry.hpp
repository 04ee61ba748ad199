// Plane/sphere points, the two built-in metrics, stereographic projection,
// and the Ptolemaic-inequality checks.
#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpp {

template <typename Scalar>
using PlanePoint = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using SpherePoint = Eigen::Matrix<Scalar, 3, 1>;

using PlanePointd = PlanePoint<double>;
using SpherePointd = SpherePoint<double>;

/// Selects the metric every distance computation is dispatched through.
enum class MetricKind { Euclidean, Chordal };

inline const char* to_string(MetricKind m) {
  return m == MetricKind::Euclidean ? "euclid" : "chordal";
}

struct NorthPoleProjection : std::domain_error {
  NorthPoleProjection() : std::domain_error("stereographic projection undefined at the north pole (0,0,1)") {}
};

struct InsufficientPoints : std::invalid_argument {
  explicit InsufficientPoints(const std::string& what) : std::invalid_argument(what) {}
};

struct DegenerateTriangle : std::domain_error {
  explicit DegenerateTriangle(const std::string& what) : std::domain_error(what) {}
};

struct IllConditionedSample : std::runtime_error {
  explicit IllConditionedSample(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateConic : std::domain_error {
  explicit DegenerateConic(const std::string& what) : std::domain_error(what) {}
};

struct AntipodalPoints : std::domain_error {
  explicit AntipodalPoints(const std::string& what) : std::domain_error(what) {}
};

struct IoFailure : std::runtime_error {
  explicit IoFailure(const std::string& what) : std::runtime_error(what) {}
};

/// |p - q| in the plane.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar euclidean_distance(const Eigen::MatrixBase<DerivedP>& p,
                                             const Eigen::MatrixBase<DerivedQ>& q) {
  return (p - q).norm();
}

/// 2|p - q| / (sqrt(1+|p|^2) sqrt(1+|q|^2)); the 3-space distance between the
/// stereographic lifts of p and q onto the unit sphere. Always in [0, 2].
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar chordal_distance(const Eigen::MatrixBase<DerivedP>& p,
                                           const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  using std::sqrt;
  const Scalar denom = sqrt(Scalar(1) + p.squaredNorm()) * sqrt(Scalar(1) + q.squaredNorm());
  return Scalar(2) * (p - q).norm() / denom;
}

template <typename Scalar>
Scalar distance(const PlanePoint<Scalar>& p, const PlanePoint<Scalar>& q, MetricKind m) {
  return m == MetricKind::Euclidean ? euclidean_distance(p, q) : chordal_distance(p, q);
}

/// Planar image of a sphere point under projection from the north pole:
/// (x, y, z) -> (x, y) / (1 - z). Undefined within 1e-12 of the pole.
template <typename Scalar>
PlanePoint<Scalar> inverse_stereographic(const SpherePoint<Scalar>& s) {
  if (s.z() >= Scalar(1) - Scalar(1e-12)) throw NorthPoleProjection();
  return PlanePoint<Scalar>(s.x(), s.y()) / (Scalar(1) - s.z());
}

/// Unique sphere point (other than the north pole) projecting onto p:
/// (2x, 2y, x^2+y^2-1) / (1 + x^2+y^2).
template <typename Scalar>
SpherePoint<Scalar> forward_stereographic(const PlanePoint<Scalar>& p) {
  const Scalar r2 = p.squaredNorm();
  return SpherePoint<Scalar>(2 * p.x(), 2 * p.y(), r2 - Scalar(1)) / (Scalar(1) + r2);
}

/// Signed slack of the Ptolemaic inequality for this labeling:
/// d(x2,x4) d(x1,x3) + d(x1,x4) d(x2,x3) - d(x1,x2) d(x3,x4).
/// Nonnegative means the inequality holds as labeled.
template <typename Scalar>
Scalar ptolemy_residual(const PlanePoint<Scalar>& x1, const PlanePoint<Scalar>& x2,
                        const PlanePoint<Scalar>& x3, const PlanePoint<Scalar>& x4,
                        MetricKind m) {
  return distance(x2, x4, m) * distance(x1, x3, m) +
         distance(x1, x4, m) * distance(x2, x3, m) -
         distance(x1, x2, m) * distance(x3, x4, m);
}

/// Checks the Ptolemaic inequality for all three essential pairings of the
/// quadruple. Relabeling only permutes which pair product sits alone, so the
/// three checks are the triangle inequalities on the products
/// d12*d34, d13*d24, d14*d23.
template <typename Scalar>
bool is_ptolemaic_quadruple(const PlanePoint<Scalar>& x1, const PlanePoint<Scalar>& x2,
                            const PlanePoint<Scalar>& x3, const PlanePoint<Scalar>& x4,
                            MetricKind m, Scalar tol = Scalar(1e-9)) {
  const Scalar p1 = distance(x1, x2, m) * distance(x3, x4, m);
  const Scalar p2 = distance(x1, x3, m) * distance(x2, x4, m);
  const Scalar p3 = distance(x1, x4, m) * distance(x2, x3, m);
  return p2 + p3 - p1 >= -tol && p1 + p3 - p2 >= -tol && p1 + p2 - p3 >= -tol;
}

struct MetricAxiomViolation {
  std::string axiom;  // "symmetry" | "identity" | "triangle"
  int i = -1, j = -1, k = -1;
  double magnitude = 0;
};

struct MetricAxiomReport {
  MetricKind metric = MetricKind::Euclidean;
  std::size_t point_count = 0;
  std::vector<MetricAxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Exhaustive metric-axiom sweep over all pairs and ordered triples.
inline MetricAxiomReport check_metric_axioms(const std::vector<PlanePointd>& pts,
                                             MetricKind m, double tol = 1e-9) {
  if (pts.size() < 3) throw InsufficientPoints("check_metric_axioms needs at least 3 points");
  MetricAxiomReport report;
  report.metric = m;
  report.point_count = pts.size();
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    if (distance(pts[i], pts[i], m) != 0.0)
      report.violations.push_back({"identity", i, i, -1, distance(pts[i], pts[i], m)});
    for (int j = i + 1; j < n; ++j) {
      const double dij = distance(pts[i], pts[j], m);
      const double dji = distance(pts[j], pts[i], m);
      if (dij != dji) report.violations.push_back({"symmetry", i, j, -1, std::abs(dij - dji)});
      if (dij <= 0.0 && pts[i] != pts[j])
        report.violations.push_back({"identity", i, j, -1, dij});
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = j + 1; k < n; ++k) {
        if (k == i) continue;
        // d(j,k) <= d(j,i) + d(i,k): every pair through every intermediate
        const double slack = distance(pts[j], pts[i], m) + distance(pts[i], pts[k], m) -
                             distance(pts[j], pts[k], m);
        if (slack < -tol) report.violations.push_back({"triangle", j, i, k, -slack});
      }
    }
  return report;
}

}  // namespace mpp

// Triangle-formability classification of distance triples: the symmetric
// quartic form alpha, the circle forms beta, the three triangle-inequality
// slack factors, and the two independent classification routes.
#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "mpp/geometry.hpp"
#include "mpp/random.hpp"

namespace mpp {

template <typename Scalar>
struct DistanceTripleT {
  Scalar d1, d2, d3;  // distances from a query point to A, B, C
};
using DistanceTriple = DistanceTripleT<double>;

/// Three fixed plane points with a metric selector and cached side lengths
/// a = d(B,C), b = d(C,A), c = d(A,B). The cache is produced by the same
/// pure distance functions used everywhere else, so recomputing it at any
/// time reproduces the stored values bit for bit.
template <typename Scalar>
struct TriangleT {
  PlanePoint<Scalar> A, B, C;
  MetricKind metric = MetricKind::Euclidean;
  Scalar a = 0, b = 0, c = 0;

  static TriangleT from_vertices(const PlanePoint<Scalar>& A, const PlanePoint<Scalar>& B,
                                 const PlanePoint<Scalar>& C,
                                 MetricKind metric = MetricKind::Euclidean) {
    if (!A.allFinite() || !B.allFinite() || !C.allFinite())
      throw std::invalid_argument("triangle vertices must have finite coordinates");
    TriangleT t;
    t.A = A;
    t.B = B;
    t.C = C;
    t.metric = metric;
    t.a = distance(B, C, metric);
    t.b = distance(C, A, metric);
    t.c = distance(A, B, metric);
    if (!(t.a > Scalar(0)) || !(t.b > Scalar(0)) || !(t.c > Scalar(0)))
      throw DegenerateTriangle("triangle vertices must be pairwise distinct");
    return t;
  }
};
using Triangle = TriangleT<double>;

template <typename Scalar>
std::array<Scalar, 3> sides(const TriangleT<Scalar>& t) {
  if (!(t.a > Scalar(0)) || !(t.b > Scalar(0)) || !(t.c > Scalar(0)))
    throw DegenerateTriangle("triangle has a zero side");
  return {t.a, t.b, t.c};
}

/// (d(M,A), d(M,B), d(M,C)) under the triangle's metric.
template <typename Scalar>
DistanceTripleT<Scalar> distance_triple(const TriangleT<Scalar>& t, const PlanePoint<Scalar>& M) {
  return {distance(M, t.A, t.metric), distance(M, t.B, t.metric), distance(M, t.C, t.metric)};
}

/// The quartic form, its three slack factors, and the three circle forms for
/// one distance triple.
///
/// alpha1 = 4 d2^2 d3^2 - (d1^2 - (d2^2 + d3^2))^2 factors as
/// factor1 * factor2 * factor3 * (d1 + d2 + d3) with
/// factor1 = d2+d3-d1, factor2 = d3+d1-d2, factor3 = d1+d2-d3, and equals the
/// analogous forms built from d2 and d3 (the symmetric-form identity, checked
/// on every call).
template <typename Scalar>
struct AlphaBetaProfileT {
  Scalar alpha1;
  Scalar factor1, factor2, factor3;
  Scalar beta1, beta2, beta3;
};
using AlphaBetaProfile = AlphaBetaProfileT<double>;

template <typename Scalar>
AlphaBetaProfileT<Scalar> alpha_beta_profile(const DistanceTripleT<Scalar>& d) {
  using std::abs;
  const Scalar q1 = d.d1 * d.d1, q2 = d.d2 * d.d2, q3 = d.d3 * d.d3;
  AlphaBetaProfileT<Scalar> p;
  p.beta1 = q2 + q3 - q1;
  p.beta2 = q3 + q1 - q2;
  p.beta3 = q1 + q2 - q3;
  p.alpha1 = 4 * q2 * q3 - p.beta1 * p.beta1;
  p.factor1 = d.d2 + d.d3 - d.d1;
  p.factor2 = d.d3 + d.d1 - d.d2;
  p.factor3 = d.d1 + d.d2 - d.d3;
  // symmetric forms built with respect to the other two reference points
  const Scalar alpha2 = 4 * q3 * q1 - p.beta2 * p.beta2;
  const Scalar alpha3 = 4 * q1 * q2 - p.beta3 * p.beta3;
  const Scalar q = q1 + q2 + q3;
  const Scalar band = Scalar(1e-12) * std::max(Scalar(1), q * q);
  if (abs(p.alpha1 - alpha2) > band || abs(p.alpha1 - alpha3) > band)
    throw std::logic_error("symmetric-form identity violated; inputs likely not finite");
  return p;
}

enum class Verdict { NonDegenerate, Degenerate, Fails };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NonDegenerate: return "NonDegenerate";
    case Verdict::Degenerate: return "Degenerate";
    default: return "Fails";
  }
}

/// NonDegenerate: all factors > tol. Fails: some factor < -tol (the listed
/// indices). Degenerate: no factor < -tol and some factor within the band
/// (the listed indices).
struct Classification {
  Verdict verdict = Verdict::NonDegenerate;
  std::vector<int> failing_or_zero_factors;  // 1-based factor indices
  double tolerance_used = 0;

  friend bool operator==(const Classification& lhs, const Classification& rhs) {
    return lhs.verdict == rhs.verdict &&
           lhs.failing_or_zero_factors == rhs.failing_or_zero_factors;
  }
};

/// Default absolute band on the factors, scaled by the triple's size.
template <typename Scalar>
Scalar default_classification_tolerance(const DistanceTripleT<Scalar>& d) {
  return Scalar(1e-12) * (d.d1 + d.d2 + d.d3);
}

/// Classifies from the three factor values alone.
template <typename Scalar>
Classification classify_direct(const DistanceTripleT<Scalar>& d, Scalar tol) {
  const Scalar f[3] = {d.d2 + d.d3 - d.d1, d.d3 + d.d1 - d.d2, d.d1 + d.d2 - d.d3};
  Classification c;
  c.tolerance_used = static_cast<double>(tol);
  for (int i = 0; i < 3; ++i)
    if (f[i] < -tol) c.failing_or_zero_factors.push_back(i + 1);
  if (!c.failing_or_zero_factors.empty()) {
    c.verdict = Verdict::Fails;
    return c;
  }
  for (int i = 0; i < 3; ++i)
    if (f[i] <= tol) c.failing_or_zero_factors.push_back(i + 1);
  c.verdict = c.failing_or_zero_factors.empty() ? Verdict::NonDegenerate : Verdict::Degenerate;
  return c;
}

template <typename Scalar>
Classification classify_direct(const DistanceTripleT<Scalar>& d) {
  return classify_direct(d, default_classification_tolerance(d));
}

/// Classifies from the signs of alpha1 and beta1..beta3 only, via the
/// characterization: factor_i <= 0 iff alpha1 <= 0 and beta_i <= 0.
///
/// The caller's factor-space tolerance is translated into alpha/beta space
/// through two exact identities,
///   factor_j * factor_k = 2 d_j d_k - beta_i   (j, k the other two indices)
///   d(beta_i)/d(factor_i) = d_j + d_k,
/// so the two routes agree whenever every |factor| clears 10x the tolerance.
/// Roundoff floors keep the bands meaningful when tol is zero.
template <typename Scalar>
Classification classify_via_theorems(const DistanceTripleT<Scalar>& d, Scalar tol) {
  const Scalar q1 = d.d1 * d.d1, q2 = d.d2 * d.d2, q3 = d.d3 * d.d3;
  const Scalar beta[3] = {q2 + q3 - q1, q3 + q1 - q2, q1 + q2 - q3};
  const Scalar alpha = 4 * q2 * q3 - beta[0] * beta[0];
  const Scalar s = d.d1 + d.d2 + d.d3;
  const Scalar q = q1 + q2 + q3;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar floor_alpha = 32 * eps * q * q;
  const Scalar floor_beta = 32 * eps * q;
  const Scalar dj[3] = {d.d2, d.d3, d.d1};
  const Scalar dk[3] = {d.d3, d.d1, d.d2};

  bool strictly_negative[3], nonpositive[3];
  for (int i = 0; i < 3; ++i) {
    const Scalar pair_product = 2 * dj[i] * dk[i] - beta[i];  // factor_j * factor_k
    const Scalar eps_alpha = tol * s * std::max(pair_product, Scalar(0)) + floor_alpha;
    const Scalar eps_beta = tol * (dj[i] + dk[i]) + floor_beta;
    strictly_negative[i] = alpha < -eps_alpha && beta[i] < -eps_beta;
    nonpositive[i] = alpha <= eps_alpha && beta[i] <= eps_beta;
  }

  Classification c;
  c.tolerance_used = static_cast<double>(tol);
  for (int i = 0; i < 3; ++i)
    if (strictly_negative[i]) c.failing_or_zero_factors.push_back(i + 1);
  if (!c.failing_or_zero_factors.empty()) {
    c.verdict = Verdict::Fails;
    return c;
  }
  for (int i = 0; i < 3; ++i)
    if (nonpositive[i]) c.failing_or_zero_factors.push_back(i + 1);
  c.verdict = c.failing_or_zero_factors.empty() ? Verdict::NonDegenerate : Verdict::Degenerate;
  return c;
}

template <typename Scalar>
Classification classify_via_theorems(const DistanceTripleT<Scalar>& d) {
  return classify_via_theorems(d, default_classification_tolerance(d));
}

/// Slack factor `which` (1, 2 or 3) of the distance triple from M.
template <typename Scalar>
Scalar factor_value(const TriangleT<Scalar>& t, const PlanePoint<Scalar>& M, int which) {
  const auto d = distance_triple(t, M);
  switch (which) {
    case 1: return d.d2 + d.d3 - d.d1;
    case 2: return d.d3 + d.d1 - d.d2;
    default: return d.d1 + d.d2 - d.d3;
  }
}

/// Whether the set { M : factor_which(M) <= 0 } is non-empty, decided from
/// the side lengths alone. Valid for Ptolemaic metrics, which both built-in
/// metrics are; the caller asserts this, it is not re-checked per call.
template <typename Scalar>
bool region_nonempty(const TriangleT<Scalar>& t, int which) {
  switch (which) {
    case 1: return t.b >= t.a || t.c >= t.a;
    case 2: return t.c >= t.b || t.a >= t.b;
    case 3: return t.a >= t.c || t.b >= t.c;
    default: throw std::invalid_argument("region index must be 1, 2 or 3");
  }
}

template <typename Scalar>
void bounding_box(const TriangleT<Scalar>& t, PlanePoint<Scalar>& lo, PlanePoint<Scalar>& hi) {
  lo = t.A.cwiseMin(t.B).cwiseMin(t.C);
  hi = t.A.cwiseMax(t.B).cwiseMax(t.C);
}

/// Sampling search for a point with factor_which(M) <= 0. The vertices are
/// always tried first: they are exactly the equality witnesses of the
/// non-emptiness conditions, and their factor values reuse the same floats
/// as the cached side lengths, so the search succeeds deterministically
/// whenever region_nonempty says it should. Random samples cover the
/// triangle's neighborhood (bounding box grown by 100% per side).
template <typename Scalar>
std::optional<PlanePoint<Scalar>> search_failing_point(const TriangleT<Scalar>& t, int which,
                                                       long budget, std::uint64_t seed = 0) {
  if (which < 1 || which > 3) throw std::invalid_argument("region index must be 1, 2 or 3");
  for (const auto& v : {t.A, t.B, t.C})
    if (factor_value(t, v, which) <= Scalar(0)) return v;
  PlanePoint<Scalar> lo, hi;
  bounding_box(t, lo, hi);
  const PlanePoint<Scalar> margin = (hi - lo).cwiseMax(Scalar(1e-6));
  SeededRng rng(seed);
  for (long i = 0; i < budget; ++i) {
    PlanePoint<Scalar> M(rng.uniform(lo.x() - margin.x(), hi.x() + margin.x()),
                         rng.uniform(lo.y() - margin.y(), hi.y() + margin.y()));
    if (factor_value(t, M, which) <= Scalar(0)) return M;
  }
  return std::nullopt;
}

}  // namespace mpp

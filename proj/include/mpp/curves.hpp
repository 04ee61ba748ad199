// Recovery of the explicit polynomial coefficients behind the quartic curve
// alpha1 = 0 and the circles beta_i = 0, for both metrics, by evaluation and
// interpolation over the monomial basis, with residual certificates.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "mpp/classify.hpp"
#include "mpp/random.hpp"

namespace mpp {

/// k (x^2+y^2)^2 + (A1 x + B1 y)(x^2+y^2) + C1 x^2 + D1 xy + E1 y^2 + F1 x + G1 y + H1
struct QuarticCoeffs {
  double k = 0, A1 = 0, B1 = 0, C1 = 0, D1 = 0, E1 = 0, F1 = 0, G1 = 0, H1 = 0;

  double evaluate(double x, double y) const {
    const double r2 = x * x + y * y;
    return k * r2 * r2 + (A1 * x + B1 * y) * r2 + C1 * x * x + D1 * x * y + E1 * y * y +
           F1 * x + G1 * y + H1;
  }

  std::array<double, 9> as_array() const { return {k, A1, B1, C1, D1, E1, F1, G1, H1}; }
  static QuarticCoeffs from_array(const std::array<double, 9>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]};
  }
};

/// A2 (x^2+y^2) + B2 x + C2 y + D2
struct CircleCoeffs {
  double A2 = 0, B2 = 0, C2 = 0, D2 = 0;

  double evaluate(double x, double y) const {
    return A2 * (x * x + y * y) + B2 * x + C2 * y + D2;
  }

  std::array<double, 4> as_array() const { return {A2, B2, C2, D2}; }
  static CircleCoeffs from_array(const std::array<double, 4>& v) {
    return {v[0], v[1], v[2], v[3]};
  }
};

/// Structural denominator of the chordal-metric ratios:
/// vertex_factor * (1 + x^2 + y^2)^power, where
/// vertex_factor = prod_i (1 + a_i^2 + b_i^2)^power over the three vertices.
/// power is 2 for the quartic ratio and 1 for the circle ratio.
struct DenominatorDescriptor {
  int power = 1;
  double vertex_factor = 1;

  double value(double x, double y) const {
    const double w = 1 + x * x + y * y;
    return vertex_factor * (power == 1 ? w : w * w);
  }
};

/// Conditioning and accuracy certificate attached to every recovered
/// coefficient set: the singular-value ratio of the interpolation system and
/// the max relative mismatch against direct evaluation at 100 fresh points.
struct FitCertificate {
  double condition = 0;
  double rel_residual = 0;
};

struct EuclideanQuarticFit {
  QuarticCoeffs coeffs;
  FitCertificate cert;
};

struct EuclideanCircleFit {
  CircleCoeffs coeffs;
  FitCertificate cert;
};

struct ChordalQuarticFit {
  QuarticCoeffs numerator;
  QuarticCoeffs normalized;  // numerator scaled so max |coefficient| = 1
  DenominatorDescriptor denominator;
  bool degenerate_leading = false;  // leading coefficient vanishes; no quartic curve
  FitCertificate cert;
};

struct ChordalCircleFit {
  CircleCoeffs numerator;
  CircleCoeffs normalized;
  DenominatorDescriptor denominator;
  bool degenerate_leading = false;  // A2-bar vanishes; no circle
  FitCertificate cert;
};

namespace detail {

inline void quartic_basis_row(double x, double y, double* out) {
  const double r2 = x * x + y * y;
  out[0] = r2 * r2;
  out[1] = x * r2;
  out[2] = y * r2;
  out[3] = x * x;
  out[4] = x * y;
  out[5] = y * y;
  out[6] = x;
  out[7] = y;
  out[8] = 1;
}

inline void circle_basis_row(double x, double y, double* out) {
  out[0] = x * x + y * y;
  out[1] = x;
  out[2] = y;
  out[3] = 1;
}

constexpr std::array<int, 9> kQuarticDegrees = {4, 3, 3, 2, 2, 2, 1, 1, 0};
constexpr std::array<int, 4> kCircleDegrees = {2, 1, 1, 0};

constexpr double kMaxCondition = 1e12;

/// Least-squares solve with a full SVD conditioning gate.
inline Eigen::VectorXd solve_lsq(const Eigen::MatrixXd& A, const Eigen::VectorXd& rhs,
                                 double* condition_out) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  const double cond = smin > 0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (condition_out) *condition_out = cond;
  if (!std::isfinite(cond) || cond > kMaxCondition)
    throw IllConditionedSample("interpolation sample set is numerically singular");
  return svd.solve(rhs);
}

/// Evaluation points: two concentric rings around the origin plus the origin,
/// in coordinates scaled by sigma. The layout is fixed for attempt 0 (so
/// results are deterministic); later attempts jitter the ring angles.
inline std::vector<PlanePointd> ring_samples(double sigma, int attempt, SeededRng& rng) {
  std::vector<PlanePointd> pts;
  const double jitter = attempt == 0 ? 0.0 : rng.uniform(0.0, 0.7);
  for (int i = 0; i < 8; ++i) {
    const double th = 2 * std::numbers::pi * i / 8 + 0.13 + jitter;
    pts.emplace_back(0.75 * sigma * std::cos(th), 0.75 * sigma * std::sin(th));
  }
  for (int i = 0; i < 8; ++i) {
    const double th = 2 * std::numbers::pi * i / 8 + 0.41 + jitter;
    pts.emplace_back(1.55 * sigma * std::cos(th), 1.55 * sigma * std::sin(th));
  }
  pts.emplace_back(0.0, 0.0);
  return pts;
}

/// Fits `f` (a function of original coordinates) over the N-monomial basis.
/// The linear system is assembled in coordinates scaled by 1/sigma and the
/// coefficients are mapped back per monomial degree, which keeps the
/// Vandermonde-type system conditioned independently of the triangle's size.
template <std::size_t N>
std::array<double, N> fit_basis(const std::function<double(double, double)>& f,
                                void (*basis_row)(double, double, double*),
                                const std::array<int, N>& degrees, double sigma,
                                std::uint64_t seed, FitCertificate* cert) {
  SeededRng rng(seed);
  for (int attempt = 0; attempt < 3; ++attempt) {
    const auto pts = ring_samples(1.0, attempt, rng);  // scaled coordinates
    Eigen::MatrixXd A(pts.size(), N);
    Eigen::VectorXd rhs(pts.size());
    for (std::size_t r = 0; r < pts.size(); ++r) {
      double row[N];
      basis_row(pts[r].x(), pts[r].y(), row);
      for (std::size_t c = 0; c < N; ++c) A(r, c) = row[c];
      rhs(r) = f(sigma * pts[r].x(), sigma * pts[r].y());
    }
    if (!rhs.allFinite()) continue;
    double cond = 0;
    Eigen::VectorXd scaled;
    try {
      scaled = solve_lsq(A, rhs, &cond);
    } catch (const IllConditionedSample&) {
      if (attempt == 2) throw;
      continue;
    }
    std::array<double, N> coeffs;
    for (std::size_t c = 0; c < N; ++c) coeffs[c] = scaled(c) * std::pow(sigma, -degrees[c]);
    if (cert) {
      cert->condition = cond;
      // certify against direct evaluation at fresh points
      SeededRng fresh(seed ^ 0x5bf03635u);
      double worst = 0, scale = 1;
      std::vector<PlanePointd> probes;
      std::vector<double> truth;
      for (int i = 0; i < 100; ++i) {
        const double r = fresh.uniform(0.4, 1.8) * sigma;
        const double th = fresh.uniform(0.0, 2 * std::numbers::pi);
        probes.emplace_back(r * std::cos(th), r * std::sin(th));
        truth.push_back(f(probes.back().x(), probes.back().y()));
        scale = std::max(scale, std::abs(truth.back()));
      }
      for (int i = 0; i < 100; ++i) {
        double row[N];
        basis_row(probes[i].x(), probes[i].y(), row);
        double p = 0;
        for (std::size_t c = 0; c < N; ++c) p += coeffs[c] * row[c];
        worst = std::max(worst, std::abs(p - truth[i]) / scale);
      }
      cert->rel_residual = worst;
    }
    return coeffs;
  }
  throw IllConditionedSample("interpolation failed after resampling");
}

template <typename Scalar>
double coordinate_scale(const TriangleT<Scalar>& t) {
  double m = 1.0;
  for (const auto& v : {t.A, t.B, t.C}) m = std::max(m, v.template lpNorm<Eigen::Infinity>());
  return m;
}

inline double alpha_at(const Triangle& t, double x, double y) {
  const auto d = distance_triple(t, PlanePointd(x, y));
  const double q1 = d.d1 * d.d1, q2 = d.d2 * d.d2, q3 = d.d3 * d.d3;
  const double b1 = q2 + q3 - q1;
  return 4 * q2 * q3 - b1 * b1;
}

inline double beta_at(const Triangle& t, double x, double y, int which) {
  const auto d = distance_triple(t, PlanePointd(x, y));
  const double q1 = d.d1 * d.d1, q2 = d.d2 * d.d2, q3 = d.d3 * d.d3;
  switch (which) {
    case 1: return q2 + q3 - q1;
    case 2: return q3 + q1 - q2;
    default: return q1 + q2 - q3;
  }
}

inline double vertex_denominator(const Triangle& t, int power) {
  double prod = 1;
  for (const auto& v : {t.A, t.B, t.C}) {
    const double w = 1 + v.squaredNorm();
    prod *= power == 1 ? w : w * w;
  }
  return prod;
}

template <typename Coeffs>
bool leading_degenerate(double leading, const Coeffs& c) {
  double biggest = 0;
  for (double v : c.as_array()) biggest = std::max(biggest, std::abs(v));
  return std::abs(leading) <= 1e-9 * std::max(1.0, biggest);
}

template <typename Coeffs, std::size_t N>
Coeffs normalize_coeffs(const std::array<double, N>& raw) {
  double biggest = 0;
  for (double v : raw) biggest = std::max(biggest, std::abs(v));
  std::array<double, N> out = raw;
  if (biggest > 0)
    for (double& v : out) v /= biggest;
  return Coeffs::from_array(out);
}

}  // namespace detail

/// Coefficients of alpha1 as a quartic polynomial in (x, y) under the
/// Euclidean metric. The leading coefficient is 3 for every triangle.
inline EuclideanQuarticFit euclidean_alpha_quartic(const Triangle& t, std::uint64_t seed = 0) {
  if (t.metric != MetricKind::Euclidean)
    throw std::invalid_argument("euclidean_alpha_quartic requires a Euclidean triangle");
  EuclideanQuarticFit fit;
  const auto coeffs = detail::fit_basis<9>([&](double x, double y) { return detail::alpha_at(t, x, y); },
                                           &detail::quartic_basis_row, detail::kQuarticDegrees,
                                           detail::coordinate_scale(t), seed, &fit.cert);
  fit.coeffs = QuarticCoeffs::from_array(coeffs);
  return fit;
}

/// Coefficients of beta_which as a circle polynomial; A2 = 1 always.
inline EuclideanCircleFit euclidean_beta_circle(const Triangle& t, int which,
                                                std::uint64_t seed = 0) {
  if (t.metric != MetricKind::Euclidean)
    throw std::invalid_argument("euclidean_beta_circle requires a Euclidean triangle");
  if (which < 1 || which > 3) throw std::invalid_argument("circle index must be 1, 2 or 3");
  EuclideanCircleFit fit;
  const auto coeffs = detail::fit_basis<4>(
      [&](double x, double y) { return detail::beta_at(t, x, y, which); },
      &detail::circle_basis_row, detail::kCircleDegrees, detail::coordinate_scale(t), seed,
      &fit.cert);
  fit.coeffs = CircleCoeffs::from_array(coeffs);
  return fit;
}

/// Numerator coefficients of the chordal alpha1 ratio: alpha1(M) times the
/// structural denominator is a quartic polynomial in (x, y), recovered here
/// by interpolation. degenerate_leading reports an honestly vanishing
/// leading coefficient (then the zero set is not a fourth-order curve).
inline ChordalQuarticFit chordal_alpha_quartic(const Triangle& t, std::uint64_t seed = 0) {
  if (t.metric != MetricKind::Chordal)
    throw std::invalid_argument("chordal_alpha_quartic requires a chordal triangle");
  ChordalQuarticFit fit;
  fit.denominator = {2, detail::vertex_denominator(t, 2)};
  const auto coeffs = detail::fit_basis<9>(
      [&](double x, double y) { return detail::alpha_at(t, x, y) * fit.denominator.value(x, y); },
      &detail::quartic_basis_row, detail::kQuarticDegrees, detail::coordinate_scale(t), seed,
      &fit.cert);
  fit.numerator = QuarticCoeffs::from_array(coeffs);
  fit.normalized = detail::normalize_coeffs<QuarticCoeffs>(coeffs);
  fit.degenerate_leading = detail::leading_degenerate(fit.numerator.k, fit.numerator);
  return fit;
}

/// Numerator coefficients of the chordal beta_which ratio over the circle
/// basis, with the power-1 structural denominator.
inline ChordalCircleFit chordal_beta_circle(const Triangle& t, int which, std::uint64_t seed = 0) {
  if (t.metric != MetricKind::Chordal)
    throw std::invalid_argument("chordal_beta_circle requires a chordal triangle");
  if (which < 1 || which > 3) throw std::invalid_argument("circle index must be 1, 2 or 3");
  ChordalCircleFit fit;
  fit.denominator = {1, detail::vertex_denominator(t, 1)};
  const auto coeffs = detail::fit_basis<4>(
      [&](double x, double y) {
        return detail::beta_at(t, x, y, which) * fit.denominator.value(x, y);
      },
      &detail::circle_basis_row, detail::kCircleDegrees, detail::coordinate_scale(t), seed,
      &fit.cert);
  fit.numerator = CircleCoeffs::from_array(coeffs);
  fit.normalized = detail::normalize_coeffs<CircleCoeffs>(coeffs);
  fit.degenerate_leading = detail::leading_degenerate(fit.numerator.A2, fit.numerator);
  return fit;
}

struct CircleGeometry {
  enum class Kind { Circle, Point, Empty };
  Kind kind = Kind::Empty;
  PlanePointd center{0, 0};
  double radius = 0;
  double radius_sq = 0;
};

inline const char* to_string(CircleGeometry::Kind k) {
  switch (k) {
    case CircleGeometry::Kind::Circle: return "circle";
    case CircleGeometry::Kind::Point: return "point";
    default: return "empty";
  }
}

/// Center/radius classification of A2 (x^2+y^2) + B2 x + C2 y + D2 = 0.
/// The point/empty boundary uses the band |radius^2| <= 1e-12 (|center|^2 + 1),
/// which keeps configurations that sit exactly on the boundary (such as the
/// right-isoceles beta1 circle) classified as a point.
inline CircleGeometry circle_params(const CircleCoeffs& c) {
  double biggest = 1;
  for (double v : {c.B2, c.C2, c.D2}) biggest = std::max(biggest, std::abs(v));
  if (std::abs(c.A2) <= 1e-12 * biggest)
    throw DegenerateConic("circle coefficients have a vanishing leading term");
  CircleGeometry g;
  g.center = PlanePointd(-c.B2 / (2 * c.A2), -c.C2 / (2 * c.A2));
  g.radius_sq = (c.B2 * c.B2 + c.C2 * c.C2 - 4 * c.A2 * c.D2) / (4 * c.A2 * c.A2);
  const double point_band = 1e-12 * (g.center.squaredNorm() + 1);
  if (std::abs(g.radius_sq) <= point_band) {
    g.kind = CircleGeometry::Kind::Point;
    g.radius = 0;
  } else if (g.radius_sq < 0) {
    g.kind = CircleGeometry::Kind::Empty;
    g.radius = 0;
  } else {
    g.kind = CircleGeometry::Kind::Circle;
    g.radius = std::sqrt(g.radius_sq);
  }
  return g;
}

}  // namespace mpp

// Seeded property-verification sweeps shared by the CLI and the test suites.
#pragma once

#include <cinttypes>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "mpp/classify.hpp"
#include "mpp/random.hpp"

namespace mpp {

struct Violation {
  std::string suite;
  std::string description;  // includes the violating sample
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  long samples = 0;
  long checks = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

inline DistanceTriple random_triple(SeededRng& rng) {
  // uniform in (0, 10]^3
  return {10.0 * (1.0 - rng.unit()), 10.0 * (1.0 - rng.unit()), 10.0 * (1.0 - rng.unit())};
}

inline Triangle random_triangle(SeededRng& rng, MetricKind m, double box) {
  for (;;) {
    const PlanePointd A(rng.uniform(-box, box), rng.uniform(-box, box));
    const PlanePointd B(rng.uniform(-box, box), rng.uniform(-box, box));
    const PlanePointd C(rng.uniform(-box, box), rng.uniform(-box, box));
    const double shortest = std::min({euclidean_distance(A, B), euclidean_distance(B, C),
                                      euclidean_distance(C, A)});
    if (shortest > 1e-3 * box) return Triangle::from_vertices(A, B, C, m);
  }
}

}  // namespace detail

/// Metric axioms over an exhaustive pair/triple sweep of random point sets,
/// both metrics.
inline SuiteReport verify_axioms(long samples, std::uint64_t seed) {
  SuiteReport report{"axioms", seed, samples, 0, {}};
  SeededRng rng(seed);
  const int n = static_cast<int>(std::clamp(samples, 3L, 120L));
  for (MetricKind m : {MetricKind::Euclidean, MetricKind::Chordal}) {
    std::vector<PlanePointd> pts;
    for (int i = 0; i < n; ++i) pts.emplace_back(rng.uniform(-10, 10), rng.uniform(-10, 10));
    const auto axioms = check_metric_axioms(pts, m, 1e-9);
    report.checks += static_cast<long>(n) * n * n;
    for (const auto& v : axioms.violations)
      report.violations.push_back(
          {"axioms", detail::fmt("%s axiom '%s' violated by %.17g at indices (%d,%d,%d)",
                                 to_string(m), v.axiom.c_str(), v.magnitude, v.i, v.j, v.k)});
  }
  return report;
}

/// The Ptolemaic inequality on seeded random quadruples in [-10,10]^2 for
/// both metrics, all three essential pairings, residual tolerance 1e-9.
inline SuiteReport verify_ptolemy(long samples, std::uint64_t seed) {
  SuiteReport report{"ptolemy", seed, samples, 0, {}};
  SeededRng rng(seed);
  for (long i = 0; i < samples; ++i) {
    PlanePointd x[4];
    for (auto& p : x) p = PlanePointd(rng.uniform(-10, 10), rng.uniform(-10, 10));
    for (MetricKind m : {MetricKind::Euclidean, MetricKind::Chordal}) {
      ++report.checks;
      if (!is_ptolemaic_quadruple(x[0], x[1], x[2], x[3], m, 1e-9))
        report.violations.push_back(
            {"ptolemy",
             detail::fmt("%s quadruple (%.17g,%.17g) (%.17g,%.17g) (%.17g,%.17g) (%.17g,%.17g)",
                         to_string(m), x[0].x(), x[0].y(), x[1].x(), x[1].y(), x[2].x(), x[2].y(),
                         x[3].x(), x[3].y())});
    }
  }
  return report;
}

/// Algebraic identities on random triples: the factorization of alpha1, the
/// symmetric-form equality, the equivalence of (factor_i <= 0) with
/// (alpha1 <= 0 and beta_i <= 0), and the implication lemma. Also sweeps
/// random triangles for the vertex value of alpha1 and the vertex
/// characterizations of factor1.
inline SuiteReport verify_identities(long samples, std::uint64_t seed) {
  SuiteReport report{"identities", seed, samples, 0, {}};
  SeededRng rng(seed);
  auto fail = [&](const std::string& what, const DistanceTriple& d) {
    report.violations.push_back(
        {"identities",
         what + detail::fmt(" at triple (%.17g, %.17g, %.17g)", d.d1, d.d2, d.d3)});
  };
  for (long i = 0; i < samples; ++i) {
    const DistanceTriple d = detail::random_triple(rng);
    const auto p = alpha_beta_profile(d);
    const double s = d.d1 + d.d2 + d.d3;
    const double q = d.d1 * d.d1 + d.d2 * d.d2 + d.d3 * d.d3;
    ++report.checks;

    const double product = p.factor1 * p.factor2 * p.factor3 * s;
    if (std::abs(p.alpha1 - product) > 1e-9 * std::max(1.0, std::abs(p.alpha1)))
      fail("factorization identity violated", d);

    const double alpha2 = 4 * d.d3 * d.d3 * d.d1 * d.d1 - p.beta2 * p.beta2;
    const double alpha3 = 4 * d.d1 * d.d1 * d.d2 * d.d2 - p.beta3 * p.beta3;
    const double band = 1e-12 * std::max(1.0, q * q);
    if (std::abs(p.alpha1 - alpha2) > band || std::abs(p.alpha1 - alpha3) > band)
      fail("symmetric-form identity violated", d);

    const double factors[3] = {p.factor1, p.factor2, p.factor3};
    const double betas[3] = {p.beta1, p.beta2, p.beta3};
    for (int which = 0; which < 3; ++which) {
      const bool clean = std::abs(factors[which]) > 1e-9 * s &&
                         std::abs(p.alpha1) > 1e-9 * std::max(1.0, q * q) &&
                         std::abs(betas[which]) > 1e-9 * std::max(1.0, q);
      if (clean && ((factors[which] < 0) != (p.alpha1 < 0 && betas[which] < 0)))
        fail(detail::fmt("equivalence of factor%d sign with alpha/beta signs violated", which + 1),
             d);
      if (factors[which] <= 0) {
        // the other two slacks must be nonnegative
        const double other1 = factors[(which + 1) % 3], other2 = factors[(which + 2) % 3];
        if (other1 < -1e-12 * s || other2 < -1e-12 * s) fail("implication lemma violated", d);
      }
    }
  }

  const long triangle_count = std::max(1L, samples / 50);
  for (long i = 0; i < triangle_count; ++i) {
    const MetricKind m = i % 2 == 0 ? MetricKind::Euclidean : MetricKind::Chordal;
    const Triangle t = detail::random_triangle(rng, m, 3.0);
    ++report.checks;
    struct VertexCase {
      PlanePointd M;
      double u, v;  // alpha1 at the vertex must be -(u^2 - v^2)^2
    };
    for (const auto& vc : {VertexCase{t.A, t.c, t.b}, VertexCase{t.B, t.a, t.c},
                           VertexCase{t.C, t.a, t.b}}) {
      const auto prof = alpha_beta_profile(distance_triple(t, vc.M));
      const double ref = -(vc.u * vc.u - vc.v * vc.v) * (vc.u * vc.u - vc.v * vc.v);
      if (std::abs(prof.alpha1 - ref) > 1e-9 * std::max(1.0, std::abs(ref)))
        report.violations.push_back(
            {"identities", detail::fmt("vertex alpha1 value mismatch: %.17g vs %.17g", prof.alpha1,
                                       ref)});
      if (prof.alpha1 > 0)
        report.violations.push_back(
            {"identities", detail::fmt("alpha1 positive at a vertex: %.17g", prof.alpha1)});
    }
    if ((factor_value(t, t.B, 1) <= 0) != (t.c >= t.a))
      report.violations.push_back({"identities", "vertex characterization at B violated"});
    if ((factor_value(t, t.C, 1) <= 0) != (t.b >= t.a))
      report.violations.push_back({"identities", "vertex characterization at C violated"});
  }
  return report;
}

/// Non-emptiness theorems: region_nonempty's side-length prediction must
/// match the outcome of the sampling search for every region, and for
/// Euclidean triangles with a strictly dominant the Ptolemaic mechanism
/// c*d3 + b*d2 >= a*d1 must hold with factor1 positive.
inline SuiteReport verify_theorems(long samples, std::uint64_t seed) {
  SuiteReport report{"theorems", seed, samples, 0, {}};
  SeededRng rng(seed);
  const long triangles = std::clamp(samples, 1L, 400L);
  for (long i = 0; i < triangles; ++i) {
    const MetricKind m = i % 2 == 0 ? MetricKind::Euclidean : MetricKind::Chordal;
    const Triangle t = detail::random_triangle(rng, m, 5.0);
    for (int which = 1; which <= 3; ++which) {
      ++report.checks;
      const bool predicted = region_nonempty(t, which);
      const auto witness = search_failing_point(t, which, 2000, rng.fork());
      if (predicted != witness.has_value())
        report.violations.push_back(
            {"theorems",
             detail::fmt("region %d prediction %d but witness %s for %s triangle "
                         "A(%.17g,%.17g) B(%.17g,%.17g) C(%.17g,%.17g)",
                         which, predicted ? 1 : 0, witness ? "found" : "absent", to_string(m),
                         t.A.x(), t.A.y(), t.B.x(), t.B.y(), t.C.x(), t.C.y())});
    }
    if (t.metric == MetricKind::Euclidean && t.a > t.b && t.a > t.c) {
      PlanePointd lo, hi;
      bounding_box(t, lo, hi);
      for (int k = 0; k < 100; ++k) {
        ++report.checks;
        const PlanePointd M(rng.uniform(lo.x() - 1, hi.x() + 1), rng.uniform(lo.y() - 1, hi.y() + 1));
        const auto d = distance_triple(t, M);
        const double slack = t.c * d.d3 + t.b * d.d2 - t.a * d.d1;
        if (slack < -1e-9)
          report.violations.push_back(
              {"theorems", detail::fmt("ptolemaic mechanism violated: slack %.17g at (%.17g,%.17g)",
                                       slack, M.x(), M.y())});
        if (M != t.A && M != t.B && M != t.C && d.d2 + d.d3 - d.d1 <= 0)
          report.violations.push_back(
              {"theorems", detail::fmt("factor1 nonpositive in an empty region at (%.17g,%.17g)",
                                       M.x(), M.y())});
      }
    }
  }
  return report;
}

inline std::vector<SuiteReport> run_suites(const std::string& which, long samples,
                                           std::uint64_t seed) {
  std::vector<SuiteReport> reports;
  const bool all = which == "all";
  if (all || which == "axioms") reports.push_back(verify_axioms(samples, seed));
  if (all || which == "ptolemy") reports.push_back(verify_ptolemy(samples, seed));
  if (all || which == "identities") reports.push_back(verify_identities(samples, seed));
  if (all || which == "theorems") reports.push_back(verify_theorems(samples, seed));
  if (reports.empty()) throw std::invalid_argument("unknown suite: " + which);
  return reports;
}

}  // namespace mpp

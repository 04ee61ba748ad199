// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Sample counts, tolerances and runtime budgets are pinned in code.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "mpp/classify.hpp"
#include "mpp/curves.hpp"
#include "mpp/imageio.hpp"
#include "mpp/raster.hpp"
#include "mpp/random.hpp"

using namespace mpp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

DistanceTriple random_triple(SeededRng& rng) {
  return {10 * (1 - rng.unit()), 10 * (1 - rng.unit()), 10 * (1 - rng.unit())};
}

Triangle random_triangle(SeededRng& rng, MetricKind m, double box, double min_side = 1e-3) {
  for (;;) {
    const PlanePointd A(rng.uniform(-box, box), rng.uniform(-box, box));
    const PlanePointd B(rng.uniform(-box, box), rng.uniform(-box, box));
    const PlanePointd C(rng.uniform(-box, box), rng.uniform(-box, box));
    if (euclidean_distance(A, B) > min_side && euclidean_distance(B, C) > min_side &&
        euclidean_distance(C, A) > min_side)
      return Triangle::from_vertices(A, B, C, m);
  }
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

// --- criteria ---------------------------------------------------------------

bool ptolemaic_property(std::string& detail) {
  const auto start = Clock::now();
  SeededRng rng(1001);
  long bad = 0;
  double worst = 0;
  for (long i = 0; i < 100000; ++i) {
    PlanePointd x[4];
    for (auto& p : x) p = PlanePointd(rng.uniform(-10, 10), rng.uniform(-10, 10));
    for (MetricKind m : {MetricKind::Euclidean, MetricKind::Chordal}) {
      const double p1 = distance(x[0], x[1], m) * distance(x[2], x[3], m);
      const double p2 = distance(x[0], x[2], m) * distance(x[1], x[3], m);
      const double p3 = distance(x[0], x[3], m) * distance(x[1], x[2], m);
      const double r = std::min({p2 + p3 - p1, p1 + p3 - p2, p1 + p2 - p3});
      worst = std::min(worst, r);
      if (r < -1e-9) ++bad;
    }
  }
  const double elapsed = seconds_since(start);
  detail = fmt("10^5 quadruples, both metrics, worst residual %.3g, %.2fs", worst, elapsed);
  return bad == 0 && elapsed < 5.0;
}

bool factorization_identity(std::string& detail) {
  const auto start = Clock::now();
  SeededRng rng(1002);
  double worst = 0;
  for (long i = 0; i < 100000; ++i) {
    const DistanceTriple d = random_triple(rng);
    const auto p = alpha_beta_profile(d);
    const double product = p.factor1 * p.factor2 * p.factor3 * (d.d1 + d.d2 + d.d3);
    worst = std::max(worst,
                     std::abs(p.alpha1 - product) / std::max(1.0, std::abs(p.alpha1)));
  }
  const double elapsed = seconds_since(start);
  detail = fmt("10^5 triples, worst relative error %.3g, %.2fs", worst, elapsed);
  return worst <= 1e-9 && elapsed < 1.0;
}

bool symmetric_form_identity(std::string& detail) {
  SeededRng rng(1003);
  double worst = 0;
  for (long i = 0; i < 100000; ++i) {
    const DistanceTriple d = random_triple(rng);
    const double q1 = d.d1 * d.d1, q2 = d.d2 * d.d2, q3 = d.d3 * d.d3;
    const double a1 = 4 * q2 * q3 - (q2 + q3 - q1) * (q2 + q3 - q1);
    const double a2 = 4 * q3 * q1 - (q3 + q1 - q2) * (q3 + q1 - q2);
    const double a3 = 4 * q1 * q2 - (q1 + q2 - q3) * (q1 + q2 - q3);
    const double scale = std::max(1.0, (q1 + q2 + q3) * (q1 + q2 + q3));
    worst = std::max({worst, std::abs(a1 - a2) / scale, std::abs(a1 - a3) / scale});
  }
  detail = fmt("10^5 triples, worst operand-relative spread %.3g", worst);
  return worst <= 1e-12;
}

bool equivalence_oracle(std::string& detail) {
  SeededRng rng(1004);
  long kept = 0, mismatched = 0;
  while (kept < 100000) {
    const DistanceTriple d = random_triple(rng);
    const double f1 = d.d2 + d.d3 - d.d1;
    const double f2 = d.d3 + d.d1 - d.d2;
    const double f3 = d.d1 + d.d2 - d.d3;
    if (std::min({std::abs(f1), std::abs(f2), std::abs(f3)}) <= 1e-6) continue;
    ++kept;
    const double tol = default_classification_tolerance(d);
    if (!(classify_direct(d, tol) == classify_via_theorems(d, tol))) ++mismatched;
  }
  detail = fmt("10^5 triples with |factors| > 1e-6, %ld disagreements", mismatched);
  return mismatched == 0;
}

bool vertex_lemma(std::string& detail) {
  SeededRng rng(1005);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const MetricKind m = i % 2 ? MetricKind::Chordal : MetricKind::Euclidean;
    const Triangle t = random_triangle(rng, m, 3.0);
    const struct {
      PlanePointd M;
      double u, v;
    } cases[3] = {{t.A, t.c, t.b}, {t.B, t.a, t.c}, {t.C, t.a, t.b}};
    for (const auto& vc : cases) {
      const double alpha = alpha_beta_profile(distance_triple(t, vc.M)).alpha1;
      const double ref = -(vc.u * vc.u - vc.v * vc.v) * (vc.u * vc.u - vc.v * vc.v);
      worst = std::max(worst, std::abs(alpha - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  detail = fmt("1000 triangles, all three vertices, worst relative error %.3g", worst);
  return worst <= 1e-9;
}

bool nonemptiness_empty_direction(std::string& detail) {
  SeededRng rng(1006);
  long offenders = 0, mechanism_violations = 0;
  for (int built = 0; built < 200;) {
    const Triangle t = random_triangle(rng, MetricKind::Euclidean, 5.0);
    if (!(t.a > t.b && t.a > t.c)) continue;
    ++built;
    PlanePointd lo, hi;
    bounding_box(t, lo, hi);
    const PlanePointd margin = hi - lo;
    for (long k = 0; k < 100000; ++k) {
      const PlanePointd M(rng.uniform(lo.x() - margin.x(), hi.x() + margin.x()),
                          rng.uniform(lo.y() - margin.y(), hi.y() + margin.y()));
      const auto d = distance_triple(t, M);
      if (d.d2 + d.d3 - d.d1 <= 0) ++offenders;
      if (t.c * d.d3 + t.b * d.d2 - t.a * d.d1 < -1e-9) ++mechanism_violations;
    }
  }
  detail = fmt("200 triangles x 10^5 samples: %ld nonpositive factors, %ld mechanism violations",
               offenders, mechanism_violations);
  return offenders == 0 && mechanism_violations == 0;
}

bool nonemptiness_witness_direction(std::string& detail) {
  SeededRng rng(1007);
  long found = 0;
  for (int i = 0; i < 200; ++i) {
    const MetricKind m = i % 2 ? MetricKind::Chordal : MetricKind::Euclidean;
    // relabel a random triangle so that c = d(A,B) is the longest side
    PlanePointd v[3];
    for (;;) {
      for (auto& p : v) p = PlanePointd(rng.uniform(-5, 5), rng.uniform(-5, 5));
      if (euclidean_distance(v[0], v[1]) > 1e-3 && euclidean_distance(v[1], v[2]) > 1e-3 &&
          euclidean_distance(v[2], v[0]) > 1e-3)
        break;
    }
    const double s01 = distance(v[0], v[1], m), s12 = distance(v[1], v[2], m),
                 s20 = distance(v[2], v[0], m);
    Triangle t = s01 >= s12 && s01 >= s20
                     ? Triangle::from_vertices(v[0], v[1], v[2], m)
                     : (s12 >= s20 ? Triangle::from_vertices(v[1], v[2], v[0], m)
                                   : Triangle::from_vertices(v[2], v[0], v[1], m));
    if (!(t.c >= t.a)) continue;  // cannot happen; keeps the precondition explicit
    const auto witness = search_failing_point(t, 1, 1000, rng.fork());
    if (witness && factor_value(t, *witness, 1) <= 0) ++found;
  }
  detail = fmt("witnesses found for %ld / 200 triangles with c >= a", found);
  return found == 200;
}

bool euclidean_quartic_structure(std::string& detail) {
  const auto start = Clock::now();
  SeededRng rng(1008);
  double worst_k = 0, worst_residual = 0;
  for (int i = 0; i < 1000; ++i) {
    const Triangle t = random_triangle(rng, MetricKind::Euclidean, 4.0);
    const auto fit = euclidean_alpha_quartic(t, 0);
    worst_k = std::max(worst_k, std::abs(fit.coeffs.k - 3.0));
    // external fresh-point residual check against direct evaluation
    double scale = 1, gap = 0;
    PlanePointd probes[100];
    double truth[100];
    for (int k = 0; k < 100; ++k) {
      probes[k] = PlanePointd(rng.uniform(-8, 8), rng.uniform(-8, 8));
      truth[k] = alpha_beta_profile(distance_triple(t, probes[k])).alpha1;
      scale = std::max(scale, std::abs(truth[k]));
    }
    for (int k = 0; k < 100; ++k)
      gap = std::max(gap, std::abs(fit.coeffs.evaluate(probes[k].x(), probes[k].y()) - truth[k]));
    worst_residual = std::max(worst_residual, gap / scale);
  }
  const double elapsed = seconds_since(start);
  detail = fmt("1000 fits: worst |k-3| = %.3g, worst residual %.3g, %.2fs", worst_k,
               worst_residual, elapsed);
  return worst_k <= 1e-9 && worst_residual <= 1e-8 && elapsed < 30.0;
}

bool circle_structure(std::string& detail) {
  SeededRng rng(1009);
  double worst_a2 = 0;
  for (int i = 0; i < 200; ++i) {
    const Triangle t = random_triangle(rng, MetricKind::Euclidean, 4.0);
    for (int which = 1; which <= 3; ++which)
      worst_a2 = std::max(worst_a2,
                          std::abs(euclidean_beta_circle(t, which, 0).coeffs.A2 - 1.0));
  }
  const auto worked = Triangle::from_vertices(PlanePointd(0, 0), PlanePointd(1, 0),
                                              PlanePointd(0, 1));
  const auto fit = euclidean_beta_circle(worked, 1, 0);
  const auto geo = circle_params(fit.coeffs);
  const bool point_ok = geo.kind == CircleGeometry::Kind::Point &&
                        std::abs(geo.center.x() - 1.0) < 1e-9 &&
                        std::abs(geo.center.y() - 1.0) < 1e-9 && std::abs(geo.radius_sq) <= 1e-12;
  detail = fmt("worst |A2-1| = %.3g over 600 circles; right-isoceles beta1 -> %s",
               worst_a2, to_string(geo.kind));
  return worst_a2 <= 1e-12 && point_ok;
}

bool chordal_structure(std::string& detail) {
  SeededRng rng(1010);
  double worst_quartic = 0, worst_circle = 0;
  for (int i = 0; i < 200; ++i) {
    const Triangle t = random_triangle(rng, MetricKind::Chordal, 4.0);
    const auto quartic = chordal_alpha_quartic(t, 0);
    {
      double scale = 1, gap = 0;
      for (int k = 0; k < 100; ++k) {
        const PlanePointd p(rng.uniform(-6, 6), rng.uniform(-6, 6));
        const double direct = alpha_beta_profile(distance_triple(t, p)).alpha1 *
                              quartic.denominator.value(p.x(), p.y());
        scale = std::max(scale, std::abs(direct));
        gap = std::max(gap, std::abs(quartic.numerator.evaluate(p.x(), p.y()) - direct));
      }
      worst_quartic = std::max(worst_quartic, gap / scale);
    }
    const int which = 1 + static_cast<int>(i % 3);
    const auto circle = chordal_beta_circle(t, which, 0);
    {
      double scale = 1, gap = 0;
      for (int k = 0; k < 100; ++k) {
        const PlanePointd p(rng.uniform(-6, 6), rng.uniform(-6, 6));
        const auto prof = alpha_beta_profile(distance_triple(t, p));
        const double beta = which == 1 ? prof.beta1 : which == 2 ? prof.beta2 : prof.beta3;
        const double direct = beta * circle.denominator.value(p.x(), p.y());
        scale = std::max(scale, std::abs(direct));
        gap = std::max(gap, std::abs(circle.numerator.evaluate(p.x(), p.y()) - direct));
      }
      worst_circle = std::max(worst_circle, gap / scale);
    }
  }
  detail = fmt("200 chordal triangles: worst quartic residual %.3g, worst circle residual %.3g",
               worst_quartic, worst_circle);
  return worst_quartic <= 1e-8 && worst_circle <= 1e-10;
}

bool pompeiu_circumcircle(std::string& detail) {
  const double r3 = std::sqrt(3.0) / 2;
  const auto t = Triangle::from_vertices(PlanePointd(0, 1), PlanePointd(-r3, -0.5),
                                         PlanePointd(r3, -0.5));
  long on_circle_bad = 0;
  for (int k = 0; k < 360; ++k) {
    const double th = 2 * std::numbers::pi * k / 360;
    const auto c = classify_direct(distance_triple(t, PlanePointd(std::cos(th), std::sin(th))),
                                   1e-9);
    if (c.verdict != Verdict::Degenerate) ++on_circle_bad;
  }
  SeededRng rng(1011);
  long off_circle_bad = 0, tested = 0;
  while (tested < 10000) {
    const PlanePointd M(rng.uniform(-2, 2), rng.uniform(-2, 2));
    if (std::abs(M.norm() - 1.0) <= 0.01) continue;
    ++tested;
    const auto c = classify_direct(distance_triple(t, M), 1e-9);
    if (c.verdict != Verdict::NonDegenerate) ++off_circle_bad;
  }
  detail = fmt("360 circle samples (%ld not degenerate), 10^4 off-circle samples (%ld not "
               "non-degenerate)",
               on_circle_bad, off_circle_bad);
  return on_circle_bad == 0 && off_circle_bad == 0;
}

bool chordal_circumcircle(std::string& detail) {
  PlanePointd v[3];
  for (int k = 0; k < 3; ++k) {
    const double th = 2 * std::numbers::pi * k / 3;
    v[k] = PlanePointd(std::cos(th), std::sin(th));
  }
  const auto t = Triangle::from_vertices(v[0], v[1], v[2], MetricKind::Chordal);
  long on_circle_bad = 0;
  for (int k = 0; k < 360; ++k) {
    const double th = 2 * std::numbers::pi * k / 360;
    const auto c = classify_direct(distance_triple(t, PlanePointd(std::cos(th), std::sin(th))),
                                   1e-9);
    if (c.verdict != Verdict::Degenerate) ++on_circle_bad;
  }
  SeededRng rng(1012);
  long off_circle_bad = 0, tested = 0;
  while (tested < 10000) {
    const PlanePointd M(rng.uniform(-2, 2), rng.uniform(-2, 2));
    if (std::abs(M.norm() - 1.0) <= 0.01) continue;
    ++tested;
    const auto c = classify_direct(distance_triple(t, M), 1e-9);
    if (c.verdict != Verdict::NonDegenerate) ++off_circle_bad;
  }
  detail = fmt("chordally equidistant vertices: %ld bad on-circle, %ld bad off-circle",
               on_circle_bad, off_circle_bad);
  return on_circle_bad == 0 && off_circle_bad == 0;
}

bool renderer_determinism(std::string& detail) {
  const auto t = Triangle::from_vertices(PlanePointd(0, 0), PlanePointd(1.6, 0),
                                         PlanePointd(0.5, 1.4));
  if (!(t.a > t.c && t.c > t.b)) {
    detail = "test configuration is not a > c > b";
    return false;
  }
  const GridSpec g = default_window(t, 400, 400);
  const double tol = 1e-12 * (t.a + t.b + t.c);
  const auto img1 = render_sign_map(t, g, tol);
  const auto img2 = render_sign_map(t, g, tol);
  const auto counts = img1.counts();

  const auto dir = std::filesystem::temp_directory_path();
  const auto p1 = (dir / "mpp_acceptance_a.ppm").string();
  const auto p2 = (dir / "mpp_acceptance_b.ppm").string();
  write_ppm(img1, {}, p1);
  write_ppm(img2, {}, p2);
  const auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  const bool identical = slurp(p1) == slurp(p2) && img1.pixels == img2.pixels;
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);

  // contour fidelity: every vertex within 1e-3 of the field's window scale
  bool contours_ok = true;
  for (int which = 1; which <= 3; ++which) {
    const auto field = [&](double x, double y) {
      return factor_value(t, PlanePointd(x, y), which);
    };
    double scale = 0;
    for (int j = 0; j < g.height; ++j)
      for (int i = 0; i < g.width; ++i)
        scale = std::max(scale, std::abs(field(g.world_x(i), g.world_y(j))));
    const auto contours = factor_contours(t, g, which);
    for (const auto& line : contours)
      for (const auto& p : line.points)
        if (std::abs(field(p.x(), p.y())) > 1e-3 * scale) contours_ok = false;
  }

  detail = fmt("counts: r1=%zu r2=%zu r3=%zu, byte-identical=%d, contours-ok=%d", counts[1],
               counts[2], counts[3], identical ? 1 : 0, contours_ok ? 1 : 0);
  return counts[1] == 0 && counts[2] > 0 && counts[3] > 0 && identical && contours_ok;
}

bool stereographic_round_trip(std::string& detail) {
  SeededRng rng(1014);
  double worst_round = 0, worst_chordal = 0;
  for (int i = 0; i < 10000; ++i) {
    const PlanePointd p(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const PlanePointd q(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const SpherePointd sp = forward_stereographic(p);
    worst_round = std::max(worst_round, (inverse_stereographic(sp) - p).norm());
    const double lift = (sp - forward_stereographic(q)).norm();
    worst_chordal = std::max(worst_chordal, std::abs(chordal_distance(p, q) - lift));
  }
  detail = fmt("10^4 points: worst round trip %.3g, worst chordal-vs-lift %.3g", worst_round,
               worst_chordal);
  return worst_round <= 1e-12 && worst_chordal <= 1e-10;
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "ptolemaic inequality on random quadruples", ptolemaic_property},
      {2, "factorization identity of alpha1", factorization_identity},
      {3, "symmetric-form identity alpha1 = alpha2 = alpha3", symmetric_form_identity},
      {4, "classification route agreement", equivalence_oracle},
      {5, "vertex value of alpha1", vertex_lemma},
      {6, "non-emptiness theorem, empty direction", nonemptiness_empty_direction},
      {7, "non-emptiness theorem, witness direction", nonemptiness_witness_direction},
      {8, "euclidean quartic structure (k = 3)", euclidean_quartic_structure},
      {9, "euclidean circle structure (A2 = 1, point circle)", circle_structure},
      {10, "chordal numerator/denominator structure", chordal_structure},
      {11, "pompeiu circumcircle classification", pompeiu_circumcircle},
      {12, "chordal circumcircle analogue", chordal_circumcircle},
      {13, "renderer determinism and region counts", renderer_determinism},
      {14, "stereographic round trip and chordal lift", stereographic_round_trip},
  };
  int failures = 0;
  for (const auto& criterion : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] %02d %s — %s\n", ok ? "PASS" : "FAIL", criterion.id, criterion.name,
                detail.c_str());
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}

// Command-line surface: classification queries, curve-coefficient reports,
// figure rendering, and the verification suites. Every command prints a
// single JSON report on stdout; images go only to --out paths.
//
// Exit statuses: 0 success, 1 property violation, 2 input error,
// 3 numerical failure, 4 I/O failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mpp/classify.hpp"
#include "mpp/curves.hpp"
#include "mpp/imageio.hpp"
#include "mpp/raster.hpp"
#include "mpp/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

struct ParseError : std::invalid_argument {
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

std::vector<double> parse_numbers(const std::string& text, std::size_t count,
                                  const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size() && out.size() < count) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    try {
      std::size_t used = 0;
      const std::string piece = text.substr(pos, next - pos);
      out.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw ParseError("cannot parse " + what + " from '" + text + "'");
    }
    pos = next + 1;
  }
  if (out.size() != count || pos <= text.size())
    throw ParseError("expected " + std::to_string(count) + " comma-separated numbers for " + what +
                     ", got '" + text + "'");
  for (double v : out)
    if (!std::isfinite(v)) throw ParseError(what + " must be finite, got '" + text + "'");
  return out;
}

mpp::PlanePointd parse_plane_point(const std::string& text, const std::string& what) {
  const auto v = parse_numbers(text, 2, what);
  return {v[0], v[1]};
}

/// Accepts a point near the unit sphere (within 1e-6), renormalizes it onto
/// the sphere exactly, and rejects the north pole.
mpp::SpherePointd parse_sphere_point(const std::string& text, const std::string& what) {
  const auto v = parse_numbers(text, 3, what);
  mpp::SpherePointd s(v[0], v[1], v[2]);
  const double n = s.norm();
  if (std::abs(n - 1.0) > 1e-6)
    throw ParseError(what + " must lie on the unit sphere, |" + text + "| = " + std::to_string(n));
  s /= n;
  return s;
}

mpp::MetricKind parse_metric(const std::string& name) {
  if (name == "euclid") return mpp::MetricKind::Euclidean;
  if (name == "chordal") return mpp::MetricKind::Chordal;
  throw ParseError("unknown metric '" + name + "' (expected euclid or chordal)");
}

struct CommonOptions {
  std::string metric = "euclid";
  bool sphere = false;
  std::uint64_t seed = 0;
  std::optional<double> tol;
};

mpp::PlanePointd input_point(const std::string& text, bool sphere, const std::string& what) {
  if (!sphere) return parse_plane_point(text, what);
  return mpp::inverse_stereographic(parse_sphere_point(text, what));
}

mpp::Triangle make_triangle(const std::string& a, const std::string& b, const std::string& c,
                            const CommonOptions& opt) {
  return mpp::Triangle::from_vertices(input_point(a, opt.sphere, "vertex A"),
                                      input_point(b, opt.sphere, "vertex B"),
                                      input_point(c, opt.sphere, "vertex C"),
                                      parse_metric(opt.metric));
}

json point_json(const mpp::PlanePointd& p) { return json::array({p.x(), p.y()}); }

json triangle_json(const mpp::Triangle& t) {
  return {{"A", point_json(t.A)},
          {"B", point_json(t.B)},
          {"C", point_json(t.C)},
          {"metric", mpp::to_string(t.metric)},
          {"sides", {{"a", t.a}, {"b", t.b}, {"c", t.c}}}};
}

json classification_json(const mpp::Classification& c) {
  return {{"verdict", mpp::to_string(c.verdict)},
          {"failing_or_zero_factors", c.failing_or_zero_factors},
          {"tolerance", c.tolerance_used}};
}

json geometry_json(const mpp::CircleGeometry& g) {
  return {{"kind", mpp::to_string(g.kind)},
          {"center", point_json(g.center)},
          {"radius", g.radius},
          {"radius_sq", g.radius_sq}};
}

json quartic_json(const mpp::QuarticCoeffs& q) {
  return {{"k", q.k},   {"A1", q.A1}, {"B1", q.B1}, {"C1", q.C1}, {"D1", q.D1},
          {"E1", q.E1}, {"F1", q.F1}, {"G1", q.G1}, {"H1", q.H1}};
}

json circle_json(const mpp::CircleCoeffs& c) {
  return {{"A2", c.A2}, {"B2", c.B2}, {"C2", c.C2}, {"D2", c.D2}};
}

json cert_json(const mpp::FitCertificate& cert) {
  return {{"condition", cert.condition}, {"rel_residual", cert.rel_residual}};
}

json report_skeleton(const std::string& command, const std::vector<std::string>& argv_echo,
                     std::uint64_t seed, double tolerance) {
  json report;
  report["command"] = command;
  report["argv"] = argv_echo;
  report["seed"] = seed;
  report["tolerance"] = tolerance;
  return report;
}

int finish(json& report, const std::vector<json>& violations) {
  report["violations"] = violations;
  report["status"] = violations.empty() ? 0 : 1;
  std::cout << report.dump(2) << "\n";
  return report["status"].get<int>();
}

int run_classify(const std::vector<std::string>& argv_echo, const std::string& a,
                 const std::string& b, const std::string& c, const std::string& m,
                 const CommonOptions& opt) {
  const mpp::Triangle t = make_triangle(a, b, c, opt);
  const mpp::PlanePointd M = input_point(m, opt.sphere, "query point");
  const auto d = mpp::distance_triple(t, M);
  const double tol = opt.tol.value_or(mpp::default_classification_tolerance(d));
  const auto profile = mpp::alpha_beta_profile(d);
  const auto direct = mpp::classify_direct(d, tol);
  const auto via = mpp::classify_via_theorems(d, tol);

  json report = report_skeleton("classify", argv_echo, opt.seed, tol);
  report["metric"] = mpp::to_string(t.metric);
  report["triangle"] = triangle_json(t);
  report["point"] = point_json(M);
  report["results"] = {
      {"distances", {{"d1", d.d1}, {"d2", d.d2}, {"d3", d.d3}}},
      {"profile",
       {{"alpha1", profile.alpha1},
        {"factors", {profile.factor1, profile.factor2, profile.factor3}},
        {"betas", {profile.beta1, profile.beta2, profile.beta3}}}},
      {"classify_direct", classification_json(direct)},
      {"classify_via_theorems", classification_json(via)},
      {"agreement", direct == via}};
  return finish(report, {});
}

int run_coeffs(const std::vector<std::string>& argv_echo, const std::string& a,
               const std::string& b, const std::string& c, const CommonOptions& opt) {
  const mpp::Triangle t = make_triangle(a, b, c, opt);
  json report = report_skeleton("coeffs", argv_echo, opt.seed, opt.tol.value_or(1e-9));
  report["metric"] = mpp::to_string(t.metric);
  report["triangle"] = triangle_json(t);
  json results;
  if (t.metric == mpp::MetricKind::Euclidean) {
    const auto quartic = mpp::euclidean_alpha_quartic(t, opt.seed);
    results["alpha_quartic"] = quartic_json(quartic.coeffs);
    results["alpha_quartic"]["certificate"] = cert_json(quartic.cert);
    results["beta_circles"] = json::array();
    for (int which = 1; which <= 3; ++which) {
      const auto circle = mpp::euclidean_beta_circle(t, which, opt.seed);
      json entry = {{"which", which}, {"coefficients", circle_json(circle.coeffs)},
                    {"certificate", cert_json(circle.cert)}};
      entry["geometry"] = geometry_json(mpp::circle_params(circle.coeffs));
      results["beta_circles"].push_back(entry);
    }
  } else {
    const auto quartic = mpp::chordal_alpha_quartic(t, opt.seed);
    results["alpha_quartic"] = {{"numerator", quartic_json(quartic.numerator)},
                                {"normalized", quartic_json(quartic.normalized)},
                                {"denominator",
                                 {{"power", quartic.denominator.power},
                                  {"vertex_factor", quartic.denominator.vertex_factor}}},
                                {"degenerate_leading", quartic.degenerate_leading},
                                {"certificate", cert_json(quartic.cert)}};
    results["beta_circles"] = json::array();
    for (int which = 1; which <= 3; ++which) {
      const auto circle = mpp::chordal_beta_circle(t, which, opt.seed);
      json entry = {{"which", which},
                    {"numerator", circle_json(circle.numerator)},
                    {"normalized", circle_json(circle.normalized)},
                    {"denominator",
                     {{"power", circle.denominator.power},
                      {"vertex_factor", circle.denominator.vertex_factor}}},
                    {"degenerate_leading", circle.degenerate_leading},
                    {"certificate", cert_json(circle.cert)}};
      if (circle.degenerate_leading)
        entry["geometry"] = nullptr;  // no circle to report
      else
        entry["geometry"] = geometry_json(mpp::circle_params(circle.numerator));
      results["beta_circles"].push_back(entry);
    }
  }
  report["results"] = results;
  return finish(report, {});
}

struct RenderOptions {
  std::string grid = "400x400";
  std::string window;
  std::string out;
  std::string format = "ppm";
  bool great_circles = false;
};

mpp::GridSpec parse_grid(const mpp::Triangle& t, const RenderOptions& r) {
  int width = 0, height = 0;
  if (std::sscanf(r.grid.c_str(), "%dx%d", &width, &height) != 2)
    throw ParseError("cannot parse --grid '" + r.grid + "' (expected WxH)");
  if (r.window.empty()) return mpp::default_window(t, width, height);
  const auto w = parse_numbers(r.window, 4, "--window");
  mpp::GridSpec g{w[0], w[1], w[2], w[3], width, height};
  g.validate();
  return g;
}

int run_render(const std::vector<std::string>& argv_echo, const std::string& a,
               const std::string& b, const std::string& c, const CommonOptions& opt,
               const RenderOptions& ropt) {
  const mpp::Triangle t = make_triangle(a, b, c, opt);
  mpp::GridSpec grid = parse_grid(t, ropt);
  if (ropt.out.empty()) throw ParseError("render requires --out PATH");
  const double sides_sum = t.a + t.b + t.c;
  const double tol = opt.tol.value_or(1e-12 * sides_sum);

  const auto img = mpp::render_sign_map(t, grid, tol);
  mpp::Overlays overlays;
  for (int which = 1; which <= 3; ++which) {
    auto contours = mpp::factor_contours(t, grid, which);
    for (auto& line : contours) overlays.polylines.push_back(std::move(line));
  }
  if (ropt.great_circles) {
    if (t.metric != mpp::MetricKind::Chordal)
      throw ParseError("--great-circles applies to the chordal metric only");
    const mpp::SpherePointd lifts[3] = {mpp::forward_stereographic(t.A),
                                        mpp::forward_stereographic(t.B),
                                        mpp::forward_stereographic(t.C)};
    overlays.polylines.push_back(mpp::great_circle_image(lifts[0], lifts[1], 720));
    overlays.polylines.push_back(mpp::great_circle_image(lifts[1], lifts[2], 720));
    overlays.polylines.push_back(mpp::great_circle_image(lifts[2], lifts[0], 720));
  }
  overlays.marked_points = {t.A, t.B, t.C};

  const mpp::ImageFormat format = [&] {
    if (ropt.format == "ppm") return mpp::ImageFormat::Ppm;
    if (ropt.format == "svg") return mpp::ImageFormat::Svg;
    throw ParseError("unknown --format '" + ropt.format + "' (expected ppm or svg)");
  }();
  mpp::write_image(img, overlays, ropt.out, format);

  json report = report_skeleton("render", argv_echo, opt.seed, tol);
  report["metric"] = mpp::to_string(t.metric);
  report["triangle"] = triangle_json(t);
  report["window"] = {grid.x_min, grid.x_max, grid.y_min, grid.y_max};
  report["grid"] = {{"width", grid.width}, {"height", grid.height}};
  const auto counts = img.counts();
  json count_json;
  for (int code = 0; code < 5; ++code)
    count_json[mpp::to_string(static_cast<mpp::RegionCode>(code))] = counts[code];
  report["results"] = {{"pixel_counts", count_json},
                       {"contour_polylines", overlays.polylines.size()},
                       {"output", ropt.out},
                       {"format", ropt.format}};
  return finish(report, {});
}

int run_verify(const std::vector<std::string>& argv_echo, const std::string& suite, long samples,
               const CommonOptions& opt) {
  if (samples < 1) throw ParseError("--samples must be at least 1");
  const auto reports = mpp::run_suites(suite, samples, opt.seed);
  json report = report_skeleton("verify", argv_echo, opt.seed, opt.tol.value_or(1e-9));
  report["results"] = json::array();
  std::vector<json> violations;
  for (const auto& suite_report : reports) {
    report["results"].push_back({{"suite", suite_report.suite},
                                 {"samples", suite_report.samples},
                                 {"checks", suite_report.checks},
                                 {"violations", suite_report.violations.size()}});
    for (const auto& v : suite_report.violations)
      violations.push_back({{"suite", v.suite}, {"description", v.description}});
  }
  return finish(report, violations);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moebius-Pompeiu metric property toolkit"};
  app.require_subcommand(1);
  std::vector<std::string> argv_echo(argv, argv + argc);

  CommonOptions opt;
  std::string A, B, C, M;
  std::string suite = "all";
  long samples = 100000;
  RenderOptions ropt;

  auto add_common = [&](CLI::App* cmd, bool with_triangle) {
    cmd->add_option("--metric", opt.metric, "euclid or chordal")->capture_default_str();
    cmd->add_option("--tol", opt.tol, "override the default tolerance");
    cmd->add_option("--seed", opt.seed, "seed for all randomized internals")->capture_default_str();
    if (with_triangle) {
      cmd->add_flag("--sphere", opt.sphere,
                    "read all points as x,y,z on the unit sphere and project them to the plane");
      cmd->add_option("A", A, "vertex A as x,y (or x,y,z with --sphere)")->required();
      cmd->add_option("B", B, "vertex B")->required();
      cmd->add_option("C", C, "vertex C")->required();
    }
  };

  auto* classify = app.add_subcommand("classify", "classify a query point against a triangle");
  add_common(classify, true);
  classify->add_option("M", M, "query point")->required();

  auto* coeffs = app.add_subcommand("coeffs", "recover curve coefficients for a triangle");
  add_common(coeffs, true);

  auto* render = app.add_subcommand("render", "rasterize the sign regions to an image file");
  add_common(render, true);
  render->add_option("--grid", ropt.grid, "pixel grid as WxH")->capture_default_str();
  render->add_option("--window", ropt.window, "world window as x0,x1,y0,y1 (default: bbox +75%)");
  render->add_option("--out", ropt.out, "output image path")->required();
  render->add_option("--format", ropt.format, "ppm or svg")->capture_default_str();
  render->add_flag("--great-circles", ropt.great_circles,
                   "overlay great-circle images through the lifted vertex pairs (chordal)");

  auto* verify = app.add_subcommand("verify", "run the property-verification suites");
  add_common(verify, false);
  verify->add_option("--suite", suite, "axioms|ptolemy|identities|theorems|all")
      ->capture_default_str();
  verify->add_option("--samples", samples, "sample count")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (classify->parsed()) return run_classify(argv_echo, A, B, C, M, opt);
    if (coeffs->parsed()) return run_coeffs(argv_echo, A, B, C, opt);
    if (render->parsed()) return run_render(argv_echo, A, B, C, opt, ropt);
    return run_verify(argv_echo, suite, samples, opt);
  } catch (const mpp::IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const mpp::IllConditionedSample& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::logic_error& e) {
    // includes ParseError, DegenerateTriangle preconditions, bad grids
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

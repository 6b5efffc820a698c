// wideball: command line front end for wide r-ball bodies on the sphere.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input.

#include "wideball/ball_body.hpp"
#include "wideball/disk_polygon.hpp"
#include "wideball/harness.hpp"
#include "wideball/json_io.hpp"
#include "wideball/proof_replay.hpp"
#include "wideball/svg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace wideball;
namespace fs = std::filesystem;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Globals {
  std::uint64_t seed = 0;
  double tol = -1.0;
  std::string out;
  std::string format = "json";
};

double effective_tol(const Globals& g) { return g.tol > 0.0 ? g.tol : tolerance_from_env(); }

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    io::write_text(g.out, text.back() == '\n' ? text : text + '\n');
  }
}

std::string csv_row(const std::vector<std::pair<std::string, double>>& kv) {
  std::ostringstream head, row;
  row.precision(17);
  for (std::size_t i = 0; i < kv.size(); ++i) {
    head << (i ? "," : "") << kv[i].first;
    row << (i ? "," : "") << kv[i].second;
  }
  return head.str() + "\n" + row.str() + "\n";
}

int cmd_gen(const Globals& g, int dim, double radius, std::size_t n, const std::string& shape) {
  GeneratorSet X = shape == "reuleaux"  ? (dim == 2 ? reuleaux_triangle(radius)
                                                    : throw InputError("reuleaux shape needs --dim 2"))
                   : shape == "simplex" ? regular_simplex(dim, radius).generators()
                   : shape == "random"  ? sample_wide_generator(dim, radius, n, g.seed)
                                        : throw InputError("unknown shape \"" + shape + "\"");
  emit(g, io::to_json(X).dump(2));
  return 0;
}

int cmd_metrics(const Globals& g, const std::string& input, std::size_t hull_support) {
  const GeneratorSet X = io::read_generator_set(input);
  const Inscribed in = inradius_nd(X);
  std::vector<std::pair<std::string, double>> kv;
  io::Json j;
  if (X.dim() == 2) {
    const ArcBoundary b = boundary_structure(X);
    const BodyMetrics m = body_metrics(X, g.seed, hull_support);
    j["metrics"] = io::to_json(m);
    j["width"] = io::to_json(width_2d(X, b));
    j["boundary"] = io::to_json(b);
    kv = {{"area", m.area},
          {"perimeter", m.perimeter},
          {"width", m.width},
          {"inradius", m.inradius},
          {"circumradius_of_generators", m.circumradius_of_generators},
          {"diameter_of_dual_of_dual", m.diameter_of_dual_of_dual}};
  } else {
    const WidthEstimate w = width_nd(X, 3000, g.seed);
    const VolumeEstimate v = mc_volume(X, 200000, g.seed);
    const RHull h = r_hull(X, hull_support, g.seed);
    j["metrics"] = {{"inradius", in.radius},
                    {"circumradius_of_generators", X.radius() - in.radius},
                    {"jung_circumradius", jung_circumradius(X.dim(), X.radius())},
                    {"diameter_of_dual_of_dual", h.hull_diameter}};
    j["width"] = io::to_json(w);
    j["volume"] = io::to_json(v);
    kv = {{"volume", v.mean},
          {"volume_std_error", v.std_error},
          {"width", w.value},
          {"inradius", in.radius},
          {"circumradius_of_generators", X.radius() - in.radius},
          {"diameter_of_dual_of_dual", h.hull_diameter}};
  }
  j["incenter"] = io::to_json(in.center);
  emit(g, g.format == "csv" ? csv_row(kv) : j.dump(2));
  return 0;
}

int cmd_verify(const Globals& g, const std::string& config_path, const std::vector<int>& dims,
               const std::vector<double>& radii, std::size_t instances, std::size_t threads, bool no_runtime,
               bool seed_given) {
  CampaignConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw InputError("cannot open " + config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = campaign_config_from_json(ss.str());
  }
  if (!dims.empty()) cfg.dims = dims;
  if (!radii.empty()) cfg.radii = radii;
  if (instances > 0) cfg.instances = instances;
  if (threads > 0) cfg.threads = threads;
  if (seed_given) cfg.seed = g.seed;
  cfg.tol = effective_tol(g);

  const fs::path dir = g.out.empty() ? fs::path("campaign") : fs::path(g.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message());

  const CampaignResult res = run_campaign(cfg);
  io::write_text((dir / "reports.jsonl").string(), reports_to_jsonl(res.reports, !no_runtime));
  io::write_text((dir / "summary.csv").string(), summary_to_csv(res.cells));
  io::write_text((dir / "instances.csv").string(), reports_to_csv(res.reports));

  std::size_t failed = 0;
  for (const auto& r : res.reports) {
    if (r.pass()) continue;
    ++failed;
    std::cerr << "FAILED instance " << r.instance_id << " (d=" << r.d << ", r=" << r.r << ", seed=" << r.seed << "):";
    for (const auto& c : r.checks) {
      if (!c.pass) std::cerr << ' ' << c.name << " [lhs=" << c.lhs << ", rhs=" << c.rhs << "]";
    }
    std::cerr << "\n  generators: " << io::to_json(r.generators).dump() << '\n';
  }
  std::cout << summary_to_csv(res.cells);
  std::cout << res.reports.size() << " instances, " << failed << " failed; reports in " << dir.string() << '\n';
  return res.all_pass() ? 0 : kExitFail;
}

int cmd_replay(const Globals& g, const std::string& input, const std::string& svg_path) {
  const GeneratorSet X = io::read_generator_set(input);
  if (X.dim() != 2) throw InputError("replay-proof needs generators on S^2");
  ReplayOptions ro;
  ro.tol = effective_tol(g);
  ro.seed = g.seed;
  const ReplayTrace tr = replay_proof(X, ro);
  emit(g, io::to_json(tr).dump(2));
  if (!svg_path.empty()) {
    SvgScene scene;
    scene.generators = X;
    scene.boundary = boundary_structure(X);
    scene.title = "cap domain";
    const ContactReport rep = classify_contact_report(X, ro.tol);
    if (tr.branch == "triangle_contact") {
      scene.cap_domains.push_back(build_cap_domain(X, rep));
    }
    for (std::size_t i = 0; i < tr.contacts.size(); ++i) {
      scene.points.emplace_back("a" + std::to_string(i + 1), tr.contacts[i].coords());
    }
    scene.points.emplace_back("c", tr.center.coords());
    io::write_text(svg_path, render_svg(scene));
  }
  return tr.all_pass ? 0 : kExitFail;
}

int cmd_schramm(const Globals& g, int dmin, int dmax) {
  if (dmax < dmin) throw InputError("--dim-max is below --dim-min");
  io::Json rows = io::Json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "d,bound,reference,bound_below_reference\n";
  bool ok = true;
  for (int d = dmin; d <= dmax; ++d) {
    const SchrammBound s = schramm_bound(d);
    const bool below = s.bound < s.reference;
    ok = ok && below;
    io::Json row = io::to_json(s);
    row["d"] = d;
    row["bound_below_reference"] = below;
    rows.push_back(row);
    csv << d << ',' << s.bound << ',' << s.reference << ',' << (below ? "true" : "false") << '\n';
  }
  emit(g, g.format == "csv" ? csv.str() : rows.dump(2));
  return ok ? 0 : kExitFail;
}

int cmd_render(const Globals& g, const std::string& input, const std::string& projection, bool caps,
               bool symmetric, bool lune) {
  const GeneratorSet X = io::read_generator_set(input);
  if (X.dim() != 2) throw InputError("render needs generators on S^2");
  SvgScene scene;
  scene.generators = X;
  scene.boundary = boundary_structure(X);
  if (caps || symmetric) {
    const ContactReport rep = classify_contact_report(X, effective_tol(g));
    if (rep.early_exit || rep.kind != ContactKind::TriangleContact) {
      throw InputError("caps need a triangle contact; this instance takes the isodiametric branch");
    }
    if (caps) scene.cap_domains.push_back(build_cap_domain(X, rep));
    if (symmetric) {
      // Place the symmetric domain on the instance's incenter for comparison.
      CapDomain sym = build_symmetric_cap_domain(rep.inradius, X.radius());
      const Vec pole = Vec::Unit(3, 2);
      const Vec c = rep.center.coords();
      const Eigen::Vector3d axis = Eigen::Vector3d(pole[0], pole[1], pole[2]).cross(Eigen::Vector3d(c[0], c[1], c[2]));
      Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
      if (axis.norm() > 1e-15) {
        R = Eigen::AngleAxisd(std::atan2(axis.norm(), pole.dot(c)), axis.normalized()).toRotationMatrix();
      } else if (pole.dot(c) < 0.0) {
        R = Eigen::AngleAxisd(kPi, Eigen::Vector3d::UnitX()).toRotationMatrix();
      }
      auto rot = [&](const UnitVector& u) { return UnitVector(Vec(R * Eigen::Vector3d(u[0], u[1], u[2]))); };
      CapDomain moved{BallSpec(rot(sym.incircle.center()), sym.incircle.radius()), {}, sym.kind, sym.radius};
      for (const auto& cap : sym.caps) {
        moved.caps.push_back({rot(cap.apex), {rot(cap.arc_centers[0]), rot(cap.arc_centers[1])},
                              {rot(cap.tangency[0]), rot(cap.tangency[1])}, cap.area});
      }
      scene.cap_domains.push_back(moved);
    }
  }
  if (lune) {
    const Width2d w = width_2d(X, *scene.boundary);
    scene.lune = w.witness;
  }
  SvgOptions so;
  so.projection = projection_from_string(projection);
  if (g.out.empty()) throw InputError("render needs --out <file.svg>");
  io::write_text(g.out, render_svg(scene, so));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wideball: wide r-ball bodies on the sphere"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "random seed");
  app.add_option("--tol", g.tol, "geometric tolerance (default: SPHERE_TOL or 1e-9)")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output file (directory for verify)");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  int dim = 2;
  double radius = 0.7;
  std::size_t n_points = 8;
  std::string shape = "random";
  auto* gen = app.add_subcommand("gen", "generate a wide generator set");
  gen->add_option("--dim", dim, "sphere dimension d")->check(CLI::Range(2, 64));
  gen->add_option("--radius", radius, "ball radius r in (0, pi/2]");
  gen->add_option("--points", n_points, "number of points to try to place");
  gen->add_option("--shape", shape, "random, reuleaux or simplex")->check(CLI::IsMember({"random", "reuleaux", "simplex"}));

  std::string input;
  std::size_t hull_support = 400;
  auto* metrics = app.add_subcommand("metrics", "area, width, inradius and hull diameter of one body");
  metrics->add_option("input", input, "generator set JSON")->required();
  metrics->add_option("--hull-support", hull_support, "boundary samples for the dual-of-dual hull");

  std::string config_path;
  std::vector<int> dims;
  std::vector<double> radii;
  std::size_t instances = 0, threads = 0;
  bool no_runtime = false;
  auto* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->add_option("--config", config_path, "campaign config JSON");
  verify->add_option("--dims", dims, "dimensions");
  verify->add_option("--radii", radii, "radii");
  verify->add_option("--instances", instances, "instances per cell");
  verify->add_option("--threads", threads, "worker threads");
  verify->add_flag("--no-runtime", no_runtime, "omit runtime_ms from reports");

  std::string svg_path;
  auto* replay = app.add_subcommand("replay-proof", "replay the cap-domain argument on one instance");
  replay->add_option("input", input, "generator set JSON (d = 2)")->required();
  replay->add_option("--svg", svg_path, "also draw the construction");

  int dmin = 3, dmax = 10;
  auto* schramm = app.add_subcommand("schramm", "closed-form volume bound against the simplex body");
  schramm->add_option("--dim-min", dmin, "first dimension")->check(CLI::Range(3, 200));
  schramm->add_option("--dim-max", dmax, "last dimension")->check(CLI::Range(3, 200));

  std::string projection = "orthographic";
  bool caps = false, symmetric = false, lune = false;
  auto* render = app.add_subcommand("render", "draw a disk domain as SVG");
  render->add_option("input", input, "generator set JSON (d = 2)")->required();
  render->add_option("--projection", projection, "orthographic or stereographic");
  render->add_flag("--caps", caps, "draw the instance cap domain");
  render->add_flag("--symmetric", symmetric, "draw the symmetric cap domain");
  render->add_flag("--lune", lune, "draw the width-attaining lune");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    g.tol = effective_tol(g);  // a bad SPHERE_TOL is an input error for every command
    if (*gen) return cmd_gen(g, dim, radius, n_points, shape);
    if (*metrics) return cmd_metrics(g, input, hull_support);
    if (*verify) return cmd_verify(g, config_path, dims, radii, instances, threads, no_runtime, seed_opt->count() > 0);
    if (*replay) return cmd_replay(g, input, svg_path);
    if (*schramm) return cmd_schramm(g, dmin, dmax);
    if (*render) return cmd_render(g, input, projection, caps, symmetric, lune);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitInput;
}

// Python bindings. Plain values cross as numpy arrays; composite results cross
// as JSON text and are decoded in the package's __init__.py.

#include "wideball/ball_body.hpp"
#include "wideball/disk_polygon.hpp"
#include "wideball/harness.hpp"
#include "wideball/json_io.hpp"
#include "wideball/proof_replay.hpp"
#include "wideball/svg.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace wideball;

namespace {

Mat as_rows(const std::vector<UnitVector>& pts) {
  if (pts.empty()) return Mat(0, 0);
  Mat m(static_cast<Eigen::Index>(pts.size()), pts.front().coords().size());
  for (std::size_t i = 0; i < pts.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = pts[i].coords().transpose();
  return m;
}

GeneratorSet from_rows(double radius, const Mat& rows) {
  if (rows.rows() == 0) throw InputError("need at least one point");
  std::vector<UnitVector> pts;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) pts.emplace_back(Vec(rows.row(i).transpose()));
  return GeneratorSet(static_cast<int>(rows.cols()) - 1, radius, pts);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "wide r-ball bodies on the sphere";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<StructuralError>(m, "StructuralError", PyExc_RuntimeError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
  py::register_exception<VerificationFailure>(m, "VerificationFailure", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);

  py::class_<GeneratorSet>(m, "GeneratorSet")
      .def(py::init(&from_rows), py::arg("radius"), py::arg("points"),
           "Points as rows of a (n, d+1) array; rows are normalized.")
      .def_property_readonly("dim", &GeneratorSet::dim)
      .def_property_readonly("radius", &GeneratorSet::radius)
      .def_property_readonly("points", [](const GeneratorSet& X) { return as_rows(X.points()); })
      .def("__len__", &GeneratorSet::size)
      .def("to_json", [](const GeneratorSet& X) { return io::to_json(X).dump(); })
      .def_static("from_json", [](const std::string& s) {
        try {
          return io::generator_set_from_json(io::Json::parse(s));
        } catch (const nlohmann::json::exception& e) {
          throw InputError(e.what());
        }
      })
      .def("__repr__", [](const GeneratorSet& X) {
        return "GeneratorSet(dim=" + std::to_string(X.dim()) + ", radius=" + std::to_string(X.radius()) +
               ", n=" + std::to_string(X.size()) + ")";
      });

  m.def("spherical_distance", [](const Vec& a, const Vec& b) { return spherical_distance(UnitVector(a), UnitVector(b)); });
  m.def("diameter", [](const Mat& rows) {
    std::vector<UnitVector> pts;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) pts.emplace_back(Vec(rows.row(i).transpose()));
    return diameter(pts);
  });
  m.def("dual_membership", [](const Vec& y, const GeneratorSet& X, double tol) { return dual_membership(UnitVector(y), X, tol); },
        py::arg("y"), py::arg("X"), py::arg("tol") = kAlgTol);
  m.def("sample_uniform", [](int d, std::size_t n, std::uint64_t seed) { return as_rows(sample_uniform(d, n, seed)); });
  m.def("sample_wide_generator", &sample_wide_generator, py::arg("d"), py::arg("r"), py::arg("n_points"), py::arg("seed"));
  m.def("reuleaux_triangle", &reuleaux_triangle, py::arg("r"));
  m.def("regular_simplex", [](int d, double r) {
    const SimplexBody s = regular_simplex(d, r);
    return GeneratorSet(d, r, s.vertices);
  }, py::arg("d"), py::arg("r"));

  m.def("area", [](const GeneratorSet& X) { return area(boundary_structure(X)); });
  m.def("perimeter", [](const GeneratorSet& X) { return perimeter(boundary_structure(X)); });
  m.def("boundary_json", [](const GeneratorSet& X) { return io::to_json(boundary_structure(X)).dump(); });
  m.def("width_2d_json", [](const GeneratorSet& X) { return io::to_json(width_2d(X)).dump(); });
  m.def("body_metrics_json", [](const GeneratorSet& X, std::uint64_t seed) { return io::to_json(body_metrics(X, seed)).dump(); },
        py::arg("X"), py::arg("seed") = 0);

  m.def("circumradius", [](const GeneratorSet& X) {
    const Circumball c = circumradius_minimax(X.points());
    return py::make_tuple(c.radius, Vec(c.center.coords()));
  });
  m.def("inradius", [](const GeneratorSet& X) {
    const Inscribed in = inradius_nd(X);
    return py::make_tuple(in.radius, Vec(in.center.coords()));
  });
  m.def("jung_circumradius", &jung_circumradius, py::arg("d"), py::arg("r"));
  m.def("r_hull_diameter", [](const GeneratorSet& X, std::size_t n_support, std::uint64_t seed) {
    return r_hull(X, n_support, seed).hull_diameter;
  }, py::arg("X"), py::arg("n_support") = 400, py::arg("seed") = 0);
  m.def("width_nd_json", [](const GeneratorSet& X, std::size_t budget, std::uint64_t seed) {
    return io::to_json(width_nd(X, budget, seed)).dump();
  }, py::arg("X"), py::arg("budget") = 1500, py::arg("seed") = 0);
  m.def("mc_volume_json", [](const GeneratorSet& X, std::size_t n, std::uint64_t seed) {
    return io::to_json(mc_volume(X, n, seed)).dump();
  }, py::arg("X"), py::arg("n"), py::arg("seed") = 0);
  m.def("schramm_bound", [](int d) {
    const SchrammBound s = schramm_bound(d);
    return py::make_tuple(s.bound, s.reference);
  });

  m.def("classify_contact", [](const GeneratorSet& X, double tol) { return std::string(to_string(classify_contact(X, tol))); },
        py::arg("X"), py::arg("tol") = kGeoTol);
  m.def("replay_proof_json", [](const GeneratorSet& X, std::uint64_t seed) {
    ReplayOptions o;
    o.seed = seed;
    return io::to_json(replay_proof(X, o)).dump();
  }, py::arg("X"), py::arg("seed") = 0);
  m.def("cauchy_arm_profile_json", [](double r, std::size_t samples) { return io::to_json(cauchy_arm_profile(r, samples)).dump(); },
        py::arg("r"), py::arg("samples") = 100);

  m.def("oracle_area_mc", [](const GeneratorSet& X, std::size_t n, std::uint64_t seed) {
    const OracleResult o = oracle_area_mc(X, n, seed);
    return py::make_tuple(o.value, o.error_bound);
  }, py::arg("X"), py::arg("n"), py::arg("seed") = 0);
  m.def("run_campaign_jsonl", [](const std::string& config_json, bool include_runtime) {
    const CampaignResult res = run_campaign(campaign_config_from_json(config_json));
    return py::make_tuple(reports_to_jsonl(res.reports, include_runtime), summary_to_csv(res.cells), res.all_pass());
  }, py::arg("config_json"), py::arg("include_runtime") = false);

  m.def("render_svg", [](const GeneratorSet& X, const std::string& projection, bool caps) {
    SvgScene scene;
    scene.generators = X;
    scene.boundary = boundary_structure(X);
    if (caps) scene.cap_domains.push_back(build_cap_domain(X));
    SvgOptions o;
    o.projection = projection_from_string(projection);
    return render_svg(scene, o);
  }, py::arg("X"), py::arg("projection") = "orthographic", py::arg("caps") = false);
}

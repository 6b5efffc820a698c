#include "wideball/json_io.hpp"

#include <fstream>
#include <sstream>

namespace wideball::io {

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json to_json(const UnitVector& v) { return to_json(v.coords()); }

Json to_json(const GeneratorSet& X) {
  Json pts = Json::array();
  for (const auto& p : X.points()) pts.push_back(to_json(p));
  return Json{{"dim", X.dim()}, {"radius", X.radius()}, {"points", pts}};
}

Json to_json(const ArcBoundary& b) {
  Json arcs = Json::array();
  for (const auto& a : b.arcs) {
    arcs.push_back({{"center", to_json(a.center)},
                    {"from", to_json(a.from)},
                    {"to", to_json(a.to)},
                    {"span", a.span},
                    {"generator", a.generator}});
  }
  Json j{{"radius", b.radius}, {"arcs", arcs}};
  if (b.full_ball) {
    j["full_ball"] = {{"center", to_json(b.full_ball->center())}, {"radius", b.full_ball->radius()}};
  }
  j["interior_point"] = to_json(b.interior_point);
  j["redundant_generators"] = b.redundant_generators;
  j["warnings"] = b.warnings;
  return j;
}

Json to_json(const BodyMetrics& m) {
  return Json{{"area", m.area},
              {"perimeter", m.perimeter},
              {"width", m.width},
              {"inradius", m.inradius},
              {"circumradius_of_generators", m.circumradius_of_generators},
              {"diameter_of_dual_of_dual", m.diameter_of_dual_of_dual}};
}

namespace {
Json lune_json(const std::optional<Lune>& l) {
  if (!l) return nullptr;
  return Json{{"u", to_json(l->u())}, {"v", to_json(l->v())}, {"width", l->width()}};
}
}  // namespace

Json to_json(const Width2d& w) { return Json{{"value", w.value}, {"witness", lune_json(w.witness)}}; }

Json to_json(const WidthEstimate& w) {
  return Json{{"value", w.value},
              {"witness", lune_json(w.witness)},
              {"certified_lower", w.certified_lower},
              {"witness_centers_in_body", w.witness_centers_in_body},
              {"iterations", w.iterations},
              {"seed", w.seed}};
}

Json to_json(const VolumeEstimate& v) {
  return Json{{"mean", v.mean},
              {"std_error", v.std_error},
              {"n_samples", v.n_samples},
              {"seed", v.seed},
              {"n_streams", v.n_streams},
              {"proposal_volume", v.proposal_volume}};
}

Json to_json(const SchrammBound& s) { return Json{{"bound", s.bound}, {"reference", s.reference}}; }

Json to_json(const ArmProfile& a) {
  Json pos = Json::array(), cl = Json::array();
  for (const auto& s : a.samples) {
    pos.push_back(s.arc_position);
    cl.push_back(s.clearance);
  }
  return Json{{"radius", a.radius},
              {"inradius", a.inradius},
              {"strictly_increasing", a.strictly_increasing},
              {"max_identity_gap", a.max_identity_gap},
              {"arc_position", pos},
              {"clearance", cl}};
}

Json to_json(const ReplayTrace& t) {
  Json contacts = Json::array(), apexes = Json::array(), checks = Json::array();
  for (const auto& c : t.contacts) contacts.push_back(to_json(c));
  for (const auto& a : t.apexes) apexes.push_back(to_json(a));
  for (const auto& c : t.checks) {
    Json cj{{"name", c.name}, {"pass", c.pass}, {"lhs", c.lhs}, {"rhs", c.rhs}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  return Json{{"radius", t.radius},
              {"branch", t.branch},
              {"inradius", t.inradius},
              {"center", to_json(t.center)},
              {"contacts", contacts},
              {"apexes", apexes},
              {"areas",
               {{"body", t.area_body},
                {"cap_domain", t.area_cap_domain},
                {"symmetric_cap_domain", t.area_symmetric},
                {"reuleaux", t.area_reuleaux},
                {"reuleaux_minus_symmetric", t.area_reuleaux_minus_symmetric},
                {"symmetric_minus_reuleaux", t.area_symmetric_minus_reuleaux}}},
              {"checks", checks},
              {"all_pass", t.all_pass}};
}

GeneratorSet generator_set_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw InputError("generator set must be a JSON object");
    for (const char* key : {"dim", "radius", "points"}) {
      if (!j.contains(key)) throw InputError(std::string("generator set is missing \"") + key + "\"");
    }
    const int d = j.at("dim").get<int>();
    const double r = j.at("radius").get<double>();
    std::vector<UnitVector> pts;
    for (const auto& p : j.at("points")) {
      const auto coords = p.get<std::vector<double>>();
      if (static_cast<int>(coords.size()) != d + 1) {
        throw InputError("point has " + std::to_string(coords.size()) + " coordinates, expected " + std::to_string(d + 1));
      }
      pts.emplace_back(Eigen::Map<const Vec>(coords.data(), static_cast<Eigen::Index>(coords.size())));
    }
    return GeneratorSet(d, r, std::move(pts));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed generator set: ") + e.what());
  }
}

GeneratorSet read_generator_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return generator_set_from_json(j);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed for " + path);
}

}  // namespace wideball::io

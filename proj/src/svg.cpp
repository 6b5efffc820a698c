#include "wideball/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace wideball {

namespace {

struct P2 {
  double x, y;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  // Avoid "-0.000" so identical geometry prints identically.
  if (std::string(buf) == "-0.000") return "0.000";
  return buf;
}

void require_s2(const Vec& v, const char* what) {
  if (v.size() != 3) throw InputError(std::string("render: ") + what + " is not on S^2");
}

std::vector<Vec> sample_arc(const CircularArc& a) {
  const auto n = static_cast<std::size_t>(std::ceil(std::abs(a.sweep) * 48.0 / kPi)) + 2;
  std::vector<Vec> out;
  for (std::size_t k = 0; k <= n; ++k) out.push_back(a.at(static_cast<double>(k) / n));
  return out;
}

std::vector<Vec> circle_points(const Vec& c, double radius) {
  const Vec start = geo::walk(c, geo::tangent_basis(c).col(0), radius);
  return sample_arc({c, radius, start, start, kTwoPi});
}

class Canvas {
 public:
  Canvas(const Vec& pole, Projection proj) : pole_(pole), basis_(geo::tangent_basis(pole)), proj_(proj) {}

  P2 project(const Vec& y) const {
    const double a = y.dot(basis_.col(0)), b = y.dot(basis_.col(1));
    if (proj_ == Projection::Orthographic) return {a, -b};
    const double den = std::max(1.0 + y.dot(pole_), 1e-6);
    return {a / den, -b / den};
  }
  bool visible(const Vec& y) const { return proj_ == Projection::Stereographic || y.dot(pole_) >= -1e-12; }

  void fit(const std::vector<Vec>& pts, double size) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& y : pts) {
      if (!visible(y)) continue;
      const P2 p = project(y);
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    if (x0 > x1) x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
    const double span = std::max({x1 - x0, y1 - y0, 1e-6});
    scale_ = 0.84 * size / span;
    ox_ = 0.5 * size - scale_ * 0.5 * (x0 + x1);
    oy_ = 0.5 * size - scale_ * 0.5 * (y0 + y1);
  }

  std::string xy(const Vec& y) const {
    const P2 p = project(y);
    return fmt(ox_ + scale_ * p.x) + "," + fmt(oy_ + scale_ * p.y);
  }
  // x="..." y="..." style attributes with the given names.
  std::string attrs(const Vec& y, const char* xn, const char* yn) const {
    const P2 p = project(y);
    return std::string(xn) + "=\"" + fmt(ox_ + scale_ * p.x) + "\" " + yn + "=\"" + fmt(oy_ + scale_ * p.y) + "\"";
  }

  std::string polyline(const std::vector<Vec>& pts) const {
    std::string s;
    bool pen = false;
    for (const auto& y : pts) {
      if (!visible(y)) {
        pen = false;
        continue;
      }
      s += (pen ? " L" : (s.empty() ? "M" : " M")) + xy(y);
      pen = true;
    }
    return s;
  }

 private:
  Vec pole_;
  Mat basis_;
  Projection proj_;
  double scale_ = 1.0, ox_ = 0.0, oy_ = 0.0;
};

}  // namespace

Projection projection_from_string(const std::string& name) {
  if (name == "orthographic" || name == "ortho") return Projection::Orthographic;
  if (name == "stereographic" || name == "stereo") return Projection::Stereographic;
  throw InputError("unknown projection \"" + name + "\" (use orthographic or stereographic)");
}

std::string render_svg(const SvgScene& scene, const SvgOptions& opts) {
  std::vector<Vec> extent;
  if (scene.generators) {
    if (scene.generators->dim() != 2) throw InputError("render: generators are not on S^2");
    for (const auto& p : scene.generators->points()) extent.push_back(p.coords());
  }
  std::vector<std::vector<Vec>> boundary_arcs;
  if (scene.boundary) {
    for (const auto& a : scene.boundary->path()) {
      require_s2(a.center, "boundary");
      boundary_arcs.push_back(sample_arc(a));
      extent.insert(extent.end(), boundary_arcs.back().begin(), boundary_arcs.back().end());
    }
  }
  struct CapDraw {
    std::string kind;
    std::vector<Vec> incircle;
    std::vector<std::vector<Vec>> outlines;
    std::vector<Vec> apexes;
  };
  std::vector<CapDraw> caps;
  for (const auto& dom : scene.cap_domains) {
    require_s2(dom.incircle.center().coords(), "cap domain");
    CapDraw cd{dom.kind, circle_points(dom.incircle.center().coords(), dom.incircle.radius()), {}, {}};
    for (const auto& cap : dom.caps) {
      std::vector<Vec> pts;
      const auto arcs = cap.outline(dom.incircle, dom.radius);
      // Only the two radius-r arcs; the incircle part is drawn once.
      for (const auto& y : sample_arc(arcs[0])) pts.push_back(y);
      std::vector<Vec> back = sample_arc(arcs[2]);
      cd.outlines.push_back(pts);
      cd.outlines.push_back(back);
      cd.apexes.push_back(cap.apex.coords());
      extent.insert(extent.end(), pts.begin(), pts.end());
      extent.insert(extent.end(), back.begin(), back.end());
    }
    extent.insert(extent.end(), cd.incircle.begin(), cd.incircle.end());
    caps.push_back(std::move(cd));
  }
  for (const auto& [label, p] : scene.points) {
    require_s2(p, "point");
    extent.push_back(p.normalized());
  }
  if (scene.lune) require_s2(scene.lune->u().coords(), "lune");
  if (extent.empty()) throw InputError("render: nothing to draw");

  Vec pole;
  if (opts.view_pole) {
    require_s2(*opts.view_pole, "view pole");
    pole = opts.view_pole->normalized();
  } else if (scene.boundary) {
    pole = scene.boundary->interior_point.coords();
  } else if (!caps.empty()) {
    pole = scene.cap_domains.front().incircle.center().coords();
  } else {
    pole = extent.front();
  }
  Canvas cv(pole, opts.projection);
  cv.fit(extent, opts.size);

  std::ostringstream os;
  const std::string sz = fmt(opts.size);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << sz << "\" height=\"" << sz << "\" viewBox=\"0 0 "
     << sz << ' ' << sz << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!scene.title.empty()) os << "<title>" << scene.title << "</title>\n";

  if (scene.lune) {
    os << "<g id=\"lune\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"6 4\">\n";
    for (const auto* c : {&scene.lune->u(), &scene.lune->v()}) {
      os << "  <path d=\"" << cv.polyline(circle_points(c->coords(), kHalfPi)) << "\"/>\n";
    }
    os << "</g>\n";
  }
  if (scene.boundary) {
    os << "<g id=\"boundary\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\">\n";
    for (const auto& arc : boundary_arcs) os << "  <path d=\"" << cv.polyline(arc) << "\"/>\n";
    os << "</g>\n";
  }
  for (std::size_t k = 0; k < caps.size(); ++k) {
    const auto& cd = caps[k];
    const char* colour = cd.kind == "C*" ? "#c0392b" : "#2e8b57";
    os << "<g id=\"caps-" << k << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\">\n";
    os << "  <path id=\"incircle-" << k << "\" d=\"" << cv.polyline(cd.incircle) << "\"/>\n";
    for (const auto& o : cd.outlines) os << "  <path d=\"" << cv.polyline(o) << "\"/>\n";
    for (std::size_t i = 0; i < cd.apexes.size(); ++i) {
      os << "  <text " << cv.attrs(cd.apexes[i], "x", "y") << " font-size=\"12\" fill=\"" << colour
         << "\" stroke=\"none\">" << (cd.kind == "C*" ? "c" : "q") << i + 1 << "</text>\n";
    }
    os << "</g>\n";
  }
  if (scene.generators) {
    os << "<g id=\"generators\" fill=\"black\">\n";
    const auto& pts = scene.generators->points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!cv.visible(pts[i].coords())) continue;
      os << "  <circle " << cv.attrs(pts[i].coords(), "cx", "cy") << " r=\"3\"/>\n";
    }
    os << "</g>\n";
  }
  if (!scene.points.empty()) {
    os << "<g id=\"points\" fill=\"#7b3fa0\" font-size=\"12\">\n";
    for (const auto& [label, y] : scene.points) {
      const Vec u = y.normalized();
      if (!cv.visible(u)) continue;
      os << "  <circle " << cv.attrs(u, "cx", "cy") << " r=\"2.5\"/>";
      os << "<text " << cv.attrs(u, "x", "y") << " dx=\"4\" dy=\"-4\">" << label << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace wideball

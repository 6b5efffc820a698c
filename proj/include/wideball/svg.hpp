#pragma once

// Deterministic SVG figures of disk domains, cap domains and lunes on S^2.

#include "wideball/disk_polygon.hpp"
#include "wideball/proof_replay.hpp"
#include "wideball/sphere_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wideball {

enum class Projection { Orthographic, Stereographic };

Projection projection_from_string(const std::string& name);

struct SvgScene {
  std::optional<GeneratorSet> generators;
  std::optional<ArcBoundary> boundary;
  std::vector<CapDomain> cap_domains;
  std::optional<Lune> lune;
  /// Extra labeled points (contacts, apexes, ...).
  std::vector<std::pair<std::string, Vec>> points;
  std::string title;
};

struct SvgOptions {
  Projection projection = Projection::Orthographic;
  /// Center of the view; defaults to the boundary's interior point, else the first generator.
  std::optional<Vec> view_pole;
  double size = 640.0;
};

/// Throws InputError when any object is not on S^2 or the scene is empty.
std::string render_svg(const SvgScene& scene, const SvgOptions& opts = {});

}  // namespace wideball

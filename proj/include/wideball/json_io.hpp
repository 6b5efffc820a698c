#pragma once

// JSON encoding of the library's value types.

#include "wideball/ball_body.hpp"
#include "wideball/disk_polygon.hpp"
#include "wideball/proof_replay.hpp"
#include "wideball/sphere_core.hpp"

#include <json.hpp>

#include <string>

namespace wideball::io {

using Json = nlohmann::ordered_json;

Json to_json(const Vec& v);
Json to_json(const UnitVector& v);
Json to_json(const GeneratorSet& X);
Json to_json(const ArcBoundary& b);
Json to_json(const BodyMetrics& m);
Json to_json(const Width2d& w);
Json to_json(const WidthEstimate& w);
Json to_json(const VolumeEstimate& v);
Json to_json(const SchrammBound& s);
Json to_json(const ArmProfile& a);
Json to_json(const ReplayTrace& t);

/// {"dim": d, "radius": r, "points": [[...], ...]}; points are normalized.
/// Throws InputError on malformed documents.
GeneratorSet generator_set_from_json(const Json& j);
GeneratorSet read_generator_set(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace wideball::io

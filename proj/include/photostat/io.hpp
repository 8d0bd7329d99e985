#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "photostat/mcsim.hpp"
#include "photostat/model.hpp"

namespace photostat::io {

using nlohmann::json;

// Shortest decimal that round-trips.
std::string format_double(double v);

json params_to_json(const SourceParams& p);
SourceParams params_from_json(const json& j);
std::string engine_tag(const DistRequest& r);
json meta_to_json(const CurveMeta& m);

// "# meta: <json>" line, then "T,value[,stderr]" rows.
void write_curve_csv(std::ostream& os, const Curve& c);
std::string curve_csv(const Curve& c);
// Same layout with a caller-supplied meta object.
std::string curve_csv(const Curve& c, const json& meta);
Curve read_curve_csv(std::istream& is, const std::string& name);
json curve_to_json(const Curve& c);

// One timestamp per line; '#' lines carry duration, source, seed and config.
void write_events(std::ostream& os, const EventRecord& rec);
std::string events_text(const EventRecord& rec);
// Without a duration comment the last timestamp is taken as the duration.
EventRecord read_events(std::istream& is, const std::string& name);
EventRecord read_events_file(const std::string& path);

// Writes through a temporary sibling and renames it into place.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace photostat::io

#include "photostat/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "photostat/errors.hpp"

namespace photostat::io {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double& out) {
  std::string t = trim(s);
  if (t.empty()) return false;
  const char* b = t.data();
  const char* e = t.data() + t.size();
  if (*b == '+') ++b;
  auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e && std::isfinite(out);
}

std::string where(const std::string& name, std::size_t line) { return name + ":" + std::to_string(line) + ": "; }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json params_to_json(const SourceParams& p) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Coherent>) return {{"flux", s.flux}};
        else if constexpr (std::is_same_v<T, Thermal>) return {{"gamma", s.gamma}, {"nbar", s.nbar}};
        else if constexpr (std::is_same_v<T, Dpo>) return {{"gamma", s.gamma}, {"nbar", s.nbar}};
        else return {{"beta", s.beta}, {"rabi", s.rabi}};
      },
      p);
}

SourceParams params_from_json(const json& j) {
  try {
    SourceKind k = parse_source_kind(j.at("source").get<std::string>());
    const json& q = j.at("params");
    switch (k) {
      case SourceKind::Coherent: return Coherent{q.at("flux").get<double>()};
      case SourceKind::Thermal: return Thermal{q.at("gamma").get<double>(), q.at("nbar").get<double>()};
      case SourceKind::Dpo: return Dpo{q.at("gamma").get<double>(), q.at("nbar").get<double>()};
      case SourceKind::Rf: return Rf{q.at("beta").get<double>(), q.at("rabi").get<double>()};
    }
  } catch (const json::exception& e) {
    throw DataFormatError(std::string("malformed source description: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataFormatError(e.what());
  }
  throw DataFormatError("unknown source");
}

std::string engine_tag(const DistRequest& r) {
  switch (r.engine) {
    case EngineKind::Exact: return "exact";
    case EngineKind::ClosedForm: return "closed:" + r.regime;
    case EngineKind::MonteCarlo: return "mc";
  }
  return "?";
}

json meta_to_json(const CurveMeta& m) {
  return {{"source", source_name(m.params)},
          {"params", params_to_json(m.params)},
          {"eta", m.detector.eta()},
          {"kind", kind_tag(m.request.kind)},
          {"n", m.request.n},
          {"engine", engine_tag(m.request)},
          {"seed", m.seed},
          {"config", m.config}};
}

namespace {

void write_rows(std::ostream& os, const Curve& c, const json& meta) {
  if (c.grid.size() != c.values.size()) throw ConfigError("curve grid and values differ in length");
  os << "# meta: " << meta.dump() << "\n";
  os << (c.has_errors() ? "T,value,stderr\n" : "T,value\n");
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    os << format_double(c.grid[i]) << ',' << format_double(c.values[i]);
    if (c.has_errors()) os << ',' << format_double(c.stderr_values[i]);
    os << '\n';
  }
}

}  // namespace

void write_curve_csv(std::ostream& os, const Curve& c) { write_rows(os, c, meta_to_json(c.meta)); }

std::string curve_csv(const Curve& c) {
  std::ostringstream os;
  write_curve_csv(os, c);
  return os.str();
}

std::string curve_csv(const Curve& c, const json& meta) {
  std::ostringstream os;
  write_rows(os, c, meta);
  return os.str();
}

Curve read_curve_csv(std::istream& is, const std::string& name) {
  Curve c;
  std::string line;
  std::size_t ln = 0;
  bool have_meta = false, have_header = false, with_err = false;
  while (std::getline(is, line)) {
    ++ln;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (!have_meta) {
      const std::string tag = "# meta:";
      if (t.rfind(tag, 0) != 0) throw DataFormatError(where(name, ln) + "expected '# meta:' line");
      json m;
      try {
        m = json::parse(t.substr(tag.size()));
      } catch (const json::exception& e) {
        throw DataFormatError(where(name, ln) + "invalid meta JSON: " + e.what());
      }
      c.meta.params = params_from_json(m);
      c.meta.detector = Detector(m.value("eta", 1.0));
      c.meta.request.kind = parse_kind_tag(m.value("kind", std::string("w")));
      c.meta.request.n = m.value("n", 1);
      std::string eng = m.value("engine", std::string("exact"));
      if (eng == "exact") c.meta.request.engine = EngineKind::Exact;
      else if (eng == "mc") c.meta.request.engine = EngineKind::MonteCarlo;
      else if (eng.rfind("closed:", 0) == 0) {
        c.meta.request.engine = EngineKind::ClosedForm;
        c.meta.request.regime = eng.substr(7);
      } else throw DataFormatError(where(name, ln) + "unknown engine '" + eng + "'");
      c.meta.seed = m.value("seed", std::uint64_t{0});
      c.meta.config = m.value("config", std::string());
      have_meta = true;
      continue;
    }
    if (!have_header) {
      if (t == "T,value") with_err = false;
      else if (t == "T,value,stderr") with_err = true;
      else throw DataFormatError(where(name, ln) + "expected column header");
      have_header = true;
      continue;
    }
    std::stringstream ss(t);
    std::string f;
    std::vector<double> cols;
    while (std::getline(ss, f, ',')) {
      double v;
      if (!parse_double(f, v)) throw DataFormatError(where(name, ln) + "invalid number '" + f + "'");
      cols.push_back(v);
    }
    if (cols.size() != (with_err ? 3u : 2u)) throw DataFormatError(where(name, ln) + "wrong column count");
    if (!c.grid.empty() && !(cols[0] > c.grid.back()))
      throw DataFormatError(where(name, ln) + "grid not strictly ascending");
    c.grid.push_back(cols[0]);
    c.values.push_back(cols[1]);
    if (with_err) c.stderr_values.push_back(cols[2]);
  }
  if (!have_header) throw DataFormatError(name + ": missing meta or header line");
  return c;
}

json curve_to_json(const Curve& c) {
  json j = meta_to_json(c.meta);
  j["T"] = c.grid;
  j["values"] = c.values;
  if (c.has_errors()) j["stderr"] = c.stderr_values;
  return j;
}

void write_events(std::ostream& os, const EventRecord& rec) {
  os << "# duration: " << format_double(rec.duration) << "\n";
  os << "# source: " << rec.source << "\n";
  os << "# seed: " << rec.seed << "\n";
  if (!rec.config.empty()) os << "# config: " << rec.config << "\n";
  for (double t : rec.times) os << format_double(t) << "\n";
}

std::string events_text(const EventRecord& rec) {
  std::ostringstream os;
  write_events(os, rec);
  return os.str();
}

EventRecord read_events(std::istream& is, const std::string& name) {
  EventRecord rec;
  std::string line;
  std::size_t ln = 0;
  bool have_duration = false;
  while (std::getline(is, line)) {
    ++ln;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      std::string body = trim(t.substr(1));
      auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      std::string key = trim(body.substr(0, colon)), val = trim(body.substr(colon + 1));
      if (key == "duration") {
        if (!parse_double(val, rec.duration) || !(rec.duration > 0.0))
          throw DataFormatError(where(name, ln) + "invalid duration '" + val + "'");
        have_duration = true;
      } else if (key == "source") {
        rec.source = val;
      } else if (key == "seed") {
        try {
          rec.seed = std::stoull(val);
        } catch (const std::exception&) {
          throw DataFormatError(where(name, ln) + "invalid seed '" + val + "'");
        }
      } else if (key == "config") {
        rec.config = val;
      }
      continue;
    }
    double v;
    if (!parse_double(t, v)) throw DataFormatError(where(name, ln) + "invalid timestamp '" + t + "'");
    if (v < 0.0) throw DataFormatError(where(name, ln) + "negative timestamp");
    if (!rec.times.empty() && !(v > rec.times.back()))
      throw DataFormatError(where(name, ln) + "timestamp not strictly ascending");
    rec.times.push_back(v);
  }
  if (!have_duration) {
    if (rec.times.empty()) throw DataFormatError(name + ": no timestamps and no duration");
    rec.duration = rec.times.back();
  }
  if (!rec.times.empty() && rec.times.back() > rec.duration)
    throw DataFormatError(name + ": timestamp beyond declared duration");
  return rec;
}

EventRecord read_events_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataFormatError("cannot open " + path);
  return read_events(in, path);
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace photostat::io

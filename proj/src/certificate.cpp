#include <htact/certificate.hpp>

#include <fstream>
#include <sstream>

namespace htact {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

json point_to_json(Point const& p) { return json{{"g", p.g}, {"level", p.level}}; }

Point point_from_json(json const& j) { return {j.at("g").get<Code>(), j.at("level").get<std::int64_t>()}; }

namespace {

json points(std::vector<Point> const& v) {
  json a = json::array();
  for (auto const& p : v) a.push_back(point_to_json(p));
  return a;
}

std::vector<Point> points_from(json const& j, char const* key) {
  std::vector<Point> out;
  if (j.contains(key))
    for (auto const& p : j.at(key)) out.push_back(point_from_json(p));
  return out;
}

json step_to_json(Step const& s) {
  json j;
  j["index"] = s.index;
  j["kind"] = std::string(to_string(s.kind));
  if (s.kind == Step::Kind::Transitivity) {
    j["x"] = points(s.x);
    j["y"] = points(s.y);
    if (!s.deferred) j["mover"] = s.mover;
  } else {
    j["element"] = s.element;
    j["witness"] = point_to_json(s.witness);
  }
  json w = json::object();
  for (auto const& [name, code] : s.witnesses) w[name] = code;
  j["witnesses"] = w;
  j["fresh"] = points(s.fresh);
  json batch = json::array();
  for (auto const& [a, b] : s.batch) batch.push_back(json::array({point_to_json(a), point_to_json(b)}));
  j["batch"] = batch;
  j["protect"] = points(s.protect);
  j["deferred"] = s.deferred;
  if (s.deferred) j["diagnostic"] = s.diagnostic;
  return j;
}

Step step_from_json(json const& j) {
  Step s;
  s.index = j.at("index").get<std::int64_t>();
  auto kind = j.at("kind").get<std::string>();
  if (kind == "transitivity") {
    s.kind = Step::Kind::Transitivity;
  } else if (kind == "faithfulness") {
    s.kind = Step::Kind::Faithfulness;
  } else {
    throw Error("certificate: unknown step kind '" + kind + "'");
  }
  s.x = points_from(j, "x");
  s.y = points_from(j, "y");
  if (j.contains("mover")) s.mover = j.at("mover").get<Code>();
  if (j.contains("element")) s.element = j.at("element").get<Code>();
  if (j.contains("witness")) s.witness = point_from_json(j.at("witness"));
  if (j.contains("witnesses"))
    for (auto const& [name, code] : j.at("witnesses").items()) s.witnesses.emplace_back(name, code.get<Code>());
  s.fresh = points_from(j, "fresh");
  if (j.contains("batch"))
    for (auto const& pair : j.at("batch")) s.batch.emplace_back(point_from_json(pair.at(0)), point_from_json(pair.at(1)));
  s.protect = points_from(j, "protect");
  s.deferred = j.value("deferred", false);
  s.diagnostic = j.value("diagnostic", std::string());
  return s;
}

}  // namespace

json to_json(Certificate const& cert) {
  json j;
  j["format"] = std::string(kCertificateFormat);
  j["problem_hash"] = cert.problem_hash;
  j["mode"] = std::string(to_string(cert.mode));
  j["group"] = cert.group;
  j["budget"] = {{"steps", cert.budget.steps},
                 {"witness_radius", cert.budget.witness_radius},
                 {"wall_ms", static_cast<std::int64_t>(cert.budget.wall_seconds * 1000)}};
  json steps = json::array();
  for (auto const& s : cert.steps) steps.push_back(step_to_json(s));
  j["steps"] = steps;
  json commits = json::array();
  for (auto const& c : cert.commits)
    commits.push_back({{"src", point_to_json(c.src)}, {"dst", point_to_json(c.dst)}, {"e0", c.e0}});
  j["state"] = {{"commits", commits}, {"frozen", cert.frozen}, {"ceiling", cert.ceiling}};
  j["summary"] = {{"discharged", cert.steps.size() - cert.deferred()}, {"deferred", cert.deferred()}};
  return j;
}

Certificate certificate_from_json(json const& j) {
  try {
    if (j.value("format", std::string()) != kCertificateFormat) throw Error("certificate: unknown format tag");
    Certificate c;
    c.problem_hash = j.at("problem_hash").get<std::uint64_t>();
    auto mode = j.at("mode").get<std::string>();
    if (mode != "hnn" && mode != "amalgam") throw Error("certificate: unknown mode '" + mode + "'");
    c.mode = mode == "hnn" ? Mode::Hnn : Mode::Amalgam;
    c.group = j.value("group", std::string());
    auto const& b = j.at("budget");
    c.budget.steps = b.at("steps").get<std::int64_t>();
    c.budget.witness_radius = b.at("witness_radius").get<int>();
    c.budget.wall_seconds = static_cast<double>(b.value("wall_ms", std::int64_t{0})) / 1000.0;
    for (auto const& s : j.at("steps")) c.steps.push_back(step_from_json(s));
    auto const& st = j.at("state");
    for (auto const& cm : st.at("commits"))
      c.commits.push_back({point_from_json(cm.at("src")), point_from_json(cm.at("dst")), cm.at("e0").get<Code>()});
    c.frozen = st.at("frozen").get<std::vector<std::int64_t>>();
    c.ceiling = st.at("ceiling").get<std::int64_t>();
    return c;
  } catch (json::exception const& e) {
    throw Error(std::string("certificate: malformed document: ") + e.what());
  }
}

std::string emit_certificate(Certificate const& cert) { return to_json(cert).dump(2) + "\n"; }

void write_certificate(Certificate const& cert, std::filesystem::path const& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << emit_certificate(cert);
  if (!out) throw Error("write failed for " + path.string());
}

Certificate load_certificate(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (json::parse_error const& e) {
    throw Error("certificate " + path.string() + ": " + e.what());
  }
  return certificate_from_json(j);
}

}  // namespace htact

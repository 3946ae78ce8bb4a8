#include <htact/problem.hpp>

#include <htact/certificate.hpp>
#include <htact/groups.hpp>

#include <cctype>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace htact {

namespace {

std::string issue_text(std::vector<SchemaIssue> const& issues) {
  std::string s;
  for (auto const& i : issues) {
    if (!s.empty()) s += "\n";
    s += "line " + std::to_string(i.line) + ": " + (i.path.empty() ? "" : i.path + ": ") + i.message;
  }
  return s;
}

std::string escape(std::string const& key) {
  std::string out;
  for (char c : key) out += c == '~' ? "~0" : c == '/' ? "~1" : std::string(1, c);
  return out;
}

// Maps JSON pointers to the line where their value starts. Runs only on text
// that already parsed, so it can be lenient.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text) : text_(text) {
    skip();
    if (pos_ < text_.size()) value("");
  }

  int line(std::string const& path) const {
    for (std::string p = path;; p = p.substr(0, p.rfind('/'))) {
      auto it = lines_.find(p);
      if (it != lines_.end()) return it->second;
      if (p.empty()) return 1;
    }
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string() {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      if (pos_ < text_.size()) out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  void value(std::string const& path) {
    skip();
    lines_.emplace(path, line_);
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (c == '{' || c == '[') {
      ++pos_;
      for (std::size_t i = 0;; ++i) {
        skip();
        if (pos_ >= text_.size()) return;
        if (text_[pos_] == '}' || text_[pos_] == ']') {
          ++pos_;
          return;
        }
        if (text_[pos_] == ',') {
          ++pos_;
          skip();
        }
        if (c == '{') {
          auto key = string();
          skip();
          ++pos_;  // ':'
          value(path + "/" + escape(key));
        } else {
          value(path + "/" + std::to_string(i));
        }
      }
    }
    if (c == '"') {
      string();
      return;
    }
    while (pos_ < text_.size() && !std::strchr(",]} \t\r\n", text_[pos_])) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

using json = nlohmann::json;

// A schema failure inside one definition; collected and resumed at the next one.
struct Abort {};

class Parser {
 public:
  Parser(json const& doc, LineIndex const& lines) : doc_(doc), lines_(lines) {}

  ProblemFile run() {
    if (!doc_.is_object()) fail("", "top level must be an object");
    if (!doc_.contains("groups")) fail("", "missing groups");
    for (auto const& [key, _] : doc_.items()) {
      static std::set<std::string> const known{"groups", "embeddings", "graph", "task", "audits",
                                               "actions", "bounds", "budget"};
      if (!known.contains(key)) issue("/" + key, "unknown section");
    }
    attempt([&] {
      for (auto const& [name, _] : object("/groups").items()) attempt([&] { group(name); });
    });
    if (doc_.contains("embeddings")) {
      attempt([&] {
        for (auto const& [name, _] : object("/embeddings").items()) attempt([&] { embedding(name); });
      });
    }
    attempt([&] { bounds(); });
    attempt([&] { budget(); });
    if (doc_.contains("graph")) attempt([&] { graph(); });
    if (doc_.contains("task")) attempt([&] { task(); });
    if (doc_.contains("audits")) attempt([&] { audits(); });
    if (doc_.contains("actions")) attempt([&] { actions(); });
    if (!issues_.empty()) throw ProblemError(issues_);
    out_.normalized = norm_;
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(std::string const& path, std::string const& msg) {
    issue(path, msg);
    throw Abort{};
  }
  void issue(std::string const& path, std::string const& msg) { issues_.push_back({lines_.line(path), path, msg}); }

  template <class Fn>
  void attempt(Fn&& fn) {
    try {
      fn();
    } catch (Abort const&) {
    }
  }

  json const& at(std::string const& path) {
    json::json_pointer ptr(path);
    if (!doc_.contains(ptr)) fail(path, "missing");
    return doc_.at(ptr);
  }
  json const& object(std::string const& path) {
    auto const& j = at(path);
    if (!j.is_object()) fail(path, "expected an object");
    return j;
  }
  json const& array(std::string const& path) {
    auto const& j = at(path);
    if (!j.is_array()) fail(path, "expected an array");
    return j;
  }
  std::string str(std::string const& path) {
    auto const& j = at(path);
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }
  std::int64_t integer(std::string const& path, std::int64_t lo, std::int64_t hi) {
    auto const& j = at(path);
    if (!j.is_number_integer()) fail(path, "expected an integer");
    auto v = j.get<std::int64_t>();
    if (v < lo || v > hi) fail(path, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }
  std::int64_t integer_or(std::string const& path, std::int64_t fallback, std::int64_t lo, std::int64_t hi) {
    return doc_.contains(json::json_pointer(path)) ? integer(path, lo, hi) : fallback;
  }

  template <class Fn>
  auto guarded(std::string const& path, Fn&& fn) {
    try {
      return fn();
    } catch (Abort const&) {
      throw;
    } catch (std::exception const& e) {
      fail(path, e.what());
    }
  }

  static std::string ptr(std::string const& base, std::string const& key) {
    return base + "/" + escape(key);
  }

  // `from` is the path of the reference, used when the name does not resolve.
  GroupPtr group(std::string const& name, std::string const& from = "") {
    if (auto it = out_.groups.find(name); it != out_.groups.end()) return it->second;
    auto const path = ptr("/groups", name);
    if (!doc_.contains(json::json_pointer("/groups")) || !doc_["groups"].contains(name))
      fail(from.empty() ? path : from, "unresolved group " + name);
    if (!resolving_.insert(path).second) fail(path, "cyclic definition");
    auto const& def = object(path);
    auto kind = str(path + "/kind");
    json n{{"kind", kind}};
    std::shared_ptr<Group> g;
    if (kind == "trivial") {
      g = make_trivial();
    } else if (kind == "cyclic") {
      auto order = integer(path + "/order", 1, 1 << 16);
      g = make_cyclic(static_cast<int>(order));
      n["order"] = order;
    } else if (kind == "finite") {
      auto table = guarded(path + "/table", [&] { return at(path + "/table").get<std::vector<std::vector<int>>>(); });
      auto gens = guarded(path + "/generators", [&] { return at(path + "/generators").get<std::vector<int>>(); });
      g = guarded(path, [&] { return std::make_shared<FiniteGroup>(table, gens); });
      n["table"] = table;
      n["generators"] = gens;
    } else if (kind == "free" || kind == "free_abelian") {
      auto rank = integer(path + "/rank", 1, 64);
      if (kind == "free")
        g = std::make_shared<FreeGroup>(static_cast<int>(rank));
      else
        g = std::make_shared<FreeAbelianGroup>(static_cast<int>(rank));
      n["rank"] = rank;
    } else if (kind == "semidirect") {
      auto qname = str(path + "/quotient");
      auto q = std::dynamic_pointer_cast<FiniteGroup const>(group(qname, path + "/quotient"));
      if (!q) fail(path + "/quotient", "quotient must be a finite group");
      auto rank = integer(path + "/rank", 1, 16);
      auto action = guarded(path + "/action", [&] { return at(path + "/action").get<std::vector<IntMatrix>>(); });
      g = guarded(path, [&] { return std::make_shared<SemidirectGroup>(q, static_cast<int>(rank), action); });
      n["quotient"] = qname;
      n["rank"] = rank;
      n["action"] = action;
    } else if (kind == "amalgam") {
      auto l = str(path + "/left");
      auto r = str(path + "/right");
      auto el = embedding(l, path + "/left");
      auto er = embedding(r, path + "/right");
      g = guarded(path, [&] { return std::make_shared<AmalgamGroup>(el, er); });
      n["left"] = l;
      n["right"] = r;
    } else if (kind == "hnn") {
      auto a = str(path + "/alpha");
      auto b = str(path + "/beta");
      std::string stable = def.contains("stable") ? str(path + "/stable") : "t";
      auto ea = embedding(a, path + "/alpha");
      auto eb = embedding(b, path + "/beta");
      g = guarded(path, [&] { return std::make_shared<HnnGroup>(ea, eb, stable); });
      n["alpha"] = a;
      n["beta"] = b;
      n["stable"] = stable;
    } else {
      fail(path + "/kind", "unknown group kind " + kind);
    }
    if (def.contains("labels")) {
      auto labels = guarded(path + "/labels", [&] { return at(path + "/labels").get<std::vector<std::string>>(); });
      if (labels.size() != g->num_generators())
        fail(path + "/labels", "expected " + std::to_string(g->num_generators()) + " labels");
      guarded(path + "/labels", [&] {
        g->set_labels(labels);
        return 0;
      });
    }
    for (auto const& [key, _] : def.items()) {
      if (key != "kind" && key != "labels" && !n.contains(key) && !(kind == "hnn" && key == "stable"))
        issue(ptr(path, key), "unknown field");
    }
    g->set_name(name);
    n["labels"] = g->labels();
    norm_["groups"][name] = n;
    resolving_.erase(path);
    out_.groups.emplace(name, g);
    return g;
  }

  EmbeddingPtr embedding(std::string const& name, std::string const& from = "") {
    if (auto it = out_.embeddings.find(name); it != out_.embeddings.end()) return it->second;
    auto const path = ptr("/embeddings", name);
    if (!doc_.contains(json::json_pointer("/embeddings")) || !doc_["embeddings"].contains(name))
      fail(from.empty() ? path : from, "unresolved embedding " + name);
    if (!resolving_.insert(path).second) fail(path, "cyclic definition");
    object(path);
    auto sname = str(path + "/source");
    auto tname = str(path + "/target");
    auto src = group(sname, path + "/source");
    auto tgt = group(tname, path + "/target");
    auto const& imgs = array(path + "/images");
    if (imgs.size() != src->num_generators())
      fail(path + "/images", "expected " + std::to_string(src->num_generators()) + " images");
    std::vector<Code> images;
    json words = json::array();
    for (std::size_t i = 0; i < imgs.size(); ++i) {
      auto p = path + "/images/" + std::to_string(i);
      auto w = str(p);
      images.push_back(guarded(p, [&] { return tgt->parse(w); }));
      words.push_back(tgt->format(images.back()));
    }
    auto inj = static_cast<int>(integer_or(path + "/injectivity_bound", 4, 0, 12));
    auto search = static_cast<int>(integer_or(path + "/search_bound", 8, 1, 64));
    auto e = guarded(path, [&] { return std::make_shared<Embedding>(name, src, tgt, images, inj, search); });
    norm_["embeddings"][name] = {{"source", sname}, {"target", tname}, {"images", words},
                                 {"injectivity_bound", inj}, {"search_bound", search}};
    resolving_.erase(path);
    out_.embeddings.emplace(name, e);
    return e;
  }

  void bounds() {
    auto& b = out_.bounds;
    if (doc_.contains("bounds")) {
      object("/bounds");
      b.tuple_max = static_cast<int>(integer_or("/bounds/tuple_max", b.tuple_max, 1, 8));
      b.point_radius = static_cast<int>(integer_or("/bounds/point_radius", b.point_radius, 0, 16));
      b.witness_radius = static_cast<int>(integer_or("/bounds/witness_radius", b.witness_radius, 0, 64));
      b.covering_max = static_cast<int>(integer_or("/bounds/covering_max", b.covering_max, 0, 16));
      guarded("/bounds", [&] {
        b.validate();
        return 0;
      });
    }
    norm_["bounds"] = {{"tuple_max", b.tuple_max}, {"point_radius", b.point_radius},
                       {"witness_radius", b.witness_radius}, {"covering_max", b.covering_max}};
  }

  void budget() {
    auto& b = out_.budget;
    if (doc_.contains("budget")) {
      object("/budget");
      b.steps = integer_or("/budget/steps", b.steps, 0, 1 << 20);
      b.witness_radius = static_cast<int>(integer_or("/budget/witness_radius", b.witness_radius, 1, 1 << 20));
      b.witness_candidates = static_cast<std::size_t>(
          integer_or("/budget/witness_candidates", static_cast<std::int64_t>(b.witness_candidates), 1, 1LL << 32));
      b.wall_seconds = static_cast<double>(integer_or("/budget/wall_ms", 0, 0, 1LL << 40)) / 1000.0;
    }
    norm_["budget"] = {{"steps", b.steps},
                       {"witness_radius", b.witness_radius},
                       {"witness_candidates", b.witness_candidates},
                       {"wall_ms", static_cast<std::int64_t>(b.wall_seconds * 1000.0 + 0.5)}};
  }

  void graph() {
    object("/graph");
    GraphOfGroups g;
    json nv = json::array(), ne = json::array();
    auto const& vs = array("/graph/vertices");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      auto p = "/graph/vertices/" + std::to_string(i);
      auto id = str(p + "/id");
      auto gname = str(p + "/group");
      auto grp = group(gname, p + "/group");
      guarded(p, [&] {
        g.add_vertex(id, grp);
        return 0;
      });
      nv.push_back({{"id", id}, {"group", gname}});
    }
    if (doc_["graph"].contains("edges")) {
      auto const& es = array("/graph/edges");
      for (std::size_t i = 0; i < es.size(); ++i) {
        auto p = "/graph/edges/" + std::to_string(i);
        GraphEdge e;
        e.id = str(p + "/id");
        e.source = str(p + "/source");
        e.range = str(p + "/range");
        auto gname = str(p + "/group");
        auto sname = str(p + "/s");
        auto rname = str(p + "/r");
        e.group = group(gname, p + "/group");
        e.s = embedding(sname, p + "/s");
        e.r = embedding(rname, p + "/r");
        guarded(p, [&] {
          g.add_edge(e);
          return 0;
        });
        ne.push_back({{"id", e.id}, {"source", e.source}, {"range", e.range}, {"group", gname}, {"s", sname}, {"r", rname}});
      }
    }
    if (doc_["graph"].contains("base")) {
      auto base = str("/graph/base");
      guarded("/graph/base", [&] {
        g.set_base(base);
        return 0;
      });
    }
    if (g.vertices().empty()) fail("/graph/vertices", "no vertices");
    if (!g.connected()) fail("/graph", "graph is not connected");
    norm_["graph"] = {{"vertices", nv}, {"edges", ne}, {"base", g.base()}};
    out_.graph = std::move(g);
  }

  void task() {
    object("/task");
    auto name = str("/task/group");
    auto g = group(name, "/task/group");
    if (g->kind() != GroupKind::Amalgam && g->kind() != GroupKind::HNN)
      fail("/task/group", "task group must be an amalgam or hnn");
    out_.task_group = name;
    norm_["task"] = {{"group", name}};
  }

  void audits() {
    auto const& a = array("/audits");
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto name = str("/audits/" + std::to_string(i));
      embedding(name, "/audits/" + std::to_string(i));
      out_.audits.push_back(name);
    }
    norm_["audits"] = out_.audits;
  }

  void actions() {
    auto const& a = array("/actions");
    json n = json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto p = "/actions/" + std::to_string(i);
      ActionSpec s;
      s.kind = str(p + "/kind");
      json one{{"kind", s.kind}};
      if (s.kind == "finitary-symmetric") {
        s.zone = static_cast<int>(integer_or(p + "/zone", 5, 1, 8));
        one["zone"] = s.zone;
      } else if (s.kind == "cosets") {
        s.embedding = str(p + "/embedding");
        embedding(s.embedding, p + "/embedding");
        one["embedding"] = s.embedding;
      } else if (s.kind != "translation") {
        fail(p + "/kind", "unknown action kind " + s.kind);
      }
      out_.actions.push_back(s);
      n.push_back(one);
    }
    norm_["actions"] = n;
  }

  json const& doc_;
  LineIndex const& lines_;
  std::vector<SchemaIssue> issues_;
  std::set<std::string> resolving_;
  ProblemFile out_;
  json norm_ = json::object();
};

}  // namespace

ProblemError::ProblemError(std::vector<SchemaIssue> issues)
    : Error(issue_text(issues)), issues_(std::move(issues)) {}

GroupPtr const& ProblemFile::group(std::string const& name) const {
  auto it = groups.find(name);
  if (it == groups.end()) throw Error("unknown group " + name);
  return it->second;
}

EmbeddingPtr const& ProblemFile::embedding(std::string const& name) const {
  auto it = embeddings.find(name);
  if (it == embeddings.end()) throw Error("unknown embedding " + name);
  return it->second;
}

std::uint64_t ProblemFile::hash() const { return fnv1a64(print_problem(*this)); }

ProblemFile parse_problem_text(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw ProblemError({{1, "", "missing groups"}});
  json doc;
  try {
    doc = json::parse(text);
  } catch (json::parse_error const& e) {
    int line = 1;
    for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i) line += text[i] == '\n';
    throw ProblemError({{line, "", e.what()}});
  }
  LineIndex lines(text);
  return Parser(doc, lines).run();
}

ProblemFile parse_problem(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str());
}

std::string print_problem(ProblemFile const& p) { return p.normalized.dump(2) + "\n"; }

std::unique_ptr<PointAction> make_action(ProblemFile const& p, ActionSpec const& spec) {
  if (spec.kind == "finitary-symmetric") return std::make_unique<FinitarySymmetricAction>(spec.zone);
  if (spec.kind == "translation") return std::make_unique<TranslationAction>();
  if (spec.kind == "cosets") return std::make_unique<CosetAction>(p.embedding(spec.embedding));
  throw Error("unknown action kind " + spec.kind);
}

BuildTarget build_target(ProblemFile const& p, std::string const& edge) {
  BuildTarget t;
  if (p.graph) {
    if (p.graph->edges().empty()) throw Error("graph has no edges to reduce");
    auto id = edge.empty() ? select_edge(*p.graph) : edge;
    t.reduced = reduce_edge(*p.graph, id);
    t.space = t.reduced->orbit_space();
    t.name = t.reduced->pi1.group->name();
    return t;
  }
  if (!edge.empty()) throw Error("--edge needs a graph");
  if (p.task_group.empty()) throw Error("problem has neither a graph nor a task group");
  auto const& g = p.group(p.task_group);
  if (auto h = std::dynamic_pointer_cast<HnnGroup const>(g))
    t.space = std::make_shared<OrbitSpace>(h);
  else if (auto a = std::dynamic_pointer_cast<AmalgamGroup const>(g))
    t.space = std::make_shared<OrbitSpace>(a);
  else
    throw Error("task group must be an amalgam or hnn");
  t.name = p.task_group;
  return t;
}

}  // namespace htact

#include "hypoly/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hypoly/error.hpp"

namespace hypoly {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string graph_section(const PlanarGraph& g) {
  std::ostringstream os;
  os << "{\n    \"vertex_count\": " << g.vertex_count() << ",\n    \"edges\": [";
  for (int e = 0; e < g.edge_count(); ++e)
    os << (e ? ", " : "") << "[" << g.edge(e)[0] << ", " << g.edge(e)[1] << "]";
  os << "],\n    \"rotation\": [";
  for (int v = 0; v < g.vertex_count(); ++v) {
    os << (v ? ", " : "") << "[";
    const auto rot = g.rotation(v);
    for (std::size_t i = 0; i < rot.size(); ++i) os << (i ? ", " : "") << rot[i];
    os << "]";
  }
  os << "]";
  if (g.marked_edge()) os << ",\n    \"marked_edge\": " << *g.marked_edge();
  os << "\n  }";
  return os.str();
}

PlanarGraph parse_graph(const json& j) {
  try {
    const int n = j.at("vertex_count").get<int>();
    auto edges = j.at("edges").get<std::vector<std::array<int, 2>>>();
    auto rot = j.at("rotation").get<std::vector<std::vector<int>>>();
    std::optional<int> marked;
    if (j.contains("marked_edge") && !j["marked_edge"].is_null()) marked = j["marked_edge"].get<int>();
    return PlanarGraph(n, std::move(edges), std::move(rot), marked);
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, std::string("graph section: ") + e.what());
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, e.what());
  }
}

}  // namespace

std::string graph_to_text(const PlanarGraph& g) { return "{\n  \"graph\": " + graph_section(g) + "\n}\n"; }

std::string realization_to_text(const Realization& r) {
  std::ostringstream os;
  os << "{\n  \"graph\": " << graph_section(r.graph()) << ",\n  \"planes\": [\n";
  for (std::size_t f = 0; f < r.planes().size(); ++f) {
    const auto& u = r.planes()[f].u;
    os << "    [" << fmt17(u(0)) << ", " << fmt17(u(1)) << ", " << fmt17(u(2)) << ", " << fmt17(u(3)) << "]"
       << (f + 1 < r.planes().size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

PlanarGraph graph_from_text(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("graph")) throw Error(Errc::Parse, "missing graph section");
  return parse_graph(j["graph"]);
}

Realization realization_from_text(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("graph") || !j.contains("planes")) throw Error(Errc::Parse, "missing graph or planes section");
  PlanarGraph g = parse_graph(j["graph"]);
  std::vector<Plane> planes;
  try {
    for (const auto& p : j["planes"]) {
      const auto v = p.get<std::vector<double>>();
      if (v.size() != 4) throw Error(Errc::Parse, "plane entries need four coordinates");
      planes.push_back({Vec4(v[0], v[1], v[2], v[3])});
    }
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, std::string("planes section: ") + e.what());
  }
  if (static_cast<int>(planes.size()) != g.face_count())
    throw Error(Errc::Parse, "planes section has " + std::to_string(planes.size()) + " entries for " +
                                 std::to_string(g.face_count()) + " faces");
  return Realization(std::move(g), std::move(planes));
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::Config, "cannot open " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(Errc::Config, "cannot write " + p.string());
  out << text;
}

void save_realization(const std::filesystem::path& p, const Realization& r) { write_file(p, realization_to_text(r)); }
Realization load_realization(const std::filesystem::path& p) { return realization_from_text(read_file(p)); }
PlanarGraph load_graph(const std::filesystem::path& p) { return graph_from_text(read_file(p)); }

}  // namespace hypoly

#include "raag/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace raag {

using nlohmann::json;

SimpleGraph parse_graph_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed graph file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument(
        "malformed graph file: need an object with 'vertices' and 'edges'");

  std::vector<std::string> vertices;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_string())
      throw std::invalid_argument("malformed graph file: vertices must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw std::invalid_argument(
          "malformed graph file: each edge must be a 2-element list of vertex names");
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return SimpleGraph(vertices, edges);
}

std::string graph_to_json(const SimpleGraph& g) {
  json j;
  j["vertices"] = json::array();
  for (const auto& n : g.vertex_names()) j["vertices"].push_back(n);
  j["edges"] = json::array();
  for (auto [v, w] : g.edges())
    j["edges"].push_back(json::array({g.name(v), g.name(w)}));
  return j.dump(2) + "\n";
}

SimpleGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph_json(ss.str());
}

void save_graph_file(const SimpleGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write graph file: " + path);
  out << graph_to_json(g);
}

std::string graph_to_dot(const SimpleGraph& g) {
  std::ostringstream os;
  os << "graph G {\n";
  for (const auto& n : g.vertex_names()) os << "  \"" << n << "\";\n";
  for (auto [v, w] : g.edges())
    os << "  \"" << g.name(v) << "\" -- \"" << g.name(w) << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace raag

#pragma once

#include <string>

#include "raag/graph.hpp"

namespace raag {

/// Graph file format shared by all tools: a JSON document with a `vertices`
/// list of strings and an `edges` list of 2-element lists.
SimpleGraph parse_graph_json(const std::string& text);
std::string graph_to_json(const SimpleGraph& g);

SimpleGraph load_graph_file(const std::string& path);
void save_graph_file(const SimpleGraph& g, const std::string& path);

/// DOT text for visualization.
std::string graph_to_dot(const SimpleGraph& g);

}  // namespace raag

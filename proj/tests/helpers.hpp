#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "lpakit/graph.hpp"

namespace lpakit::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(LPAKIT_FIXTURES) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline WeightedGraph load(const std::string& name) {
  return WeightedGraph::parse(slurp(fixture_path(name)));
}

} // namespace lpakit::testing

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpakit {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

class parse_error : public std::runtime_error {
public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Operation not defined for this class of graph (e.g. normal form outside
// polycephaly graphs, element arithmetic over weighted graphs).
class unsupported_error : public std::runtime_error {
public:
  explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

struct SEdge {
  std::string name;
  VertexId src = 0;
  VertexId dst = 0;
  std::uint64_t weight = 1; // number of parallel instances in E^1
};

// Finite directed graph with structured (weighted) edges.  Vertex and edge
// order is declaration order; names are unique across both kinds.
class WeightedGraph {
public:
  WeightedGraph() = default;
  WeightedGraph(std::vector<std::string> vertices, std::vector<SEdge> sedges);

  static WeightedGraph parse(const std::string& text);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t sedge_count() const { return sedges_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<SEdge>& sedges() const { return sedges_; }
  const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
  const SEdge& sedge(EdgeId e) const { return sedges_.at(e); }

  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<EdgeId> find_sedge(const std::string& name) const;

  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_.at(v); }

  bool is_sink(VertexId v) const { return out_.at(v).empty(); }
  std::vector<VertexId> sinks() const;
  bool is_unweighted() const; // all structured weights equal 1
  // Max weight emitted by v (the n_v of the monoid relation); 0 for sinks.
  std::uint64_t max_out_weight(VertexId v) const;

  // Connectivity of the underlying undirected graph.
  bool is_connected() const;
  void require_connected() const; // throws std::invalid_argument

  std::string to_text() const; // canonical file form
  std::string to_json() const;

  bool operator==(const WeightedGraph& o) const;
  bool operator!=(const WeightedGraph& o) const { return !(*this == o); }

private:
  std::vector<std::string> vertices_;
  std::vector<SEdge> sedges_;
  std::map<std::string, VertexId> vertex_index_;
  std::map<std::string, EdgeId> edge_index_;
  std::vector<std::vector<EdgeId>> out_, in_;

  void build_index();
};

using GraphPtr = std::shared_ptr<const WeightedGraph>;

inline GraphPtr make_graph(WeightedGraph g) {
  return std::make_shared<const WeightedGraph>(std::move(g));
}

// Reverses every structured edge; involutive.
WeightedGraph opposite(const WeightedGraph& g);

// Merges parallel unweighted edges into one structured edge carrying the
// class size as weight (Def. of the associated weighted graph).
WeightedGraph associated_weighted(const WeightedGraph& g);

// Attaches a disjoint copy of `e` (acyclic, unweighted, unique sink) to every
// vertex of `f`, identifying the copy's sink with that vertex.
WeightedGraph tensor_attach(const WeightedGraph& e, const WeightedGraph& f);

} // namespace lpakit

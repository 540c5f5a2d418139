#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace moocd {

using NodeId = std::int32_t;

/// Raised for inputs that parse but violate a structural contract
/// (self-loops, unknown nodes, infeasible genes, mismatched sizes).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for malformed text input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable undirected, unweighted simple graph in compressed adjacency form.
///
/// Node ids are dense 0..n-1. Each node keeps the label it was loaded with so
/// results can be reported in the caller's vocabulary.
class Graph {
 public:
  using Edge = std::pair<NodeId, NodeId>;

  Graph() = default;

  /// Builds from an edge list over nodes 0..node_count-1. Reversed and repeated
  /// pairs are collapsed; self-loops and out-of-range ids throw ValidationError.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges,
                          std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  /// Unique edges with u < v, in ascending order.
  std::vector<Edge> edges() const;

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<NodeId> find(const std::string& label) const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

/// Hard assignment of every node to one community.
///
/// Community ids are renumbered on construction in order of each community's
/// smallest member, so two Partitions compare equal exactly when they describe
/// the same set partition.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::span<const NodeId> assignment);
  explicit Partition(const std::vector<NodeId>& assignment)
      : Partition(std::span<const NodeId>(assignment)) {}

  std::size_t size() const noexcept { return assignment_.size(); }
  std::size_t community_count() const noexcept { return sizes_.size(); }
  NodeId community_of(NodeId v) const { return assignment_[v]; }
  const std::vector<NodeId>& assignment() const noexcept { return assignment_; }
  std::size_t community_size(NodeId c) const { return sizes_[c]; }

  /// Members of each community, sorted ascending, communities in id order.
  std::vector<std::vector<NodeId>> communities() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<NodeId> assignment_;
  std::vector<std::size_t> sizes_;
};

struct LoadedGraph {
  Graph graph;
  std::optional<Partition> ground_truth;
};

/// Whitespace separated label pairs, one edge per line; `#` comments and blank
/// lines are skipped. Labels become dense ids in first-seen order.
Graph load_edge_list(std::istream& in);

/// GML subset: `graph [ node [ id N value V ] edge [ source A target B ] ]`.
/// A `value` on every node yields an embedded ground-truth partition.
LoadedGraph load_gml(std::istream& in);

/// `node_label community_label` per line, covering every node exactly once.
Partition load_labels(std::istream& in, const Graph& graph);

/// Writes a labels file readable by load_labels.
void write_labels(std::ostream& out, const Graph& graph, const Partition& partition);

/// Dispatches on extension: `.gml` to load_gml, anything else to load_edge_list.
LoadedGraph load_graph_file(const std::string& path);
Partition load_labels_file(const std::string& path, const Graph& graph);

}  // namespace moocd

#include "moocd/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace moocd {

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
  if (node_count == 0) throw ValidationError("graph has no nodes");
  if (labels.empty()) {
    labels.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != node_count) throw ValidationError("label count does not match node count");

  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= node_count ||
        static_cast<std::size_t>(v) >= node_count) {
      throw ValidationError("edge endpoint out of range");
    }
    if (u == v) throw ValidationError("self-loop on node '" + labels[u] + "'");
    normalized.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(normalized.begin(), normalized.end());
  normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());

  Graph g;
  g.labels_ = std::move(labels);
  g.offsets_.assign(node_count + 1, 0);
  for (auto [u, v] : normalized) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : normalized) {
    g.adjacency_[cursor[u]++] = v;
    g.adjacency_[cursor[v]++] = u;
  }
  for (std::size_t i = 0; i < node_count; ++i) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
  }
  g.index_.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) {
    if (!g.index_.emplace(g.labels_[i], static_cast<NodeId>(i)).second) {
      throw ValidationError("duplicate node label '" + g.labels_[i] + "'");
    }
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Graph::Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(static_cast<NodeId>(u))) {
      if (static_cast<NodeId>(u) < v) out.emplace_back(static_cast<NodeId>(u), v);
    }
  }
  return out;
}

std::optional<NodeId> Graph::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Partition::Partition(std::span<const NodeId> assignment) {
  assignment_.resize(assignment.size());
  std::unordered_map<NodeId, NodeId> remap;
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    auto [it, inserted] = remap.emplace(assignment[v], static_cast<NodeId>(sizes_.size()));
    if (inserted) sizes_.push_back(0);
    assignment_[v] = it->second;
    ++sizes_[it->second];
  }
}

std::vector<std::vector<NodeId>> Partition::communities() const {
  std::vector<std::vector<NodeId>> out(sizes_.size());
  for (std::size_t c = 0; c < sizes_.size(); ++c) out[c].reserve(sizes_[c]);
  for (std::size_t v = 0; v < assignment_.size(); ++v) {
    out[assignment_[v]].push_back(static_cast<NodeId>(v));
  }
  return out;
}

namespace {

class LabelTable {
 public:
  NodeId intern(const std::string& label) {
    auto [it, inserted] = ids_.emplace(label, static_cast<NodeId>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }
  std::size_t size() const { return labels_.size(); }
  std::vector<std::string> take() { return std::move(labels_); }

 private:
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::string> labels_;
};

bool skippable(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

// Minimal GML tokenizer: brackets, bare keys/numbers, and quoted strings.
struct GmlToken {
  enum Kind { Open, Close, Word, String, End } kind;
  std::string text;
  std::size_t line;
};

class GmlLexer {
 public:
  explicit GmlLexer(std::istream& in) : in_(in) {}

  GmlToken next() {
    int c = skip_space();
    if (c == EOF) return {GmlToken::End, {}, line_};
    if (c == '[') return {GmlToken::Open, "[", line_};
    if (c == ']') return {GmlToken::Close, "]", line_};
    if (c == '"') {
      std::string s;
      std::size_t start = line_;
      while ((c = in_.get()) != EOF && c != '"') {
        if (c == '\n') ++line_;
        s.push_back(static_cast<char>(c));
      }
      if (c == EOF) throw ParseError("unterminated string", start);
      return {GmlToken::String, s, start};
    }
    std::string s(1, static_cast<char>(c));
    while ((c = in_.peek()) != EOF && !std::isspace(c) && c != '[' && c != ']' && c != '"') {
      s.push_back(static_cast<char>(in_.get()));
    }
    return {GmlToken::Word, s, line_};
  }

 private:
  int skip_space() {
    int c;
    while ((c = in_.get()) != EOF) {
      if (c == '\n') {
        ++line_;
      } else if (c == '#') {
        while ((c = in_.get()) != EOF && c != '\n') {}
        ++line_;
      } else if (!std::isspace(c)) {
        return c;
      }
    }
    return EOF;
  }

  std::istream& in_;
  std::size_t line_ = 1;
};

struct GmlRecord {
  std::optional<std::string> id, source, target, value;
  std::size_t line = 0;
};

// Reads a `[ ... ]` body, capturing scalar keys of interest and skipping nested lists.
GmlRecord read_record(GmlLexer& lex, std::size_t line) {
  GmlRecord rec;
  rec.line = line;
  for (;;) {
    GmlToken key = lex.next();
    if (key.kind == GmlToken::Close) return rec;
    if (key.kind != GmlToken::Word) throw ParseError("expected key inside record", key.line);
    GmlToken val = lex.next();
    if (val.kind == GmlToken::Open) {
      int depth = 1;
      while (depth > 0) {
        GmlToken t = lex.next();
        if (t.kind == GmlToken::End) throw ParseError("unterminated list", val.line);
        if (t.kind == GmlToken::Open) ++depth;
        if (t.kind == GmlToken::Close) --depth;
      }
      continue;
    }
    if (val.kind != GmlToken::Word && val.kind != GmlToken::String) {
      throw ParseError("missing value for key '" + key.text + "'", key.line);
    }
    if (key.text == "id") rec.id = val.text;
    else if (key.text == "source") rec.source = val.text;
    else if (key.text == "target") rec.target = val.text;
    else if (key.text == "value") rec.value = val.text;
  }
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  LabelTable table;
  std::vector<Graph::Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b)) throw ParseError("expected two node labels", lineno);
    if (fields >> extra && extra[0] != '#') throw ParseError("unexpected extra field '" + extra + "'", lineno);
    if (a == b) throw ValidationError("line " + std::to_string(lineno) + ": self-loop on node '" + a + "'");
    const NodeId u = table.intern(a);  // sequenced: ids follow first appearance
    edges.emplace_back(u, table.intern(b));
  }
  if (edges.empty()) throw ValidationError("edge list contains no edges");
  std::size_t n = table.size();
  return Graph::from_edges(n, edges, table.take());
}

LoadedGraph load_gml(std::istream& in) {
  GmlLexer lex(in);
  GmlToken t = lex.next();
  while (t.kind == GmlToken::Word && t.text != "graph") {
    GmlToken v = lex.next();  // header key/value pairs such as Creator
    if (v.kind == GmlToken::End) break;
    t = lex.next();
  }
  if (t.kind != GmlToken::Word || t.text != "graph") throw ParseError("missing 'graph' block", t.line);
  if (lex.next().kind != GmlToken::Open) throw ParseError("expected '[' after 'graph'", t.line);

  std::vector<GmlRecord> nodes, edges;
  for (;;) {
    GmlToken key = lex.next();
    if (key.kind == GmlToken::Close) break;
    if (key.kind == GmlToken::End) throw ParseError("unterminated graph block", key.line);
    if (key.kind != GmlToken::Word) throw ParseError("expected key in graph block", key.line);
    GmlToken val = lex.next();
    if (val.kind == GmlToken::Open) {
      GmlRecord rec = read_record(lex, key.line);
      if (key.text == "node") nodes.push_back(std::move(rec));
      else if (key.text == "edge") edges.push_back(std::move(rec));
      continue;
    }
    if (key.text == "directed" && val.text != "0") {
      throw ValidationError("directed graphs are not supported");
    }
  }

  LabelTable table;
  for (const auto& rec : nodes) {
    if (!rec.id) throw ParseError("node without id", rec.line);
    std::size_t before = table.size();
    table.intern(*rec.id);
    if (table.size() == before) throw ValidationError("duplicate node id " + *rec.id);
  }
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels = table.take();
  for (std::size_t i = 0; i < labels.size(); ++i) ids.emplace(labels[i], static_cast<NodeId>(i));

  std::vector<Graph::Edge> pairs;
  pairs.reserve(edges.size());
  for (const auto& rec : edges) {
    if (!rec.source || !rec.target) throw ParseError("edge without source/target", rec.line);
    auto s = ids.find(*rec.source), d = ids.find(*rec.target);
    if (s == ids.end() || d == ids.end()) {
      throw ValidationError("line " + std::to_string(rec.line) + ": edge endpoint is not a declared node");
    }
    pairs.emplace_back(s->second, d->second);
  }

  LoadedGraph out;
  const std::size_t n = labels.size();
  out.graph = Graph::from_edges(n, pairs, std::move(labels));
  bool all_valued = !nodes.empty() && std::all_of(nodes.begin(), nodes.end(), [](auto& r) { return r.value.has_value(); });
  if (all_valued) {
    LabelTable communities;
    std::vector<NodeId> assignment;
    assignment.reserve(nodes.size());
    for (const auto& rec : nodes) assignment.push_back(communities.intern(*rec.value));
    out.ground_truth = Partition(assignment);
  }
  return out;
}

Partition load_labels(std::istream& in, const Graph& graph) {
  const NodeId unset = -1;
  std::vector<NodeId> assignment(graph.node_count(), unset);
  LabelTable communities;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    std::string node, community;
    if (!(fields >> node >> community)) throw ParseError("expected node and community labels", lineno);
    auto id = graph.find(node);
    if (!id) throw ValidationError("line " + std::to_string(lineno) + ": unknown node '" + node + "'");
    if (assignment[*id] != unset) {
      throw ValidationError("line " + std::to_string(lineno) + ": duplicate node '" + node + "'");
    }
    assignment[*id] = communities.intern(community);
  }
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    if (assignment[v] == unset) throw ValidationError("node '" + graph.label(static_cast<NodeId>(v)) + "' has no label");
  }
  return Partition(assignment);
}

void write_labels(std::ostream& out, const Graph& graph, const Partition& partition) {
  if (partition.size() != graph.node_count()) throw ValidationError("partition does not match graph");
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    out << graph.label(static_cast<NodeId>(v)) << ' ' << partition.community_of(static_cast<NodeId>(v)) << '\n';
  }
}

LoadedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  bool gml = path.size() >= 4 && path.compare(path.size() - 4, 4, ".gml") == 0;
  if (gml) return load_gml(in);
  return LoadedGraph{load_edge_list(in), std::nullopt};
}

Partition load_labels_file(const std::string& path, const Graph& graph) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open labels file " + path);
  return load_labels(in, graph);
}

}  // namespace moocd

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace sgwt {

struct Edge {
  std::size_t i;
  std::size_t j;
  double w;
};

struct Point {
  double x;
  double y;
};

// Undirected weighted graph. Each undirected edge is stored once with i < j;
// the symmetric weight w_ji = w_ij is implied. Nodes may carry planar
// coordinates.
class WeightedGraph {
 public:
  // Validates and normalizes `edges`. Throws FormatError on self-loops,
  // non-positive or non-finite weights, out-of-range indices and duplicate
  // undirected edges (in either orientation).
  WeightedGraph(std::size_t n, std::vector<Edge> edges,
                std::vector<std::optional<Point>> coords = {});

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  // Nonzero off-diagonal entries of the (symmetric) weight matrix.
  std::size_t num_adjacency_entries() const { return 2 * edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_coords() const;
  std::optional<Point> coord(std::size_t v) const;

  // Sum over nodes of the weighted degree, i.e. 2 * sum of edge weights.
  double total_degree() const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::optional<Point>> coords_;
};

// Parses the edge-list format:
//   # comment
//   n <count>        (optional header, fixes the node count)
//   i j w            (0-based indices, w > 0)
// and, when given, a coordinate stream of "i x y" lines.
// Without a header n = 1 + largest index seen.
WeightedGraph load_edge_list(std::istream& edges, std::istream* coords = nullptr);

WeightedGraph load_edge_list_file(const std::filesystem::path& edges,
                                  const std::optional<std::filesystem::path>& coords = {});

// Writes the graph back in the format accepted by load_edge_list (with header).
void write_edge_list(std::ostream& out, const WeightedGraph& g);
void write_coords(std::ostream& out, const WeightedGraph& g);

}  // namespace sgwt

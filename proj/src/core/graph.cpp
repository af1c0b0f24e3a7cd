#include "sgwt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "sgwt/errors.hpp"

namespace sgwt {

namespace {

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

// Splits a non-comment line into tokens. Returns false for blank/comment lines.
bool tokenize(const std::string& line, std::vector<std::string>& tokens) {
  tokens.clear();
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos || line[first] == '#') return false;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return !tokens.empty();
}

std::size_t parse_index(const std::string& tok, std::size_t line_no) {
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw FormatError(where(line_no) + "expected a node index, got '" + tok + "'");
  }
  if (pos != tok.size() || value < 0) {
    throw FormatError(where(line_no) + "invalid node index '" + tok + "'");
  }
  return static_cast<std::size_t>(value);
}

double parse_real(const std::string& tok, std::size_t line_no) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw FormatError(where(line_no) + "expected a real number, got '" + tok + "'");
  }
  if (pos != tok.size() || !std::isfinite(value)) {
    throw FormatError(where(line_no) + "invalid real number '" + tok + "'");
  }
  return value;
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges,
                             std::vector<std::optional<Point>> coords)
    : n_(n), edges_(std::move(edges)), coords_(std::move(coords)) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : edges_) {
    if (e.i >= n_ || e.j >= n_) {
      throw FormatError("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                        ") out of range for n = " + std::to_string(n_));
    }
    if (e.i == e.j) throw FormatError("self-loop at node " + std::to_string(e.i));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw FormatError("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                        ") has non-positive weight");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
    if (!seen.emplace(e.i, e.j).second) {
      throw FormatError("duplicate undirected edge (" + std::to_string(e.i) + ", " +
                        std::to_string(e.j) + ")");
    }
  }
  if (!coords_.empty() && coords_.size() != n_) {
    throw FormatError("coordinate table has " + std::to_string(coords_.size()) +
                      " entries for " + std::to_string(n_) + " nodes");
  }
}

bool WeightedGraph::has_coords() const {
  return !coords_.empty() &&
         std::all_of(coords_.begin(), coords_.end(), [](const auto& p) { return p.has_value(); });
}

std::optional<Point> WeightedGraph::coord(std::size_t v) const {
  if (coords_.empty() || v >= coords_.size()) return std::nullopt;
  return coords_[v];
}

double WeightedGraph::total_degree() const {
  double sum = 0.0;
  for (const auto& e : edges_) sum += 2.0 * e.w;
  return sum;
}

WeightedGraph load_edge_list(std::istream& edges_in, std::istream* coords_in) {
  std::vector<Edge> edges;
  std::optional<std::size_t> header_n;
  std::size_t max_index = 0;
  bool any_index = false;

  std::string line;
  std::vector<std::string> tok;
  std::size_t line_no = 0;
  while (std::getline(edges_in, line)) {
    ++line_no;
    if (!tokenize(line, tok)) continue;
    if (tok[0] == "n") {
      if (tok.size() != 2) throw FormatError(where(line_no) + "header must be 'n <count>'");
      if (header_n || !edges.empty()) {
        throw FormatError(where(line_no) + "header must appear once, before any edge");
      }
      header_n = parse_index(tok[1], line_no);
      continue;
    }
    if (tok.size() != 3) throw FormatError(where(line_no) + "expected 'i j w'");
    Edge e{parse_index(tok[0], line_no), parse_index(tok[1], line_no), parse_real(tok[2], line_no)};
    if (e.i == e.j) throw FormatError(where(line_no) + "self-loop at node " + tok[0]);
    if (!(e.w > 0.0)) throw FormatError(where(line_no) + "weight must be positive");
    if (header_n && (e.i >= *header_n || e.j >= *header_n)) {
      throw FormatError(where(line_no) + "node index out of range for header n = " +
                        std::to_string(*header_n));
    }
    max_index = std::max({max_index, e.i, e.j});
    any_index = true;
    edges.push_back(e);
  }

  const std::size_t n = header_n ? *header_n : (any_index ? max_index + 1 : 0);

  std::vector<std::optional<Point>> coords;
  if (coords_in != nullptr) {
    coords.assign(n, std::nullopt);
    line_no = 0;
    while (std::getline(*coords_in, line)) {
      ++line_no;
      if (!tokenize(line, tok)) continue;
      if (tok.size() != 3) throw FormatError("coords " + where(line_no) + "expected 'i x y'");
      const std::size_t v = parse_index(tok[0], line_no);
      if (v >= n) throw FormatError("coords " + where(line_no) + "node index out of range");
      if (coords[v]) throw FormatError("coords " + where(line_no) + "duplicate node " + tok[0]);
      coords[v] = Point{parse_real(tok[1], line_no), parse_real(tok[2], line_no)};
    }
  }
  return WeightedGraph(n, std::move(edges), std::move(coords));
}

WeightedGraph load_edge_list_file(const std::filesystem::path& edges,
                                  const std::optional<std::filesystem::path>& coords) {
  std::ifstream edges_in(edges);
  if (!edges_in) throw FormatError("cannot open edge list '" + edges.string() + "'");
  if (!coords) return load_edge_list(edges_in);
  std::ifstream coords_in(*coords);
  if (!coords_in) throw FormatError("cannot open coordinate file '" + coords->string() + "'");
  return load_edge_list(edges_in, &coords_in);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << "n " << g.num_nodes() << '\n' << std::setprecision(17);
  for (const auto& e : g.edges()) out << e.i << ' ' << e.j << ' ' << e.w << '\n';
}

void write_coords(std::ostream& out, const WeightedGraph& g) {
  out << std::setprecision(17);
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    if (auto p = g.coord(v)) out << v << ' ' << p->x << ' ' << p->y << '\n';
  }
}

}  // namespace sgwt

#include "sgwt/harness/graph_source.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "sgwt/errors.hpp"

namespace sgwt::harness {

namespace {

double uniform01(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

template <typename T>
T parse_field(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value) || !in.eof()) throw ParameterError("bad field '" + text + "' in graph source '" + source + "'");
  return value;
}

}  // namespace

WeightedGraph grid_graph(std::size_t rows, std::size_t cols, double spacing) {
  std::vector<Edge> edges;
  std::vector<std::optional<Point>> coords(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t v = r * cols + c;
      coords[v] = Point{static_cast<double>(c) * spacing, static_cast<double>(r) * spacing};
      if (c + 1 < cols) edges.push_back({v, v + 1, 1.0});
      if (r + 1 < rows) edges.push_back({v, v + cols, 1.0});
    }
  }
  return WeightedGraph(rows * cols, std::move(edges), std::move(coords));
}

WeightedGraph random_geometric_graph(std::size_t n, double radius, std::uint64_t seed) {
  if (!(radius > 0.0)) throw ParameterError("random_geometric_graph: radius must be positive");
  std::mt19937_64 engine(seed);
  std::vector<std::optional<Point>> coords(n);
  for (auto& p : coords) {
    const double x = uniform01(engine);
    p = Point{x, uniform01(engine)};
  }
  const double theta = radius / 2.0;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = coords[i]->x - coords[j]->x;
      const double dy = coords[i]->y - coords[j]->y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < radius * radius) edges.push_back({i, j, std::exp(-d2 / (2.0 * theta * theta))});
    }
  }
  return WeightedGraph(n, std::move(edges), std::move(coords));
}

WeightedGraph random_weighted_graph(std::size_t n, double edge_probability, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<std::optional<Point>> coords(n);
  for (auto& p : coords) {
    const double x = uniform01(engine);
    p = Point{x, uniform01(engine)};
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uniform01(engine) < edge_probability) edges.push_back({i, j, 0.1 + 1.9 * uniform01(engine)});
    }
  }
  return WeightedGraph(n, std::move(edges), std::move(coords));
}

WeightedGraph load_graph_source(const std::string& source, const std::optional<std::string>& coords) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) != 0) {
    return load_edge_list_file(source, coords ? std::optional<std::filesystem::path>(*coords) : std::nullopt);
  }
  const auto parts = split(source.substr(prefix.size()), ':');
  if (parts.empty()) throw ParameterError("empty builtin graph source");
  if (parts[0] == "grid" && (parts.size() == 2 || parts.size() == 3)) {
    const auto dims = split(parts[1], 'x');
    if (dims.size() != 2) throw ParameterError("grid source needs <rows>x<cols>: '" + source + "'");
    const double spacing = parts.size() == 3 ? parse_field<double>(parts[2], source) : 1.0;
    return grid_graph(parse_field<std::size_t>(dims[0], source), parse_field<std::size_t>(dims[1], source), spacing);
  }
  if (parts[0] == "rgg" && parts.size() == 4) {
    return random_geometric_graph(parse_field<std::size_t>(parts[1], source), parse_field<double>(parts[2], source),
                                  parse_field<std::uint64_t>(parts[3], source));
  }
  if (parts[0] == "er" && parts.size() == 4) {
    return random_weighted_graph(parse_field<std::size_t>(parts[1], source), parse_field<double>(parts[2], source),
                                 parse_field<std::uint64_t>(parts[3], source));
  }
  throw ParameterError("unknown builtin graph source '" + source + "'");
}

}  // namespace sgwt::harness

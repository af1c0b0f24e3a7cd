#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sgwt/graph.hpp"

namespace sgwt::harness {

// rows x cols lattice with unit weights; node (r, c) has index r * cols + c
// and coordinates (c * spacing, r * spacing).
WeightedGraph grid_graph(std::size_t rows, std::size_t cols, double spacing = 1.0);

// n points uniform in the unit square, joined when closer than `radius`,
// with Gaussian-kernel weights exp(-d^2 / (2 (radius / 2)^2)).
WeightedGraph random_geometric_graph(std::size_t n, double radius, std::uint64_t seed);

// Erdos-Renyi graph G(n, p) with weights uniform in [0.1, 2) and random
// coordinates in the unit square.
WeightedGraph random_weighted_graph(std::size_t n, double edge_probability, std::uint64_t seed);

// Resolves a graph source: an edge-list path (optionally with a coordinate
// file) or a builtin generator
//   builtin:grid:<rows>x<cols>[:<spacing>]
//   builtin:rgg:<n>:<radius>:<seed>
//   builtin:er:<n>:<p>:<seed>
WeightedGraph load_graph_source(const std::string& source, const std::optional<std::string>& coords = {});

}  // namespace sgwt::harness

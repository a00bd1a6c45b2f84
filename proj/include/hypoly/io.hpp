#pragma once

#include <filesystem>
#include <string>

#include "hypoly/polyhedron.hpp"

namespace hypoly {

/// Polyhedron files are JSON objects with a "graph" section
/// ({vertex_count, edges, rotation, marked_edge?}) and a "planes" section
/// (one [u0, u1, u2, u3] unit normal per face, written with 17 significant
/// digits).  Graph files are the same without "planes".
std::string realization_to_text(const Realization& r);
Realization realization_from_text(const std::string& text);
std::string graph_to_text(const PlanarGraph& g);
PlanarGraph graph_from_text(const std::string& text);

void save_realization(const std::filesystem::path& p, const Realization& r);
Realization load_realization(const std::filesystem::path& p);
/// Reads the graph section of a graph or polyhedron file.
PlanarGraph load_graph(const std::filesystem::path& p);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& text);

}  // namespace hypoly

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hypoly {

/// Abstract 1-skeleton with a rotation system.  Edges are indexed; each edge
/// e carries two darts, 2e (from edges[e][0] to edges[e][1]) and 2e+1.  Faces
/// are the orbits of the face permutation phi(d) = sigma(reverse(d)), where
/// sigma advances to the next edge of the rotation at the tail of d.
class PlanarGraph {
 public:
  struct Face {
    std::vector<int> darts;
    std::vector<int> vertices;  // tail of each dart, same order
    std::vector<int> edges;
  };

  PlanarGraph() = default;
  PlanarGraph(int vertex_count, std::vector<std::array<int, 2>> edges,
              std::vector<std::vector<int>> rotation, std::optional<int> marked_edge = {});

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int dart_count() const { return 2 * edge_count(); }

  const std::array<int, 2>& edge(int e) const { return edges_[e]; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  std::span<const int> rotation(int v) const { return rotation_[v]; }
  const std::vector<std::vector<int>>& rotations() const { return rotation_; }
  int degree(int v) const { return static_cast<int>(rotation_[v].size()); }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_[f]; }
  std::optional<int> marked_edge() const { return marked_; }

  int tail(int dart) const { return edges_[dart / 2][dart % 2]; }
  int head(int dart) const { return edges_[dart / 2][1 - dart % 2]; }
  int out_dart(int e, int v) const { return edges_[e][0] == v ? 2 * e : 2 * e + 1; }
  int other_endpoint(int e, int v) const { return edges_[e][0] == v ? edges_[e][1] : edges_[e][0]; }
  int face_of_dart(int dart) const { return dart_face_[dart]; }
  int left_face(int e) const { return dart_face_[2 * e]; }
  int right_face(int e) const { return dart_face_[2 * e + 1]; }

  /// Faces around v in rotation order: entry i lies between rotation edges
  /// i-1 and i.
  std::vector<int> faces_around(int v) const;
  bool vertex_on_face(int v, int f) const;
  std::optional<int> edge_between(int u, int v) const;

  int euler_characteristic() const { return vertex_count_ - edge_count() + face_count(); }

  /// Same graph with edge e deleted (indices above e shift down by one) and
  /// no marked edge.
  PlanarGraph without_edge(int e) const;
  /// Same graph, marked edge replaced.
  PlanarGraph with_marked_edge(std::optional<int> e) const;
  /// Adds edge {u, v} across face f (both must lie on f) and marks it.
  PlanarGraph with_diagonal(int f, int u, int v) const;

  /// Planar dual: vertex i of the dual is face i here, dual edge e crosses
  /// edge e.  face_to_vertex[j] names the primal vertex dual to dual face j.
  struct Dual;
  Dual dual() const;

  bool same_combinatorics(const PlanarGraph& other) const;

 private:
  void trace_faces();

  int vertex_count_ = 0;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::vector<int>> rotation_;
  std::optional<int> marked_;
  std::vector<Face> faces_;
  std::vector<int> dart_face_;
};

struct PlanarGraph::Dual {
  PlanarGraph graph;
  std::vector<int> face_to_vertex;
};

struct SteinitzResult {
  bool ok = false;
  std::string certificate;
};

/// Planar (Boyer-Myrvold) and 3-connected with more than three vertices.
SteinitzResult steinitz_check(const PlanarGraph& g);

/// Local vertex connectivity via unit-capacity max flow on the split graph.
int local_vertex_connectivity(const PlanarGraph& g, int s, int t);

/// Number of combinatorial automorphisms (vertex permutations preserving
/// adjacency).  Exponential worst case; intended for catalog-sized graphs.
long automorphism_count(const PlanarGraph& g);

}  // namespace hypoly

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypoly/geom.hpp"
#include "hypoly/graph.hpp"

namespace hypoly {

using Vec4 = MinkVec<double>;
using Plane = HalfSpace<double>;
using Point = HPoint<double>;
using AngleVector = Eigen::VectorXd;
using EdgeLengthVector = Eigen::VectorXd;

/// A polyhedron given as one half-space per face of its (weak) 1-skeleton.
/// Plane i supports face i of graph().faces().
class Realization {
 public:
  Realization() = default;
  Realization(PlanarGraph graph, std::vector<Plane> planes);
  Realization(std::shared_ptr<const PlanarGraph> graph, std::vector<Plane> planes);

  const PlanarGraph& graph() const { return *graph_; }
  const std::shared_ptr<const PlanarGraph>& graph_ptr() const { return graph_; }
  const std::vector<Plane>& planes() const { return planes_; }
  const Plane& plane(int face) const { return planes_[face]; }

  /// Flattened plane coordinates (4 per face), the solver's state vector.
  Eigen::VectorXd coordinates() const;
  Realization with_coordinates(const Eigen::VectorXd& x) const;

 private:
  std::shared_ptr<const PlanarGraph> graph_;
  std::vector<Plane> planes_;
};

struct MembershipTolerances {
  double psi = 1e-8;
  double delta = 1e-8;
  double vertex_residual = 1e-9;
  double coplanar = 1e-8;
};

enum class SkeletonStatus { StrictSkeleton, WeakBoundary, Invalid };

const char* status_name(SkeletonStatus s);

struct ConditionRecord {
  std::string condition;  // "1", "2", "3'", "4'", "compact", ...
  int vertex = -1;
  int face = -1;
  double residual = 0.0;
};

struct SkeletonReport {
  SkeletonStatus status = SkeletonStatus::Invalid;
  std::vector<ConditionRecord> violations;
  std::vector<ConditionRecord> bindings;  // condition 4' equalities that bind
  double max_psi = 0.0;
  double min_strict_delta = 0.0;
};

/// Least-squares common point of the planes through v (homogeneous, so the
/// result may fail to be timelike for broken input).
struct VertexSolve {
  Vec4 x = Vec4::Zero();
  int rank = 0;
  bool timelike = false;
  double residual = 0.0;  // max |delta| to incident planes, Klein units
};

VertexSolve solve_vertex(const Realization& r, int v);

/// Determinants of consecutive 4-tuples of face normals around v.
std::vector<double> vertex_coincidence_residuals(const Realization& r, int v);

SkeletonReport check_membership(const Realization& r, const MembershipTolerances& tol = {});

/// Throws DegenerateVertex or NotCompact.
std::vector<Point> solve_vertices(const Realization& r);

AngleVector angle_vector(const Realization& r);
EdgeLengthVector edge_lengths(const Realization& r);

/// Interior angle at edge e computed as atan2(sin, cos) with the sine taken
/// from the tangent of the left face; smooth across pi (values above pi mean
/// a reflex edge).  Needs the solved vertex positions.
double edge_angle(const Realization& r, std::span<const Point> vertices, int e);
AngleVector edge_angles(const Realization& r, std::span<const Point> vertices);

std::vector<KleinPoint<double>> klein_vertices(std::span<const Point> vertices);

Realization apply_isometry(const Isometry<double>& g, const Realization& r);

/// Euclidean homothety of the Klein ball about its centre.
Realization klein_scale(const Realization& r, double factor);

/// Builds the 1-skeleton (with rotation system) of the intersection of the
/// given half-spaces and returns the planes reordered by face.
Realization realize_from_planes(const std::vector<Plane>& planes);

/// Splits face f along the diagonal u-v into two coplanar faces and marks the
/// new edge.  The result sits on the weak boundary.
Realization add_diagonal(const Realization& r, int face, int u, int v);

/// For a realization whose marked-edge faces coincide, the same polyhedron
/// over the graph with the marked edge removed.
Realization drop_marked_edge(const Realization& r);

struct DualRealization {
  Realization realization;
  double homothety = 1.0;           // factor applied to the raw polar dual
  std::vector<int> face_to_vertex;  // dual face -> primal vertex
  std::vector<int> vertex_to_face;  // dual vertex -> primal face
};

/// Euclidean polar dual in the Klein ball, rescaled into the ball of radius
/// 1/2.  Weak-boundary input is dualised over the graph without its marked
/// edge, so the two coplanar faces give a single dual vertex.
DualRealization polar_dual(const Realization& r);

}  // namespace hypoly

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypoly/polyhedron.hpp"
#include "hypoly/volume.hpp"

namespace hypoly {

/// Pinned vertex-edge-face flag.  In the slice the vertex sits at the Klein
/// origin, the edge leaves it along +y1, the face lies in {y3 = 0} on the +y2
/// side of the edge and the polyhedron lies in {y3 <= 0}.
struct GaugeChart {
  int vertex = 0;
  int edge = 0;
  int face = 0;
};

/// First flag avoiding the marked edge (if any).
GaugeChart default_chart(const PlanarGraph& g);

/// Throws DegenerateFlag unless vertex, edge and face are mutually incident.
void validate_chart(const PlanarGraph& g, const GaugeChart& c);

/// The isometry taking the pinned flag of r to standard position.
Isometry<double> gauge_isometry(const Realization& r, const GaugeChart& c);
Realization gauge_fix(const Realization& r, const GaugeChart& c);

/// Equations cutting the gauge slice out of the 4F plane coordinates: unit
/// normals, vertex-coincidence determinants at every vertex except the pinned
/// one, and the six-dimensional gauge.  4F - E equations in all.
Eigen::VectorXd constraint_residual(const PlanarGraph& g, const GaugeChart& c, const Eigen::VectorXd& x);
int constraint_count(const PlanarGraph& g);

/// Interior angles, smooth across pi (see edge_angle).  Throws if the
/// vertices cannot be solved.
AngleVector signed_angles(const Realization& r);

struct AngleJacobian {
  Eigen::MatrixXd matrix;        // E x E, in the orthonormal tangent basis
  Eigen::MatrixXd basis;         // 4F x E, tangent space of the slice
  Eigen::MatrixXd differential;  // E x 4F, matrix * basis^T (basis independent)
  Eigen::VectorXd point;         // slice coordinates where it was evaluated
  double condition = 0.0;
  double sigma_min = 0.0;
};

/// Centered differences (probe h) along a tangent basis of the slice, each
/// probe reprojected onto the constraints by Gauss-Newton.  Throws
/// ConstraintProjectionFailed.
AngleJacobian angle_jacobian(const Realization& r, const GaugeChart& c, double h = 1e-6);
AngleJacobian angle_jacobian(const Realization& r);

/// Splits the tangent space at a weak-boundary point into the direction
/// leaving the boundary and the boundary tangent (where the two marked faces
/// stay coplanar), and reports the shape of the Jacobian in that basis.
struct BoundaryBlocks {
  int boundary_dimension = 0;     // dimension of the coplanar tangent
  double leading_entry = 0.0;     // marked-edge row against the transverse direction
  double row_off_block = 0.0;     // max |marked-edge row| against the boundary tangent
  double block_sigma_min = 0.0;   // remaining rows against the boundary tangent
};
BoundaryBlocks boundary_block_structure(const Realization& r, const GaugeChart& c, const AngleJacobian& j);

struct SolveOptions {
  int max_iterations = 50;
  double tolerance = 1e-10;
  double fd_step = 1e-7;
  double delta_eps = 1e-8;
};

struct SolveResult {
  Realization realization;
  int iterations = 0;
  double residual = 0.0;  // max |angle - target|
};

/// Damped Newton on [constraints; angles - target] over the slice, with
/// Armijo backtracking and steps rejected when a membership inequality
/// drops below half its tolerance.  The answer is mapped back to the frame
/// of r0.  Throws SingularJacobian, LeftStratum or NoConvergence.
SolveResult solve_to_angles(const Realization& r0, const AngleVector& target, const GaugeChart& c,
                            const SolveOptions& opt = {});
SolveResult solve_to_angles(const Realization& r0, const AngleVector& target, const SolveOptions& opt = {});

/// Homotopy in angle space from the angles of r0 to target, halving the step
/// on failure.  Throws ContinuationStalled.
SolveResult continue_to_angles(const Realization& r0, const AngleVector& target, const GaugeChart& c,
                               int max_halvings = 12, const SolveOptions& opt = {});

enum class FamilyKind { ScaleOneEdge, AddDiagonal };

const char* family_name(FamilyKind k);

/// ScaleOneEdge: angle of `edge` is t * (base angle), t = 1 at the base.
/// AddDiagonal: angle of the marked edge is pi (1 - t), t = 0 at the base,
/// which must sit on the weak boundary.
struct DeformationFamily {
  Realization base;
  FamilyKind kind = FamilyKind::ScaleOneEdge;
  int edge = 0;
  double t_begin = 0.0;
  double t_end = 1.0;

  double base_parameter() const { return kind == FamilyKind::ScaleOneEdge ? 1.0 : 0.0; }
  AngleVector target(const AngleVector& base_angles, double t) const;
  Eigen::VectorXd target_rate(const AngleVector& base_angles) const;
};

/// Continues outward from the base parameter over the uniform grid with
/// `steps` intervals.  Throws Config for steps < 1 on a non-empty range and
/// ContinuationStalled with the last good parameter.
SchlafliPathRecord run_family(const DeformationFamily& fam, int steps, const SolveOptions& opt = {});

/// Closed form arccos((1 - a^2) / sqrt((a^2 - 1)(a^2 + t^2 - 1))) and its
/// one-sided slope at t = 0.  Throw IdealPoint for alpha <= 1.
double boundary_angle_formula(double alpha, double t);
double boundary_angle_derivative(double alpha);

/// Frame at the marked edge: the observer sits at depth d behind the first
/// marked face, on the perpendicular through the midpoint of the marked edge;
/// there the two face normals read (1, alpha, 0, 0) and (1, alpha', t, 0) up
/// to scale, and alpha' = alpha and the last entry vanish on an exact family.
struct BoundaryNormalForm {
  double alpha = 0.0;
  double t = 0.0;
  double theta = 0.0;    // realized marked-edge angle
  double formula = 0.0;  // boundary_angle_formula(alpha, t)
  double frame_residual = 0.0;
};
BoundaryNormalForm boundary_normal_form(const Realization& r, double depth);

/// Depth used for the normal form of a family: distance from the vertex
/// centroid of the boundary realization to the first marked face.
double normal_form_depth(const Realization& boundary);

struct PolygonCongruence {
  bool congruent = false;
  double max_deviation = 0.0;
  std::string witness;  // offending side or diagonal, e.g. "diagonal 0-2"
};

/// Compares all pairwise geodesic lengths of two vertex cycles in order.
PolygonCongruence polygon_congruence(std::span<const Point> a, std::span<const Point> b, double tol = 1e-7);
PolygonCongruence face_congruent(const Realization& r, int f, const Realization& r2, int f2, double tol = 1e-7);

struct StokerReport {
  Eigen::VectorXd edge_length_diff;
  std::vector<double> face_diagonal_diff;  // max over vertex pairs of each face
  std::vector<PolygonCongruence> faces;
  double max_edge_diff = 0.0;
  double max_diagonal_diff = 0.0;
  bool all_faces_congruent = false;
  double max_vertex_displacement = 0.0;  // after aligning the default flag
  bool isometric = false;
};

/// Throws SkeletonMismatch or AnglesDiffer (angle gap at least angle_tol).
StokerReport stoker_compare(const Realization& r1, const Realization& r2, double angle_tol = 1e-9,
                            double length_tol = 1e-7);

}  // namespace hypoly

#include "hypoly/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "hypoly/error.hpp"

namespace hypoly {

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kBallTol = 1e-9;

Vec3<double> klein_normal(const Plane& p) { return p.u.tail<3>(); }

std::vector<int> sorted_vertex_set(const PlanarGraph::Face& f) {
  std::vector<int> vs = f.vertices;
  std::sort(vs.begin(), vs.end());
  return vs;
}

}  // namespace

Realization::Realization(PlanarGraph graph, std::vector<Plane> planes)
    : Realization(std::make_shared<const PlanarGraph>(std::move(graph)), std::move(planes)) {}

Realization::Realization(std::shared_ptr<const PlanarGraph> graph, std::vector<Plane> planes)
    : graph_(std::move(graph)), planes_(std::move(planes)) {
  if (!graph_) throw Error(Errc::InvalidGraph, "realization needs a graph");
  if (static_cast<int>(planes_.size()) != graph_->face_count())
    throw Error(Errc::IndexMismatch, "one plane per face required");
}

Eigen::VectorXd Realization::coordinates() const {
  Eigen::VectorXd x(4 * planes_.size());
  for (std::size_t i = 0; i < planes_.size(); ++i) x.segment<4>(4 * i) = planes_[i].u;
  return x;
}

Realization Realization::with_coordinates(const Eigen::VectorXd& x) const {
  if (x.size() != static_cast<Eigen::Index>(4 * planes_.size()))
    throw Error(Errc::IndexMismatch, "coordinate vector has the wrong length");
  std::vector<Plane> p(planes_.size());
  for (std::size_t i = 0; i < planes_.size(); ++i) p[i].u = x.segment<4>(4 * i);
  return Realization(graph_, std::move(p));
}

const char* status_name(SkeletonStatus s) {
  switch (s) {
    case SkeletonStatus::StrictSkeleton: return "StrictSkeleton";
    case SkeletonStatus::WeakBoundary: return "WeakBoundary";
    case SkeletonStatus::Invalid: return "Invalid";
  }
  return "Invalid";
}

VertexSolve solve_vertex(const Realization& r, int v) {
  const auto faces = r.graph().faces_around(v);
  const int k = static_cast<int>(faces.size());
  Eigen::MatrixXd m(std::max(k, 1), 4);
  m.setZero();
  const Isometry<double> eta = minkowski_metric<double>();
  for (int i = 0; i < k; ++i) m.row(i) = (eta * r.plane(faces[i]).u).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  VertexSolve out;
  const double smax = s.size() ? s(0) : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > kRankTol * std::max(1.0, smax)) ++out.rank;
  out.x = svd.matrixV().col(3);
  if (out.x(0) < 0) out.x = -out.x;
  out.timelike = mink_norm2(out.x) < 0 && out.x(0) > 0;
  if (out.timelike) {
    const KleinPoint<double> y{out.x.tail<3>() / out.x(0)};
    for (int f : faces) out.residual = std::max(out.residual, std::abs(signed_distance(y, r.plane(f))));
  } else {
    out.residual = std::numeric_limits<double>::infinity();
  }
  return out;
}

std::vector<double> vertex_coincidence_residuals(const Realization& r, int v) {
  const auto faces = r.graph().faces_around(v);
  const int k = static_cast<int>(faces.size());
  if (k < 3) throw Error(Errc::BadIncidence, "vertex " + std::to_string(v) + " lies on fewer than 3 faces");
  std::vector<double> out;
  for (int j = 0; j + 3 < k; ++j) {
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) m.col(i) = r.plane(faces[j + i]).u;
    out.push_back(m.determinant());
  }
  return out;
}

std::vector<Point> solve_vertices(const Realization& r) {
  std::vector<Point> out;
  out.reserve(r.graph().vertex_count());
  for (int v = 0; v < r.graph().vertex_count(); ++v) {
    if (r.graph().degree(v) < 3)
      throw Error(Errc::BadIncidence, "vertex " + std::to_string(v) + " lies on fewer than 3 faces");
    const VertexSolve s = solve_vertex(r, v);
    if (s.rank < 3) throw Error(Errc::DegenerateVertex, "normals at vertex " + std::to_string(v) + " span < 3 dimensions");
    if (!s.timelike) throw Error(Errc::NotCompact, "vertex " + std::to_string(v) + " is not a point of H^3");
    const Vec3<double> y = s.x.tail<3>() / s.x(0);
    if (y.norm() >= 1.0 - kBallTol)
      throw Error(Errc::NotCompact, "vertex " + std::to_string(v) + " is not inside the Klein ball");
    out.push_back(to_hpoint(s.x));
  }
  return out;
}

std::vector<KleinPoint<double>> klein_vertices(std::span<const Point> vertices) {
  std::vector<KleinPoint<double>> out;
  out.reserve(vertices.size());
  for (const auto& p : vertices) out.push_back(klein_project(p));
  return out;
}

SkeletonReport check_membership(const Realization& r, const MembershipTolerances& tol) {
  const PlanarGraph& g = r.graph();
  SkeletonReport rep;
  rep.min_strict_delta = std::numeric_limits<double>::infinity();
  auto violate = [&](std::string c, int v, int f, double res) {
    rep.violations.push_back({std::move(c), v, f, res});
  };

  if (g.euler_characteristic() != 2) violate("euler", -1, -1, g.euler_characteristic());
  for (int f = 0; f < g.face_count(); ++f) {
    const double n2 = mink_norm2(r.plane(f).u);
    if (std::abs(n2 - 1.0) > 1e-10) violate("unit-normal", -1, f, n2 - 1.0);
  }

  std::vector<std::optional<Vec3<double>>> pos(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) < 3) {
      violate("1", v, -1, g.degree(v));
      continue;
    }
    for (double psi : vertex_coincidence_residuals(r, v)) {
      rep.max_psi = std::max(rep.max_psi, std::abs(psi));
      if (std::abs(psi) > tol.psi) violate("1", v, -1, psi);
    }
    const VertexSolve s = solve_vertex(r, v);
    if (s.rank < 3) {
      violate("degenerate-vertex", v, -1, s.rank);
      continue;
    }
    if (!s.timelike) {
      violate("compact", v, -1, mink_norm2(s.x));
      continue;
    }
    const Vec3<double> y = s.x.tail<3>() / s.x(0);
    if (y.norm() >= 1.0 - kBallTol) {
      violate("compact", v, -1, y.norm());
      continue;
    }
    if (s.residual > tol.vertex_residual) violate("1", v, -1, s.residual);
    pos[v] = y;
  }

  const auto marked = g.marked_edge();
  const int f1 = marked ? g.left_face(*marked) : -1;
  const int f2 = marked ? g.right_face(*marked) : -1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!pos[v]) continue;
    const KleinPoint<double> y{*pos[v]};
    const bool on1 = marked && g.vertex_on_face(v, f1);
    const bool on2 = marked && g.vertex_on_face(v, f2);
    for (int f = 0; f < g.face_count(); ++f) {
      if (g.vertex_on_face(v, f)) continue;
      const double d = signed_distance(y, r.plane(f));
      const bool four_prime = marked && ((f == f1 && on2 && !on1) || (f == f2 && on1 && !on2));
      if (four_prime) {
        if (d < -tol.delta)
          violate("4'", v, f, d);
        else if (d <= tol.delta)
          rep.bindings.push_back({"4'", v, f, d});
        else
          rep.min_strict_delta = std::min(rep.min_strict_delta, d);
      } else {
        rep.min_strict_delta = std::min(rep.min_strict_delta, d);
        if (d <= tol.delta) violate(marked ? "3'" : "2", v, f, d);
      }
    }
  }

  for (int a = 0; a < g.vertex_count(); ++a)
    for (int b = a + 1; b < g.vertex_count(); ++b)
      if (pos[a] && pos[b] && (*pos[a] - *pos[b]).norm() <= tol.delta) violate("distinct", a, b, (*pos[a] - *pos[b]).norm());

  if (!rep.violations.empty()) {
    rep.status = SkeletonStatus::Invalid;
  } else if (!rep.bindings.empty()) {
    const double gap = (r.plane(f1).u - r.plane(f2).u).cwiseAbs().maxCoeff();
    if (gap <= tol.coplanar) {
      rep.status = SkeletonStatus::WeakBoundary;
    } else {
      violate("4'-coplanar", -1, f1, gap);
      rep.status = SkeletonStatus::Invalid;
    }
  } else {
    rep.status = SkeletonStatus::StrictSkeleton;
  }
  return rep;
}

double edge_angle(const Realization& r, std::span<const Point> vertices, int e) {
  const PlanarGraph& g = r.graph();
  const int fl = g.left_face(e), fr = g.right_face(e);
  const Vec4& ul = r.plane(fl).u;
  const Vec4& ur = r.plane(fr).u;
  const Vec4& p = vertices[g.edge(e)[0]].v;
  const Vec4& q = vertices[g.edge(e)[1]].v;
  const Vec4 d = q + mink_inner(q, p) * p;
  Vec4 a = mink_cross<double>(p, d, ul);
  a /= std::sqrt(std::max(mink_norm2(a), 1e-300));
  Vec3<double> c = Vec3<double>::Zero();
  for (int v : g.face(fl).vertices) c += vertices[v].v.tail<3>() / vertices[v].v(0);
  c /= static_cast<double>(g.face(fl).vertices.size());
  Vec4 ch;
  ch << 1.0, c;
  if (mink_inner(a, ch) < 0) a = -a;
  double th = std::atan2(-mink_inner(ur, a), -mink_inner(ul, ur));
  if (th < 0) th += 2 * std::numbers::pi;
  return th;
}

AngleVector edge_angles(const Realization& r, std::span<const Point> vertices) {
  AngleVector out(r.graph().edge_count());
  for (int e = 0; e < r.graph().edge_count(); ++e) out(e) = edge_angle(r, vertices, e);
  return out;
}

AngleVector angle_vector(const Realization& r) {
  const PlanarGraph& g = r.graph();
  AngleVector out(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) out(e) = dihedral_angle(r.plane(g.left_face(e)), r.plane(g.right_face(e)));
  return out;
}

EdgeLengthVector edge_lengths(const Realization& r) {
  const auto vs = solve_vertices(r);
  const PlanarGraph& g = r.graph();
  EdgeLengthVector out(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) out(e) = hyp_distance(vs[g.edge(e)[0]], vs[g.edge(e)[1]]);
  return out;
}

Realization apply_isometry(const Isometry<double>& g, const Realization& r) {
  require_isometry(g);
  std::vector<Plane> p;
  p.reserve(r.planes().size());
  for (const auto& h : r.planes()) p.push_back({g * h.u});
  return Realization(r.graph_ptr(), std::move(p));
}

Realization klein_scale(const Realization& r, double factor) {
  std::vector<Plane> p;
  p.reserve(r.planes().size());
  for (const auto& h : r.planes()) p.push_back(halfspace_from_klein<double>(klein_normal(h), factor * h.u(0)));
  return Realization(r.graph_ptr(), std::move(p));
}

Realization realize_from_planes(const std::vector<Plane>& planes) {
  const int nf = static_cast<int>(planes.size());
  if (nf < 4) throw Error(Errc::InvalidGraph, "at least four half-spaces required");
  std::vector<Vec3<double>> n(nf);
  std::vector<double> d(nf);
  for (int i = 0; i < nf; ++i) {
    const double s = klein_normal(planes[i]).norm();
    n[i] = klein_normal(planes[i]) / s;
    d[i] = planes[i].u(0) / s;
  }
  const double tol = 1e-9;
  auto inside = [&](const Vec3<double>& y) {
    for (int m = 0; m < nf; ++m)
      if (d[m] - n[m].dot(y) < -tol) return false;
    return true;
  };

  std::vector<Vec3<double>> verts;
  for (int i = 0; i < nf; ++i)
    for (int j = i + 1; j < nf; ++j)
      for (int k = j + 1; k < nf; ++k) {
        Eigen::Matrix3d a;
        a.row(0) = n[i].transpose();
        a.row(1) = n[j].transpose();
        a.row(2) = n[k].transpose();
        if (std::abs(a.determinant()) < 1e-12) continue;
        const Vec3<double> y = a.partialPivLu().solve(Vec3<double>(d[i], d[j], d[k]));
        if (!inside(y)) continue;
        const bool dup = std::any_of(verts.begin(), verts.end(), [&](const auto& w) { return (w - y).norm() < 1e-8; });
        if (!dup) verts.push_back(y);
      }
  const int nv = static_cast<int>(verts.size());
  for (const auto& y : verts)
    if (y.norm() >= 1.0 - kBallTol) throw Error(Errc::NotCompact, "intersection reaches the sphere at infinity");

  std::vector<std::vector<int>> on_plane(nf);
  for (int v = 0; v < nv; ++v)
    for (int m = 0; m < nf; ++m)
      if (std::abs(d[m] - n[m].dot(verts[v])) <= 1e-8) on_plane[m].push_back(v);
  for (int m = 0; m < nf; ++m)
    if (on_plane[m].size() < 3) throw Error(Errc::InvalidGraph, "half-space " + std::to_string(m) + " is redundant");

  std::set<std::pair<int, int>> edge_set;
  for (int i = 0; i < nf; ++i)
    for (int j = i + 1; j < nf; ++j) {
      std::vector<int> common;
      std::set_intersection(on_plane[i].begin(), on_plane[i].end(), on_plane[j].begin(), on_plane[j].end(),
                            std::back_inserter(common));
      if (common.size() == 2) edge_set.insert({common[0], common[1]});
      if (common.size() > 2) throw Error(Errc::InvalidGraph, "coincident half-spaces");
    }
  std::vector<std::array<int, 2>> edges;
  for (const auto& [a, b] : edge_set) edges.push_back({a, b});

  Vec3<double> centroid = Vec3<double>::Zero();
  for (const auto& y : verts) centroid += y;
  centroid /= nv;
  std::vector<std::vector<int>> rot(nv);
  for (int v = 0; v < nv; ++v) {
    const Vec3<double> axis = (verts[v] - centroid).normalized();
    Vec3<double> b1 = axis.unitOrthogonal();
    const Vec3<double> b2 = axis.cross(b1);
    std::vector<std::pair<double, int>> around;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      if (edges[e][0] != v && edges[e][1] != v) continue;
      const int w = edges[e][0] == v ? edges[e][1] : edges[e][0];
      const Vec3<double> t = verts[w] - verts[v];
      around.push_back({std::atan2(t.dot(b2), t.dot(b1)), e});
    }
    std::sort(around.begin(), around.end());
    for (const auto& [ang, e] : around) rot[v].push_back(e);
  }
  PlanarGraph g(nv, std::move(edges), std::move(rot));
  if (g.euler_characteristic() != 2 || g.face_count() != nf)
    throw Error(Errc::InvalidGraph, "half-space intersection did not produce a polyhedral skeleton");

  std::vector<Plane> ordered(nf);
  std::vector<char> used(nf, 0);
  for (int f = 0; f < nf; ++f) {
    const auto vs = sorted_vertex_set(g.face(f));
    int match = -1;
    for (int m = 0; m < nf; ++m)
      if (!used[m] && on_plane[m] == vs) match = m;
    if (match < 0) throw Error(Errc::InvalidGraph, "face matches no half-space");
    used[match] = 1;
    ordered[f] = to_halfspace<double>(planes[match].u);
  }
  return Realization(std::move(g), std::move(ordered));
}

Realization add_diagonal(const Realization& r, int face, int u, int v) {
  PlanarGraph g2 = r.graph().with_diagonal(face, u, v);
  std::vector<Plane> p(g2.face_count());
  for (int f = 0; f < g2.face_count(); ++f) {
    const auto vs = sorted_vertex_set(g2.face(f));
    int match = face;
    for (int h = 0; h < r.graph().face_count(); ++h)
      if (sorted_vertex_set(r.graph().face(h)) == vs) match = h;
    p[f] = r.plane(match);
  }
  return Realization(std::move(g2), std::move(p));
}

Realization drop_marked_edge(const Realization& r) {
  const auto m = r.graph().marked_edge();
  if (!m) return r;
  PlanarGraph g2 = r.graph().without_edge(*m);
  const int merged = r.graph().left_face(*m);
  std::vector<Plane> p(g2.face_count());
  for (int f = 0; f < g2.face_count(); ++f) {
    const auto vs = sorted_vertex_set(g2.face(f));
    int match = merged;
    for (int h = 0; h < r.graph().face_count(); ++h)
      if (sorted_vertex_set(r.graph().face(h)) == vs) match = h;
    p[f] = r.plane(match);
  }
  return Realization(std::move(g2), std::move(p));
}

DualRealization polar_dual(const Realization& input) {
  Realization r = input;
  if (const auto m = input.graph().marked_edge()) {
    const double gap = (input.plane(input.graph().left_face(*m)).u - input.plane(input.graph().right_face(*m)).u)
                           .cwiseAbs()
                           .maxCoeff();
    if (gap <= MembershipTolerances{}.coplanar) r = drop_marked_edge(input);
  }
  const PlanarGraph& g = r.graph();
  for (int f = 0; f < g.face_count(); ++f)
    if (signed_distance(KleinPoint<double>{Vec3<double>::Zero()}, r.plane(f)) <= MembershipTolerances{}.delta)
      throw Error(Errc::OriginOutside, "origin is not interior to face half-space " + std::to_string(f));

  const auto verts = klein_vertices(solve_vertices(r));
  double rho = 0;
  for (int f = 0; f < g.face_count(); ++f) rho = std::max(rho, klein_normal(r.plane(f)).norm() / r.plane(f).u(0));
  const double c = 1.0 / (2.0 * rho);

  PlanarGraph::Dual dual = g.dual();
  std::vector<Plane> planes;
  planes.reserve(dual.graph.face_count());
  for (int j = 0; j < dual.graph.face_count(); ++j)
    planes.push_back(halfspace_from_klein<double>(verts[dual.face_to_vertex[j]].y, c));
  DualRealization out;
  out.realization = Realization(std::move(dual.graph), std::move(planes));
  out.homothety = c;
  out.face_to_vertex = std::move(dual.face_to_vertex);
  out.vertex_to_face.resize(g.face_count());
  for (int f = 0; f < g.face_count(); ++f) out.vertex_to_face[f] = f;
  return out;
}

}  // namespace hypoly

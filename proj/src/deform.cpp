#include "hypoly/deform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hypoly/error.hpp"

namespace hypoly {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix4d reflect_y2() {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(2, 2) = -1.0;
  return m;
}

/// First failing membership inequality for the stratum (strict conditions
/// need delta >= eps/2, the marked-edge condition delta >= -eps/2).
std::optional<std::string> stratum_violation(const Realization& r, double eps) {
  std::vector<Point> vs;
  try {
    vs = solve_vertices(r);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  const PlanarGraph& g = r.graph();
  const auto marked = g.marked_edge();
  const int f1 = marked ? g.left_face(*marked) : -1;
  const int f2 = marked ? g.right_face(*marked) : -1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const KleinPoint<double> y = klein_project(vs[v]);
    const bool on1 = marked && g.vertex_on_face(v, f1);
    const bool on2 = marked && g.vertex_on_face(v, f2);
    for (int f = 0; f < g.face_count(); ++f) {
      if (g.vertex_on_face(v, f)) continue;
      const double d = signed_distance(y, r.plane(f));
      const bool four_prime = marked && ((f == f1 && on2 && !on1) || (f == f2 && on1 && !on2));
      if (d < (four_prime ? -eps / 2 : eps / 2)) {
        std::ostringstream os;
        os << "condition " << (four_prime ? "4'" : "2") << " at vertex " << v << ", face " << f << " (delta = " << d
           << ")";
        return os.str();
      }
    }
  }
  return std::nullopt;
}

Eigen::MatrixXd constraint_jacobian(const PlanarGraph& g, const GaugeChart& c, const Eigen::VectorXd& x, double h) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd j(constraint_count(g), n);
  Eigen::VectorXd xp = x, xm = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    xp(i) = x(i) + h;
    xm(i) = x(i) - h;
    j.col(i) = (constraint_residual(g, c, xp) - constraint_residual(g, c, xm)) / (2 * h);
    xp(i) = xm(i) = x(i);
  }
  return j;
}

/// Gauss-Newton back onto C = 0 with the pseudo-inverse of the Jacobian at
/// the base point.
Eigen::VectorXd project_to_slice(const PlanarGraph& g, const GaugeChart& c, Eigen::VectorXd x,
                                 const Eigen::JacobiSVD<Eigen::MatrixXd>& jsvd) {
  Eigen::VectorXd res = constraint_residual(g, c, x);
  for (int it = 0; it < 20 && res.lpNorm<Eigen::Infinity>() > 1e-15; ++it) {
    const double before = res.lpNorm<Eigen::Infinity>();
    x -= jsvd.solve(res);
    res = constraint_residual(g, c, x);
    if (res.lpNorm<Eigen::Infinity>() >= before) break;
  }
  if (res.lpNorm<Eigen::Infinity>() > 1e-11)
    throw Error(Errc::ConstraintProjectionFailed, "probe could not be returned to the constraint set");
  return x;
}

}  // namespace

GaugeChart default_chart(const PlanarGraph& g) {
  const auto m = g.marked_edge();
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (m && (g.edge(*m)[0] == v || g.edge(*m)[1] == v)) continue;
    for (int e : g.rotation(v)) {
      if (m && e == *m) continue;
      return {v, e, g.face_of_dart(g.out_dart(e, v))};
    }
  }
  throw Error(Errc::DegenerateFlag, "graph has no flag avoiding the marked edge");
}

void validate_chart(const PlanarGraph& g, const GaugeChart& c) {
  if (c.vertex < 0 || c.vertex >= g.vertex_count() || c.edge < 0 || c.edge >= g.edge_count() || c.face < 0 ||
      c.face >= g.face_count())
    throw Error(Errc::DegenerateFlag, "chart index out of range");
  const auto& e = g.edge(c.edge);
  if (e[0] != c.vertex && e[1] != c.vertex) throw Error(Errc::DegenerateFlag, "pinned edge does not contain pinned vertex");
  if (g.left_face(c.edge) != c.face && g.right_face(c.edge) != c.face)
    throw Error(Errc::DegenerateFlag, "pinned face does not contain pinned edge");
}

Isometry<double> gauge_isometry(const Realization& r, const GaugeChart& c) {
  const PlanarGraph& g = r.graph();
  validate_chart(g, c);
  const auto vs = solve_vertices(r);
  const Isometry<double> g1 = translation_to_origin(vs[c.vertex]);
  const int w = g.other_endpoint(c.edge, c.vertex);
  const Vec4 q = g1 * vs[w].v;
  const Vec3<double> e = q.tail<3>().normalized();
  const Vec4 uf = g1 * r.plane(c.face).u;
  Vec3<double> n = uf.tail<3>();
  n -= n.dot(e) * e;
  n.normalize();
  Eigen::Matrix3d rot;
  rot.row(0) = e.transpose();
  rot.row(1) = n.cross(e).transpose();
  rot.row(2) = n.transpose();
  Isometry<double> gi = rotation_isometry<double>(rot) * g1;
  Vec3<double> cf = Vec3<double>::Zero();
  for (int v : g.face(c.face).vertices) cf += klein_project(Point{gi * vs[v].v}).y;
  if (cf(1) < 0) gi = reflect_y2() * gi;
  return gi;
}

Realization gauge_fix(const Realization& r, const GaugeChart& c) { return apply_isometry(gauge_isometry(r, c), r); }

int constraint_count(const PlanarGraph& g) { return 4 * g.face_count() - g.edge_count(); }

Eigen::VectorXd constraint_residual(const PlanarGraph& g, const GaugeChart& c, const Eigen::VectorXd& x) {
  Eigen::VectorXd out(constraint_count(g));
  int k = 0;
  auto u = [&](int f) { return x.segment<4>(4 * f); };
  for (int f = 0; f < g.face_count(); ++f) out(k++) = mink_norm2(u(f)) - 1.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v == c.vertex) continue;
    const auto faces = g.faces_around(v);
    for (std::size_t j = 0; j + 3 < faces.size(); ++j) {
      Eigen::Matrix4d m;
      for (int i = 0; i < 4; ++i) m.col(i) = u(faces[j + i]);
      out(k++) = m.determinant();
    }
  }
  for (int f : g.faces_around(c.vertex)) out(k++) = u(f)(0);
  out(k++) = u(g.left_face(c.edge))(1);
  out(k++) = u(g.right_face(c.edge))(1);
  out(k++) = u(c.face)(2);
  if (k != out.size()) throw Error(Errc::IndexMismatch, "constraint count does not match Euler's formula");
  return out;
}

AngleVector signed_angles(const Realization& r) { return edge_angles(r, solve_vertices(r)); }

AngleJacobian angle_jacobian(const Realization& r0, const GaugeChart& c, double h) {
  const Realization r = gauge_fix(r0, c);
  const PlanarGraph& g = r.graph();
  const Eigen::VectorXd x = r.coordinates();
  const int ne = g.edge_count();
  const Eigen::MatrixXd jc = constraint_jacobian(g, c, x, 1e-7);
  Eigen::JacobiSVD<Eigen::MatrixXd> jsvd(jc, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = jsvd.singularValues();
  if (sv(sv.size() - 1) < 1e-8 * std::max(1.0, sv(0)))
    throw Error(Errc::ConstraintProjectionFailed, "constraint equations are degenerate at this point");

  AngleJacobian out;
  out.point = x;
  out.basis = jsvd.matrixV().rightCols(ne);
  out.matrix.resize(ne, ne);
  for (int i = 0; i < ne; ++i) {
    const Eigen::VectorXd xp = project_to_slice(g, c, x + h * out.basis.col(i), jsvd);
    const Eigen::VectorXd xm = project_to_slice(g, c, x - h * out.basis.col(i), jsvd);
    out.matrix.col(i) = (signed_angles(r.with_coordinates(xp)) - signed_angles(r.with_coordinates(xm))) / (2 * h);
  }
  out.differential = out.matrix * out.basis.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> asvd(out.matrix);
  const auto& s = asvd.singularValues();
  out.sigma_min = s(s.size() - 1);
  out.condition = out.sigma_min > 0 ? s(0) / out.sigma_min : std::numeric_limits<double>::infinity();
  return out;
}

AngleJacobian angle_jacobian(const Realization& r) { return angle_jacobian(r, default_chart(r.graph())); }

BoundaryBlocks boundary_block_structure(const Realization& r, const GaugeChart& c, const AngleJacobian& j) {
  const PlanarGraph& g = r.graph();
  const auto m = g.marked_edge();
  if (!m) throw Error(Errc::InvalidGraph, "no marked edge");
  const int f1 = g.left_face(*m), f2 = g.right_face(*m);
  validate_chart(g, c);
  const int ne = g.edge_count();
  // u1 - u2 is linear in the coordinates: its Jacobian against the basis is
  // the difference of the corresponding basis rows.
  const Eigen::MatrixXd dm = j.basis.middleRows(4 * f1, 4) - j.basis.middleRows(4 * f2, 4);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(dm, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-6 * std::max(1.0, s(0))) ++rank;
  BoundaryBlocks out;
  out.boundary_dimension = ne - rank;
  const Eigen::MatrixXd v = svd.matrixV();
  const Eigen::VectorXd transverse = v.col(0);
  const Eigen::MatrixXd tangent = v.rightCols(ne - rank);
  const Eigen::VectorXd col0 = j.matrix * transverse;
  const Eigen::MatrixXd rest = j.matrix * tangent;
  out.leading_entry = col0(*m);
  out.row_off_block = rest.row(*m).cwiseAbs().maxCoeff();
  Eigen::MatrixXd block(ne - 1, rest.cols());
  for (int e = 0, k = 0; e < ne; ++e)
    if (e != *m) block.row(k++) = rest.row(e);
  Eigen::JacobiSVD<Eigen::MatrixXd> bsvd(block);
  out.block_sigma_min = bsvd.singularValues().minCoeff();
  return out;
}

SolveResult solve_to_angles(const Realization& r0, const AngleVector& target, const GaugeChart& c,
                            const SolveOptions& opt) {
  const PlanarGraph& g = r0.graph();
  if (target.size() != g.edge_count()) throw Error(Errc::IndexMismatch, "target has the wrong number of angles");
  const auto marked = g.marked_edge();
  for (int e = 0; e < g.edge_count(); ++e) {
    const bool is_marked = marked && *marked == e;
    if (!(target(e) > 0.0) || target(e) > kPi || (!is_marked && target(e) >= kPi)) {
      std::ostringstream os;
      os << "target angle " << target(e) << " at edge " << e << " leaves (0, pi)";
      throw Error(Errc::LeftStratum, os.str());
    }
  }
  const Isometry<double> gi = gauge_isometry(r0, c);
  const Realization base = apply_isometry(gi, r0);
  const int n = 4 * g.face_count();
  const int nc = constraint_count(g);

  auto residual = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd out(n);
    out.head(nc) = constraint_residual(g, c, x);
    out.tail(g.edge_count()) = signed_angles(base.with_coordinates(x)) - target;
    return out;
  };

  Eigen::VectorXd x = base.coordinates();
  Eigen::VectorXd gx = residual(x);
  for (int it = 0;; ++it) {
    const double ra = gx.tail(g.edge_count()).lpNorm<Eigen::Infinity>();
    const double rc = gx.head(nc).lpNorm<Eigen::Infinity>();
    if (ra < opt.tolerance && rc < opt.tolerance) {
      const Realization r = base.with_coordinates(x);
      return {apply_isometry(isometry_inverse(gi), r), it, ra};
    }
    if (it >= opt.max_iterations) {
      std::ostringstream os;
      os << "no convergence after " << it << " iterations (angle residual " << ra << ")";
      throw Error(Errc::NoConvergence, os.str());
    }
    Eigen::MatrixXd jac(n, n);
    Eigen::VectorXd xp = x, xm = x;
    for (int i = 0; i < n; ++i) {
      xp(i) = x(i) + opt.fd_step;
      xm(i) = x(i) - opt.fd_step;
      jac.col(i) = (residual(xp) - residual(xm)) / (2 * opt.fd_step);
      xp(i) = xm(i) = x(i);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (s(n - 1) < 1e-12 * s(0)) throw Error(Errc::SingularJacobian, "Newton system is singular");
    const Eigen::VectorXd dx = -svd.solve(gx);
    const double phi0 = gx.squaredNorm();
    std::optional<std::string> last_violation;
    bool accepted = false;
    for (double lambda = 1.0; lambda > 1e-6; lambda /= 2) {
      const Eigen::VectorXd xt = x + lambda * dx;
      Eigen::VectorXd gt;
      const auto viol = stratum_violation(base.with_coordinates(xt), opt.delta_eps);
      if (viol) {
        last_violation = viol;
        continue;
      }
      gt = residual(xt);
      if (gt.squaredNorm() <= (1.0 - 1e-4 * lambda) * phi0) {
        x = xt;
        gx = gt;
        accepted = true;
        break;
      }
      last_violation.reset();
    }
    if (!accepted) {
      if (last_violation) throw Error(Errc::LeftStratum, *last_violation);
      std::ostringstream os;
      os << "line search failed at iteration " << it << " (angle residual " << ra << ")";
      throw Error(Errc::NoConvergence, os.str());
    }
  }
}

SolveResult solve_to_angles(const Realization& r0, const AngleVector& target, const SolveOptions& opt) {
  return solve_to_angles(r0, target, default_chart(r0.graph()), opt);
}

SolveResult continue_to_angles(const Realization& r0, const AngleVector& target, const GaugeChart& c,
                               int max_halvings, const SolveOptions& opt) {
  const AngleVector a0 = signed_angles(r0);
  SolveResult cur{r0, 0, (a0 - target).lpNorm<Eigen::Infinity>()};
  double s = 0.0, ds = 1.0;
  int halvings = 0;
  int total = 0;
  while (s < 1.0) {
    const double next = std::min(1.0, s + ds);
    try {
      SolveResult step = solve_to_angles(cur.realization, a0 + next * (target - a0), c, opt);
      total += step.iterations;
      cur = std::move(step);
      s = next;
      ds = std::min(2 * ds, 1.0);
    } catch (const Error& e) {
      if (e.code() == Errc::IndexMismatch || e.code() == Errc::DegenerateFlag) throw;
      if (++halvings > max_halvings) {
        std::ostringstream os;
        os << "continuation stalled at s = " << s << ": " << e.what();
        throw Error(Errc::ContinuationStalled, os.str());
      }
      ds /= 2;
    }
  }
  cur.iterations = total;
  return cur;
}

const char* family_name(FamilyKind k) {
  return k == FamilyKind::ScaleOneEdge ? "scale-one-edge" : "add-diagonal";
}

AngleVector DeformationFamily::target(const AngleVector& base_angles, double t) const {
  AngleVector a = base_angles;
  if (kind == FamilyKind::ScaleOneEdge)
    a(edge) = t * base_angles(edge);
  else
    a(edge) = kPi * (1.0 - t);
  return a;
}

Eigen::VectorXd DeformationFamily::target_rate(const AngleVector& base_angles) const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(base_angles.size());
  d(edge) = kind == FamilyKind::ScaleOneEdge ? base_angles(edge) : -kPi;
  return d;
}

SchlafliPathRecord run_family(const DeformationFamily& fam, int steps, const SolveOptions& opt) {
  const PlanarGraph& g = fam.base.graph();
  if (fam.edge < 0 || fam.edge >= g.edge_count()) throw Error(Errc::Config, "family edge out of range");
  if (!(fam.t_begin <= fam.t_end)) throw Error(Errc::Config, "parameter range is reversed");
  if (fam.kind == FamilyKind::AddDiagonal) {
    if (g.marked_edge() != fam.edge) throw Error(Errc::Config, "add-diagonal family needs the marked edge");
    if (check_membership(fam.base).status != SkeletonStatus::WeakBoundary)
      throw Error(Errc::Config, "add-diagonal base must lie on the weak boundary");
  }
  std::vector<double> grid;
  if (fam.t_begin == fam.t_end) {
    grid.push_back(fam.t_begin);
  } else {
    if (steps < 1) throw Error(Errc::Config, "steps must be positive");
    for (int i = 0; i <= steps; ++i) grid.push_back(fam.t_begin + (fam.t_end - fam.t_begin) * i / steps);
  }
  const GaugeChart chart = default_chart(g);
  const AngleVector a0 = signed_angles(fam.base);
  const Eigen::VectorXd rate = fam.target_rate(a0);
  const double p0 = fam.base_parameter();

  std::vector<std::optional<Realization>> sol(grid.size());
  auto advance = [&](const Realization& from, double ta, double tb) {
    Realization cur = from;
    double t = ta, dt = tb - ta;
    int halvings = 0;
    while (t != tb) {
      const double next = std::abs(tb - t) <= std::abs(dt) ? tb : t + dt;
      try {
        cur = solve_to_angles(cur, fam.target(a0, next), chart, opt).realization;
        t = next;
        dt = tb - t;
      } catch (const Error& e) {
        if (++halvings > 20) {
          std::ostringstream os;
          os << "continuation stalled; last good t = " << t << ": " << e.what();
          throw Error(Errc::ContinuationStalled, os.str());
        }
        dt /= 2;
      }
    }
    return cur;
  };
  {
    Realization cur = fam.base;
    double tc = p0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (grid[i] >= p0) {
        cur = advance(cur, tc, grid[i]);
        tc = grid[i];
        sol[i] = cur;
      }
  }
  {
    Realization cur = fam.base;
    double tc = p0;
    for (std::size_t i = grid.size(); i-- > 0;)
      if (grid[i] < p0) {
        cur = advance(cur, tc, grid[i]);
        tc = grid[i];
        sol[i] = cur;
      }
  }
  SchlafliPathRecord rec;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto vs = solve_vertices(*sol[i]);
    AngleVector a = edge_angles(*sol[i], vs);
    EdgeLengthVector l(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) l(e) = hyp_distance(vs[g.edge(e)[0]], vs[g.edge(e)[1]]);
    rec.push(grid[i], *sol[i], std::move(a), std::move(l), rate);
  }
  return rec;
}

double boundary_angle_formula(double alpha, double t) {
  if (!(alpha > 1.0)) throw Error(Errc::IdealPoint, "alpha <= 1 puts the dual point at infinity");
  if (t < 0.0) throw Error(Errc::OutOfRange, "t must be nonnegative");
  const double a2 = alpha * alpha;
  const double c = (1.0 - a2) / std::sqrt((a2 - 1.0) * (a2 + t * t - 1.0));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double boundary_angle_derivative(double alpha) {
  if (!(alpha > 1.0)) throw Error(Errc::IdealPoint, "alpha <= 1 puts the dual point at infinity");
  return -std::sqrt(1.0 / (alpha * alpha - 1.0));
}

double normal_form_depth(const Realization& boundary) {
  const PlanarGraph& g = boundary.graph();
  const auto m = g.marked_edge();
  if (!m) throw Error(Errc::InvalidGraph, "no marked edge");
  const auto vs = solve_vertices(boundary);
  Vec4 c = Vec4::Zero();
  for (const auto& p : vs) c += p.v;
  const Point cp = to_hpoint(c);
  return std::asinh(-mink_inner(cp.v, boundary.plane(g.left_face(*m)).u));
}

BoundaryNormalForm boundary_normal_form(const Realization& r, double depth) {
  const PlanarGraph& g = r.graph();
  const auto m = g.marked_edge();
  if (!m) throw Error(Errc::InvalidGraph, "no marked edge");
  const auto vs = solve_vertices(r);
  const Vec4& p = vs[g.edge(*m)[0]].v;
  const Vec4& q = vs[g.edge(*m)[1]].v;
  const Vec4 u1 = r.plane(g.left_face(*m)).u;
  const Vec4 u2 = r.plane(g.right_face(*m)).u;
  const Vec4 mid = to_hpoint<double>(p + q).v;
  const Point o{std::cosh(depth) * mid - std::sinh(depth) * u1};
  const Isometry<double> g1 = translation_to_origin(o);
  const Vec4 a = g1 * u1;
  const Vec3<double> n1 = a.tail<3>().normalized();
  Vec3<double> e3 = klein_project(Point{g1 * q}).y - klein_project(Point{g1 * p}).y;
  e3 -= e3.dot(n1) * n1;
  e3.normalize();
  Eigen::Matrix3d rot;
  rot.row(0) = n1.transpose();
  rot.row(1) = e3.cross(n1).transpose();
  rot.row(2) = e3.transpose();
  Isometry<double> gn = rotation_isometry<double>(rot) * g1;
  Vec4 b = gn * u2;
  if (b(2) < 0) {
    gn = reflect_y2() * gn;
    b = gn * u2;
  }
  const Vec4 a2 = gn * u1;
  BoundaryNormalForm out;
  out.alpha = a2(1) / a2(0);
  out.t = b(2) / b(0);
  out.frame_residual = std::max({std::abs(a2(2) / a2(0)), std::abs(a2(3) / a2(0)), std::abs(b(1) / b(0) - out.alpha),
                                 std::abs(b(3) / b(0))});
  out.theta = edge_angle(r, vs, *m);
  out.formula = boundary_angle_formula(out.alpha, out.t);
  return out;
}

PolygonCongruence polygon_congruence(std::span<const Point> a, std::span<const Point> b, double tol) {
  PolygonCongruence out;
  if (a.size() != b.size()) {
    out.witness = "vertex count";
    out.max_deviation = std::numeric_limits<double>::infinity();
    return out;
  }
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dev = std::abs(hyp_distance(a[i], a[j]) - hyp_distance(b[i], b[j]));
      if (dev > out.max_deviation) {
        out.max_deviation = dev;
        const bool side = j == i + 1 || (i == 0 && j == n - 1);
        out.witness = (side ? "side " : "diagonal ") + std::to_string(i) + "-" + std::to_string(j);
      }
    }
  out.congruent = out.max_deviation <= tol;
  if (out.congruent) out.witness.clear();
  return out;
}

PolygonCongruence face_congruent(const Realization& r, int f, const Realization& r2, int f2, double tol) {
  const auto v1 = solve_vertices(r);
  const auto v2 = solve_vertices(r2);
  std::vector<Point> a, b;
  for (int v : r.graph().face(f).vertices) a.push_back(v1[v]);
  for (int v : r2.graph().face(f2).vertices) b.push_back(v2[v]);
  return polygon_congruence(a, b, tol);
}

StokerReport stoker_compare(const Realization& r1, const Realization& r2, double angle_tol, double length_tol) {
  if (!r1.graph().same_combinatorics(r2.graph()))
    throw Error(Errc::SkeletonMismatch, "realizations have different 1-skeleta");
  const AngleVector a1 = signed_angles(r1), a2 = signed_angles(r2);
  const double gap = (a1 - a2).lpNorm<Eigen::Infinity>();
  if (gap >= angle_tol) {
    std::ostringstream os;
    os << "dihedral angles differ by " << gap;
    throw Error(Errc::AnglesDiffer, os.str());
  }
  StokerReport rep;
  rep.edge_length_diff = edge_lengths(r1) - edge_lengths(r2);
  rep.max_edge_diff = rep.edge_length_diff.lpNorm<Eigen::Infinity>();
  rep.all_faces_congruent = true;
  for (int f = 0; f < r1.graph().face_count(); ++f) {
    rep.faces.push_back(face_congruent(r1, f, r2, f, length_tol));
    rep.face_diagonal_diff.push_back(rep.faces.back().max_deviation);
    rep.max_diagonal_diff = std::max(rep.max_diagonal_diff, rep.faces.back().max_deviation);
    rep.all_faces_congruent = rep.all_faces_congruent && rep.faces.back().congruent;
  }
  const GaugeChart c = default_chart(r1.graph());
  const auto v1 = solve_vertices(gauge_fix(r1, c));
  const auto v2 = solve_vertices(gauge_fix(r2, c));
  for (std::size_t i = 0; i < v1.size(); ++i)
    rep.max_vertex_displacement = std::max(rep.max_vertex_displacement, hyp_distance(v1[i], v2[i]));
  rep.isometric = rep.max_vertex_displacement <= 10 * length_tol;
  return rep;
}

}  // namespace hypoly

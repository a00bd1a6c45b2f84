#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypoly/deform.hpp"
#include "hypoly/error.hpp"
#include "hypoly/volume.hpp"
#include "support/test_support.hpp"

using namespace hypoly;

namespace {

constexpr double kPi = std::numbers::pi;

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Config;
}

double plane_gap(const Realization& a, const Realization& b) {
  double d = 0.0;
  for (int f = 0; f < a.graph().face_count(); ++f) d = std::max(d, (a.plane(f).u - b.plane(f).u).cwiseAbs().maxCoeff());
  return d;
}

DeformationFamily diagonal_family(double t_end) {
  DeformationFamily fam;
  fam.base = test::entry("cube-diagonal");
  fam.kind = FamilyKind::AddDiagonal;
  fam.edge = *fam.base.graph().marked_edge();
  fam.t_begin = 0.0;
  fam.t_end = t_end;
  return fam;
}

// Klein points (+-a, 0, 0), (0, +-b, 0) in cyclic order.
std::vector<Point> klein_rhombus(double a, double b) {
  std::vector<Point> p;
  for (const auto& y : {Eigen::Vector3d(a, 0, 0), Eigen::Vector3d(0, b, 0), Eigen::Vector3d(-a, 0, 0),
                        Eigen::Vector3d(0, -b, 0)})
    p.push_back(klein_lift(KleinPoint<double>{y}));
  return p;
}

}  // namespace

TEST_CASE("gauge_fix puts the flag in standard position") {
  for (const auto& e : test::catalog()) {
    const Realization& r = e.realization;
    const GaugeChart c = default_chart(r.graph());
    CHECK_NOTHROW(validate_chart(r.graph(), c));
    const Realization fixed = gauge_fix(r, c);
    const auto y = klein_vertices(solve_vertices(fixed));
    CHECK(y[c.vertex].y.norm() < 1e-12);
    const int w = r.graph().other_endpoint(c.edge, c.vertex);
    CHECK(std::abs(y[w].y(1)) < 1e-12);
    CHECK(std::abs(y[w].y(2)) < 1e-12);
    CHECK(y[w].y(0) > 0.0);
    for (int v : r.graph().face(c.face).vertices) CHECK(std::abs(y[v].y(2)) < 1e-12);
    for (const auto& k : y) CHECK(k.y(2) < 1e-12);
    CHECK((gauge_isometry(fixed, c) - Isometry<double>::Identity()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("gauge_fix is unique on an isometry orbit") {
  std::mt19937_64 rng(21);
  for (const char* name : {"tetrahedron-115", "prism", "pyramid", "cube-diagonal"}) {
    const Realization& r = test::entry(name);
    const GaugeChart c = default_chart(r.graph());
    const Realization fixed = gauge_fix(r, c);
    for (int k = 0; k < 5; ++k) {
      const Realization moved = apply_isometry(test::random_isometry(rng), r);
      CHECK(plane_gap(gauge_fix(moved, c), fixed) < 1e-9);
    }
    CHECK((angle_vector(fixed) - angle_vector(r)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("degenerate charts are rejected") {
  const PlanarGraph& g = test::entry("cube").graph();
  GaugeChart c = default_chart(g);
  int wrong_face = -1;
  for (int f = 0; f < g.face_count(); ++f)
    if (!g.vertex_on_face(c.vertex, f)) wrong_face = f;
  c.face = wrong_face;
  CHECK(code_of([&] { validate_chart(g, c); }) == Errc::DegenerateFlag);
  GaugeChart d = default_chart(g);
  d.edge = g.edge_count() + 3;
  CHECK(code_of([&] { validate_chart(g, d); }) == Errc::DegenerateFlag);
}

TEST_CASE("constraint count matches the slice dimension") {
  for (const auto& e : test::catalog()) {
    const PlanarGraph& g = e.realization.graph();
    CHECK(constraint_count(g) == 4 * g.face_count() - g.edge_count());
    const GaugeChart c = default_chart(g);
    const auto res = constraint_residual(g, c, gauge_fix(e.realization, c).coordinates());
    CHECK(res.lpNorm<Eigen::Infinity>() < 1e-10);
  }
}

TEST_CASE("angle Jacobian of the tetrahedron") {
  const AngleJacobian j = angle_jacobian(test::entry("tetrahedron-120"));
  CHECK(j.matrix.rows() == 6);
  CHECK(j.matrix.cols() == 6);
  CHECK(j.condition < 1e4);
  CHECK(j.sigma_min > 1e-3);
  for (const auto& e : test::catalog())
    if (e.expected_status == SkeletonStatus::StrictSkeleton) CHECK(angle_jacobian(e.realization).sigma_min > 1e-8);
}

TEST_CASE("angle Jacobian differential does not depend on the frame") {
  std::mt19937_64 rng(4);
  const Realization& r = test::entry("prism");
  const GaugeChart c = default_chart(r.graph());
  const AngleJacobian a = angle_jacobian(r, c);
  const AngleJacobian b = angle_jacobian(apply_isometry(test::random_isometry(rng), r), c);
  CHECK((a.differential - b.differential).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((a.basis.transpose() * a.basis - Eigen::MatrixXd::Identity(6 + 3, 6 + 3)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Jacobian blocks at the weak boundary") {
  const Realization& r = test::entry("cube-diagonal");
  const GaugeChart c = default_chart(r.graph());
  const AngleJacobian j = angle_jacobian(r, c);
  const BoundaryBlocks b = boundary_block_structure(r, c, j);
  CHECK(b.boundary_dimension == r.graph().edge_count() - 1);
  CHECK(b.row_off_block < 1e-6);
  CHECK(std::abs(b.leading_entry) > 1e-3);
  CHECK(b.block_sigma_min > 1e-6);
}

TEST_CASE("solve_to_angles") {
  const Realization& r = test::entry("tetrahedron-120");
  const AngleVector a0 = angle_vector(r);
  CHECK(solve_to_angles(r, a0).iterations == 0);
  AngleVector target = a0;
  target(0) += 1e-3;
  target(3) -= 1e-3;
  const SolveResult s = solve_to_angles(r, target);
  CHECK(s.iterations <= 5);
  CHECK((angle_vector(s.realization) - target).cwiseAbs().maxCoeff() < 1e-9);
  const SolveResult back = solve_to_angles(s.realization, a0);
  CHECK((edge_lengths(back.realization) - edge_lengths(r)).cwiseAbs().maxCoeff() < 1e-8);
  AngleVector flat = a0;
  flat(2) = kPi;
  CHECK(code_of([&] { solve_to_angles(r, flat); }) == Errc::LeftStratum);
  CHECK(code_of([&] { solve_to_angles(r, AngleVector::Zero(5)); }) == Errc::IndexMismatch);
}

TEST_CASE("continue_to_angles reaches a distant target") {
  const Realization& r = test::entry("cube");
  const GaugeChart c = default_chart(r.graph());
  AngleVector target = angle_vector(r);
  for (int e = 0; e < target.size(); ++e) target(e) += 0.05 * std::sin(1.0 + e);
  const SolveResult s = continue_to_angles(r, target, c);
  CHECK((angle_vector(s.realization) - target).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(check_membership(s.realization).status == SkeletonStatus::StrictSkeleton);
}

TEST_CASE("ScaleOneEdge family follows the requested angle") {
  DeformationFamily fam;
  fam.base = test::entry("tetrahedron-120");
  fam.kind = FamilyKind::ScaleOneEdge;
  fam.edge = 1;
  fam.t_begin = 0.95;
  fam.t_end = 1.0;
  const AngleVector base = angle_vector(fam.base);
  const SchlafliPathRecord p = run_family(fam, 5);
  REQUIRE(p.size() == 6);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const AngleVector a = angle_vector(p.realizations[i]);
    CHECK(std::abs(a(1) - p.t[i] * base(1)) < 1e-9);
    for (int e : {0, 2, 3, 4, 5}) CHECK(std::abs(a(e) - base(e)) < 1e-9);
  }
}

TEST_CASE("run_family edge cases") {
  DeformationFamily fam;
  fam.base = test::entry("prism");
  fam.t_begin = fam.t_end = 1.0;
  CHECK(run_family(fam, 3).size() == 1);
  fam.t_begin = 0.9;
  CHECK(code_of([&] { run_family(fam, 0); }) == Errc::Config);
}

TEST_CASE("AddDiagonal family leaves the weak boundary into the strict stratum") {
  const SchlafliPathRecord p = run_family(diagonal_family(0.05), 5);
  REQUIRE(p.size() == 6);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto st = check_membership(p.realizations[i]).status;
    CHECK(st == (p.t[i] == 0.0 ? SkeletonStatus::WeakBoundary : SkeletonStatus::StrictSkeleton));
    const int m = *p.realizations[i].graph().marked_edge();
    CHECK(std::abs(angle_vector(p.realizations[i])(m) - kPi * (1.0 - p.t[i])) < 1e-9);
  }
}

TEST_CASE("boundary angle formula examples") {
  CHECK(boundary_angle_formula(2.0, 0.0) == doctest::Approx(kPi));
  CHECK(boundary_angle_formula(2.0, 1.0) == doctest::Approx(5 * kPi / 6).epsilon(1e-12));
  CHECK(boundary_angle_derivative(2.0) == doctest::Approx(-1.0 / std::sqrt(3.0)));
  const double h = 1e-4;
  for (double a : {1.1, 1.5, 3.0}) {
    const double fd = (boundary_angle_formula(a, h) - boundary_angle_formula(a, 0.0)) / h;
    CHECK(fd == doctest::Approx(boundary_angle_derivative(a)).epsilon(1e-5));
    for (double t : {0.01, 0.3, 2.0}) {
      const double theta = kPi - std::atan(t / std::sqrt(a * a - 1.0));
      CHECK(boundary_angle_formula(a, t) == doctest::Approx(theta).epsilon(1e-10));
    }
  }
  CHECK(code_of([] { boundary_angle_formula(1.0, 0.1); }) == Errc::IdealPoint);
  CHECK(code_of([] { boundary_angle_derivative(0.5); }) == Errc::IdealPoint);
}

TEST_CASE("boundary normal form matches the formula near the boundary") {
  const Realization& base = test::entry("cube-diagonal");
  const double depth = normal_form_depth(base);
  CHECK(depth > 0.0);
  const SchlafliPathRecord p = run_family(diagonal_family(0.01), 10);
  const BoundaryNormalForm nf0 = boundary_normal_form(p.realizations.front(), depth);
  CHECK(nf0.alpha > 1.0);
  CHECK(std::abs(nf0.t) < 1e-9);
  CHECK(std::abs(nf0.theta - kPi) < 1e-8);
  for (const auto& r : p.realizations) {
    const BoundaryNormalForm nf = boundary_normal_form(r, depth);
    CHECK(nf.frame_residual < 1e-6);
    CHECK(std::abs(nf.theta - nf.formula) < 1e-3 * std::max(nf.t, 1e-3));
  }
  const BoundaryNormalForm nf1 = boundary_normal_form(p.realizations[1], depth);
  const double slope = (nf1.theta - nf0.theta) / nf1.t;
  CHECK(std::abs(slope - boundary_angle_derivative(nf0.alpha)) < 1e-3);
}

TEST_CASE("volume derivative at the base of ScaleOneEdge") {
  DeformationFamily fam;
  fam.base = test::entry("tetrahedron-115");
  fam.edge = 2;
  fam.t_begin = 0.999;
  fam.t_end = 1.0;
  const SchlafliPathRecord p = run_family(fam, 2);
  const double theta = angle_vector(fam.base)(2), l = edge_lengths(fam.base)(2);
  const auto it = std::find(p.t.begin(), p.t.end(), 1.0);
  REQUIRE(it != p.t.end());
  CHECK(p.rate[it - p.t.begin()] == doctest::Approx(-0.5 * l * theta).epsilon(1e-6));
}

TEST_CASE("polygon congruence names the offending diagonal") {
  const double a = 0.3;
  const auto square = klein_rhombus(a, a);
  const double side = hyp_distance(square[0], square[1]);
  const double b0 = 0.35;
  // rhombus partner of b0 with the same side length
  double lo = 0.01, hi = 0.6;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (hyp_distance(klein_rhombus(mid, b0)[0], klein_rhombus(mid, b0)[1]) < side ? lo : hi) = mid;
  }
  const auto rhombus = klein_rhombus(lo, b0);
  CHECK(std::abs(hyp_distance(rhombus[0], rhombus[1]) - side) < 1e-12);
  const PolygonCongruence pc = polygon_congruence(square, rhombus);
  CHECK_FALSE(pc.congruent);
  CHECK(pc.witness.find("diagonal") != std::string::npos);
  CHECK(polygon_congruence(square, square).congruent);
}

TEST_CASE("stoker_compare on isometric copies") {
  std::mt19937_64 rng(17);
  for (const char* name : {"prism", "cube", "tetrahedron-122"}) {
    const Realization& r = test::entry(name);
    const StokerReport rep = stoker_compare(r, apply_isometry(test::random_isometry(rng), r));
    CHECK(rep.max_edge_diff < 1e-9);
    CHECK(rep.max_diagonal_diff < 1e-9);
    CHECK(rep.all_faces_congruent);
    CHECK(rep.isometric);
  }
}

TEST_CASE("stoker_compare on independent solves") {
  const Realization& r = test::entry("prism");
  const GaugeChart c = default_chart(r.graph());
  AngleVector target = angle_vector(r);
  AngleVector detour = target;
  for (int e = 0; e < detour.size(); ++e) detour(e) += 0.04 * std::cos(2.0 * e);
  const Realization far = continue_to_angles(r, detour, c).realization;
  const Realization back = continue_to_angles(far, target, c).realization;
  const StokerReport rep = stoker_compare(r, back);
  CHECK(rep.max_edge_diff < 1e-6);
  CHECK(rep.max_diagonal_diff < 1e-6);
  CHECK(rep.all_faces_congruent);
}

TEST_CASE("stoker_compare errors") {
  const Realization& r = test::entry("cube");
  CHECK(code_of([&] { stoker_compare(r, test::entry("prism")); }) == Errc::SkeletonMismatch);
  CHECK(code_of([&] { stoker_compare(r, klein_cube(0.45)); }) == Errc::AnglesDiffer);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypoly/catalog.hpp"
#include "hypoly/error.hpp"
#include "hypoly/io.hpp"
#include "hypoly/polyhedron.hpp"
#include "support/test_support.hpp"

using namespace hypoly;

namespace {

constexpr double kPi = std::numbers::pi;

// Klein plane n.y <= d with |n| = 1.
std::pair<Eigen::Vector3d, double> klein_plane(const Plane& p) {
  const Eigen::Vector3d n = p.u.tail<3>();
  return {n / n.norm(), p.u(0) / n.norm()};
}

Realization replace_plane(const Realization& r, int f, const Plane& p) {
  auto planes = r.planes();
  planes[f] = p;
  return Realization(r.graph_ptr(), planes);
}

int apex_of(const PlanarGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 4) return v;
  return -1;
}

Plane tilt(const Plane& p, double eps) { return to_halfspace<double>(p.u + eps * Vec4(0.3, -0.2, 0.7, 0.1)); }

}  // namespace

TEST_CASE("vertex_coincidence_residuals") {
  const Realization& tet = test::entry("tetrahedron-120");
  for (int v = 0; v < 4; ++v) CHECK(vertex_coincidence_residuals(tet, v).empty());
  const Realization& pyr = test::entry("pyramid");
  const int apex = apex_of(pyr.graph());
  REQUIRE(apex >= 0);
  const auto psi = vertex_coincidence_residuals(pyr, apex);
  REQUIRE(psi.size() == 1);
  CHECK(std::abs(psi[0]) < 1e-10);
  const int f = pyr.graph().faces_around(apex)[0];
  const auto bent = replace_plane(pyr, f, tilt(pyr.plane(f), 1e-3));
  CHECK(std::abs(vertex_coincidence_residuals(bent, apex)[0]) > 1e-6);
  CHECK(check_membership(bent).status == SkeletonStatus::Invalid);
}

TEST_CASE("check_membership classifies the constructions") {
  CHECK(check_membership(test::entry("tetrahedron-120")).status == SkeletonStatus::StrictSkeleton);
  const auto weak = check_membership(test::entry("cube-diagonal"));
  CHECK(weak.status == SkeletonStatus::WeakBoundary);
  CHECK_FALSE(weak.bindings.empty());
  CHECK(weak.violations.empty());
  for (const auto& e : test::catalog()) CHECK(check_membership(e.realization).status == e.expected_status);
}

TEST_CASE("a plane pushed past a vertex is Invalid with a negative-delta witness") {
  const Realization& tet = test::entry("tetrahedron-120");
  const auto y = klein_vertices(solve_vertices(tet));
  const auto [n, d] = klein_plane(tet.plane(0));
  int opposite = -1;
  for (int v = 0; v < 4; ++v)
    if (!tet.graph().vertex_on_face(v, 0)) opposite = v;
  REQUIRE(opposite >= 0);
  const auto pushed = replace_plane(tet, 0, halfspace_from_klein<double>(n, n.dot(y[opposite].y) - 0.05));
  const auto rep = check_membership(pushed);
  CHECK(rep.status == SkeletonStatus::Invalid);
  bool witness = false;
  for (const auto& c : rep.violations) witness = witness || c.residual < 0.0;
  CHECK(witness);
}

TEST_CASE("identical planes on non-adjacent faces are Invalid") {
  const Realization& cube = test::entry("cube");
  const auto& g = cube.graph();
  int f2 = -1;
  for (int f = 1; f < g.face_count() && f2 < 0; ++f) {
    bool adjacent = false;
    for (int e : g.face(0).edges) adjacent = adjacent || g.left_face(e) == f || g.right_face(e) == f;
    if (!adjacent) f2 = f;
  }
  REQUIRE(f2 > 0);
  const auto degenerate = replace_plane(cube, f2, cube.plane(0));
  CHECK(check_membership(degenerate).status == SkeletonStatus::Invalid);
}

TEST_CASE("solve_vertices") {
  const double s = 0.4;
  const auto y = klein_vertices(solve_vertices(klein_cube(s)));
  for (const auto& k : y)
    for (int i = 0; i < 3; ++i) CHECK(std::abs(std::abs(k.y(i)) - s) < 1e-12);
  const auto p = solve_vertices(test::entry("tetrahedron-115"));
  REQUIRE(p.size() == 4);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) CHECK(hyp_distance(p[a], p[b]) > 0.1);
  const Realization& weak = test::entry("cube-diagonal");
  const auto& g = weak.graph();
  const int m = *g.marked_edge();
  const auto q = solve_vertices(weak);
  for (int end : g.edge(m))
    for (int f : {g.left_face(m), g.right_face(m)}) CHECK(std::abs(mink_inner(q[end].v, weak.plane(f).u)) < 1e-12);
}

TEST_CASE("angle_vector and edge_lengths") {
  const Realization small = klein_scale(test::entry("tetrahedron-120"), 1e-2);
  const double euclid = std::acos(1.0 / 3.0);
  for (double a : angle_vector(small)) {
    CHECK(a < euclid);
    CHECK(a > euclid - 1e-3);
  }
  const auto ca = angle_vector(test::entry("cube"));
  const auto cl = edge_lengths(test::entry("cube"));
  CHECK(ca.size() == 12);
  CHECK(ca.maxCoeff() - ca.minCoeff() < 1e-12);
  CHECK(cl.maxCoeff() - cl.minCoeff() < 1e-12);
  const Realization& weak = test::entry("cube-diagonal");
  const auto wa = angle_vector(weak);
  for (int e = 0; e < wa.size(); ++e) {
    if (e == *weak.graph().marked_edge())
      CHECK(std::abs(wa(e) - kPi) < 1e-8);
    else
      CHECK((wa(e) > 0.0 && wa(e) < kPi - 1e-6));
  }
  for (const auto& e : test::catalog()) {
    if (e.expected_status != SkeletonStatus::StrictSkeleton) continue;
    for (double a : angle_vector(e.realization)) CHECK((a > 0.0 && a < kPi));
    const auto& g = e.realization.graph();
    CHECK(g.vertex_count() - g.edge_count() + g.face_count() == 2);
  }
}

TEST_CASE("regular tetrahedron realizes the requested angle") {
  for (double a : {1.15, 1.2, 1.22}) {
    const auto ang = angle_vector(regular_tetrahedron(a));
    CHECK((ang.array() - a).abs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(regular_tetrahedron(1.3), Error);
}

TEST_CASE("reported quantities are isometry invariant") {
  std::mt19937_64 rng(8);
  for (const auto& e : test::catalog()) {
    const Realization& r = e.realization;
    const Realization moved = apply_isometry(test::random_isometry(rng), r);
    CHECK(check_membership(moved).status == e.expected_status);
    CHECK((angle_vector(moved) - angle_vector(r)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((edge_lengths(moved) - edge_lengths(r)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("polar dual of the cube is the octahedron at distance 1/s") {
  const double s = 0.4;
  const DualRealization d = polar_dual(klein_cube(s));
  const auto& g = d.realization.graph();
  CHECK(g.vertex_count() == 6);
  CHECK(g.face_count() == 8);
  CHECK(d.homothety * (1.0 / s) * std::sqrt(3.0) * s <= 0.5 + 1e-12);
  for (const auto& k : klein_vertices(solve_vertices(d.realization))) CHECK(k.y.norm() / d.homothety == doctest::Approx(1.0 / s).epsilon(1e-12));
  CHECK(check_membership(d.realization).status == SkeletonStatus::StrictSkeleton);
}

TEST_CASE("double dual returns the primal") {
  for (const char* name : {"tetrahedron-115", "prism", "cube", "pyramid"}) {
    const Realization& r = test::entry(name);
    const DualRealization d1 = polar_dual(r);
    const DualRealization d2 = polar_dual(d1.realization);
    const Realization back = klein_scale(d2.realization, d1.homothety / d2.homothety);
    for (int j = 0; j < back.graph().face_count(); ++j) {
      const int f = d1.vertex_to_face[d2.face_to_vertex[j]];
      const auto [n1, c1] = klein_plane(back.plane(j));
      const auto [n0, c0] = klein_plane(r.plane(f));
      CHECK((n1 - n0).norm() < 1e-9);
      CHECK(std::abs(c1 - c0) < 1e-9);
    }
  }
}

TEST_CASE("dual of a weak-boundary realization shrinks the dual edge") {
  const DualRealization d = polar_dual(test::entry("cube-diagonal"));
  CHECK(d.realization.graph().vertex_count() == 6);
  CHECK(d.realization.graph().edge_count() == 12);
}

TEST_CASE("polar dual needs the origin inside") {
  const Realization shifted = apply_isometry(boost<double>(1, 1.5), test::entry("cube"));
  CHECK_THROWS_AS(polar_dual(shifted), Error);
}

TEST_CASE("realize_from_planes recovers the combinatorics") {
  for (const auto& e : test::catalog()) {
    if (e.expected_status != SkeletonStatus::StrictSkeleton) continue;
    const Realization r = realize_from_planes(e.realization.planes());
    CHECK(r.graph().vertex_count() == e.realization.graph().vertex_count());
    CHECK(r.graph().edge_count() == e.realization.graph().edge_count());
    CHECK(check_membership(r).status == SkeletonStatus::StrictSkeleton);
    auto a = angle_vector(r), b = angle_vector(e.realization);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("drop_marked_edge gives the strict polyhedron over the smaller graph") {
  const Realization dropped = drop_marked_edge(test::entry("cube-diagonal"));
  CHECK(dropped.graph().same_combinatorics(test::entry("cube").graph()));
  CHECK(check_membership(dropped).status == SkeletonStatus::StrictSkeleton);
}

TEST_CASE("polyhedron files round-trip") {
  for (const auto& e : test::catalog()) {
    const std::string text = realization_to_text(e.realization);
    const Realization back = realization_from_text(text);
    CHECK(realization_to_text(back) == text);
    for (int f = 0; f < back.graph().face_count(); ++f) CHECK(back.plane(f).u == e.realization.plane(f).u);
  }
  CHECK_THROWS_AS(realization_from_text("{\"graph\": 3}"), Error);
  CHECK_THROWS_AS(realization_from_text("not json"), Error);
}

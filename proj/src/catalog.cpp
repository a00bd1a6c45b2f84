#include "hypoly/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hypoly/error.hpp"

namespace hypoly {

namespace {

Plane klein_plane(double nx, double ny, double nz, double d) {
  return halfspace_from_klein<double>(Vec3<double>(nx, ny, nz), d);
}

}  // namespace

Realization regular_tetrahedron(double angle) {
  const double c = std::cos(angle);
  if (!(c > 1.0 / 3.0)) throw Error(Errc::OutOfRange, "regular tetrahedron angles must lie below arccos(1/3)");
  const double h = std::sqrt((c - 1.0 / 3.0) / (1.0 + c));
  if (!(3.0 * h < 1.0)) throw Error(Errc::NotCompact, "tetrahedron does not fit in the ball");
  const double k = 1.0 / std::sqrt(3.0);
  return realize_from_planes({klein_plane(k, k, k, h), klein_plane(k, -k, -k, h), klein_plane(-k, k, -k, h),
                              klein_plane(-k, -k, k, h)});
}

Realization klein_cube(double s) {
  std::vector<Plane> p;
  for (int a = 0; a < 3; ++a)
    for (double sg : {1.0, -1.0}) {
      Vec3<double> n = Vec3<double>::Zero();
      n(a) = sg;
      p.push_back(halfspace_from_klein<double>(n, s));
    }
  return realize_from_planes(p);
}

Realization triangular_prism(double a, double b) {
  std::vector<Plane> p;
  for (int i = 0; i < 3; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / 3.0;
    p.push_back(klein_plane(std::cos(phi), std::sin(phi), 0.0, a));
  }
  p.push_back(klein_plane(0, 0, 1, b));
  p.push_back(klein_plane(0, 0, -1, b));
  return realize_from_planes(p);
}

Realization square_pyramid(double w, double b, double apex) {
  const double k = apex + b;
  return realize_from_planes({klein_plane(0, 0, -1, b), klein_plane(k, 0, w, w * apex), klein_plane(-k, 0, w, w * apex),
                              klein_plane(0, k, w, w * apex), klein_plane(0, -k, w, w * apex)});
}

Realization cube_with_diagonal(double s) {
  const Realization cube = klein_cube(s);
  const auto& f = cube.graph().face(0);
  return add_diagonal(cube, 0, f.vertices[0], f.vertices[2]);
}

std::vector<CatalogEntry> catalog_build() {
  std::vector<CatalogEntry> cat;
  const auto add = [&](std::string name, Realization r, std::string note, SkeletonStatus st, long sym) {
    cat.push_back({std::move(name), std::move(r), std::move(note), st, sym});
  };
  add("tetrahedron-122", regular_tetrahedron(1.22), "regular tetrahedron, all angles 1.22 rad",
      SkeletonStatus::StrictSkeleton, 24);
  add("tetrahedron-120", regular_tetrahedron(1.20), "regular tetrahedron, all angles 1.20 rad",
      SkeletonStatus::StrictSkeleton, 24);
  add("tetrahedron-115", regular_tetrahedron(1.15), "regular tetrahedron, all angles 1.15 rad",
      SkeletonStatus::StrictSkeleton, 24);
  add("cube", klein_cube(0.4), "Klein cube |y_i| <= 0.4", SkeletonStatus::StrictSkeleton, 48);
  add("prism", triangular_prism(0.3, 0.35), "triangular prism, inradius 0.3, |y3| <= 0.35",
      SkeletonStatus::StrictSkeleton, 12);
  add("pyramid", square_pyramid(0.4, 0.3, 0.5), "square pyramid, base half-width 0.4 at y3 = -0.3, apex y3 = 0.5",
      SkeletonStatus::StrictSkeleton, 8);
  add("cube-diagonal", cube_with_diagonal(0.4), "Klein cube |y_i| <= 0.4 with face 0 split along a diagonal",
      SkeletonStatus::WeakBoundary, 4);
  for (auto& e : cat) {
    const auto status = check_membership(e.realization).status;
    if (status != e.expected_status)
      throw Error(Errc::CatalogBroken, e.name + " classified as " + status_name(status));
    const long sym = automorphism_count(e.realization.graph());
    if (sym != e.symmetry_count)
      throw Error(Errc::CatalogBroken, e.name + " has " + std::to_string(sym) + " automorphisms");
  }
  return cat;
}

const CatalogEntry& catalog_find(const std::vector<CatalogEntry>& cat, const std::string& name) {
  for (const auto& e : cat)
    if (e.name == name) return e;
  throw Error(Errc::Config, "no catalog entry named " + name);
}

}  // namespace hypoly

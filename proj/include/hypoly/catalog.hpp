#pragma once

#include <string>
#include <vector>

#include "hypoly/polyhedron.hpp"

namespace hypoly {

struct CatalogEntry {
  std::string name;
  Realization realization;
  std::string provenance;
  SkeletonStatus expected_status = SkeletonStatus::StrictSkeleton;
  long symmetry_count = 0;  // automorphisms of the abstract graph
};

/// Regular tetrahedron with all dihedral angles equal to `angle`
/// (arccos(1/3) is the Euclidean limit, so angle must lie below it).
Realization regular_tetrahedron(double angle);
/// Cube {|y_i| <= s} in the Klein ball, s < 1/sqrt(3).
Realization klein_cube(double s);
/// Prism over an equilateral triangle with inradius a, height |y3| <= b.
Realization triangular_prism(double a, double b);
/// Square pyramid: base {y3 >= -b}, base half-width w, apex at (0, 0, apex).
Realization square_pyramid(double w, double b, double apex);
/// Klein cube with face 0 split along a diagonal; on the weak boundary.
Realization cube_with_diagonal(double s);

/// Builds every entry and re-verifies its status and symmetry count.
/// Throws CatalogBroken.
std::vector<CatalogEntry> catalog_build();

const CatalogEntry& catalog_find(const std::vector<CatalogEntry>& cat, const std::string& name);

}  // namespace hypoly

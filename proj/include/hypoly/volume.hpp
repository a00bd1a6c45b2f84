#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hypoly/polyhedron.hpp"

namespace hypoly {

enum class VolumeMethod { Quadrature, MonteCarlo, Schlafli };

const char* method_name(VolumeMethod m);

struct VolumeEstimate {
  double value = 0.0;
  VolumeMethod method = VolumeMethod::Quadrature;
  double error_bound = 0.0;  // absolute; one standard deviation for Monte Carlo
  long samples = 0;          // integrand evaluations
  int levels = 0;            // deepest subdivision level reached
};

struct QuadratureOptions {
  double tolerance = 1e-6;
  int order = 6;  // Gauss-Legendre points per direction
  int max_depth = 10;
};

/// Integrates (1-|y|^2)^-2 over the Klein polytope: fan simplices from the
/// vertex centroid, collapsed-coordinate Gauss rules, adaptive 8-way
/// refinement until successive levels agree.
VolumeEstimate volume_quadrature(const Realization& r, const QuadratureOptions& opt = {});

/// Rejection sampling in the vertex bounding box.  Samples are drawn from a
/// counter-based generator in fixed-size chunks, so the estimate does not
/// depend on the thread count.
VolumeEstimate volume_mc(const Realization& r, long n_samples = 10'000'000, std::uint64_t seed = 1,
                         int threads = 1);

/// -1/2 sum_i l_i dtheta_i/dt.  Throws IndexMismatch.
double schlafli_rate(const EdgeLengthVector& lengths, const Eigen::VectorXd& angle_rates);

struct SchlafliPathRecord {
  std::vector<double> t;
  std::vector<Realization> realizations;
  std::vector<AngleVector> angles;
  std::vector<EdgeLengthVector> lengths;
  std::vector<Eigen::VectorXd> angle_rates;
  std::vector<double> rate;  // Schlafli dVol/dt at each grid point
  double volume_difference = 0.0;

  std::size_t size() const { return t.size(); }
  /// Appends a grid point and computes its rate.
  void push(double ti, Realization r, AngleVector theta, EdgeLengthVector l, Eigen::VectorXd theta_dot);
};

/// Integral of the rate over the (possibly nonuniform) grid by composite
/// Simpson; a trailing odd interval uses the quadratic through the last three
/// points.
double integrate_rate(const std::vector<double>& t, const std::vector<double>& rate);

/// v0 + integral of the Schlafli rate.  Throws PathBroken if any recorded
/// realization fails membership.
double volume_by_continuation(const SchlafliPathRecord& path, double v0);

/// The same path traversed backwards, reparametrised by t0 + tm - t.
SchlafliPathRecord reversed(const SchlafliPathRecord& path);

namespace detail {
struct GaussRule {
  Eigen::VectorXd nodes;  // on [0,1]
  Eigen::VectorXd weights;
};
GaussRule gauss_legendre(int n);

std::uint64_t splitmix64(std::uint64_t x);
}  // namespace detail

}  // namespace hypoly

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypoly/graph.hpp"
#include "hypoly/polyhedron.hpp"

namespace hypoly {

/// Nonzero complex number as (log|z|, arg z), or the distinguished zero.
struct LogComplex {
  double log_abs = 0.0;
  double phase = 0.0;  // in (-pi, pi]
  bool zero = false;

  static LogComplex one() { return {}; }
  static LogComplex zero_value() { return {0.0, 0.0, true}; }
  static LogComplex from_real(double x);
  static LogComplex from_complex(std::complex<double> z);

  std::complex<double> value() const;
  LogComplex inverse() const;  // throws ZeroInvariant on zero

  friend LogComplex operator*(const LogComplex& a, const LogComplex& b);
  friend LogComplex operator/(const LogComplex& a, const LogComplex& b);
};

/// Sum of terms that may span hundreds of orders of magnitude: rescaled by
/// the largest, added smallest first with Neumaier compensation.
LogComplex log_sum(std::vector<LogComplex> terms);

/// Throws OutOfRange unless r is odd and at least 5.
void require_root(int r);

/// [n] = sin(2 pi n / r) / sin(2 pi / r).
double qint(int n, int r);
/// [n]! for 0 <= n <= r-1.
LogComplex qfact(int n, int r);

bool admissible_triple(int a, int b, int c, int r);

double unknot_value(int n, int r);
LogComplex unknot_log(int n, int r);
LogComplex theta_value(int a, int b, int c, int r);

/// Tetrahedral network whose vertices carry the triples (a,b,c), (a,e,f),
/// (d,b,f), (d,e,c); (a,d), (b,e), (c,f) are opposite edges.
LogComplex tet_6j(int a, int b, int c, int d, int e, int f, int r);

using Coloring = std::vector<int>;

/// Checks parity, range [0, r-3] and admissibility at every trivalent vertex.
/// Throws Inadmissible.
void require_admissible(const PlanarGraph& g, const Coloring& col, int r);

/// Recursive skein reduction: zero-colored edges, loops, theta components,
/// bigons, triangles, then a recoupling move on an edge of a smallest face.
/// With a seed, ties between candidate moves are broken at random.
LogComplex eval_trivalent_bracket(const PlanarGraph& g, const Coloring& col, int r,
                                  std::optional<std::uint64_t> seed = {});

enum class YokotaNormalization {
  Bare,     // |<G>|^2
  Unitary,  // |<G>|^2 / prod_v |theta_v|, required for vertex splitting
};

/// Replaces each vertex of valence k > 3 by a fan of k-2 trivalent vertices
/// (starting at rotation position `offset`) and sums over the colors of the
/// new edges with the given weight per edge.
struct VertexSplitting {
  std::function<LogComplex(int color, int r)> weight;
  int offset = 0;

  /// Weight Delta_j, which makes the sum independent of the fan chosen.
  static VertexSplitting quantum_dimension(int offset = 0);
};

struct YokotaOptions {
  YokotaNormalization normalization = YokotaNormalization::Bare;
  std::optional<VertexSplitting> splitting;
  std::optional<std::uint64_t> seed;
};

/// log of the Yokota value, zero flag set when it vanishes.  Throws
/// UnsupportedVertexSplitting for non-trivalent graphs without a splitting.
LogComplex yokota_log(const PlanarGraph& g, const Coloring& col, int r, const YokotaOptions& opt = {});
double yokota_value(const PlanarGraph& g, const Coloring& col, int r, const YokotaOptions& opt = {});

/// Nearest even integer to r (pi - alpha_e) / (2 pi), clamped to [0, r-3],
/// then the lexicographically first change of at most three edges by +-2
/// that restores admissibility.  Throws NoAdmissibleColoring.
struct ColorAssignment {
  Coloring colors;
  int adjustments = 0;
};
ColorAssignment color_assignment(const PlanarGraph& g, const AngleVector& angles, int r);
Coloring color_sequence(const PlanarGraph& g, const AngleVector& angles, int r);

struct SlopePoint {
  int r = 0;
  Coloring colors;
  double log_y = 0.0;
  double slope = 0.0;  // (pi / r) log Y
  bool zero = false;
};

struct SlopeSeries {
  std::vector<SlopePoint> points;
  double extrapolated = 0.0;  // intercept of slope ~ c0 + c1 / r
  double fit_coefficient = 0.0;
  double fit_residual = 0.0;  // rms
  int fit_points = 0;
  double angle_constant = 0.0;  // max_e,r r |2 pi col/r - (pi - alpha)|
  std::vector<std::string> warnings;
};

/// Colors from color_sequence at each r.
SlopeSeries volconj_slopes(const PlanarGraph& g, const AngleVector& angles, const std::vector<int>& r_list,
                           const YokotaOptions& opt = {});
/// Arbitrary color rule, e.g. a fixed coloring for a control run.
SlopeSeries slope_series(const PlanarGraph& g, const std::vector<int>& r_list,
                         const std::function<Coloring(int r)>& colors, const YokotaOptions& opt = {});

}  // namespace hypoly

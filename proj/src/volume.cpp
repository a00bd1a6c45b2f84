#include "hypoly/volume.hpp"

#include <array>
#include <cmath>
#include <thread>

#include "hypoly/error.hpp"

namespace hypoly {

const char* method_name(VolumeMethod m) {
  switch (m) {
    case VolumeMethod::Quadrature: return "quadrature";
    case VolumeMethod::MonteCarlo: return "montecarlo";
    case VolumeMethod::Schlafli: return "schlafli";
  }
  return "unknown";
}

namespace detail {

GaussRule gauss_legendre(int n) {
  // Golub-Welsch: eigen-decomposition of the Jacobi matrix of the Legendre
  // recurrence.
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = j(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  GaussRule g;
  g.nodes = (es.eigenvalues().array() + 1.0) / 2.0;
  g.weights = es.eigenvectors().row(0).transpose().array().square();  // sums to 1 on [0,1]
  return g;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

namespace {

using V3 = Eigen::Vector3d;
using Tet = std::array<V3, 4>;

double klein_density(const V3& y) {
  const double s = 1.0 - y.squaredNorm();
  return 1.0 / (s * s);
}

struct TetRule {
  detail::GaussRule g;
  long evaluations = 0;

  double integrate(const Tet& p) {
    const V3 a = p[1] - p[0], b = p[2] - p[1], c = p[3] - p[2];
    Eigen::Matrix3d m;
    m << a, b, c;
    const double det = std::abs(m.determinant());
    const int n = static_cast<int>(g.nodes.size());
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = g.nodes(i);
      for (int j = 0; j < n; ++j) {
        const double v = g.nodes(j);
        const double wuv = g.weights(i) * g.weights(j) * u * u * v;
        for (int k = 0; k < n; ++k) {
          const double w = g.nodes(k);
          sum += wuv * g.weights(k) * klein_density(p[0] + u * (a + v * (b + w * c)));
        }
      }
    }
    evaluations += static_cast<long>(n) * n * n;
    return sum * det;
  }
};

std::array<Tet, 8> split8(const Tet& t) {
  const auto mid = [&](int i, int j) -> V3 { return (t[i] + t[j]) / 2.0; };
  const V3 ab = mid(0, 1), ac = mid(0, 2), ad = mid(0, 3), bc = mid(1, 2), bd = mid(1, 3), cd = mid(2, 3);
  return {{{t[0], ab, ac, ad},
           {ab, t[1], bc, bd},
           {ac, bc, t[2], cd},
           {ad, bd, cd, t[3]},
           {ab, ac, ad, bd},
           {ab, ac, bc, bd},
           {ac, ad, bd, cd},
           {ac, bc, bd, cd}}};
}

struct AdaptState {
  TetRule rule;
  double error = 0.0;
  int levels = 0;
  int max_depth = 0;
};

double refine(AdaptState& st, const Tet& t, double coarse, double tol, int depth) {
  const auto kids = split8(t);
  std::array<double, 8> vals{};
  double fine = 0.0;
  for (int i = 0; i < 8; ++i) fine += vals[i] = st.rule.integrate(kids[i]);
  const double diff = std::abs(fine - coarse);
  st.levels = std::max(st.levels, depth + 1);
  if (diff <= tol || depth + 1 >= st.max_depth) {
    st.error += diff;
    return fine;
  }
  double sum = 0.0;
  for (int i = 0; i < 8; ++i) sum += refine(st, kids[i], vals[i], tol / 8.0, depth + 1);
  return sum;
}

std::vector<Tet> fan_simplices(const Realization& r, const std::vector<KleinPoint<double>>& y) {
  V3 c = V3::Zero();
  for (const auto& k : y) c += k.y;
  c /= static_cast<double>(y.size());
  std::vector<Tet> out;
  for (const auto& f : r.graph().faces()) {
    const auto& vs = f.vertices;
    for (std::size_t i = 1; i + 1 < vs.size(); ++i) out.push_back({c, y[vs[0]].y, y[vs[i]].y, y[vs[i + 1]].y});
  }
  return out;
}

double euclid_volume(const Tet& t) {
  Eigen::Matrix3d m;
  m << t[1] - t[0], t[2] - t[0], t[3] - t[0];
  return std::abs(m.determinant()) / 6.0;
}

}  // namespace

VolumeEstimate volume_quadrature(const Realization& r, const QuadratureOptions& opt) {
  const auto y = klein_vertices(solve_vertices(r));
  const auto tets = fan_simplices(r, y);
  double total_euclid = 0.0;
  for (const auto& t : tets) total_euclid += euclid_volume(t);
  AdaptState st{TetRule{detail::gauss_legendre(opt.order)}, 0.0, 0, opt.max_depth};
  double value = 0.0;
  for (const auto& t : tets) {
    const double ve = euclid_volume(t);
    if (ve <= 0.0) continue;
    const double coarse = st.rule.integrate(t);
    value += refine(st, t, coarse, opt.tolerance * ve / total_euclid, 0);
  }
  return {value, VolumeMethod::Quadrature, st.error, st.rule.evaluations, st.levels};
}

VolumeEstimate volume_mc(const Realization& r, long n_samples, std::uint64_t seed, int threads) {
  if (n_samples <= 0) throw Error(Errc::Config, "sample count must be positive");
  const auto y = klein_vertices(solve_vertices(r));
  V3 lo = y[0].y, hi = y[0].y;
  for (const auto& k : y) {
    lo = lo.cwiseMin(k.y);
    hi = hi.cwiseMax(k.y);
  }
  const V3 span = hi - lo;
  const double box = span.prod();
  const int nf = r.graph().face_count();
  Eigen::MatrixXd n(nf, 3);
  Eigen::VectorXd d(nf);
  for (int f = 0; f < nf; ++f) {
    n.row(f) = r.plane(f).u.tail<3>().transpose();
    d(f) = r.plane(f).u(0);
  }

  constexpr long kChunk = 1L << 16;
  const long chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<double> sum(chunks, 0.0), sum2(chunks, 0.0);
  auto run_chunk = [&](long c) {
    const long begin = c * kChunk, end = std::min(n_samples, begin + kChunk);
    double s = 0.0, s2 = 0.0;
    for (long i = begin; i < end; ++i) {
      V3 p;
      for (int j = 0; j < 3; ++j) {
        const std::uint64_t bits = detail::splitmix64(seed ^ detail::splitmix64(3 * static_cast<std::uint64_t>(i) + j));
        p(j) = lo(j) + span(j) * (static_cast<double>(bits >> 11) * 0x1.0p-53);
      }
      if (((n * p).array() <= d.array()).all()) {
        const double f = klein_density(p);
        s += f;
        s2 += f * f;
      }
    }
    sum[c] = s;
    sum2[c] = s2;
  };
  const int nt = std::max(1, threads);
  if (nt == 1) {
    for (long c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        for (long c = t; c < chunks; c += nt) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }
  double s = 0.0, s2 = 0.0;
  for (long c = 0; c < chunks; ++c) {
    s += sum[c];
    s2 += sum2[c];
  }
  const double nn = static_cast<double>(n_samples);
  const double mean = s / nn;
  const double var = std::max(0.0, s2 / nn - mean * mean);
  return {box * mean, VolumeMethod::MonteCarlo, box * std::sqrt(var / nn), n_samples, 0};
}

double schlafli_rate(const EdgeLengthVector& lengths, const Eigen::VectorXd& angle_rates) {
  if (lengths.size() != angle_rates.size())
    throw Error(Errc::IndexMismatch, "edge lengths and angle rates have different sizes");
  return -0.5 * lengths.dot(angle_rates);
}

void SchlafliPathRecord::push(double ti, Realization r, AngleVector theta, EdgeLengthVector l,
                              Eigen::VectorXd theta_dot) {
  rate.push_back(schlafli_rate(l, theta_dot));
  t.push_back(ti);
  realizations.push_back(std::move(r));
  angles.push_back(std::move(theta));
  lengths.push_back(std::move(l));
  angle_rates.push_back(std::move(theta_dot));
  volume_difference = integrate_rate(t, rate);
}

double integrate_rate(const std::vector<double>& t, const std::vector<double>& f) {
  if (t.size() != f.size()) throw Error(Errc::IndexMismatch, "grid and rate sizes differ");
  const std::size_t m = t.size();
  if (m < 2) return 0.0;
  for (std::size_t i = 1; i < m; ++i)
    if (!(t[i] > t[i - 1])) throw Error(Errc::PathBroken, "parameter grid is not strictly increasing");
  if (m == 2) return (t[1] - t[0]) * (f[0] + f[1]) / 2.0;
  double sum = 0.0;
  std::size_t i = 0;
  for (; i + 2 < m; i += 2) {
    const double h0 = t[i + 1] - t[i], h1 = t[i + 2] - t[i + 1];
    sum += (h0 + h1) / 6.0 *
           ((2.0 - h1 / h0) * f[i] + (h0 + h1) * (h0 + h1) / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
  }
  if (i + 1 < m) {
    // last interval [t_{m-2}, t_{m-1}] from the quadratic through three points
    const double h0 = t[m - 2] - t[m - 3], h1 = t[m - 1] - t[m - 2];
    sum += h1 * (f[m - 1] * (2 * h1 + 3 * h0) / (6 * (h0 + h1)) + f[m - 2] * (h1 + 3 * h0) / (6 * h0) -
                 f[m - 3] * h1 * h1 / (6 * h0 * (h0 + h1)));
  }
  return sum;
}

double volume_by_continuation(const SchlafliPathRecord& path, double v0) {
  for (std::size_t i = 0; i < path.realizations.size(); ++i)
    if (check_membership(path.realizations[i]).status == SkeletonStatus::Invalid)
      throw Error(Errc::PathBroken, "realization at grid index " + std::to_string(i) + " is invalid");
  return v0 + integrate_rate(path.t, path.rate);
}

SchlafliPathRecord reversed(const SchlafliPathRecord& path) {
  SchlafliPathRecord out;
  if (path.t.empty()) return out;
  const double t0 = path.t.front(), tm = path.t.back();
  for (std::size_t k = path.size(); k-- > 0;) {
    out.t.push_back(t0 + tm - path.t[k]);
    out.realizations.push_back(path.realizations[k]);
    out.angles.push_back(path.angles[k]);
    out.lengths.push_back(path.lengths[k]);
    out.angle_rates.push_back(-path.angle_rates[k]);
    out.rate.push_back(-path.rate[k]);
  }
  out.volume_difference = integrate_rate(out.t, out.rate);
  return out;
}

}  // namespace hypoly

#include "hypoly/quantum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "hypoly/error.hpp"

namespace hypoly {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phase(double p) {
  p = std::remainder(p, 2 * kPi);
  if (p <= -kPi) p += 2 * kPi;
  return p;
}

const std::vector<LogComplex>& fact_table(int r) {
  thread_local std::unordered_map<int, std::vector<LogComplex>> cache;
  auto it = cache.find(r);
  if (it != cache.end()) return it->second;
  std::vector<LogComplex> t(r);
  t[0] = LogComplex::one();
  for (int n = 1; n < r; ++n) t[n] = t[n - 1] * LogComplex::from_real(qint(n, r));
  return cache.emplace(r, std::move(t)).first->second;
}

LogComplex sign_power(int k) { return k % 2 == 0 ? LogComplex::one() : LogComplex::from_real(-1.0); }

}  // namespace

LogComplex LogComplex::from_real(double x) {
  if (x == 0.0) return zero_value();
  return {std::log(std::abs(x)), x < 0 ? kPi : 0.0, false};
}

LogComplex LogComplex::from_complex(std::complex<double> z) {
  if (z == 0.0) return zero_value();
  return {std::log(std::abs(z)), std::arg(z), false};
}

std::complex<double> LogComplex::value() const {
  if (zero) return 0.0;
  return std::polar(std::exp(log_abs), phase);
}

LogComplex LogComplex::inverse() const {
  if (zero) throw Error(Errc::ZeroInvariant, "division by zero");
  return {-log_abs, wrap_phase(-phase), false};
}

LogComplex operator*(const LogComplex& a, const LogComplex& b) {
  if (a.zero || b.zero) return LogComplex::zero_value();
  return {a.log_abs + b.log_abs, wrap_phase(a.phase + b.phase), false};
}

LogComplex operator/(const LogComplex& a, const LogComplex& b) { return a * b.inverse(); }

LogComplex log_sum(std::vector<LogComplex> terms) {
  std::erase_if(terms, [](const LogComplex& z) { return z.zero; });
  if (terms.empty()) return LogComplex::zero_value();
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.log_abs < b.log_abs; });
  const double scale = terms.back().log_abs;
  double re = 0, im = 0, cre = 0, cim = 0;
  auto add = [](double& s, double& c, double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  };
  for (const auto& z : terms) {
    const double m = std::exp(z.log_abs - scale);
    // real terms stay exactly real
    if (z.phase == 0.0 || z.phase == kPi) {
      add(re, cre, z.phase == 0.0 ? m : -m);
      continue;
    }
    const std::complex<double> w = std::polar(m, z.phase);
    add(re, cre, w.real());
    add(im, cim, w.imag());
  }
  const std::complex<double> s(re + cre, im + cim);
  if (std::abs(s) == 0.0) return LogComplex::zero_value();
  return {std::log(std::abs(s)) + scale, std::arg(s), false};
}

void require_root(int r) {
  if (r < 5 || r % 2 == 0) throw Error(Errc::OutOfRange, "r must be odd and at least 5 (got " + std::to_string(r) + ")");
}

double qint(int n, int r) {
  if (r < 3) throw Error(Errc::OutOfRange, "r must exceed 2");
  if (n < 0 || n > r - 1) throw Error(Errc::OutOfRange, "quantum integer index out of range");
  if (n == 0) return 0.0;
  return std::sin(2 * kPi * n / r) / std::sin(2 * kPi / r);
}

LogComplex qfact(int n, int r) {
  if (r < 3 || n < 0 || n > r - 1) throw Error(Errc::OutOfRange, "quantum factorial index out of range");
  return fact_table(r)[n];
}

bool admissible_triple(int a, int b, int c, int r) {
  if (a < 0 || b < 0 || c < 0) return false;
  if ((a + b + c) % 2 != 0) return false;
  if (a + b < c || b + c < a || c + a < b) return false;
  if ((a + b - c) % 2 || (b + c - a) % 2 || (c + a - b) % 2) return false;
  return a + b + c <= 2 * (r - 2);
}

double unknot_value(int n, int r) { return (n % 2 ? -1.0 : 1.0) * qint(n + 1, r); }

LogComplex unknot_log(int n, int r) { return LogComplex::from_real(unknot_value(n, r)); }

LogComplex theta_value(int a, int b, int c, int r) {
  if (!admissible_triple(a, b, c, r)) {
    std::ostringstream os;
    os << "triple (" << a << "," << b << "," << c << ") is not " << r << "-admissible";
    throw Error(Errc::Inadmissible, os.str());
  }
  const int x = (a + b - c) / 2, y = (b + c - a) / 2, z = (c + a - b) / 2;
  return sign_power(x + y + z) * qfact(x + y + z + 1, r) * qfact(x, r) * qfact(y, r) * qfact(z, r) /
         (qfact(x + y, r) * qfact(y + z, r) * qfact(z + x, r));
}

LogComplex tet_6j(int a, int b, int c, int d, int e, int f, int r) {
  const std::array<std::array<int, 3>, 4> tri{{{a, b, c}, {a, e, f}, {d, b, f}, {d, e, c}}};
  for (const auto& t : tri)
    if (!admissible_triple(t[0], t[1], t[2], r)) {
      std::ostringstream os;
      os << "tetrahedron triple (" << t[0] << "," << t[1] << "," << t[2] << ") is not " << r << "-admissible";
      throw Error(Errc::Inadmissible, os.str());
    }
  std::array<int, 4> T{};
  for (int i = 0; i < 4; ++i) T[i] = (tri[i][0] + tri[i][1] + tri[i][2]) / 2;
  const std::array<int, 3> Q{(a + d + b + e) / 2, (a + d + c + f) / 2, (b + e + c + f) / 2};
  LogComplex pre = LogComplex::one();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) pre = pre * qfact(Q[j] - T[i], r);
  for (int x : {a, b, c, d, e, f}) pre = pre / qfact(x, r);
  const int lo = *std::max_element(T.begin(), T.end());
  const int hi = *std::min_element(Q.begin(), Q.end());
  std::vector<LogComplex> terms;
  for (int s = lo; s <= hi; ++s) {
    if (s + 1 > r - 1) break;  // [s+1]! contains [r] = 0
    LogComplex t = sign_power(s) * qfact(s + 1, r);
    for (int i = 0; i < 4; ++i) t = t / qfact(s - T[i], r);
    for (int j = 0; j < 3; ++j) t = t / qfact(Q[j] - s, r);
    terms.push_back(t);
  }
  return pre * log_sum(std::move(terms));
}

void require_admissible(const PlanarGraph& g, const Coloring& col, int r) {
  require_root(r);
  if (static_cast<int>(col.size()) != g.edge_count())
    throw Error(Errc::IndexMismatch, "coloring has " + std::to_string(col.size()) + " entries for " +
                                         std::to_string(g.edge_count()) + " edges");
  for (int e = 0; e < g.edge_count(); ++e)
    if (col[e] < 0 || col[e] % 2 || col[e] > r - 3)
      throw Error(Errc::Inadmissible, "color " + std::to_string(col[e]) + " on edge " + std::to_string(e) +
                                          " is not an even number in [0, r-3]");
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto rot = g.rotation(v);
    if (rot.size() != 3) continue;
    if (!admissible_triple(col[rot[0]], col[rot[1]], col[rot[2]], r))
      throw Error(Errc::Inadmissible, "coloring is not admissible at vertex " + std::to_string(v));
  }
}

VertexSplitting VertexSplitting::quantum_dimension(int offset) {
  return {[](int j, int r) { return unknot_log(j, r); }, offset};
}

namespace {

struct SplitGraph {
  PlanarGraph graph;
  std::vector<int> new_edges;  // indices of the edges created by the splitting
};

SplitGraph fan_split(const PlanarGraph& g, int offset) {
  auto edges = g.edges();
  std::vector<std::vector<int>> rot(g.rotations());
  std::vector<int> created;
  const int nv0 = g.vertex_count();
  int nv = nv0;
  for (int v = 0; v < nv0; ++v) {
    const int k = g.degree(v);
    if (k <= 3) continue;
    std::vector<int> leg(k);
    for (int i = 0; i < k; ++i) leg[i] = g.rotation(v)[((i + offset) % k + k) % k];
    // fan vertices t_1 .. t_{k-2}: t_1 = v, the rest appended
    std::vector<int> t(k - 2);
    t[0] = v;
    for (int i = 1; i < k - 2; ++i) t[i] = nv++;
    rot.resize(nv);
    std::vector<int> inner(k - 3);
    for (int i = 0; i < k - 3; ++i) {
      inner[i] = static_cast<int>(edges.size());
      edges.push_back({t[i], t[i + 1]});
      created.push_back(inner[i]);
    }
    auto attach = [&](int e, int w) {
      if (edges[e][0] == v) edges[e][0] = w;
      else edges[e][1] = w;
    };
    attach(leg[0], t[0]);
    attach(leg[1], t[0]);
    rot[t[0]] = {leg[0], leg[1], inner[0]};
    for (int i = 1; i < k - 3; ++i) {
      attach(leg[i + 1], t[i]);
      rot[t[i]] = {inner[i - 1], leg[i + 1], inner[i]};
    }
    attach(leg[k - 2], t[k - 3]);
    attach(leg[k - 1], t[k - 3]);
    rot[t[k - 3]] = {inner[k - 4], leg[k - 2], leg[k - 1]};
  }
  return {PlanarGraph(nv, std::move(edges), std::move(rot)), std::move(created)};
}

LogComplex trivalent_yokota(const PlanarGraph& g, const Coloring& col, int r, const YokotaOptions& opt) {
  const LogComplex b = eval_trivalent_bracket(g, col, r, opt.seed);
  if (b.zero) return b;
  LogComplex y{2 * b.log_abs, 0.0, false};
  if (opt.normalization == YokotaNormalization::Unitary)
    for (int v = 0; v < g.vertex_count(); ++v) {
      const auto rot = g.rotation(v);
      y.log_abs -= theta_value(col[rot[0]], col[rot[1]], col[rot[2]], r).log_abs;
    }
  return y;
}

}  // namespace

LogComplex yokota_log(const PlanarGraph& g, const Coloring& col, int r, const YokotaOptions& opt) {
  bool trivalent = true;
  for (int v = 0; v < g.vertex_count(); ++v) trivalent = trivalent && g.degree(v) == 3;
  if (trivalent) {
    require_admissible(g, col, r);
    return trivalent_yokota(g, col, r, opt);
  }
  if (!opt.splitting || !opt.splitting->weight)
    throw Error(Errc::UnsupportedVertexSplitting, "graph has vertices of valence > 3 and no splitting is configured");
  if (opt.normalization != YokotaNormalization::Unitary)
    throw Error(Errc::UnsupportedVertexSplitting, "vertex splitting is defined for the unitary normalization only");
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) < 3) throw Error(Errc::NotTrivalent, "vertex of valence < 3");
  require_root(r);
  const SplitGraph sg = fan_split(g, opt.splitting->offset);
  Coloring c = col;
  c.resize(sg.graph.edge_count(), 0);
  std::vector<LogComplex> terms;
  const std::size_t m = sg.new_edges.size();
  std::vector<int> choice(m, 0);
  // odometer over even colors of the new edges
  for (;;) {
    for (std::size_t i = 0; i < m; ++i) c[sg.new_edges[i]] = choice[i];
    bool ok = true;
    for (int v = 0; v < sg.graph.vertex_count() && ok; ++v) {
      const auto rot = sg.graph.rotation(v);
      ok = admissible_triple(c[rot[0]], c[rot[1]], c[rot[2]], r);
    }
    if (ok) {
      // signed sum: weight * <G'>^2 / prod theta_v
      const LogComplex b = eval_trivalent_bracket(sg.graph, c, r, opt.seed);
      if (!b.zero) {
        LogComplex t = b * b;
        for (std::size_t i = 0; i < m; ++i) t = t * opt.splitting->weight(choice[i], r);
        for (int v = 0; v < sg.graph.vertex_count(); ++v) {
          const auto rot = sg.graph.rotation(v);
          t = t / theta_value(c[rot[0]], c[rot[1]], c[rot[2]], r);
        }
        terms.push_back(t);
      }
    }
    std::size_t i = 0;
    for (; i < m; ++i) {
      choice[i] += 2;
      if (choice[i] <= r - 3) break;
      choice[i] = 0;
    }
    if (i == m) break;
  }
  LogComplex s = log_sum(std::move(terms));
  s.phase = 0.0;
  return s;
}

double yokota_value(const PlanarGraph& g, const Coloring& col, int r, const YokotaOptions& opt) {
  const LogComplex y = yokota_log(g, col, r, opt);
  return y.zero ? 0.0 : std::exp(y.log_abs);
}

namespace {

bool coloring_admissible(const PlanarGraph& g, const Coloring& c, int r) {
  for (int x : c)
    if (x < 0 || x > r - 3) return false;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto rot = g.rotation(v);
    if (rot.size() == 3) {
      if (!admissible_triple(c[rot[0]], c[rot[1]], c[rot[2]], r)) return false;
    } else {
      int sum = 0, mx = 0;
      for (int e : rot) {
        sum += c[e];
        mx = std::max(mx, c[e]);
      }
      if (2 * mx > sum) return false;  // no admissible splitting can exist
    }
  }
  return true;
}

}  // namespace

ColorAssignment color_assignment(const PlanarGraph& g, const AngleVector& angles, int r) {
  require_root(r);
  if (angles.size() != g.edge_count()) throw Error(Errc::IndexMismatch, "one angle per edge required");
  const int ne = g.edge_count();
  Coloring base(ne);
  for (int e = 0; e < ne; ++e) {
    if (!(angles(e) > 0.0 && angles(e) < kPi)) throw Error(Errc::OutOfRange, "angles must lie in (0, pi)");
    const double x = r * (kPi - angles(e)) / (2 * kPi);
    base[e] = std::clamp(2 * static_cast<int>(std::lround(x / 2)), 0, r - 3);
  }
  if (coloring_admissible(g, base, r)) return {base, 0};
  for (int k = 1; k <= std::min(3, ne); ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      for (int mask = 0; mask < (1 << k); ++mask) {
        Coloring c = base;
        for (int i = 0; i < k; ++i) c[idx[i]] += (mask >> (k - 1 - i)) & 1 ? 2 : -2;
        if (coloring_admissible(g, c, r)) return {c, k};
      }
      int i = k - 1;
      while (i >= 0 && idx[i] == ne - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw Error(Errc::NoAdmissibleColoring, "no admissible coloring within three adjustments at r = " + std::to_string(r));
}

Coloring color_sequence(const PlanarGraph& g, const AngleVector& angles, int r) {
  return color_assignment(g, angles, r).colors;
}

SlopeSeries slope_series(const PlanarGraph& g, const std::vector<int>& r_list,
                         const std::function<Coloring(int r)>& colors, const YokotaOptions& opt) {
  SlopeSeries s;
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    require_root(r_list[i]);
    if (i && r_list[i] <= r_list[i - 1]) throw Error(Errc::OutOfRange, "r values must be strictly increasing");
  }
  std::vector<std::future<SlopePoint>> jobs;
  for (int r : r_list)
    jobs.push_back(std::async(std::launch::async, [&, r] {
      SlopePoint p;
      p.r = r;
      p.colors = colors(r);
      const LogComplex y = yokota_log(g, p.colors, r, opt);
      p.zero = y.zero;
      if (!y.zero) {
        p.log_y = y.log_abs;
        p.slope = kPi / r * y.log_abs;
      }
      return p;
    }));
  for (auto& j : jobs) {
    s.points.push_back(j.get());
    if (s.points.back().zero)
      s.warnings.push_back("ZeroInvariant at r = " + std::to_string(s.points.back().r) + "; excluded from the fit");
  }
  std::vector<const SlopePoint*> usable;
  for (const auto& p : s.points)
    if (!p.zero) usable.push_back(&p);
  const std::size_t keep = (usable.size() + 1) / 2;
  std::vector<const SlopePoint*> fit(usable.end() - static_cast<std::ptrdiff_t>(keep), usable.end());
  s.fit_points = static_cast<int>(fit.size());
  if (fit.size() == 1) {
    s.extrapolated = fit[0]->slope;
  } else if (fit.size() > 1) {
    Eigen::MatrixXd a(fit.size(), 2);
    Eigen::VectorXd b(fit.size());
    for (std::size_t i = 0; i < fit.size(); ++i) {
      a(i, 0) = 1.0;
      a(i, 1) = 1.0 / fit[i]->r;
      b(i) = fit[i]->slope;
    }
    const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
    s.extrapolated = c(0);
    s.fit_coefficient = c(1);
    s.fit_residual = std::sqrt((a * c - b).squaredNorm() / fit.size());
  }
  return s;
}

SlopeSeries volconj_slopes(const PlanarGraph& g, const AngleVector& angles, const std::vector<int>& r_list,
                           const YokotaOptions& opt) {
  SlopeSeries s = slope_series(g, r_list, [&](int r) { return color_sequence(g, angles, r); }, opt);
  for (const auto& p : s.points)
    for (int e = 0; e < g.edge_count(); ++e)
      s.angle_constant = std::max(s.angle_constant, std::abs(2 * kPi * p.colors[e] / p.r - (kPi - angles(e))) * p.r);
  return s;
}

}  // namespace hypoly

#include <algorithm>
#include <random>

#include "hypoly/error.hpp"
#include "hypoly/quantum.hpp"

namespace hypoly {

namespace {

// Mutable trivalent network.  Dart 2e leaves ends[e][0], dart 2e+1 leaves
// ends[e][1]; rot[v] lists the darts leaving v in cyclic order.
struct Net {
  std::vector<std::array<int, 2>> ends;
  std::vector<int> col;
  std::vector<char> edge_alive;
  std::vector<std::vector<int>> rot;
  std::vector<char> vertex_alive;

  int tail(int d) const { return ends[d / 2][d % 2]; }
  int head(int d) const { return ends[d / 2][1 - d % 2]; }

  int position(int v, int d) const {
    const auto& r = rot[v];
    return static_cast<int>(std::find(r.begin(), r.end(), d) - r.begin());
  }
  int next(int d) const {
    const auto& r = rot[tail(d)];
    return r[(position(tail(d), d) + 1) % r.size()];
  }
  int phi(int d) const { return next(d ^ 1); }

  void erase_dart(int d) {
    auto& r = rot[tail(d)];
    r.erase(std::find(r.begin(), r.end(), d));
  }
  void remove_edge(int e) {
    erase_dart(2 * e);
    erase_dart(2 * e + 1);
    edge_alive[e] = 0;
  }
  void replace_dart(int v, int from, int to) { *std::find(rot[v].begin(), rot[v].end(), from) = to; }

  // Edge e1 (dart d1 leaving the dying vertex) takes over the far end of the
  // edge whose dart d2 leaves the same vertex.
  void splice(int d1, int d2) {
    const int y = head(d2);
    ends[d1 / 2][d1 % 2] = y;
    replace_dart(y, d2 ^ 1, d1);
    edge_alive[d2 / 2] = 0;
  }

  std::vector<std::vector<int>> faces() const {
    std::vector<char> seen(2 * ends.size(), 0);
    std::vector<std::vector<int>> out;
    for (int d = 0; d < static_cast<int>(seen.size()); ++d) {
      if (!edge_alive[d / 2] || seen[d]) continue;
      std::vector<int> f;
      for (int x = d; !seen[x]; x = phi(x)) {
        seen[x] = 1;
        f.push_back(x);
      }
      out.push_back(std::move(f));
    }
    return out;
  }

  int new_edge(int u, int v, int c) {
    ends.push_back({u, v});
    col.push_back(c);
    edge_alive.push_back(1);
    return static_cast<int>(ends.size()) - 1;
  }
};

class Reducer {
 public:
  Reducer(int r, std::optional<std::uint64_t> seed) : r_(r), random_(seed.has_value()), rng_(seed.value_or(0)) {}

  LogComplex eval(Net n) {
    LogComplex factor = LogComplex::one();
    for (;;) {
      if (factor.zero) return factor;
      if (simplify_low_valence(n, factor)) continue;
      if (factor.zero) return factor;

      bool any = false;
      for (int v = 0; v < static_cast<int>(n.rot.size()) && !any; ++v) any = n.vertex_alive[v];
      if (!any) return factor;

      // loops at trivalent vertices and bridges carry a nonzero color into a
      // trivial representation
      for (int e = 0; e < static_cast<int>(n.ends.size()); ++e)
        if (n.edge_alive[e] && n.ends[e][0] == n.ends[e][1]) return LogComplex::zero_value();

      if (reduce_theta(n, factor)) continue;

      const auto faces = n.faces();
      std::vector<int> face_of(2 * n.ends.size(), -1);
      for (int f = 0; f < static_cast<int>(faces.size()); ++f)
        for (int d : faces[f]) face_of[d] = f;
      for (int e = 0; e < static_cast<int>(n.ends.size()); ++e)
        if (n.edge_alive[e] && face_of[2 * e] == face_of[2 * e + 1]) return LogComplex::zero_value();

      std::size_t smallest = faces.front().size();
      for (const auto& f : faces) smallest = std::min(smallest, f.size());
      std::vector<int> cand;
      for (int f = 0; f < static_cast<int>(faces.size()); ++f)
        if (faces[f].size() == smallest) cand.push_back(f);
      const auto& face = faces[pick(cand)];
      if (smallest == 2) {
        reduce_bigon(n, face, factor);
      } else if (smallest == 3) {
        reduce_triangle(n, face, factor);
      } else {
        std::vector<int> darts(face.begin(), face.end());
        return factor * recouple(n, darts[pick_index(darts.size())] / 2);
      }
    }
  }

 private:
  int pick_index(std::size_t n) {
    if (!random_ || n <= 1) return 0;
    return static_cast<int>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_));
  }
  int pick(const std::vector<int>& v) { return v[pick_index(v.size())]; }

  // Zero-colored edges, then vertices of valence at most two.
  bool simplify_low_valence(Net& n, LogComplex& factor) {
    std::vector<int> zero;
    for (int e = 0; e < static_cast<int>(n.ends.size()); ++e)
      if (n.edge_alive[e] && n.col[e] == 0) zero.push_back(e);
    if (!zero.empty()) {
      n.remove_edge(pick(zero));
      return true;
    }
    std::vector<int> low;
    for (int v = 0; v < static_cast<int>(n.rot.size()); ++v)
      if (n.vertex_alive[v] && n.rot[v].size() < 3) low.push_back(v);
    if (low.empty()) return false;
    const int v = pick(low);
    const auto& rv = n.rot[v];
    if (rv.size() == 1) {
      factor = LogComplex::zero_value();
      return true;
    }
    if (rv.size() == 2) {
      const int d1 = rv[0], d2 = rv[1];
      if (d1 / 2 == d2 / 2) {
        factor = factor * unknot_log(n.col[d1 / 2], r_);
        n.edge_alive[d1 / 2] = 0;
      } else if (n.col[d1 / 2] != n.col[d2 / 2]) {
        factor = LogComplex::zero_value();
        return true;
      } else {
        n.splice(d1, d2);
      }
    }
    n.rot[v].clear();
    n.vertex_alive[v] = 0;
    return true;
  }

  bool reduce_theta(Net& n, LogComplex& factor) {
    for (int u = 0; u < static_cast<int>(n.rot.size()); ++u) {
      if (!n.vertex_alive[u]) continue;
      const auto& ru = n.rot[u];
      const int v = n.head(ru[0]);
      if (v == u || n.head(ru[1]) != v || n.head(ru[2]) != v) continue;
      const int a = n.col[ru[0] / 2], b = n.col[ru[1] / 2], c = n.col[ru[2] / 2];
      if (!admissible_triple(a, b, c, r_)) {
        factor = LogComplex::zero_value();
        return true;
      }
      factor = factor * theta_value(a, b, c, r_);
      for (int d : std::vector<int>(ru)) n.edge_alive[d / 2] = 0;
      n.rot[u].clear();
      n.rot[v].clear();
      n.vertex_alive[u] = n.vertex_alive[v] = 0;
      return true;
    }
    return false;
  }

  int third(const Net& n, int v, int e1, int e2) const {
    for (int d : n.rot[v])
      if (d / 2 != e1 && d / 2 != e2) return d;
    throw Error(Errc::ReductionStuck, "vertex without a third edge");
  }

  void reduce_bigon(Net& n, const std::vector<int>& face, LogComplex& factor) {
    const int p = face[0] / 2, q = face[1] / 2;
    const int u = n.tail(face[0]), v = n.tail(face[1]);
    const int c1 = third(n, u, p, q), c2 = third(n, v, p, q);
    const int c = n.col[c1 / 2];
    if (c != n.col[c2 / 2]) {
      factor = LogComplex::zero_value();
      return;
    }
    factor = factor * theta_value(n.col[p], n.col[q], c, r_) / unknot_log(c, r_);
    n.splice(c1, c2);
    n.edge_alive[p] = n.edge_alive[q] = 0;
    n.rot[u].clear();
    n.rot[v].clear();
    n.vertex_alive[u] = n.vertex_alive[v] = 0;
  }

  void reduce_triangle(Net& n, const std::vector<int>& face, LogComplex& factor) {
    const int dx = face[0], dy = face[1], dz = face[2];  // u->v, v->w, w->u
    const int u = n.tail(dx), v = n.tail(dy), w = n.tail(dz);
    const int x = dx / 2, y = dy / 2, z = dz / 2;
    const int la = third(n, u, x, z), lb = third(n, v, x, y), lc = third(n, w, y, z);
    const int a = n.col[la / 2], b = n.col[lb / 2], c = n.col[lc / 2];
    if (!admissible_triple(a, b, c, r_)) {
      factor = LogComplex::zero_value();
      return;
    }
    factor = factor * tet_6j(a, b, c, n.col[y], n.col[z], n.col[x], r_) / theta_value(a, b, c, r_);
    // u survives with legs a, c, b
    n.ends[lb / 2][lb % 2] = u;
    n.ends[lc / 2][lc % 2] = u;
    n.rot[u] = {la, lc, lb};
    n.edge_alive[x] = n.edge_alive[y] = n.edge_alive[z] = 0;
    n.rot[v].clear();
    n.rot[w].clear();
    n.vertex_alive[v] = n.vertex_alive[w] = 0;
  }

  // Recoupling across edge e: the H with legs A, B at u and C, D at v becomes
  // a sum over the color i of the crossing edge.
  LogComplex recouple(const Net& n, int e) {
    const int de = 2 * e;
    const int u = n.tail(de), v = n.head(de);
    const auto& ru = n.rot[u];
    const auto& rv = n.rot[v];
    const int pu = n.position(u, de), pv = n.position(v, de ^ 1);
    const int dA = ru[(pu + 1) % 3], dB = ru[(pu + 2) % 3];
    const int dC = rv[(pv + 1) % 3], dD = rv[(pv + 2) % 3];
    const int A = n.col[dA / 2], B = n.col[dB / 2], C = n.col[dC / 2], D = n.col[dD / 2], j = n.col[e];
    std::vector<LogComplex> terms;
    for (int i = 0; i <= r_ - 3; i += 2) {
      if (!admissible_triple(A, D, i, r_) || !admissible_triple(B, C, i, r_)) continue;
      const LogComplex w = tet_6j(A, B, j, C, D, i, r_) * unknot_log(i, r_) /
                           (theta_value(A, D, i, r_) * theta_value(B, C, i, r_));
      if (w.zero) continue;
      Net m = n;
      m.edge_alive[e] = 0;
      const int ei = m.new_edge(u, v, i);
      m.ends[dA / 2][dA % 2] = v;
      m.ends[dC / 2][dC % 2] = u;
      m.rot[u] = {2 * ei, dB, dC};
      m.rot[v] = {2 * ei + 1, dD, dA};
      terms.push_back(w * eval(std::move(m)));
    }
    return log_sum(std::move(terms));
  }

  int r_;
  bool random_;
  std::mt19937_64 rng_;
};

}  // namespace

LogComplex eval_trivalent_bracket(const PlanarGraph& g, const Coloring& col, int r, std::optional<std::uint64_t> seed) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != 3) throw Error(Errc::NotTrivalent, "vertex " + std::to_string(v) + " has valence " +
                                                              std::to_string(g.degree(v)));
  require_admissible(g, col, r);
  for (int e = 0; e < g.edge_count(); ++e)
    if (g.edge(e)[0] == g.edge(e)[1]) throw Error(Errc::InvalidGraph, "loops are not supported");
  Net n;
  n.ends = g.edges();
  n.col = col;
  n.edge_alive.assign(g.edge_count(), 1);
  n.vertex_alive.assign(g.vertex_count(), 1);
  n.rot.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int e : g.rotation(v)) n.rot[v].push_back(g.out_dart(e, v));
  return Reducer(r, seed).eval(std::move(n));
}

}  // namespace hypoly

#include "hypoly/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "hypoly/error.hpp"

namespace hypoly {

PlanarGraph::PlanarGraph(int vertex_count, std::vector<std::array<int, 2>> edges,
                         std::vector<std::vector<int>> rotation, std::optional<int> marked_edge)
    : vertex_count_(vertex_count),
      edges_(std::move(edges)),
      rotation_(std::move(rotation)),
      marked_(marked_edge) {
  if (vertex_count_ < 1) throw Error(Errc::InvalidGraph, "graph needs at least one vertex");
  if (static_cast<int>(rotation_.size()) != vertex_count_)
    throw Error(Errc::InvalidGraph, "one rotation list per vertex required");
  std::vector<int> seen(2 * edges_.size(), 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [a, b] = edges_[e];
    if (a < 0 || b < 0 || a >= vertex_count_ || b >= vertex_count_)
      throw Error(Errc::InvalidGraph, "edge endpoint out of range");
    if (a == b) throw Error(Errc::InvalidGraph, "self-loops are not supported");
  }
  for (int v = 0; v < vertex_count_; ++v) {
    for (int e : rotation_[v]) {
      if (e < 0 || e >= edge_count()) throw Error(Errc::InvalidGraph, "rotation names unknown edge");
      if (edges_[e][0] != v && edges_[e][1] != v)
        throw Error(Errc::InvalidGraph, "rotation at vertex lists a non-incident edge");
      ++seen[out_dart(e, v)];
    }
  }
  for (int c : seen)
    if (c != 1) throw Error(Errc::InvalidGraph, "every edge must appear once in each endpoint rotation");
  if (marked_ && (*marked_ < 0 || *marked_ >= edge_count()))
    throw Error(Errc::InvalidGraph, "marked edge out of range");
  trace_faces();
}

void PlanarGraph::trace_faces() {
  // position of each out-dart in its rotation, for sigma
  std::vector<int> pos(dart_count(), -1);
  for (int v = 0; v < vertex_count_; ++v)
    for (int i = 0; i < degree(v); ++i) pos[out_dart(rotation_[v][i], v)] = i;
  auto sigma = [&](int d) {
    const int v = tail(d);
    const auto& rot = rotation_[v];
    const int next = rot[(pos[d] + 1) % rot.size()];
    return out_dart(next, v);
  };
  dart_face_.assign(dart_count(), -1);
  faces_.clear();
  for (int start = 0; start < dart_count(); ++start) {
    if (dart_face_[start] >= 0) continue;
    Face f;
    const int id = static_cast<int>(faces_.size());
    int d = start;
    do {
      dart_face_[d] = id;
      f.darts.push_back(d);
      f.vertices.push_back(tail(d));
      f.edges.push_back(d / 2);
      d = sigma(d ^ 1);
    } while (d != start);
    faces_.push_back(std::move(f));
  }
}

std::vector<int> PlanarGraph::faces_around(int v) const {
  std::vector<int> out;
  out.reserve(rotation_[v].size());
  for (int e : rotation_[v]) out.push_back(dart_face_[out_dart(e, v)]);
  return out;
}

bool PlanarGraph::vertex_on_face(int v, int f) const {
  const auto& vs = faces_[f].vertices;
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

std::optional<int> PlanarGraph::edge_between(int u, int v) const {
  for (int e : rotation_[u])
    if (other_endpoint(e, u) == v) return e;
  return std::nullopt;
}

PlanarGraph PlanarGraph::without_edge(int e) const {
  std::vector<std::array<int, 2>> edges;
  for (int i = 0; i < edge_count(); ++i)
    if (i != e) edges.push_back(edges_[i]);
  auto rot = rotation_;
  for (auto& r : rot) {
    r.erase(std::remove(r.begin(), r.end(), e), r.end());
    for (int& x : r)
      if (x > e) --x;
  }
  return PlanarGraph(vertex_count_, std::move(edges), std::move(rot));
}

PlanarGraph PlanarGraph::with_marked_edge(std::optional<int> e) const {
  PlanarGraph g = *this;
  if (e && (*e < 0 || *e >= edge_count())) throw Error(Errc::InvalidGraph, "marked edge out of range");
  g.marked_ = e;
  return g;
}

PlanarGraph PlanarGraph::with_diagonal(int f, int u, int v) const {
  if (f < 0 || f >= face_count() || !vertex_on_face(u, f) || !vertex_on_face(v, f) || u == v)
    throw Error(Errc::InvalidGraph, "diagonal endpoints must be distinct vertices of the face");
  if (edge_between(u, v)) throw Error(Errc::InvalidGraph, "diagonal endpoints are already adjacent");
  auto edges = edges_;
  const int ne = edge_count();
  edges.push_back({u, v});
  auto rot = rotation_;
  for (int w : {u, v}) {
    const auto around = faces_around(w);
    const auto it = std::find(around.begin(), around.end(), f);
    const auto i = static_cast<std::size_t>(it - around.begin());
    rot[w].insert(rot[w].begin() + static_cast<std::ptrdiff_t>(i), ne);
  }
  return PlanarGraph(vertex_count_, std::move(edges), std::move(rot), ne);
}

PlanarGraph::Dual PlanarGraph::dual() const {
  std::vector<std::array<int, 2>> dedges(edge_count());
  for (int e = 0; e < edge_count(); ++e) dedges[e] = {left_face(e), right_face(e)};
  std::vector<std::vector<int>> drot(face_count());
  for (int f = 0; f < face_count(); ++f) drot[f] = faces_[f].edges;
  Dual out{PlanarGraph(face_count(), std::move(dedges), std::move(drot)), {}};
  if (out.graph.euler_characteristic() != 2)
    throw Error(Errc::InvalidGraph, "dual rotation system is not planar");
  std::vector<std::set<int>> star(vertex_count_);
  for (int v = 0; v < vertex_count_; ++v) star[v] = {rotation_[v].begin(), rotation_[v].end()};
  for (const auto& df : out.graph.faces()) {
    const std::set<int> es(df.edges.begin(), df.edges.end());
    const auto it = std::find(star.begin(), star.end(), es);
    if (it == star.end()) throw Error(Errc::InvalidGraph, "dual face matches no primal vertex");
    out.face_to_vertex.push_back(static_cast<int>(it - star.begin()));
  }
  return out;
}

bool PlanarGraph::same_combinatorics(const PlanarGraph& other) const {
  return vertex_count_ == other.vertex_count_ && edges_ == other.edges_ &&
         rotation_ == other.rotation_ && marked_ == other.marked_;
}

int local_vertex_connectivity(const PlanarGraph& g, int s, int t) {
  // Vertex v splits into v_in = 2v, v_out = 2v+1 joined by capacity 1 (inf
  // for s and t); each undirected edge becomes two arcs of capacity 1.
  const int n = 2 * g.vertex_count();
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  const int big = g.edge_count() + 1;
  for (int v = 0; v < g.vertex_count(); ++v) cap[2 * v][2 * v + 1] = (v == s || v == t) ? big : 1;
  for (const auto& [a, b] : g.edges()) {
    cap[2 * a + 1][2 * b] += 1;
    cap[2 * b + 1][2 * a] += 1;
  }
  const int src = 2 * s + 1, dst = 2 * t;
  int flow = 0;
  for (;;) {
    std::vector<int> parent(n, -1);
    parent[src] = src;
    std::queue<int> q;
    q.push(src);
    while (!q.empty() && parent[dst] < 0) {
      const int x = q.front();
      q.pop();
      for (int y = 0; y < n; ++y)
        if (parent[y] < 0 && cap[x][y] > 0) {
          parent[y] = x;
          q.push(y);
        }
    }
    if (parent[dst] < 0) break;
    for (int y = dst; y != src; y = parent[y]) {
      --cap[parent[y]][y];
      ++cap[y][parent[y]];
    }
    ++flow;
  }
  return flow;
}

SteinitzResult steinitz_check(const PlanarGraph& g) {
  const int n = g.vertex_count();
  if (n <= 3) return {false, "graph has " + std::to_string(n) + " vertices; more than three required"};
  std::set<std::pair<int, int>> simple;
  for (const auto& [a, b] : g.edges())
    if (!simple.insert({std::min(a, b), std::max(a, b)}).second) {
      std::ostringstream os;
      os << "parallel edges between " << a << " and " << b;
      return {false, os.str()};
    }

  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                       boost::property<boost::vertex_index_t, int>,
                                       boost::property<boost::edge_index_t, int>>;
  BGraph bg(n);
  for (const auto& [a, b] : g.edges()) boost::add_edge(a, b, bg);
  {
    int i = 0;
    auto ei = boost::get(boost::edge_index, bg);
    for (auto [it, end] = boost::edges(bg); it != end; ++it) boost::put(ei, *it, i++);
  }
  std::vector<typename boost::graph_traits<BGraph>::edge_descriptor> kuratowski;
  const bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));
  if (!planar) {
    std::ostringstream os;
    os << "non-planar; Kuratowski subgraph edges:";
    for (const auto& e : kuratowski) os << " (" << boost::source(e, bg) << "," << boost::target(e, bg) << ")";
    return {false, os.str()};
  }
  if (g.euler_characteristic() != 2)
    return {false, "rotation system has Euler characteristic " + std::to_string(g.euler_characteristic())};

  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      if (simple.count({s, t})) continue;
      const int k = local_vertex_connectivity(g, s, t);
      if (k < 3) {
        std::ostringstream os;
        os << "vertices " << s << " and " << t << " are joined by only " << k
           << " internally disjoint paths (separating set of size " << k << ")";
        return {false, os.str()};
      }
    }
  return {true, "planar and 3-connected"};
}

long automorphism_count(const PlanarGraph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& [a, b] : g.edges()) adj[a][b] = adj[b][a] = 1;
  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  long count = 0;
  std::function<void(int)> extend = [&](int v) {
    if (v == n) {
      ++count;
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || g.degree(w) != g.degree(v)) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = adj[u][v] == adj[image[u]][w];
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      extend(v + 1);
      used[w] = 0;
    }
  };
  extend(0);
  return count;
}

}  // namespace hypoly

#include "dsphere/metric.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "dsphere/error.hpp"

namespace dsphere {

VertexGraph::VertexGraph(const ManifoldComplex& M) : vertices_(M.vertices()) {
  index_.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], i);
  adj_.assign(vertices_.size(), {});
  if (M.top_dim() >= 1) {
    for (const auto& e : M.closure(1)) {
      const auto ends = vertices_of(e);
      const std::size_t a = index_.at(ends[0]);
      const std::size_t b = index_.at(ends[1]);
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

std::optional<std::size_t> VertexGraph::index(const CubicalCell& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> VertexGraph::bfs(std::span<const std::size_t> sources) const {
  std::vector<int> dist(vertices_.size(), kUnreached);
  std::vector<std::size_t> queue;
  queue.reserve(vertices_.size());
  for (auto s : sources) {
    if (dist[s] == kUnreached) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (auto w : adj_[u]) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<int> ambient_bfs(const AmbientSpace& ambient, std::span<const CubicalCell> sources) {
  const long long count = ambient.vertex_count();
  std::vector<int> dist(static_cast<std::size_t>(count), kUnreached);
  std::vector<long long> queue;
  queue.reserve(static_cast<std::size_t>(count));
  for (const auto& s : sources) {
    for (const auto& v : vertices_of(s)) {
      if (!ambient.contains(v)) continue;
      const long long idx = ambient.vertex_index(v);
      if (dist[static_cast<std::size_t>(idx)] == kUnreached) {
        dist[static_cast<std::size_t>(idx)] = 0;
        queue.push_back(idx);
      }
    }
  }
  std::array<long long, kMaxAmbientDim> stride{};
  long long acc = 1;
  for (int a = 0; a < ambient.n(); ++a) {
    stride[static_cast<std::size_t>(a)] = acc;
    acc *= ambient.extent(a) + 1;
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const long long u = queue[head];
    long long rem = u;
    for (int a = 0; a < ambient.n(); ++a) {
      const long long coord = rem % (ambient.extent(a) + 1);
      rem /= ambient.extent(a) + 1;
      const long long step = stride[static_cast<std::size_t>(a)];
      if (coord > 0 && dist[static_cast<std::size_t>(u - step)] == kUnreached) {
        dist[static_cast<std::size_t>(u - step)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(u - step);
      }
      if (coord < ambient.extent(a) && dist[static_cast<std::size_t>(u + step)] == kUnreached) {
        dist[static_cast<std::size_t>(u + step)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(u + step);
      }
    }
  }
  return dist;
}

DistanceTable complex_distances(const ManifoldComplex& M, std::span<const CubicalCell> sources) {
  const VertexGraph graph(M);
  std::vector<std::size_t> src;
  DistanceTable table;
  for (const auto& s : sources) {
    for (const auto& v : vertices_of(s)) {
      auto idx = graph.index(v);
      if (!idx) throw Error(ErrorKind::CellNotInComplex, to_string(v, M.ambient().n()));
      src.push_back(*idx);
    }
  }
  table.source_set.assign(sources.begin(), sources.end());
  canonicalize(table.source_set);
  const auto dist = graph.bfs(src);
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (dist[i] != kUnreached) table.dist.emplace(graph.vertices()[i], dist[i]);
  return table;
}

DistanceTable ambient_distances(const AmbientSpace& ambient, std::span<const CubicalCell> sources) {
  DistanceTable table;
  table.source_set.assign(sources.begin(), sources.end());
  canonicalize(table.source_set);
  const auto dist = ambient_bfs(ambient, sources);
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (dist[i] != kUnreached) table.dist.emplace(ambient.vertex_at(static_cast<long long>(i)), dist[i]);
  return table;
}

namespace {

// k-cells of the ambient containing vertex v.
CellList kcells_at_vertex(const AmbientSpace& ambient, const CubicalCell& v, int k) {
  CellList out;
  for (unsigned mask = 0; mask < (1U << ambient.n()); ++mask) {
    if (std::popcount(mask) != k) continue;
    for (unsigned off = mask;; off = (off - 1U) & mask) {
      Coord p = v.base();
      for (int a = 0; a < ambient.n(); ++a)
        if ((off >> a) & 1U) p[static_cast<std::size_t>(a)] -= 1;
      const CubicalCell c(p, static_cast<AxisMask>(mask));
      if (ambient.contains(c)) out.push_back(c);
      if (off == 0) break;
    }
  }
  return canonicalize(out);
}

int chain_distance(const AmbientSpace& ambient, const CubicalCell& x, const CubicalCell& y, int k,
                   const std::function<bool(const CubicalCell&)>& allowed) {
  if (x.dim() != 0 || y.dim() != 0)
    throw Error(ErrorKind::InvalidArgument, "cell_distance expects vertices");
  if (k < 1 || k > ambient.n()) throw Error(ErrorKind::InvalidArgument, "k out of range");
  if (x == y) return 0;
  std::unordered_map<CubicalCell, int, CellHash> dist;
  std::deque<CubicalCell> queue;
  for (const auto& c : kcells_at_vertex(ambient, x, k)) {
    if (!allowed(c)) continue;
    dist.emplace(c, 1);
    queue.push_back(c);
  }
  while (!queue.empty()) {
    const CubicalCell c = queue.front();
    queue.pop_front();
    const int d = dist.at(c);
    if (is_face_of(y, c)) return d;
    for (const auto& f : boundary_cells(c)) {
      for (const auto& g : ambient.cofaces(f)) {
        if (g == c || !allowed(g) || dist.contains(g)) continue;
        dist.emplace(g, d + 1);
        queue.push_back(g);
      }
    }
  }
  throw Error(ErrorKind::Unreachable, "no " + std::to_string(k) + "-chain joins " + to_string(x, ambient.n()) +
                                          " and " + to_string(y, ambient.n()));
}

}  // namespace

int cell_distance(const ManifoldComplex& M, const CubicalCell& x, const CubicalCell& y, int k) {
  if (k > M.top_dim()) throw Error(ErrorKind::InvalidArgument, "k exceeds the complex dimension");
  for (const auto* v : {&x, &y})
    if (!M.in_closure(*v)) throw Error(ErrorKind::CellNotInComplex, to_string(*v, M.ambient().n()));
  return chain_distance(M.ambient(), x, y, k, [&](const CubicalCell& c) { return M.in_closure(c); });
}

int cell_distance(const AmbientSpace& ambient, const CubicalCell& x, const CubicalCell& y, int k) {
  for (const auto* v : {&x, &y})
    if (!ambient.contains(*v)) throw Error(ErrorKind::CellNotInComplex, to_string(*v, ambient.n()));
  return chain_distance(ambient, x, y, k, [](const CubicalCell&) { return true; });
}

namespace {

void fill_row(const ManifoldComplex& M, const VertexGraph& graph, std::size_t i, AllPairs& out) {
  const std::size_t n = graph.size();
  const std::size_t src[] = {i};
  const auto dm = graph.bfs(src);
  const CubicalCell v[] = {graph.vertices()[i]};
  const auto du = ambient_bfs(M.ambient(), v);
  for (std::size_t j = 0; j < n; ++j) {
    out.in_complex[i * n + j] = dm[j];
    out.in_ambient[i * n + j] = du[static_cast<std::size_t>(M.ambient().vertex_index(graph.vertices()[j]))];
  }
}

AllPairs prepare(const VertexGraph& graph) {
  AllPairs out;
  out.vertices = graph.vertices();
  out.in_complex.assign(graph.size() * graph.size(), kUnreached);
  out.in_ambient.assign(graph.size() * graph.size(), kUnreached);
  return out;
}

}  // namespace

AllPairs all_pairs(const ManifoldComplex& M) {
  const VertexGraph graph(M);
  AllPairs out = prepare(graph);
  const auto n = static_cast<long long>(graph.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < n; ++i) fill_row(M, graph, static_cast<std::size_t>(i), out);
  return out;
}

AllPairs all_pairs_serial(const ManifoldComplex& M) {
  const VertexGraph graph(M);
  AllPairs out = prepare(graph);
  for (std::size_t i = 0; i < graph.size(); ++i) fill_row(M, graph, i, out);
  return out;
}

Diameter diameter(const AllPairs& table, bool in_ambient) {
  Diameter best;
  bool have = false;
  const std::size_t n = table.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int d = in_ambient ? table.d_u(i, j) : table.d_m(i, j);
      if (!have || d > best.value) {
        best = {d, table.vertices[i], table.vertices[j]};
        have = true;
      }
    }
  }
  if (!have && n == 1) best = {0, table.vertices[0], table.vertices[0]};
  return best;
}

Diameter diameter(const ManifoldComplex& M, bool in_ambient) {
  if (in_ambient) return diameter(all_pairs(M), true);
  // d_M only: skip the ambient sweeps.
  const VertexGraph graph(M);
  const std::size_t n = graph.size();
  std::vector<int> row_max(n, 0);
  std::vector<std::size_t> row_arg(n, 0);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const std::size_t src[] = {static_cast<std::size_t>(i)};
    const auto dist = graph.bfs(src);
    int best = -1;
    std::size_t arg = 0;
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
      if (dist[j] > best) {
        best = dist[j];
        arg = j;
      }
    }
    row_max[static_cast<std::size_t>(i)] = best;
    row_arg[static_cast<std::size_t>(i)] = arg;
  }
  Diameter out{0, graph.vertices().front(), graph.vertices().front()};
  bool have = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (row_max[i] < 0) continue;
    if (!have || row_max[i] > out.value) {
      out = {row_max[i], graph.vertices()[i], graph.vertices()[row_arg[i]]};
      have = true;
    }
  }
  return out;
}

CellList ball(const ManifoldComplex& M, const VertexGraph& graph, const CubicalCell& center, int gamma) {
  std::vector<std::size_t> src;
  for (const auto& v : vertices_of(center)) {
    auto idx = graph.index(v);
    if (!idx) throw Error(ErrorKind::CellNotInComplex, to_string(center, M.ambient().n()));
    src.push_back(*idx);
  }
  const auto dist = graph.bfs(src);
  CellList out;
  for (const auto& c : M.cells()) {
    bool inside = true;
    for (const auto& v : vertices_of(c)) {
      const int d = dist[*graph.index(v)];
      if (d == kUnreached || d > gamma) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(c);
  }
  return out;
}

CellList ball(const ManifoldComplex& M, const CubicalCell& center, int gamma) {
  return ball(M, VertexGraph(M), center, gamma);
}

}  // namespace dsphere

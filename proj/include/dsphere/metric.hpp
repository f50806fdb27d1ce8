#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dsphere/complex.hpp"

namespace dsphere {

inline constexpr int kUnreached = -1;

/// Graph distances from a source set, counted in cells traversed.
struct DistanceTable {
  CellList source_set;
  std::unordered_map<CubicalCell, int, CellHash> dist;
  int k = 1;

  /// kUnreached when the cell was not reached.
  int at(const CubicalCell& c) const {
    auto it = dist.find(c);
    return it == dist.end() ? kUnreached : it->second;
  }
};

/// The 1-skeleton of a complex with dense vertex indices in canonical order.
class VertexGraph {
 public:
  explicit VertexGraph(const ManifoldComplex& M);

  const CellList& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  std::optional<std::size_t> index(const CubicalCell& v) const;
  const std::vector<std::size_t>& neighbours(std::size_t i) const { return adj_[i]; }

  /// Multi-source BFS; entry i is the edge count to vertex i or kUnreached.
  std::vector<int> bfs(std::span<const std::size_t> sources) const;

 private:
  CellList vertices_;
  std::unordered_map<CubicalCell, std::size_t, CellHash> index_;
  std::vector<std::vector<std::size_t>> adj_;
};

/// Multi-source BFS over the ambient grid's vertices. Entry = edge count,
/// indexed by AmbientSpace::vertex_index.
std::vector<int> ambient_bfs(const AmbientSpace& ambient, std::span<const CubicalCell> sources);

/// d_M from every vertex of `sources` (vertices or higher cells; their corner
/// vertices become the sources).
DistanceTable complex_distances(const ManifoldComplex& M, std::span<const CubicalCell> sources);
/// d_U from the corner vertices of `sources`, over the ambient box.
DistanceTable ambient_distances(const AmbientSpace& ambient, std::span<const CubicalCell> sources);

/// k-cell distance between two vertices: the fewest k-cells in a chain whose
/// consecutive members share a (k-1)-cell, the first containing x and the last
/// containing y. For k = 1 this is the edge distance. 0 when x == y.
/// Throws Error(Unreachable) when no chain exists.
int cell_distance(const ManifoldComplex& M, const CubicalCell& x, const CubicalCell& y, int k);
int cell_distance(const AmbientSpace& ambient, const CubicalCell& x, const CubicalCell& y, int k);

/// Both vertex metrics for every pair of vertices of M.
struct AllPairs {
  CellList vertices;
  std::vector<int> in_complex;  ///< d_M, row-major |V| x |V|
  std::vector<int> in_ambient;  ///< d_U, row-major |V| x |V|

  std::size_t size() const noexcept { return vertices.size(); }
  int d_m(std::size_t i, std::size_t j) const { return in_complex[i * size() + j]; }
  int d_u(std::size_t i, std::size_t j) const { return in_ambient[i * size() + j]; }
};

/// One BFS per source vertex, rows computed in parallel (OpenMP).
AllPairs all_pairs(const ManifoldComplex& M);
/// Single-threaded reference with identical output.
AllPairs all_pairs_serial(const ManifoldComplex& M);

struct Diameter {
  int value = 0;
  CubicalCell first;
  CubicalCell second;
};

/// Largest pairwise vertex distance, measured in M (d_M) or in the ambient
/// (d_U). The witness is the lexicographically least pair attaining it.
Diameter diameter(const ManifoldComplex& M, bool in_ambient);
Diameter diameter(const AllPairs& table, bool in_ambient);

/// The m-cells of M all of whose vertices lie within d_M-distance gamma of
/// the center cell's vertices. Returns m-cells only (closure is implied).
CellList ball(const ManifoldComplex& M, const CubicalCell& center, int gamma);
CellList ball(const ManifoldComplex& M, const VertexGraph& graph, const CubicalCell& center, int gamma);

}  // namespace dsphere

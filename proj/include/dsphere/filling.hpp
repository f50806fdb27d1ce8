#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dsphere/complex.hpp"

namespace dsphere {

/// A closed (m-1)-manifold used as a separating boundary. `m` is the
/// dimension of the manifold it lives in, so cells have dimension m-1.
struct Cycle {
  CellList cells;
  int m = 0;

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// An m-dimensional submanifold-with-boundary of the ambient bounded by a cycle.
struct Filling {
  CellList cells;
  Cycle boundary;
  bool is_minimal = false;
  /// Filling cells whose closure meets the avoided complex away from the boundary.
  CellList avoid_hits;

  std::size_t size() const noexcept { return cells.size(); }
  bool clean() const noexcept { return avoid_hits.empty(); }
};

/// Default exact-search budget, in m-cells.
inline constexpr int kDefaultFillingCap = 64;

/// Admissible lower bound on the size of any filling of the (m-1)-cycle:
/// the number of odd cells in its projection onto every m-dimensional
/// coordinate subspace, summed over subspaces. For m = 1 this is the
/// Manhattan distance between the two endpoints.
int projection_lower_bound(std::span<const CubicalCell> cycle, int n);

/// Exact minimum filling of `boundary` with at most `limit` cells, or nullopt.
/// Among fillings of minimum size, one whose closure avoids `avoid` (away from
/// the boundary) is preferred; the first found in canonical branching order is
/// returned. The search is iterative deepening with the projection bound.
std::optional<Filling> exact_filling(const AmbientSpace& ambient, const Cycle& boundary,
                                     std::span<const CubicalCell> avoid, int limit);

/// Exact search up to `cap`; past the cap a greedy front-advance fallback runs
/// and the result has is_minimal = false. Throws Error(FillingNotFound) when
/// neither produces a valid filling.
Filling min_filling(const AmbientSpace& ambient, const Cycle& boundary, std::span<const CubicalCell> avoid,
                    int cap = kDefaultFillingCap);

/// Cells of `cells` whose closure meets closure(avoid) minus closure(boundary).
CellList touching_cells(std::span<const CubicalCell> cells, std::span<const CubicalCell> avoid,
                        std::span<const CubicalCell> boundary);

/// (m+1)-cells enclosed by a closed m-cycle in an (m+1)-dimensional ambient:
/// those with odd crossing parity along a ray in the -axis0 direction.
/// Throws Error(CodimensionUnsupported) unless the cycle is codimension one.
CellList enclosed_cells(const AmbientSpace& ambient, std::span<const CubicalCell> cycle);

/// Cuts M's m-cells along C. Returns (smaller, larger) components; equal sizes
/// break ties by first cell. Throws Error(NotSeparating) unless exactly two
/// components remain.
std::pair<CellList, CellList> jordan_split(const ManifoldComplex& M, const Cycle& C);

}  // namespace dsphere

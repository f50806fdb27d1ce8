#pragma once

#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dsphere/cell.hpp"

namespace dsphere {

using CellSet = std::unordered_set<CubicalCell, CellHash>;
using CellList = std::vector<CubicalCell>;  // kept sorted in canonical order

/// Sorts and deduplicates in place; returns the list for chaining.
CellList& canonicalize(CellList& cells);
CellList sorted(const CellSet& cells);

/// Mod-2 boundary: the (d-1)-cells appearing an odd number of times among the
/// faces of `cells` (all of one dimension d >= 1). Canonical order.
CellList boundary_of(std::span<const CubicalCell> cells);

/// All faces (every dimension) of the given cells, canonical order.
CellList closure_of_set(std::span<const CubicalCell> cells);

/// Symmetric difference of two canonical lists.
CellList symmetric_difference(std::span<const CubicalCell> a, std::span<const CubicalCell> b);

/// Groups pure d-dimensional cells into components under "share a (d-1)-face
/// not in `cut`". Components come back sorted by their first cell.
std::vector<CellList> components(std::span<const CubicalCell> cells, const CellSet& cut = {});

/// Local structure of a pure complex of top dimension m.
struct PureComplexCheck {
  bool connected = false;
  bool faces_ok = false;      ///< every (m-1)-cell in one or two m-cells
  bool closed = false;        ///< every (m-1)-cell in exactly two m-cells
  bool links_connected = false;
  bool links_closed = false;  ///< every vertex link is a closed connected (m-1)-complex
  CellList bad_faces;         ///< (m-1)-cells with more than two cofaces
  CellList open_faces;        ///< (m-1)-cells with a single coface
  CellList bad_vertices;      ///< vertices whose link fails connectivity
  CellList open_vertices;     ///< vertices whose link is not closed
  CellList stray_cells;       ///< a representative of every component after the first
};

PureComplexCheck check_pure_complex(std::span<const CubicalCell> cells);

/// True when `cells` is a connected m-manifold whose boundary is exactly `boundary`.
bool is_manifold_with_boundary(std::span<const CubicalCell> cells, std::span<const CubicalCell> boundary);

/// A finite set of m-cells in a cubical ambient box, plus its closure.
/// Immutable after construction.
class ManifoldComplex {
 public:
  ManifoldComplex() = default;
  /// Throws Error(InvalidArgument) if the cells differ in dimension, fall
  /// outside the ambient, or the list is empty.
  ManifoldComplex(AmbientSpace ambient, CellList cells);

  const AmbientSpace& ambient() const noexcept { return ambient_; }
  int top_dim() const noexcept { return m_; }
  const CellList& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }

  /// Closure cells of dimension d, canonical order.
  const CellList& closure(int d) const { return closure_.at(static_cast<std::size_t>(d)); }
  const CellList& vertices() const { return closure(0); }
  bool has_cell(const CubicalCell& c) const { return top_.contains(c); }
  bool in_closure(const CubicalCell& c) const { return all_.contains(c); }
  const CellSet& closure_set() const noexcept { return all_; }
  const CellSet& cell_set() const noexcept { return top_; }

  /// Euler characteristic of the closure.
  long long euler_characteristic() const;

  friend bool operator==(const ManifoldComplex& a, const ManifoldComplex& b) {
    return a.ambient_ == b.ambient_ && a.cells_ == b.cells_;
  }

 private:
  AmbientSpace ambient_;
  int m_ = 0;
  CellList cells_;
  std::vector<CellList> closure_;
  CellSet top_;
  CellSet all_;
};

struct ValidationReport {
  bool is_manifold = false;
  bool is_closed = false;
  bool is_regular = false;
  bool link_spheres_ok = false;
  CellList offending_cells;

  bool ok() const { return is_manifold && is_closed && is_regular && link_spheres_ok; }
};

ValidationReport validate(const ManifoldComplex& M);

/// x together with every closure cell of M having x as a face.
/// Throws Error(CellNotInComplex) if x is not in M's closure.
CellList star(const ManifoldComplex& M, const CubicalCell& x);

/// Closure of the star minus the cells that contain x.
CellList link(const ManifoldComplex& M, const CubicalCell& x);

}  // namespace dsphere

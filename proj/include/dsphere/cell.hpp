#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dsphere {

/// Highest ambient dimension the fixed-size cell representation can hold.
inline constexpr int kMaxAmbientDim = 4;

using Coord = std::array<int, kMaxAmbientDim>;
using AxisMask = std::uint8_t;

/// One cell of the cubical ambient grid: the box
/// base + sum_{a in axes} [0,1] e_a. Unused trailing coordinates stay zero, so
/// cells from the same ambient compare consistently.
class CubicalCell {
 public:
  constexpr CubicalCell() = default;
  constexpr CubicalCell(const Coord& base, AxisMask axes) : base_(base), axes_(axes) {}

  static CubicalCell vertex(std::span<const int> coords);
  static CubicalCell from_axes(std::span<const int> coords, std::span<const int> axes);

  const Coord& base() const noexcept { return base_; }
  int coord(int axis) const noexcept { return base_[static_cast<std::size_t>(axis)]; }
  AxisMask axes() const noexcept { return axes_; }
  int dim() const noexcept { return std::popcount(static_cast<unsigned>(axes_)); }
  bool spans(int axis) const noexcept { return (axes_ >> axis) & 1U; }
  std::vector<int> axis_list() const;

  /// Canonical order: dimension, then base (lexicographic), then the sorted
  /// axis list (lexicographic). Used for every tie-break in the library.
  friend std::strong_ordering operator<=>(const CubicalCell& a, const CubicalCell& b) noexcept;
  friend bool operator==(const CubicalCell& a, const CubicalCell& b) noexcept = default;

 private:
  Coord base_{};
  AxisMask axes_ = 0;
};

struct CellHash {
  std::size_t operator()(const CubicalCell& c) const noexcept;
};

/// Stable 64-bit mix of a cell, independent of std::hash; used for Zobrist keys.
std::uint64_t cell_key64(const CubicalCell& c) noexcept;

/// The 2*dim codimension-one faces of c, in canonical order. Requires dim >= 1.
std::vector<CubicalCell> boundary_cells(const CubicalCell& c);

/// All 2^dim corner vertices of c, canonical order.
std::vector<CubicalCell> vertices_of(const CubicalCell& c);

/// Every face of c of every dimension, including c itself.
std::vector<CubicalCell> closure_of(const CubicalCell& c);

/// True if `face` is a face of `c` (or equal to it).
bool is_face_of(const CubicalCell& face, const CubicalCell& c) noexcept;

/// Text form "[b0,b1,...|a0,a1,...]" for an n-dimensional ambient.
std::string to_string(const CubicalCell& c, int n);

/// Inverse of to_string; throws Error(ParseError) on malformed input.
CubicalCell parse_cell(std::string_view text, int n);

/// Axis-aligned box [0, extent_i] per axis holding the grid. Cells are
/// enumerated implicitly; nothing is materialized.
class AmbientSpace {
 public:
  AmbientSpace() = default;
  AmbientSpace(int n, const Coord& extent) : n_(n), extent_(extent) {}

  int n() const noexcept { return n_; }
  const Coord& extent() const noexcept { return extent_; }
  int extent(int axis) const noexcept { return extent_[static_cast<std::size_t>(axis)]; }

  bool contains(const CubicalCell& c) const noexcept;
  /// Number of grid vertices, prod (extent_i + 1).
  long long vertex_count() const noexcept;
  /// Dense index of a vertex in [0, vertex_count()).
  long long vertex_index(const CubicalCell& v) const noexcept;
  CubicalCell vertex_at(long long index) const;

  /// Cells of dimension c.dim()+1 inside the box having c as a face.
  std::vector<CubicalCell> cofaces(const CubicalCell& c) const;
  /// All cells of dimension d in the box, canonical order.
  std::vector<CubicalCell> cells_of_dim(int d) const;

  friend bool operator==(const AmbientSpace&, const AmbientSpace&) = default;

 private:
  int n_ = 0;
  Coord extent_{};
};

/// Throws Error(DegenerateExtent) when some axis spans fewer than one unit,
/// Error(InvalidArgument) when n is outside [2, kMaxAmbientDim].
AmbientSpace build_ambient(int n, std::span<const int> extent);

}  // namespace dsphere

template <>
struct std::hash<dsphere::CubicalCell> {
  std::size_t operator()(const dsphere::CubicalCell& c) const noexcept {
    return dsphere::CellHash{}(c);
  }
};

#pragma once

#include <span>
#include <variant>
#include <vector>

#include "dsphere/lofted.hpp"

namespace dsphere {

/// Flip of one (m+1)-cell: the state becomes state XOR boundary(flip).
struct ElementaryMove {
  CubicalCell flip;
  CellList removed;  ///< boundary cells of flip that were in the state
  CellList added;    ///< boundary cells of flip that were not
};

/// state XOR boundary(flip), canonical order.
CellList apply_move(std::span<const CubicalCell> state, const CubicalCell& flip);

/// Codimension one: the region enclosed by A XOR B consists of pairwise
/// non-adjacent (m+1)-cells (no two share an m-face).
/// Throws Error(CodimensionUnsupported) otherwise.
bool is_gradually_varied(const AmbientSpace& ambient, std::span<const CubicalCell> a,
                         std::span<const CubicalCell> b);

/// Flips turning the arc into the target filling, one enclosed cell at a
/// time, every intermediate surface a closed manifold with M's Euler
/// characteristic. Cells are taken level by level along the lofted sequence.
/// move_cap <= 0 means 10 * N(X). Throws Error(InterpolationFailed) when no
/// such order is found within the cap, Error(CodimensionUnsupported) outside
/// codimension one.
std::vector<ElementaryMove> interpolate(const ManifoldComplex& M, const ArcRegion& X, const LoftedSequence& seq,
                                        const Filling& target, int move_cap = 0);

/// (M \ X) together with the filling. Throws Error(ReplacementNotManifold)
/// unless the result is a connected closed manifold with M's Euler
/// characteristic.
ManifoldComplex replace_arc(const ManifoldComplex& M, const ArcRegion& X, const Filling& filling);

struct MoveStep {
  CubicalCell flip;
};

/// Swap of an arc for its filling. With moves > 0 it closes the preceding
/// `moves` flips and checks they produced exactly this swap; with moves == 0
/// the swap is applied directly.
struct ReplaceStep {
  CubicalCell center;
  int gamma = 0;
  CellList removed;
  CellList added;
  int moves = 0;
  std::size_t candidates = 0;    ///< size of the candidate set at this radius
  bool single_new_cell = false;  ///< the filling adds exactly one cell outside M
};

/// Record of a cut along `cycle`; the closed piece arc + filling continues as
/// node `child`.
struct SplitStep {
  Cycle cycle;
  CellList filling;
  int child = -1;
};

using TraceStep = std::variant<MoveStep, ReplaceStep, SplitStep>;

struct DeformationTrace {
  ManifoldComplex initial;
  std::vector<TraceStep> steps;
};

/// Every state of the trace: the initial one, then one per step. Throws
/// Error(ReplayMismatch) when a replace does not match its moves, removes
/// cells that are absent, or (with check_states) a state is not a connected
/// closed manifold.
std::vector<CellList> replay_states(const DeformationTrace& trace, bool check_states = true);

/// Final state of the trace.
ManifoldComplex replay(const DeformationTrace& trace);

}  // namespace dsphere

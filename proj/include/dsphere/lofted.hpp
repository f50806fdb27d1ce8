#pragma once

#include <optional>
#include <vector>

#include "dsphere/curviness.hpp"

namespace dsphere {

/// One level of a lofted sequence: the fitted circle of radius i around the
/// center, its minimum filling, and the cells where that filling runs into
/// M outside the level's arc.
struct LoftedLevel {
  int radius = 0;
  ArcRegion region;
  Filling filling;
  CellList intersections;
};

struct LoftedSequence {
  CubicalCell center;
  int gamma = 0;
  std::vector<LoftedLevel> levels;  ///< increasing radius; empty balls are skipped

  std::vector<Cycle> circles() const;
  std::vector<Filling> fillings() const;
};

/// Radii 1..gamma around `center`. Throws Error(CycleFitFailed) when a
/// nonempty ball cannot be fitted, and propagates Error(FillingNotFound).
LoftedSequence lofted(const ManifoldComplex& M, const CubicalCell& center, int gamma,
                      int cap = kDefaultFillingCap);

/// No level's filling meets M away from its own arc.
bool semi_convex(const LoftedSequence& seq);

/// Index of the first level with intersections.
std::optional<std::size_t> first_obstruction(const LoftedSequence& seq);

}  // namespace dsphere

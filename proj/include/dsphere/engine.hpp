#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsphere/deform.hpp"

namespace dsphere {

enum class RadiusPolicy { top_down, bottom_up };

struct ContractionConfig {
  Variant variant = Variant::ratio;
  int filling_cap = kDefaultFillingCap;
  int move_cap = 0;  ///< <= 0: 10 * N(X) per replacement
  RadiusPolicy radius_policy = RadiusPolicy::top_down;
  /// Replacement budget per node; <= 0 picks 4 * N + 16.
  int max_replacements = 0;
};

enum class TerminalKind { IrreducibleSphere, NotSimplyConnectedObstruction, Exhausted };
const char* to_string(TerminalKind k);

/// A lofted level whose filling runs into the surface away from its arc.
struct ObstructionEvidence {
  CubicalCell center;
  int gamma = 0;
  int level_radius = 0;
  CellList intersections;
};

struct Terminal {
  TerminalKind kind = TerminalKind::Exhausted;
  std::optional<CubicalCell> witness;  ///< the (m+1)-cell bounded by the final state
  std::optional<ObstructionEvidence> evidence;
  long long euler_characteristic = 0;
};

struct ContractionNode {
  int id = 0;
  int parent = -1;
  std::optional<Cycle> glue_cycle;
  CellList glue_filling;
  DeformationTrace trace;
  ManifoldComplex final_state;
  Terminal terminal;
  std::vector<int> children;
};

struct ContractionResult {
  std::vector<ContractionNode> nodes;  ///< nodes[0] is the root

  const ContractionNode& root() const { return nodes.front(); }
  /// IrreducibleSphere when every node ends as one; otherwise the kind of the
  /// first node (by id) that does not.
  TerminalKind status() const;
  const Terminal& deciding_terminal() const;
};

/// The (m+1)-cell whose boundary is exactly M, if any.
std::optional<CubicalCell> irreducible_witness(const ManifoldComplex& M);
bool is_irreducible_sphere(const ManifoldComplex& M);

struct DiameterCheck {
  bool holds = false;
  int diameter = 0;
  /// For each vertex, a partner at the largest d_M distance.
  std::vector<std::pair<CubicalCell, CubicalCell>> witnesses;
};

/// Whether every vertex has a partner at d_M distance equal to the diameter.
DiameterCheck diameter_sphere_check(const ManifoldComplex& M);

/// Radii tried at one iteration, in order.
std::vector<int> radius_sweep(int diameter, RadiusPolicy policy);

/// Repeated peak replacement until M bounds a single (m+1)-cell, no candidate
/// remains, or the budget runs out. Arcs that fail the lofted test or cannot
/// be interpolated are cut off into child nodes.
ContractionResult contract(const ManifoldComplex& M, const ContractionConfig& config = {});

}  // namespace dsphere

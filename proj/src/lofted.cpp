#include "dsphere/lofted.hpp"

#include "dsphere/error.hpp"

namespace dsphere {

std::vector<Cycle> LoftedSequence::circles() const {
  std::vector<Cycle> out;
  for (const auto& l : levels) out.push_back(l.region.boundary);
  return out;
}

std::vector<Filling> LoftedSequence::fillings() const {
  std::vector<Filling> out;
  for (const auto& l : levels) out.push_back(l.filling);
  return out;
}

LoftedSequence lofted(const ManifoldComplex& M, const CubicalCell& center, int gamma, int cap) {
  LoftedSequence seq;
  seq.center = center;
  seq.gamma = gamma;
  const VertexGraph graph(M);
  for (int i = 1; i <= gamma; ++i) {
    const auto cells = ball(M, graph, center, i);
    if (cells.empty()) continue;
    LoftedLevel level;
    level.radius = i;
    try {
      level.region = boundary_cycle_fit(M, cells);
    } catch (const Error& e) {
      throw Error(ErrorKind::CycleFitFailed, "level " + std::to_string(i) + ": " + e.what());
    }
    level.region.center = center;
    level.region.gamma = i;
    level.filling = min_filling(M.ambient(), level.region.boundary, level.region.complement, cap);
    const auto arc_closure = closure_of_set(level.region.arc);
    const CellSet own(arc_closure.begin(), arc_closure.end());
    for (const auto& c : closure_of_set(level.filling.cells))
      if (M.in_closure(c) && !own.contains(c)) level.intersections.push_back(c);
    seq.levels.push_back(std::move(level));
  }
  return seq;
}

bool semi_convex(const LoftedSequence& seq) { return !first_obstruction(seq).has_value(); }

std::optional<std::size_t> first_obstruction(const LoftedSequence& seq) {
  for (std::size_t i = 0; i < seq.levels.size(); ++i)
    if (!seq.levels[i].intersections.empty()) return i;
  return std::nullopt;
}

}  // namespace dsphere

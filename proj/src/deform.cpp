#include "dsphere/deform.hpp"

#include <algorithm>
#include <unordered_set>

#include "dsphere/error.hpp"

namespace dsphere {

CellList apply_move(std::span<const CubicalCell> state, const CubicalCell& flip) {
  CellList faces = boundary_cells(flip);
  canonicalize(faces);
  return symmetric_difference(state, faces);
}

bool is_gradually_varied(const AmbientSpace& ambient, std::span<const CubicalCell> a,
                         std::span<const CubicalCell> b) {
  CellList ca(a.begin(), a.end());
  CellList cb(b.begin(), b.end());
  canonicalize(ca);
  canonicalize(cb);
  const auto diff = symmetric_difference(ca, cb);
  if (diff.empty()) return true;
  const auto region = enclosed_cells(ambient, diff);
  CellSet faces;
  for (const auto& c : region)
    for (const auto& f : boundary_cells(c))
      if (!faces.insert(f).second) return false;
  return true;
}

namespace {

bool acceptable(const AmbientSpace& ambient, const CellList& state, long long chi) {
  if (state.empty()) return false;
  const ManifoldComplex S(ambient, state);
  const auto report = validate(S);
  return report.ok() && S.euler_characteristic() == chi;
}

constexpr long long kCheckBudget = 50'000;

class FlipOrder {
 public:
  FlipOrder(const AmbientSpace& ambient, CellList start, std::vector<CubicalCell> cells, long long chi)
      : ambient_(ambient), state_(std::move(start)), cells_(std::move(cells)), used_(cells_.size(), 0), chi_(chi) {}

  bool run() { return dfs(); }
  const std::vector<std::size_t>& order() const { return order_; }

 private:
  bool dfs() {
    if (order_.size() == cells_.size()) return true;
    if (!dead_.insert(key_).second) return false;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (used_[i]) continue;
      if (++checks_ > kCheckBudget) return false;
      CellList next = apply_move(state_, cells_[i]);
      if (!acceptable(ambient_, next, chi_)) continue;
      std::swap(state_, next);
      used_[i] = 1;
      key_ ^= cell_key64(cells_[i]);
      order_.push_back(i);
      if (dfs()) return true;
      order_.pop_back();
      key_ ^= cell_key64(cells_[i]);
      used_[i] = 0;
      std::swap(state_, next);
      if (checks_ > kCheckBudget) return false;
    }
    return false;
  }

  const AmbientSpace& ambient_;
  CellList state_;
  std::vector<CubicalCell> cells_;
  std::vector<char> used_;
  long long chi_;
  std::vector<std::size_t> order_;
  std::unordered_set<std::uint64_t> dead_;
  std::uint64_t key_ = 0;
  long long checks_ = 0;
};

}  // namespace

std::vector<ElementaryMove> interpolate(const ManifoldComplex& M, const ArcRegion& X, const LoftedSequence& seq,
                                        const Filling& target, int move_cap) {
  const AmbientSpace& ambient = M.ambient();
  if (M.top_dim() != ambient.n() - 1)
    throw Error(ErrorKind::CodimensionUnsupported, "flips need a codimension-one surface");
  const auto diff = symmetric_difference(X.arc, target.cells);
  if (diff.empty()) return {};
  CellList region;
  try {
    region = enclosed_cells(ambient, diff);
  } catch (const Error& e) {
    throw Error(ErrorKind::InterpolationFailed, e.what());
  }
  if (boundary_of(region) != diff) throw Error(ErrorKind::InterpolationFailed, "arc and filling bound no region");
  const int cap = move_cap > 0 ? move_cap : 10 * static_cast<int>(X.arc.size());
  if (static_cast<int>(region.size()) > cap)
    throw Error(ErrorKind::InterpolationFailed, "region exceeds the move cap");

  // Level i region: what the arc sweeps when X_i is swapped for m_i.
  std::vector<std::pair<std::size_t, CubicalCell>> ranked;
  std::vector<CellSet> levels;
  for (const auto& level : seq.levels) {
    CellSet cells;
    try {
      const auto d = symmetric_difference(level.region.arc, level.filling.cells);
      for (const auto& c : enclosed_cells(ambient, d)) cells.insert(c);
    } catch (const Error&) {
    }
    levels.push_back(std::move(cells));
  }
  for (const auto& c : region) {
    std::size_t rank = levels.size();
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (levels[i].contains(c)) {
        rank = i;
        break;
      }
    }
    ranked.emplace_back(rank, c);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<CubicalCell> cells;
  for (const auto& [rank, c] : ranked) cells.push_back(c);

  FlipOrder search(ambient, M.cells(), cells, M.euler_characteristic());
  if (!search.run()) throw Error(ErrorKind::InterpolationFailed, "no valid flip order");

  std::vector<ElementaryMove> moves;
  CellList state = M.cells();
  for (auto i : search.order()) {
    ElementaryMove mv;
    mv.flip = cells[i];
    auto faces = boundary_cells(cells[i]);
    canonicalize(faces);
    for (const auto& f : faces) (std::binary_search(state.begin(), state.end(), f) ? mv.removed : mv.added).push_back(f);
    state = apply_move(state, cells[i]);
    moves.push_back(std::move(mv));
  }
  CellList expected;
  std::set_difference(M.cells().begin(), M.cells().end(), X.arc.begin(), X.arc.end(), std::back_inserter(expected));
  expected.insert(expected.end(), target.cells.begin(), target.cells.end());
  canonicalize(expected);
  if (state != expected) throw Error(ErrorKind::InterpolationFailed, "flips do not reach the filling");
  return moves;
}

ManifoldComplex replace_arc(const ManifoldComplex& M, const ArcRegion& X, const Filling& filling) {
  CellList cells;
  std::set_difference(M.cells().begin(), M.cells().end(), X.arc.begin(), X.arc.end(), std::back_inserter(cells));
  const std::size_t kept = cells.size();
  cells.insert(cells.end(), filling.cells.begin(), filling.cells.end());
  canonicalize(cells);
  if (cells.size() != kept + filling.cells.size())
    throw Error(ErrorKind::ReplacementNotManifold, "filling overlaps the rest of the complex");
  ManifoldComplex out(M.ambient(), std::move(cells));
  if (!validate(out).ok()) throw Error(ErrorKind::ReplacementNotManifold, "replacement is not a closed manifold");
  if (out.euler_characteristic() != M.euler_characteristic())
    throw Error(ErrorKind::ReplacementNotManifold, "replacement changes the Euler characteristic");
  return out;
}

std::vector<CellList> replay_states(const DeformationTrace& trace, bool check_states) {
  const AmbientSpace& ambient = trace.initial.ambient();
  std::vector<CellList> states;
  states.push_back(trace.initial.cells());
  auto mismatch = [](std::size_t i, const std::string& why) {
    return Error(ErrorKind::ReplayMismatch, "step " + std::to_string(i) + ": " + why);
  };
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const CellList& cur = states.back();
    CellList next;
    if (const auto* mv = std::get_if<MoveStep>(&trace.steps[i])) {
      if (!ambient.contains(mv->flip) || mv->flip.dim() != trace.initial.top_dim() + 1)
        throw mismatch(i, "flip cell outside the ambient");
      next = apply_move(cur, mv->flip);
    } else if (const auto* rp = std::get_if<ReplaceStep>(&trace.steps[i])) {
      if (rp->moves < 0 || static_cast<std::size_t>(rp->moves) > i) throw mismatch(i, "bad move count");
      const std::size_t from = i - static_cast<std::size_t>(rp->moves);
      for (std::size_t j = from; j < i; ++j)
        if (!std::holds_alternative<MoveStep>(trace.steps[j])) throw mismatch(i, "replace does not follow its moves");
      const CellList& base = states[from];
      if (!std::includes(base.begin(), base.end(), rp->removed.begin(), rp->removed.end()))
        throw mismatch(i, "removed cells are not present");
      std::set_difference(base.begin(), base.end(), rp->removed.begin(), rp->removed.end(), std::back_inserter(next));
      next.insert(next.end(), rp->added.begin(), rp->added.end());
      canonicalize(next);
      if (rp->moves > 0 && next != cur) throw mismatch(i, "moves do not realize the replacement");
    } else {
      next = cur;
    }
    if (check_states) {
      if (next.empty()) throw mismatch(i, "empty state");
      const ManifoldComplex S(ambient, next);
      if (!validate(S).ok()) throw mismatch(i, "state is not a closed manifold");
    }
    states.push_back(std::move(next));
  }
  return states;
}

ManifoldComplex replay(const DeformationTrace& trace) {
  auto states = replay_states(trace, true);
  return ManifoldComplex(trace.initial.ambient(), std::move(states.back()));
}

}  // namespace dsphere

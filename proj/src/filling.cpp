#include "dsphere/filling.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "dsphere/error.hpp"

namespace dsphere {

namespace {

int highest_axis(AxisMask mask) { return std::bit_width(static_cast<unsigned>(mask)) - 1; }

// The cell f viewed inside the coordinate subspace of its own axes.
CubicalCell project_key(const CubicalCell& f) {
  Coord b{};
  for (int a = 0; a < kMaxAmbientDim; ++a)
    if (f.spans(a)) b[static_cast<std::size_t>(a)] = f.coord(a);
  return {b, f.axes()};
}

// Odd cells of the projection of an (m-1)-cycle onto each m-subspace A,
// found by crossing parity along the highest axis of A.
CellSet projection_parity(std::span<const CubicalCell> cycle, int n) {
  std::map<std::pair<AxisMask, Coord>, std::vector<int>> groups;
  for (const auto& c : cycle) {
    Coord key{};
    for (int a = 0; a < kMaxAmbientDim; ++a)
      if (c.spans(a)) key[static_cast<std::size_t>(a)] = c.coord(a);
    for (int a = highest_axis(c.axes()) + 1; a < n; ++a)
      groups[{static_cast<AxisMask>(c.axes() | (1U << a)), key}].push_back(c.coord(a));
  }
  CellSet out;
  for (auto& [key, values] : groups) {
    std::sort(values.begin(), values.end());
    std::vector<int> odd;
    for (std::size_t i = 0; i < values.size();) {
      std::size_t j = i;
      while (j < values.size() && values[j] == values[i]) ++j;
      if ((j - i) % 2 == 1) odd.push_back(values[i]);
      i = j;
    }
    if (odd.size() % 2 != 0) throw Error(ErrorKind::InvalidArgument, "boundary is not a cycle");
    const int last = highest_axis(key.first);
    for (std::size_t i = 0; i < odd.size(); i += 2) {
      for (int t = odd[i]; t < odd[i + 1]; ++t) {
        Coord b = key.second;
        b[static_cast<std::size_t>(last)] = t;
        out.insert(CubicalCell(b, key.first));
      }
    }
  }
  return out;
}

CellSet blocked_cells(std::span<const CubicalCell> avoid, std::span<const CubicalCell> boundary) {
  CellSet keep;
  for (const auto& c : closure_of_set(boundary)) keep.insert(c);
  CellSet out;
  for (const auto& c : closure_of_set(avoid))
    if (!keep.contains(c)) out.insert(c);
  return out;
}

constexpr long long kNodeBudget = 4'000'000;

class FillingSearch {
 public:
  FillingSearch(const AmbientSpace& ambient, const Cycle& boundary, const CellSet& blocked)
      : ambient_(ambient), boundary_(boundary), blocked_(blocked) {
    for (const auto& c : boundary.cells) {
      defect_.insert(c);
      zobrist_ ^= cell_key64(c);
    }
    parity_ = projection_parity(boundary.cells, ambient.n());
    h_ = static_cast<int>(parity_.size());
  }

  int lower_bound() const { return h_; }
  bool budget_exhausted() const { return nodes_ > kNodeBudget; }

  std::optional<CellList> exact(int limit) {
    for (int t = h_; t <= limit; t += 2) {
      if (!blocked_.empty()) {
        if (auto s = deepen(t, true)) return s;
        if (budget_exhausted()) return std::nullopt;
      }
      if (auto s = deepen(t, false)) return s;
      if (budget_exhausted()) return std::nullopt;
    }
    return std::nullopt;
  }

  std::optional<CellList> greedy(int max_steps) {
    for (int step = 0; step < max_steps && !defect_.empty(); ++step) {
      const CubicalCell e = *defect_.begin();
      std::optional<CubicalCell> best;
      std::tuple<int, int> best_key{};
      for (const auto& f : ambient_.cofaces(e)) {
        if (in_set_.contains(f)) continue;
        toggle(f);
        const std::tuple<int, int> key{clean(f) ? 0 : 1, h_};
        toggle(f);
        if (!best || key < best_key) {
          best = f;
          best_key = key;
        }
      }
      if (!best) return std::nullopt;
      push(*best);
    }
    if (!defect_.empty()) return std::nullopt;
    CellList s(chosen_.begin(), chosen_.end());
    canonicalize(s);
    if (!is_manifold_with_boundary(s, boundary_.cells)) return std::nullopt;
    return s;
  }

 private:
  void toggle(const CubicalCell& f) {
    for (const auto& b : boundary_cells(f)) {
      if (!defect_.erase(b)) defect_.insert(b);
      zobrist_ ^= cell_key64(b);
    }
    const auto key = project_key(f);
    if (parity_.erase(key)) --h_;
    else {
      parity_.insert(key);
      ++h_;
    }
  }

  void push(const CubicalCell& f) {
    toggle(f);
    in_set_.insert(f);
    chosen_.push_back(f);
  }

  void pop() {
    const CubicalCell f = chosen_.back();
    chosen_.pop_back();
    in_set_.erase(f);
    toggle(f);
  }

  bool clean(const CubicalCell& f) {
    if (blocked_.empty()) return true;
    auto it = clean_memo_.find(f);
    if (it != clean_memo_.end()) return it->second;
    bool ok = true;
    for (const auto& c : closure_of(f)) {
      if (blocked_.contains(c)) {
        ok = false;
        break;
      }
    }
    clean_memo_.emplace(f, ok);
    return ok;
  }

  std::optional<CellList> deepen(int threshold, bool clean_only) {
    seen_.clear();
    found_.reset();
    dfs(0, threshold, clean_only);
    return found_;
  }

  bool dfs(int g, int threshold, bool clean_only) {
    if (defect_.empty()) {
      CellList s(chosen_.begin(), chosen_.end());
      canonicalize(s);
      if (!is_manifold_with_boundary(s, boundary_.cells)) return false;
      found_ = std::move(s);
      return true;
    }
    if (g + h_ > threshold) return false;
    if (++nodes_ > kNodeBudget) return false;
    std::uint64_t key = zobrist_ ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(g + 1));
    if (!seen_.insert(key).second) return false;
    const CubicalCell e = *defect_.begin();
    for (const auto& f : ambient_.cofaces(e)) {
      if (in_set_.contains(f)) continue;
      if (clean_only && !clean(f)) continue;
      push(f);
      const bool done = dfs(g + 1, threshold, clean_only);
      pop();
      if (done) return true;
      if (budget_exhausted()) return false;
    }
    return false;
  }

  const AmbientSpace& ambient_;
  const Cycle& boundary_;
  const CellSet& blocked_;
  std::set<CubicalCell> defect_;
  std::uint64_t zobrist_ = 0;
  CellSet parity_;
  int h_ = 0;
  CellSet in_set_;
  std::vector<CubicalCell> chosen_;
  std::unordered_set<std::uint64_t> seen_;
  std::unordered_map<CubicalCell, bool, CellHash> clean_memo_;
  std::optional<CellList> found_;
  long long nodes_ = 0;
};

void check_cycle(const Cycle& boundary) {
  if (boundary.cells.empty()) throw Error(ErrorKind::InvalidArgument, "empty boundary cycle");
  for (const auto& c : boundary.cells)
    if (c.dim() != boundary.m - 1) throw Error(ErrorKind::InvalidArgument, "cycle cell of wrong dimension");
}

Filling make_filling(CellList cells, const Cycle& boundary, bool minimal, const CellSet& blocked) {
  Filling f;
  f.cells = std::move(cells);
  f.boundary = boundary;
  f.is_minimal = minimal;
  for (const auto& c : f.cells) {
    for (const auto& face : closure_of(c)) {
      if (blocked.contains(face)) {
        f.avoid_hits.push_back(c);
        break;
      }
    }
  }
  return f;
}

}  // namespace

int projection_lower_bound(std::span<const CubicalCell> cycle, int n) {
  return static_cast<int>(projection_parity(cycle, n).size());
}

std::optional<Filling> exact_filling(const AmbientSpace& ambient, const Cycle& boundary,
                                     std::span<const CubicalCell> avoid, int limit) {
  check_cycle(boundary);
  const CellSet blocked = blocked_cells(avoid, boundary.cells);
  FillingSearch search(ambient, boundary, blocked);
  if (search.lower_bound() > limit) return std::nullopt;
  auto cells = search.exact(limit);
  if (!cells) return std::nullopt;
  return make_filling(std::move(*cells), boundary, true, blocked);
}

Filling min_filling(const AmbientSpace& ambient, const Cycle& boundary, std::span<const CubicalCell> avoid,
                    int cap) {
  check_cycle(boundary);
  const CellSet blocked = blocked_cells(avoid, boundary.cells);
  {
    FillingSearch search(ambient, boundary, blocked);
    if (search.lower_bound() <= cap) {
      if (auto cells = search.exact(cap)) return make_filling(std::move(*cells), boundary, true, blocked);
    }
  }
  FillingSearch search(ambient, boundary, blocked);
  const int steps = 8 * std::max(cap, search.lower_bound()) + 4 * static_cast<int>(boundary.cells.size());
  if (auto cells = search.greedy(steps)) return make_filling(std::move(*cells), boundary, false, blocked);
  throw Error(ErrorKind::FillingNotFound, "no filling within " + std::to_string(cap) + " cells");
}

CellList touching_cells(std::span<const CubicalCell> cells, std::span<const CubicalCell> avoid,
                        std::span<const CubicalCell> boundary) {
  const CellSet blocked = blocked_cells(avoid, boundary);
  CellList out;
  for (const auto& c : cells) {
    for (const auto& face : closure_of(c)) {
      if (blocked.contains(face)) {
        out.push_back(c);
        break;
      }
    }
  }
  return canonicalize(out);
}

CellList enclosed_cells(const AmbientSpace& ambient, std::span<const CubicalCell> cycle) {
  const int n = ambient.n();
  const auto full = static_cast<AxisMask>((1U << n) - 1U);
  const auto across = static_cast<AxisMask>(full & ~1U);
  std::map<Coord, std::vector<int>> groups;
  for (const auto& c : cycle) {
    if (c.dim() != n - 1) throw Error(ErrorKind::CodimensionUnsupported, "enclosure needs a codimension-one cycle");
    if (c.axes() != across) continue;
    Coord key = c.base();
    key[0] = 0;
    groups[key].push_back(c.coord(0));
  }
  CellList out;
  for (auto& [key, values] : groups) {
    std::sort(values.begin(), values.end());
    if (values.size() % 2 != 0) throw Error(ErrorKind::InvalidArgument, "enclosing set is not a cycle");
    for (std::size_t i = 0; i < values.size(); i += 2) {
      for (int t = values[i]; t < values[i + 1]; ++t) {
        Coord b = key;
        b[0] = t;
        out.emplace_back(b, full);
      }
    }
  }
  return canonicalize(out);
}

std::pair<CellList, CellList> jordan_split(const ManifoldComplex& M, const Cycle& C) {
  const CellSet cut(C.cells.begin(), C.cells.end());
  auto comps = components(M.cells(), cut);
  if (comps.size() != 2)
    throw Error(ErrorKind::NotSeparating, "cycle leaves " + std::to_string(comps.size()) + " components");
  if (comps[1].size() < comps[0].size()) std::swap(comps[0], comps[1]);
  return {std::move(comps[0]), std::move(comps[1])};
}

}  // namespace dsphere

#include "dsphere/curviness.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>

#include "dsphere/error.hpp"

namespace dsphere {

namespace {

// M's m-cells adjacent across shared (m-1)-faces, indexed in canonical order.
struct DualGraph {
  const ManifoldComplex& M;
  std::vector<std::vector<std::size_t>> adj;
  std::unordered_map<CubicalCell, std::vector<std::size_t>, CellHash> at_vertex;
  std::unordered_map<CubicalCell, std::size_t, CellHash> index;

  explicit DualGraph(const ManifoldComplex& complex) : M(complex), adj(complex.size()) {
    std::unordered_map<CubicalCell, std::vector<std::size_t>, CellHash> by_face;
    const auto& cells = M.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      index.emplace(cells[i], i);
      for (const auto& f : boundary_cells(cells[i])) by_face[f].push_back(i);
      for (const auto& v : vertices_of(cells[i])) at_vertex[v].push_back(i);
    }
    for (const auto& [f, owners] : by_face)
      for (auto a : owners)
        for (auto b : owners)
          if (a != b) adj[a].push_back(b);
    for (auto& list : adj) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }

  std::size_t size() const { return adj.size(); }

  // Components of the cells whose flag equals `side`, ordered by least index.
  std::vector<std::vector<std::size_t>> groups(const std::vector<char>& in, char side) const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<char> seen(size(), 0);
    for (std::size_t s = 0; s < size(); ++s) {
      if (in[s] != side || seen[s]) continue;
      out.emplace_back();
      auto& comp = out.back();
      seen[s] = 1;
      comp.push_back(s);
      for (std::size_t head = 0; head < comp.size(); ++head)
        for (auto w : adj[comp[head]])
          if (in[w] == side && !seen[w]) {
            seen[w] = 1;
            comp.push_back(w);
          }
    }
    return out;
  }

  // Adds the cells of a shortest dual path from `main` to the nearest other
  // flagged cell.
  void connect(std::vector<char>& in, const std::vector<std::size_t>& main) const {
    std::vector<long long> parent(size(), -2);
    std::vector<std::size_t> queue;
    for (auto s : main) {
      parent[s] = -1;
      queue.push_back(s);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      for (auto w : adj[u]) {
        if (parent[w] != -2) continue;
        parent[w] = static_cast<long long>(u);
        if (in[w]) {
          for (long long p = static_cast<long long>(u); p >= 0 && parent[static_cast<std::size_t>(p)] != -1;
               p = parent[static_cast<std::size_t>(p)])
            in[static_cast<std::size_t>(p)] = 1;
          return;
        }
        queue.push_back(w);
      }
    }
  }
};

ArcRegion fit_flags(const DualGraph& g, std::vector<char> in) {
  const std::size_t n = g.size();
  const int m = g.M.top_dim();
  for (std::size_t iter = 0; iter <= n; ++iter) {
    const auto inside = g.groups(in, 1);
    if (inside.empty()) throw Error(ErrorKind::NoFittingCycle, "empty ball");
    if (inside.size() > 1) {
      g.connect(in, inside[0]);
      continue;
    }
    auto outside = g.groups(in, 0);
    if (outside.empty()) throw Error(ErrorKind::NoFittingCycle, "ball covers the complex");
    if (outside.size() > 1) {
      std::size_t keep = 0;
      for (std::size_t k = 1; k < outside.size(); ++k)
        if (outside[k].size() > outside[keep].size()) keep = k;
      for (std::size_t k = 0; k < outside.size(); ++k)
        if (k != keep)
          for (auto c : outside[k]) in[c] = 1;
      continue;
    }
    CellList arc;
    CellList rest;
    for (std::size_t i = 0; i < n; ++i) (in[i] ? arc : rest).push_back(g.M.cells()[i]);
    if (2 * arc.size() > n) throw Error(ErrorKind::NoFittingCycle, "fitted arc exceeds half of the complex");
    Cycle cycle{boundary_of(arc), m};
    if (m >= 2) {
      const auto chk = check_pure_complex(cycle.cells);
      if (!chk.connected) throw Error(ErrorKind::NotSeparating, "fitted boundary is disconnected");
      CellSet pinched;
      for (const auto* list : {&chk.bad_faces, &chk.open_faces, &chk.bad_vertices, &chk.open_vertices})
        for (const auto& c : *list)
          for (const auto& v : vertices_of(c)) pinched.insert(v);
      if (!pinched.empty()) {
        bool grew = false;
        for (const auto& v : sorted(pinched)) {
          for (auto c : g.at_vertex.at(v)) {
            if (!in[c]) {
              in[c] = 1;
              grew = true;
            }
          }
        }
        if (!grew) throw Error(ErrorKind::NotSeparating, "cannot regularize boundary");
        continue;
      }
    }
    ArcRegion out;
    out.arc = std::move(arc);
    out.complement = std::move(rest);
    out.boundary = std::move(cycle);
    return out;
  }
  throw Error(ErrorKind::NotSeparating, "boundary repair did not settle");
}

ArcRegion fit_cells(const DualGraph& g, std::span<const CubicalCell> ball_cells) {
  std::vector<char> in(g.size(), 0);
  for (const auto& c : ball_cells) {
    auto it = g.index.find(c);
    if (it == g.index.end()) throw Error(ErrorKind::CellNotInComplex, to_string(c, g.M.ambient().n()));
    in[it->second] = 1;
  }
  return fit_flags(g, std::move(in));
}

int l1(const CubicalCell& a, const CubicalCell& b, int n) {
  int d = 0;
  for (int i = 0; i < n; ++i) d += std::abs(a.coord(i) - b.coord(i));
  return d;
}

CellList vertex_set(std::span<const CubicalCell> cells) {
  CellList out;
  for (const auto& c : cells)
    for (const auto& v : vertices_of(c)) out.push_back(v);
  return canonicalize(out);
}

CurvinessReport make_report(const ManifoldComplex& M, ArcRegion region, Filling filling) {
  const int n = M.ambient().n();
  CurvinessReport r;
  const auto na = static_cast<long long>(region.arc.size());
  const auto nf = static_cast<long long>(filling.cells.size());
  r.r = Rational(na, nf);
  r.r1 = na - nf;
  const auto fv = vertex_set(filling.cells);
  int h = 0;
  for (const auto& v : vertex_set(region.arc)) {
    int best = -1;
    for (const auto& w : fv) {
      const int d = l1(v, w, n);
      if (best < 0 || d < best) best = d;
    }
    h = std::max(h, best);
  }
  int spread = 0;
  for (std::size_t i = 0; i < fv.size(); ++i)
    for (std::size_t j = i + 1; j < fv.size(); ++j) spread = std::max(spread, l1(fv[i], fv[j], n));
  r.h = h;
  r.r3 = Rational(h, std::max(spread, 1));
  r.in_gamma = filling.is_minimal && filling.clean() && nf < na &&
               nf < static_cast<long long>(region.complement.size());
  r.region = std::move(region);
  r.filling = std::move(filling);
  return r;
}

// Exact fillings shared across centers of one scan; an arc reached from
// several centers is searched once.
class FillingMemo {
 public:
  explicit FillingMemo(const AmbientSpace& ambient) : ambient_(ambient) {}

  std::optional<Filling> get(const ArcRegion& region, int limit) {
    {
      std::lock_guard lock(mu_);
      auto it = entries_.find(region.arc);
      if (it != entries_.end()) {
        const Entry& e = it->second;
        if (e.found) return e.found->size() <= static_cast<std::size_t>(limit) ? e.found : std::nullopt;
        if (e.searched >= limit) return std::nullopt;
      }
    }
    auto result = exact_filling(ambient_, region.boundary, region.complement, limit);
    std::lock_guard lock(mu_);
    Entry& e = entries_[region.arc];
    if (result) e.found = result;
    else e.searched = std::max(e.searched, limit);
    return result;
  }

 private:
  struct Entry {
    std::optional<Filling> found;
    int searched = -1;
  };
  const AmbientSpace& ambient_;
  std::mutex mu_;
  std::map<CellList, Entry> entries_;
};

struct ScanContext {
  const ManifoldComplex& M;
  DualGraph dual;
  VertexGraph graph;
  CellList centers;

  explicit ScanContext(const ManifoldComplex& complex) : M(complex), dual(complex), graph(complex) {
    for (int d = 0; d <= M.top_dim(); ++d)
      centers.insert(centers.end(), M.closure(d).begin(), M.closure(d).end());
  }

  std::optional<ArcRegion> region(const CubicalCell& center, int gamma) const {
    const auto cells = ball(M, graph, center, gamma);
    if (cells.empty() || cells.size() == M.size()) return std::nullopt;
    try {
      ArcRegion r = fit_cells(dual, cells);
      r.center = center;
      r.gamma = gamma;
      return r;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NoFittingCycle || e.kind() == ErrorKind::NotSeparating) return std::nullopt;
      throw;
    }
  }
};

std::optional<CurvinessReport> candidate(const ScanContext& ctx, FillingMemo& memo, std::size_t i, int gamma,
                                         int cap) {
  auto region = ctx.region(ctx.centers[i], gamma);
  if (!region) return std::nullopt;
  const int limit = std::min({cap, static_cast<int>(region->arc.size()) - 1,
                              static_cast<int>(region->complement.size()) - 1});
  if (limit < 1) return std::nullopt;
  auto filling = memo.get(*region, limit);
  if (!filling) return std::nullopt;
  auto report = make_report(ctx.M, std::move(*region), std::move(*filling));
  if (!report.in_gamma) return std::nullopt;
  return report;
}

std::vector<CurvinessReport> collect(std::vector<std::optional<CurvinessReport>>& slots) {
  std::vector<CurvinessReport> out;
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

}  // namespace

ArcRegion boundary_cycle_fit(const ManifoldComplex& M, std::span<const CubicalCell> ball_cells) {
  const DualGraph g(M);
  return fit_cells(g, ball_cells);
}

ArcRegion fit_ball(const ManifoldComplex& M, const VertexGraph& graph, const CubicalCell& center, int gamma) {
  const auto cells = ball(M, graph, center, gamma);
  ArcRegion r = boundary_cycle_fit(M, cells);
  r.center = center;
  r.gamma = gamma;
  return r;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
}

Variant parse_variant(std::string_view name) {
  if (name == "ratio") return Variant::ratio;
  if (name == "diff") return Variant::diff;
  if (name == "height") return Variant::height;
  if (name == "height-ratio") return Variant::height_ratio;
  throw Error(ErrorKind::InvalidArgument, "unknown variant '" + std::string(name) + "'");
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::ratio: return "ratio";
    case Variant::diff: return "diff";
    case Variant::height: return "height";
    case Variant::height_ratio: return "height-ratio";
  }
  return "?";
}

CurvinessReport curviness(const ManifoldComplex& M, const ArcRegion& X, int cap) {
  auto filling = min_filling(M.ambient(), X.boundary, X.complement, cap);
  return make_report(M, X, std::move(filling));
}

Rational measure(const CurvinessReport& report, Variant v) {
  switch (v) {
    case Variant::ratio: return report.r;
    case Variant::diff: return Rational(report.r1);
    case Variant::height: return Rational(report.h);
    case Variant::height_ratio: return report.r3;
  }
  return report.r;
}

std::vector<CurvinessReport> scan_candidates(const ManifoldComplex& M, int gamma, int cap) {
  const ScanContext ctx(M);
  FillingMemo memo(M.ambient());
  std::vector<std::optional<CurvinessReport>> slots(ctx.centers.size());
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto count = static_cast<long long>(ctx.centers.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      slots[static_cast<std::size_t>(i)] = candidate(ctx, memo, static_cast<std::size_t>(i), gamma, cap);
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return collect(slots);
}

std::vector<CurvinessReport> scan_candidates_serial(const ManifoldComplex& M, int gamma, int cap) {
  const ScanContext ctx(M);
  FillingMemo memo(M.ambient());
  std::vector<std::optional<CurvinessReport>> slots(ctx.centers.size());
  for (std::size_t i = 0; i < ctx.centers.size(); ++i) slots[i] = candidate(ctx, memo, i, gamma, cap);
  return collect(slots);
}

std::vector<CurvinessReport> curviness_table(const ManifoldComplex& M, int gamma, int cap) {
  const ScanContext ctx(M);
  std::vector<CurvinessReport> out;
  for (const auto& center : ctx.centers) {
    auto region = ctx.region(center, gamma);
    if (!region) continue;
    try {
      out.push_back(curviness(M, *region, cap));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::FillingNotFound) throw;
    }
  }
  return out;
}

std::optional<CurvinessReport> select_peak(std::span<const CurvinessReport> candidates, Variant v) {
  const CurvinessReport* best = nullptr;
  Rational best_key;
  for (const auto& c : candidates) {
    const Rational key = measure(c, v);
    if (!best || key > best_key || (key == best_key && c.center() < best->center())) {
      best = &c;
      best_key = key;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

std::optional<CurvinessReport> select_peak(const ManifoldComplex& M, int gamma, Variant v, int cap) {
  const auto all = scan_candidates(M, gamma, cap);
  return select_peak(all, v);
}

std::optional<CurvinessReport> select_peak_serial(const ManifoldComplex& M, int gamma, Variant v, int cap) {
  const auto all = scan_candidates_serial(M, gamma, cap);
  return select_peak(all, v);
}

std::vector<int> radius_schedule(int diameter) {
  std::vector<int> out;
  int g = std::max(1, diameter / 4);
  out.push_back(g);
  while (g > 1) {
    g /= 2;
    out.push_back(g);
  }
  return out;
}

std::vector<int> radius_schedule(const ManifoldComplex& M) { return radius_schedule(diameter(M, false).value); }

const char* to_string(ArcSign s) {
  switch (s) {
    case ArcSign::peak: return "peak";
    case ArcSign::valley: return "valley";
    case ArcSign::flat: return "flat";
  }
  return "?";
}

ArcSign arc_sign(const ManifoldComplex& M, const ArcRegion& X, const Filling& filling) {
  const int n = M.ambient().n();
  if (M.top_dim() != n - 1) throw Error(ErrorKind::CodimensionUnsupported, "arc sign needs codimension one");
  if (filling.cells == X.arc) return ArcSign::flat;
  const CubicalCell* probe = nullptr;
  for (const auto& f : filling.cells) {
    if (!M.has_cell(f)) {
      probe = &f;
      break;
    }
  }
  if (!probe) return ArcSign::flat;
  // Both solid cells on either side of a non-M face lie on the same side of M.
  const auto sides = M.ambient().cofaces(*probe);
  if (sides.empty()) return ArcSign::valley;
  const CubicalCell& solid = sides.front();
  const auto across = static_cast<AxisMask>(((1U << n) - 1U) & ~1U);
  int crossings = 0;
  for (const auto& c : M.cells()) {
    if (c.axes() != across || c.coord(0) > solid.coord(0)) continue;
    bool aligned = true;
    for (int a = 1; a < n; ++a)
      if (c.coord(a) != solid.coord(a)) aligned = false;
    if (aligned) ++crossings;
  }
  return crossings % 2 == 1 ? ArcSign::peak : ArcSign::valley;
}

}  // namespace dsphere

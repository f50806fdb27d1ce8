#include "dsphere/complex.hpp"

#include <algorithm>
#include <numeric>

#include "dsphere/error.hpp"

namespace dsphere {

CellList& canonicalize(CellList& cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

CellList sorted(const CellSet& cells) {
  CellList out(cells.begin(), cells.end());
  std::sort(out.begin(), out.end());
  return out;
}

CellList boundary_of(std::span<const CubicalCell> cells) {
  CellSet odd;
  for (const auto& c : cells)
    for (const auto& f : boundary_cells(c))
      if (!odd.erase(f)) odd.insert(f);
  return sorted(odd);
}

CellList closure_of_set(std::span<const CubicalCell> cells) {
  CellSet all;
  for (const auto& c : cells)
    for (const auto& f : closure_of(c)) all.insert(f);
  return sorted(all);
}

CellList symmetric_difference(std::span<const CubicalCell> a, std::span<const CubicalCell> b) {
  CellList out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<CellList> components(std::span<const CubicalCell> cells, const CellSet& cut) {
  std::vector<CellList> out;
  if (cells.empty()) return out;
  CellList ordered(cells.begin(), cells.end());
  canonicalize(ordered);
  DisjointSets ds(ordered.size());
  std::unordered_map<CubicalCell, std::size_t, CellHash> first_owner;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    for (const auto& f : boundary_cells(ordered[i])) {
      if (cut.contains(f)) continue;
      auto [it, inserted] = first_owner.emplace(f, i);
      if (!inserted) ds.unite(it->second, i);
    }
  }
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const std::size_t root = ds.find(i);
    auto [it, inserted] = slot.emplace(root, out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(ordered[i]);
  }
  return out;  // roots are minimal indices, so components are ordered by first cell
}

PureComplexCheck check_pure_complex(std::span<const CubicalCell> cells) {
  PureComplexCheck r;
  if (cells.empty()) return r;
  const int m = cells.front().dim();

  std::unordered_map<CubicalCell, int, CellHash> coface_count;
  std::unordered_map<CubicalCell, std::vector<std::size_t>, CellHash> incident;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (m >= 1)
      for (const auto& f : boundary_cells(cells[i])) ++coface_count[f];
    for (const auto& v : vertices_of(cells[i])) incident[v].push_back(i);
  }

  for (const auto& [f, count] : coface_count) {
    if (count > 2) r.bad_faces.push_back(f);
    else if (count == 1) r.open_faces.push_back(f);
  }
  canonicalize(r.bad_faces);
  canonicalize(r.open_faces);
  r.faces_ok = r.bad_faces.empty();
  r.closed = r.faces_ok && r.open_faces.empty();

  const auto comps = components(cells);
  r.connected = comps.size() == 1;
  for (std::size_t i = 1; i < comps.size(); ++i) r.stray_cells.push_back(comps[i].front());

  // Vertex links: the m-cells around v, glued along their (m-1)-faces through v.
  for (const auto& [v, around] : incident) {
    if (m == 0) continue;
    DisjointSets ds(around.size());
    std::unordered_map<CubicalCell, std::size_t, CellHash> owner;
    bool closed_here = true;
    for (std::size_t k = 0; k < around.size(); ++k) {
      for (const auto& f : boundary_cells(cells[around[k]])) {
        if (!is_face_of(v, f)) continue;
        auto [it, inserted] = owner.emplace(f, k);
        if (!inserted) ds.unite(it->second, k);
        if (coface_count[f] != 2) closed_here = false;
      }
    }
    bool connected_here = true;
    for (std::size_t k = 1; k < around.size(); ++k)
      if (ds.find(k) != ds.find(0)) connected_here = false;
    if (!connected_here) r.bad_vertices.push_back(v);
    if (!connected_here || !closed_here) r.open_vertices.push_back(v);
  }
  canonicalize(r.bad_vertices);
  canonicalize(r.open_vertices);
  r.links_connected = r.bad_vertices.empty();
  r.links_closed = r.open_vertices.empty();
  return r;
}

bool is_manifold_with_boundary(std::span<const CubicalCell> cells, std::span<const CubicalCell> boundary) {
  if (cells.empty()) return false;
  const auto chk = check_pure_complex(cells);
  if (!chk.connected || !chk.faces_ok || !chk.links_connected) return false;
  CellList expected(boundary.begin(), boundary.end());
  canonicalize(expected);
  return chk.open_faces == expected;
}

ManifoldComplex::ManifoldComplex(AmbientSpace ambient, CellList cells)
    : ambient_(ambient), cells_(std::move(cells)) {
  canonicalize(cells_);
  if (cells_.empty()) throw Error(ErrorKind::InvalidArgument, "complex needs at least one cell");
  m_ = cells_.front().dim();
  for (const auto& c : cells_) {
    if (c.dim() != m_) throw Error(ErrorKind::InvalidArgument, "cells of mixed dimension");
    if (!ambient_.contains(c)) throw Error(ErrorKind::InvalidArgument, "cell outside ambient: " + to_string(c, ambient_.n()));
  }
  closure_.assign(static_cast<std::size_t>(m_ + 1), {});
  for (const auto& c : cells_) {
    top_.insert(c);
    for (const auto& f : closure_of(c))
      if (all_.insert(f).second) closure_[static_cast<std::size_t>(f.dim())].push_back(f);
  }
  for (auto& level : closure_) std::sort(level.begin(), level.end());
}

long long ManifoldComplex::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t d = 0; d < closure_.size(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(closure_[d].size());
  return chi;
}

ValidationReport validate(const ManifoldComplex& M) {
  const auto chk = check_pure_complex(M.cells());
  ValidationReport r;
  r.is_manifold = chk.faces_ok && chk.links_connected;
  r.is_closed = chk.closed;
  // Conditions: (m-1)-connected, each (m-1)-cell in one or two m-cells, no
  // (m+1)-cells (pure by construction), connected stars.
  r.is_regular = chk.connected && chk.faces_ok && chk.links_connected;
  r.link_spheres_ok = chk.links_closed;
  for (const auto* list : {&chk.bad_faces, &chk.open_faces, &chk.bad_vertices, &chk.open_vertices, &chk.stray_cells})
    r.offending_cells.insert(r.offending_cells.end(), list->begin(), list->end());
  canonicalize(r.offending_cells);
  return r;
}

CellList star(const ManifoldComplex& M, const CubicalCell& x) {
  if (!M.in_closure(x))
    throw Error(ErrorKind::CellNotInComplex, to_string(x, M.ambient().n()));
  CellList out;
  for (int d = x.dim(); d <= M.top_dim(); ++d)
    for (const auto& c : M.closure(d))
      if (is_face_of(x, c)) out.push_back(c);
  return canonicalize(out);
}

CellList link(const ManifoldComplex& M, const CubicalCell& x) {
  const auto st = star(M, x);
  CellList out;
  for (const auto& c : closure_of_set(st))
    if (!is_face_of(x, c)) out.push_back(c);
  return out;
}

}  // namespace dsphere

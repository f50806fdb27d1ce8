#include <doctest.h>

#include <random>

#include "dsphere/deform.hpp"
#include "dsphere/filling.hpp"
#include "dsphere/io.hpp"
#include "dsphere/metric.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dsphere;

namespace {

AmbientSpace random_ambient(std::mt19937_64& rng) {
  const int n = 2 + static_cast<int>(rng() % 3);
  std::vector<int> ext;
  for (int a = 0; a < n; ++a) ext.push_back(1 + static_cast<int>(rng() % 4));
  return build_ambient(n, ext);
}

CubicalCell random_cell(std::mt19937_64& rng, const AmbientSpace& A, int d) {
  const auto pool = A.cells_of_dim(d);
  return pool[rng() % pool.size()];
}

}  // namespace

TEST_CASE("boundary of a boundary is empty") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto A = random_ambient(rng);
    const int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(A.n()));
    CellList cells;
    for (int k = 1 + static_cast<int>(rng() % 6); k > 0; --k) cells.push_back(random_cell(rng, A, d));
    canonicalize(cells);
    const auto b = boundary_of(cells);
    CHECK(boundary_of(b).empty());
    for (const auto& c : b) CHECK(c.dim() == d - 1);
  }
}

TEST_CASE("cell text round trips") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const auto A = random_ambient(rng);
    const auto c = random_cell(rng, A, static_cast<int>(rng() % static_cast<unsigned>(A.n() + 1)));
    CHECK(parse_cell(to_string(c, A.n()), A.n()) == c);
    CHECK(A.contains(c));
    for (const auto& f : closure_of(c)) CHECK(is_face_of(f, c));
  }
}

TEST_CASE("symmetric difference is an involution") {
  std::mt19937_64 rng(13);
  const int e[2] = {5, 5};
  const auto A = build_ambient(2, e);
  for (int t = 0; t < 100; ++t) {
    auto a = oracle::random_patch(rng, A, 1, 1 + static_cast<int>(rng() % 8));
    auto b = oracle::random_patch(rng, A, 1, 1 + static_cast<int>(rng() % 8));
    const auto d = symmetric_difference(a, b);
    CHECK(symmetric_difference(d, b) == a);
    CHECK(symmetric_difference(a, a).empty());
  }
}

TEST_CASE("fillings of random patch boundaries") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 60; ++t) {
    const bool plane = t % 2 == 0;
    const int e2[2] = {6, 6}, e3[3] = {4, 4, 4};
    const auto A = plane ? build_ambient(2, e2) : build_ambient(3, e3);
    const int m = 2;
    const auto patch = oracle::random_patch(rng, A, m, 1 + static_cast<int>(rng() % 7));
    const auto ring = boundary_of(patch);
    if (ring.empty() || !is_manifold_with_boundary(patch, ring)) continue;
    const auto F = min_filling(A, Cycle{ring, m}, {});
    CHECK(boundary_of(F.cells) == ring);
    CHECK(F.size() <= patch.size());
    CHECK(static_cast<int>(F.size()) >= projection_lower_bound(ring, A.n()));
    CHECK(F.is_minimal);
  }
}

TEST_CASE("random curve metrics") {
  for (std::uint64_t seed = 30; seed < 45; ++seed) {
    const auto M = random_rectilinear_curve(seed, 8, 8, 28);
    const auto t = all_pairs(M);
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(t.d_m(i, i) == 0);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(t.d_m(i, j) == t.d_m(j, i));
        CHECK(t.d_m(i, j) >= t.d_u(i, j));
        if (i != j) CHECK(t.d_m(i, j) > 0);
        const std::size_t k = (i * 7 + j * 3) % n;
        CHECK(t.d_m(i, j) <= t.d_m(i, k) + t.d_m(k, j));
      }
    }
    CHECK(parse_fixture(format_fixture(M)).cells() == M.cells());
  }
}

TEST_CASE("flips preserve closedness of the boundary") {
  std::mt19937_64 rng(15);
  for (std::uint64_t seed = 50; seed < 70; ++seed) {
    const auto M = random_rectilinear_curve(seed, 10, 10, 40);
    auto state = M.cells();
    for (int k = 0; k < 10; ++k) {
      const auto sq = random_cell(rng, M.ambient(), 2);
      const auto next = apply_move(state, sq);
      CHECK(boundary_of(next).empty());
      CHECK(apply_move(next, sq) == state);
      state = next;
    }
  }
}

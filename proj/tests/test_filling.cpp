#include <doctest.h>

#include <random>

#include "dsphere/error.hpp"
#include "dsphere/filling.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dsphere;
using fixtures::cell;
using fixtures::vertex;

TEST_CASE("segment lower bound is the L1 distance") {
  const std::vector<CubicalCell> ends{vertex({0, 0, 0}), vertex({2, 3, 1})};
  CHECK(projection_lower_bound(ends, 3) == 6);
}

TEST_CASE("lower bound of a square ring equals its area") {
  const auto ring = boundary_of(fixtures::squares({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  CHECK(projection_lower_bound(ring, 2) == 4);
}

TEST_CASE("filling of a planar ring") {
  const int ext[2] = {5, 5};
  const auto A = build_ambient(2, ext);
  const auto region = fixtures::squares({{1, 1}, {2, 1}, {1, 2}});
  const Cycle ring{boundary_of(region), 2};
  const auto F = min_filling(A, ring, {});
  CHECK(F.is_minimal);
  CHECK(F.cells == region);
  CHECK(boundary_of(F.cells) == ring.cells);
}

TEST_CASE("path filling avoids the complement when it can") {
  const auto M = fixtures::load("ushape");
  const Cycle ends{{vertex({1, 3}), vertex({2, 3})}, 1};
  const auto F = min_filling(M.ambient(), ends, M.cells());
  CHECK(F.size() == 1);
  CHECK(F.clean());
  const auto brute = oracle::enumerate_fillings(M.ambient(), ends.cells, 6);
  CHECK(brute.size == 1);
}

TEST_CASE("exact search respects its limit") {
  const int ext[2] = {6, 6};
  const auto A = build_ambient(2, ext);
  const Cycle ends{{vertex({0, 0}), vertex({3, 2})}, 1};
  CHECK_FALSE(exact_filling(A, ends, {}, 4).has_value());
  const auto F = exact_filling(A, ends, {}, 5);
  REQUIRE(F.has_value());
  CHECK(F->size() == 5);
}

TEST_CASE("cap fallback is marked non-minimal") {
  const int ext[2] = {8, 8};
  const auto A = build_ambient(2, ext);
  const Cycle ends{{vertex({0, 0}), vertex({6, 6})}, 1};
  const auto F = min_filling(A, ends, {}, 4);
  CHECK_FALSE(F.is_minimal);
  CHECK(boundary_of(F.cells) == ends.cells);
}

TEST_CASE("bad cycles are rejected") {
  const int ext[2] = {4, 4};
  const auto A = build_ambient(2, ext);
  CHECK_THROWS_AS(min_filling(A, Cycle{{}, 1}, {}), Error);
  CHECK_THROWS_AS(min_filling(A, Cycle{{vertex({0, 0})}, 1}, {}), Error);
}

TEST_CASE("random segment and patch boundaries match exhaustive enumeration") {
  std::mt19937_64 rng(7);
  const int e2[2] = {6, 6};
  const auto A2 = build_ambient(2, e2);
  for (int t = 0; t < 15; ++t) {
    const auto a = vertex({static_cast<int>(rng() % 7), static_cast<int>(rng() % 7)});
    const auto b = vertex({static_cast<int>(rng() % 7), static_cast<int>(rng() % 7)});
    if (a == b) continue;
    CellList ends{a, b};
    canonicalize(ends);
    const auto brute = oracle::enumerate_fillings(A2, ends, 6);
    if (brute.size < 0) continue;
    const auto F = min_filling(A2, Cycle{ends, 1}, {});
    CHECK(static_cast<int>(F.size()) == brute.size);
  }
  const int e3[3] = {4, 4, 4};
  const auto A3 = build_ambient(3, e3);
  for (int t = 0; t < 15; ++t) {
    const auto patch = oracle::random_patch(rng, A3, 2, 1 + static_cast<int>(rng() % 4));
    const auto ring = boundary_of(patch);
    if (ring.empty()) continue;
    const auto brute = oracle::enumerate_fillings(A3, ring, 6);
    REQUIRE(brute.size > 0);
    const auto F = min_filling(A3, Cycle{ring, 2}, {});
    CHECK(static_cast<int>(F.size()) == brute.size);
    CHECK(boundary_of(F.cells) == ring);
  }
}

TEST_CASE("enclosed cells") {
  const int ext[2] = {5, 5};
  const auto A = build_ambient(2, ext);
  const auto region = fixtures::squares({{1, 1}, {2, 1}, {2, 2}});
  CHECK(enclosed_cells(A, boundary_of(region)) == region);
  const int e3[3] = {3, 3, 3};
  const auto A3 = build_ambient(3, e3);
  const CellList segment{vertex({0, 0, 0}), vertex({1, 0, 0})};
  CHECK_THROWS_AS(enclosed_cells(A3, segment), Error);
}

TEST_CASE("jordan split of the u-shape along the notch") {
  const auto M = fixtures::load("ushape");
  const auto [small, large] = jordan_split(M, Cycle{{vertex({1, 3}), vertex({2, 3})}, 1});
  CHECK(small.size() == 5);
  CHECK(large.size() == 11);
  try {
    jordan_split(M, Cycle{{vertex({1, 3})}, 1});
    FAIL("expected NotSeparating");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSeparating);
  }
}

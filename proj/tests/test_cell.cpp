#include <doctest.h>

#include "dsphere/cell.hpp"
#include "dsphere/error.hpp"
#include "helpers.hpp"

using namespace dsphere;
using fixtures::cell;
using fixtures::vertex;

TEST_CASE("canonical order sorts by dimension, then base, then axes") {
  const auto v = vertex({3, 3});
  const auto e0 = cell({0, 0}, {1});
  const auto e1 = cell({0, 0}, {0});
  const auto sq = cell({0, 0}, {0, 1});
  CHECK(v < e0);
  CHECK(e1 < e0);
  CHECK(e0 < sq);
  CHECK(cell({0, 1}, {0}) > cell({0, 0}, {1}));
}

TEST_CASE("boundary of a cell has 2*dim faces") {
  for (int d = 1; d <= 3; ++d) {
    std::vector<int> axes;
    for (int a = 0; a < d; ++a) axes.push_back(a);
    const auto c = cell({1, 1, 1}, axes);
    CHECK(boundary_cells(c).size() == static_cast<std::size_t>(2 * d));
    CHECK(vertices_of(c).size() == static_cast<std::size_t>(1 << d));
    for (const auto& f : boundary_cells(c)) CHECK(is_face_of(f, c));
  }
}

TEST_CASE("text form round-trips") {
  const auto c = cell({2, 0, 4}, {0, 2});
  CHECK(to_string(c, 3) == "[2,0,4|0,2]");
  CHECK(parse_cell("[2,0,4|0,2]", 3) == c);
  CHECK(parse_cell("[1,2|]", 2) == vertex({1, 2}));
  CHECK_THROWS_AS(parse_cell("[1,2|5]", 2), Error);
  CHECK_THROWS_AS(parse_cell("1,2", 2), Error);
}

TEST_CASE("ambient boxes") {
  const int ext[2] = {3, 2};
  const auto A = build_ambient(2, ext);
  CHECK(A.vertex_count() == 12);
  CHECK(A.contains(cell({2, 1}, {0, 1})));
  CHECK_FALSE(A.contains(cell({3, 1}, {0})));
  for (long long i = 0; i < A.vertex_count(); ++i) CHECK(A.vertex_index(A.vertex_at(i)) == i);
  CHECK(A.cofaces(vertex({0, 0})).size() == 2);
  CHECK(A.cofaces(cell({1, 0}, {0})).size() == 1);
  CHECK(A.cells_of_dim(2).size() == 6);

  const int flat[2] = {3, 0};
  try {
    build_ambient(2, flat);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateExtent);
  }
}

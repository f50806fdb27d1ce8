#include <doctest.h>

#include "dsphere/deform.hpp"
#include "dsphere/error.hpp"
#include "dsphere/lofted.hpp"
#include "helpers.hpp"

using namespace dsphere;
using fixtures::cell;
using fixtures::vertex;

namespace {

struct Arc {
  ArcRegion region;
  Filling filling;
  LoftedSequence seq;
};

Arc arc_at(const ManifoldComplex& M, const CubicalCell& center, int gamma) {
  const VertexGraph g(M);
  Arc a;
  a.region = fit_ball(M, g, center, gamma);
  a.filling = curviness(M, a.region).filling;
  a.seq = lofted(M, center, gamma);
  return a;
}

}  // namespace

TEST_CASE("a flip is an involution") {
  const auto M = fixtures::load("ushape");
  for (const auto& sq : M.ambient().cells_of_dim(2)) {
    const auto once = apply_move(M.cells(), sq);
    CHECK(apply_move(once, sq) == M.cells());
  }
}

TEST_CASE("gradual variation") {
  const auto M = fixtures::load("rect12");
  const auto one = apply_move(M.cells(), cell({0, 0}, {0, 1}));
  CHECK(is_gradually_varied(M.ambient(), M.cells(), one));
  CHECK(is_gradually_varied(M.ambient(), M.cells(), M.cells()));
  const auto sq = boundary_of(fixtures::squares({{4, 4}}));
  CHECK(is_gradually_varied(M.ambient(), sq, boundary_of(fixtures::squares({{4, 4}, {3, 3}}))));
  CHECK(is_gradually_varied(M.ambient(), sq, boundary_of(fixtures::squares({{4, 4}, {3, 4}}))));
  CHECK_FALSE(is_gradually_varied(M.ambient(), sq, boundary_of(fixtures::squares({{4, 4}, {3, 4}, {2, 4}}))));
  const int e4[4] = {2, 2, 2, 2};
  CellList a = boundary_cells(cell({0, 0, 0, 0}, {0, 1, 2}));
  CellList b = boundary_cells(cell({1, 0, 0, 0}, {0, 1, 2}));
  CHECK_THROWS_AS(is_gradually_varied(build_ambient(4, e4), canonicalize(a), canonicalize(b)), Error);
}

TEST_CASE("rectangle end is one flip") {
  const auto M = fixtures::load("rect12");
  const auto peak = select_peak(M, 1, Variant::ratio);
  REQUIRE(peak.has_value());
  const auto seq = lofted(M, peak->center(), 1);
  const auto moves = interpolate(M, peak->region, seq, peak->filling);
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].removed.size() == 3);
  CHECK(moves[0].added.size() == 1);
  const auto after = replace_arc(M, peak->region, peak->filling);
  CHECK(apply_move(M.cells(), moves[0].flip) == after.cells());
  CHECK(after.size() == 4);
}

TEST_CASE("u-shape notch closes in two flips") {
  const auto M = fixtures::load("ushape");
  const auto a = arc_at(M, cell({1, 1}, {0}), 2);
  CHECK(semi_convex(a.seq));
  const auto moves = interpolate(M, a.region, a.seq, a.filling);
  REQUIRE(moves.size() == 2);
  CHECK(moves[0].flip == cell({1, 1}, {0, 1}));
  CHECK(moves[1].flip == cell({1, 2}, {0, 1}));
  auto state = M.cells();
  for (const auto& mv : moves) {
    state = apply_move(state, mv.flip);
    const ManifoldComplex S(M.ambient(), state);
    CHECK(validate(S).ok());
    CHECK(S.euler_characteristic() == 0);
  }
  CHECK(state == replace_arc(M, a.region, a.filling).cells());
  CHECK(state.size() == 12);
}

TEST_CASE("interpolation cap") {
  const auto M = fixtures::load("ushape");
  const auto a = arc_at(M, cell({1, 1}, {0}), 2);
  try {
    interpolate(M, a.region, a.seq, a.filling, 1);
    FAIL("expected InterpolationFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InterpolationFailed);
  }
}

TEST_CASE("interpolation outside codimension one") {
  const auto M = fixtures::load("ushape");
  const auto a = arc_at(M, cell({1, 1}, {0}), 2);
  const int e3[3] = {6, 6, 6};
  const auto A3 = build_ambient(3, e3);
  CellList lifted;
  for (const auto& c : M.cells()) {
    auto b = c.base();
    b[2] = 1;
    std::vector<int> base{b[0], b[1], b[2]};
    lifted.push_back(CubicalCell::from_axes(base, c.axis_list()));
  }
  const ManifoldComplex L(A3, canonicalize(lifted));
  try {
    interpolate(L, a.region, a.seq, a.filling);
    FAIL("expected CodimensionUnsupported");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CodimensionUnsupported);
  }
}

TEST_CASE("replacement must stay a closed manifold") {
  const auto M = fixtures::load("ushape");
  auto a = arc_at(M, cell({1, 1}, {0}), 2);
  Filling bad = a.filling;
  bad.cells = {cell({1, 3}, {0}), cell({0, 0}, {0})};
  try {
    replace_arc(M, a.region, bad);
    FAIL("expected ReplacementNotManifold");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReplacementNotManifold);
  }
  bad.cells = {cell({1, 4}, {0})};
  CHECK_THROWS_AS(replace_arc(M, a.region, bad), Error);
}

TEST_CASE("replay") {
  const auto M = fixtures::load("ushape");
  const auto a = arc_at(M, cell({1, 1}, {0}), 2);
  DeformationTrace t{M, {}};
  const auto moves = interpolate(M, a.region, a.seq, a.filling);
  for (const auto& mv : moves) t.steps.emplace_back(MoveStep{mv.flip});
  ReplaceStep rp;
  rp.center = a.region.center;
  rp.gamma = 2;
  rp.removed = a.region.arc;
  rp.added = a.filling.cells;
  rp.moves = static_cast<int>(moves.size());
  t.steps.emplace_back(rp);
  const auto states = replay_states(t);
  CHECK(states.size() == t.steps.size() + 1);
  CHECK(states[2] == states[3]);
  CHECK(replay(t).size() == 12);

  SUBCASE("direct replace") {
    DeformationTrace d{M, {}};
    rp.moves = 0;
    d.steps.emplace_back(rp);
    CHECK(replay(d).cells() == states.back());
  }
  SUBCASE("checkpoint mismatch") {
    DeformationTrace d = t;
    std::get<ReplaceStep>(d.steps.back()).added = {cell({1, 4}, {0})};
    try {
      replay(d);
      FAIL("expected ReplayMismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ReplayMismatch);
    }
  }
  SUBCASE("bad intermediate state") {
    DeformationTrace d{M, {MoveStep{cell({4, 4}, {0, 1})}}};
    CHECK_THROWS_AS(replay(d), Error);
    CHECK(replay_states(d, false).size() == 2);
  }
  SUBCASE("removing absent cells") {
    DeformationTrace d{M, {}};
    rp.moves = 0;
    rp.removed = {cell({4, 4}, {0})};
    d.steps.emplace_back(rp);
    CHECK_THROWS_AS(replay(d), Error);
  }
}

TEST_CASE("arc against its filling") {
  const auto U = fixtures::load("ushape");
  const auto a = arc_at(U, cell({1, 1}, {0}), 2);
  CHECK_FALSE(is_gradually_varied(U.ambient(), a.region.arc, a.filling.cells));
  const auto R = fixtures::load("rect12");
  const auto peak = select_peak(R, 1, Variant::ratio);
  REQUIRE(peak.has_value());
  CHECK(is_gradually_varied(R.ambient(), peak->region.arc, peak->filling.cells));
}

TEST_CASE("rectangle end cap has a single lofted level") {
  const auto M = fixtures::load("rect12");
  const auto peak = select_peak(M, 1, Variant::ratio);
  REQUIRE(peak.has_value());
  const auto seq = lofted(M, peak->center(), 1);
  REQUIRE(seq.levels.size() == 1);
  CHECK(seq.levels[0].filling.size() == 1);
  CHECK(seq.levels[0].intersections.empty());
  CHECK(semi_convex(seq));
  CHECK_FALSE(first_obstruction(seq).has_value());
}

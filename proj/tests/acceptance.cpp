// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "dsphere/error.hpp"
#include "dsphere/io.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dsphere;
using fixtures::cell;
using fixtures::vertex;

namespace {

struct Check {
  std::ostringstream why;
  bool ok = true;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

bool run(int id, const char* title, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(s < limit_s, "took " + std::to_string(s) + "s, limit " + std::to_string(limit_s) + "s");
  std::printf("%s criterion %d: %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", id, title, s, c.ok ? "" : " -- ",
              c.ok ? c.note.c_str() : c.why.str().c_str());
  std::fflush(stdout);
  return c.ok;
}

void check_metric(Check& c, const ManifoldComplex& M) {
  const auto lib = all_pairs(M);
  const auto brute = oracle::brute_pairs(M);
  c.expect(lib.vertices == brute.vertices, "vertex sets differ");
  if (!c.ok) return;
  const std::size_t n = lib.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      c.expect(lib.d_m(i, j) == brute.dm[i][j], "d_M differs from the oracle");
      c.expect(lib.d_u(i, j) == brute.du[i][j], "d_U differs from the oracle");
      c.expect(lib.d_m(i, j) == lib.d_m(j, i), "d_M not symmetric");
      c.expect((lib.d_m(i, j) == 0) == (i == j), "d_M identity fails");
      c.expect(lib.d_m(i, j) >= lib.d_u(i, j), "d_M below d_U");
      for (std::size_t k = 0; k < n; ++k)
        c.expect(lib.d_m(i, j) <= lib.d_m(i, k) + lib.d_m(k, j), "triangle inequality fails");
    }
}

void check_trace(Check& c, const ContractionResult& r, long long chi) {
  for (const auto& node : r.nodes) {
    const auto states = replay_states(node.trace, true);
    c.expect(states.back() == node.final_state.cells(), "replay does not reach the final state");
    for (std::size_t i = 0; i < states.size(); ++i) {
      const ManifoldComplex S(node.trace.initial.ambient(), states[i]);
      c.expect(validate(S).ok(), "intermediate state invalid");
      c.expect(S.euler_characteristic() == chi, "Euler characteristic changed");
      if (i == 0) continue;
      if (const auto* mv = std::get_if<MoveStep>(&node.trace.steps[i - 1]))
        c.expect(apply_move(states[i], mv->flip) == states[i - 1], "flip is not an involution");
    }
  }
  const auto back = trace_from_json(nlohmann::json::parse(trace_to_json(r).dump()));
  c.expect(format_trace(back) == format_trace(r), "dump does not round trip");
}

std::size_t replacements(const ContractionNode& node) {
  std::size_t k = 0;
  for (const auto& s : node.trace.steps) k += std::holds_alternative<ReplaceStep>(s);
  return k;
}

}  // namespace

int main() {
  bool all = true;

  all &= run(1, "metric matches brute force on 50 random subcomplexes", 10, [](Check& c) {
    std::mt19937_64 rng(1);
    const int e2[2] = {10, 10}, e3[3] = {5, 5, 5};
    const auto A2 = build_ambient(2, e2), A3 = build_ambient(3, e3);
    std::size_t cells = 0;
    for (int t = 0; t < 50; ++t) {
      const bool plane = t < 25;
      const auto& A = plane ? A2 : A3;
      const int m = 1 + static_cast<int>(rng() % 2);
      const auto patch = oracle::random_patch(rng, A, m, 1 + static_cast<int>(rng() % 40));
      check_metric(c, ManifoldComplex(A, patch));
      cells += patch.size();
    }
    c.note = " " + std::to_string(cells) + " cells";
  });

  all &= run(2, "minimum fillings match exhaustive enumeration", 60, [](Check& c) {
    std::mt19937_64 rng(2);
    const int e2[2] = {6, 6}, e3[3] = {4, 4, 4};
    const auto A2 = build_ambient(2, e2), A3 = build_ambient(3, e3);
    int compared = 0;
    for (int t = 0; t < 40; ++t) {
      const auto a = vertex({static_cast<int>(rng() % 7), static_cast<int>(rng() % 7)});
      const auto b = vertex({static_cast<int>(rng() % 7), static_cast<int>(rng() % 7)});
      if (a == b) continue;
      CellList ends{a, b};
      canonicalize(ends);
      const auto brute = oracle::enumerate_fillings(A2, ends, 6);
      if (brute.size < 0) continue;
      const auto F = min_filling(A2, Cycle{ends, 1}, {});
      c.expect(static_cast<int>(F.size()) == brute.size, "segment filling size differs");
      c.expect(boundary_of(F.cells) == ends, "segment filling boundary differs");
      ++compared;
    }
    for (int t = 0; t < 40; ++t) {
      const auto patch = oracle::random_patch(rng, A3, 2, 1 + static_cast<int>(rng() % 5));
      const auto ring = boundary_of(patch);
      if (ring.empty()) continue;
      const auto brute = oracle::enumerate_fillings(A3, ring, 6);
      if (brute.size < 0) continue;
      const auto F = min_filling(A3, Cycle{ring, 2}, {});
      c.expect(static_cast<int>(F.size()) == brute.size, "surface filling size differs");
      c.expect(boundary_of(F.cells) == ring, "surface filling boundary differs");
      ++compared;
    }
    c.expect(compared >= 40, "too few comparisons");
    c.note = " " + std::to_string(compared) + " boundaries";
  });

  all &= run(3, "u-shape inner arc r=5 r1=4 h=2 r3=2", 5, [](Check& c) {
    const auto M = fixtures::load("ushape");
    const auto brute = oracle::brute_pairs(M);
    const auto p = vertex({1, 3}), q = vertex({2, 3});
    c.expect(brute.dm[brute.at(p)][brute.at(q)] == 5, "oracle d_M != 5");
    c.expect(brute.du[brute.at(p)][brute.at(q)] == 1, "oracle d_U != 1");
    c.expect(oracle::enumerate_fillings(M.ambient(), CellList{p, q}, 4).size == 1, "oracle filling != 1");
    bool found = false;
    for (const auto& row : curviness_table(M, 2)) {
      if (row.center() != cell({1, 1}, {0})) continue;
      found = true;
      c.expect(row.region.boundary.cells == CellList{p, q}, "cycle is not the notch endpoints");
      c.expect(row.filling.size() == 1, "filling size != 1");
      c.expect(row.r == Rational(5) && row.r1 == 4 && row.h == 2 && row.r3 == Rational(2), "measures differ");
    }
    c.expect(found, "inner arc not in the table");
  });

  all &= run(4, "rectangle and u-shape contract to a square with replay", 5, [](Check& c) {
    const auto rect = contract(fixtures::load("rect12"));
    c.expect(rect.status() == TerminalKind::IrreducibleSphere, "rect12 not a sphere");
    c.expect(rect.nodes.size() == 1 && replacements(rect.root()) == 1, "rect12 needs exactly one replacement");
    c.expect(rect.root().final_state.size() == 4, "rect12 final size != 4");
    check_trace(c, rect, 0);

    const auto u = contract(fixtures::load("ushape"));
    c.expect(u.status() == TerminalKind::IrreducibleSphere, "ushape not a sphere");
    c.expect(u.root().final_state.size() == 4, "ushape final size != 4");
    const auto states = replay_states(u.root().trace);
    std::vector<std::size_t> sizes{states.front().size()};
    for (std::size_t i = 0; i < u.root().trace.steps.size(); ++i)
      if (std::holds_alternative<ReplaceStep>(u.root().trace.steps[i])) sizes.push_back(states[i + 1].size());
    c.expect(sizes.size() >= 2 && sizes[0] == 16 && sizes[1] == 12, "ushape does not start 16 -> 12");
    for (std::size_t i = 1; i < sizes.size(); ++i) c.expect(sizes[i] < sizes[i - 1], "size not decreasing");
    check_trace(c, u, 0);
  });

  all &= run(5, "boxes contract to a voxel through valid spheres", 300, [](Check& c) {
    for (const char* name : {"box211", "box333"}) {
      const auto r = contract(fixtures::load(name));
      c.expect(r.status() == TerminalKind::IrreducibleSphere, std::string(name) + " not a sphere");
      for (const auto& node : r.nodes) c.expect(node.final_state.size() == 6, "final state is not a voxel");
      check_trace(c, r, 2);
    }
  });

  all &= run(6, "torus ends in an obstruction", 300, [](Check& c) {
    const auto r = contract(fixtures::load("torus"));
    c.expect(r.status() == TerminalKind::NotSimplyConnectedObstruction, "status is not an obstruction");
    for (const auto& node : r.nodes)
      c.expect(node.terminal.kind != TerminalKind::IrreducibleSphere || node.id != 0, "root became a sphere");
    const auto& t = r.deciding_terminal();
    c.expect(t.evidence.has_value() && !t.evidence->intersections.empty(), "no intersecting lofted level");
    check_trace(c, r, 0);
  });

  all &= run(7, "100 random rectilinear curves reach a square", 600, [](Check& c) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto M = random_rectilinear_curve(seed, 16, 16, 60);
      c.expect(M.size() <= 60, "perimeter above 60");
      const auto r = contract(M);
      c.expect(r.status() == TerminalKind::IrreducibleSphere, "seed " + std::to_string(seed) + " not a sphere");
      check_trace(c, r, 0);
    }
  });

  all &= run(8, "two runs give identical traces and frames", 120, [](Check& c) {
    const auto inputs = {fixtures::load("ushape"), fixtures::load("box333"), random_rectilinear_curve(7)};
    for (const auto& M : inputs) {
      const auto a = contract(M), b = contract(M);
      c.expect(format_trace(a) == format_trace(b), "trace text differs");
      c.expect(trace_to_json(a).dump() == trace_to_json(b).dump(), "dump differs");
      for (std::size_t i = 0; i < a.nodes.size() && i < b.nodes.size(); ++i)
        c.expect(render_frames(a.nodes[i].trace) == render_frames(b.nodes[i].trace), "frames differ");
    }
  });

  return all ? 0 : 1;
}

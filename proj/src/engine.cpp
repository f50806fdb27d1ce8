#include "dsphere/engine.hpp"

#include <algorithm>

#include "dsphere/error.hpp"

namespace dsphere {

const char* to_string(TerminalKind k) {
  switch (k) {
    case TerminalKind::IrreducibleSphere: return "IrreducibleSphere";
    case TerminalKind::NotSimplyConnectedObstruction: return "NotSimplyConnectedObstruction";
    case TerminalKind::Exhausted: return "Exhausted";
  }
  return "?";
}

const Terminal& ContractionResult::deciding_terminal() const {
  for (const auto& node : nodes)
    if (node.terminal.kind != TerminalKind::IrreducibleSphere) return node.terminal;
  return root().terminal;
}

TerminalKind ContractionResult::status() const { return deciding_terminal().kind; }

std::optional<CubicalCell> irreducible_witness(const ManifoldComplex& M) {
  const int m = M.top_dim();
  if (m + 1 > M.ambient().n() || M.size() != static_cast<std::size_t>(2 * (m + 1))) return std::nullopt;
  for (const auto& c : M.ambient().cofaces(M.cells().front())) {
    auto faces = boundary_cells(c);
    canonicalize(faces);
    if (faces == M.cells()) return c;
  }
  return std::nullopt;
}

bool is_irreducible_sphere(const ManifoldComplex& M) { return irreducible_witness(M).has_value(); }

DiameterCheck diameter_sphere_check(const ManifoldComplex& M) {
  const auto table = all_pairs(M);
  DiameterCheck out;
  out.diameter = diameter(table, false).value;
  out.holds = true;
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::size_t arg = i;
    for (std::size_t j = 0; j < table.size(); ++j)
      if (table.d_m(i, j) > table.d_m(i, arg)) arg = j;
    out.witnesses.emplace_back(table.vertices[i], table.vertices[arg]);
    if (table.d_m(i, arg) != out.diameter) out.holds = false;
  }
  return out;
}

std::vector<int> radius_sweep(int diameter, RadiusPolicy policy) {
  const int top = std::max(1, diameter / 2);
  std::vector<int> out;
  if (policy == RadiusPolicy::bottom_up) {
    for (int g = 1; g <= top; ++g) out.push_back(g);
    return out;
  }
  out = radius_schedule(diameter);
  for (int g = top; g >= 1; --g)
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

namespace {

CellList minus(const CellList& a, const CellList& b) {
  CellList out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class Engine {
 public:
  explicit Engine(const ContractionConfig& config) : cfg_(config) {}

  ContractionResult run(const ManifoldComplex& M) {
    depth_cap_ = static_cast<int>(M.size());
    run_node(M, -1, std::nullopt, {}, 0);
    return std::move(result_);
  }

 private:
  int run_node(const ManifoldComplex& start, int parent, std::optional<Cycle> glue, CellList glue_filling,
               int depth) {
    const int id = static_cast<int>(result_.nodes.size());
    result_.nodes.emplace_back();
    {
      auto& node = result_.nodes.back();
      node.id = id;
      node.parent = parent;
      node.glue_cycle = std::move(glue);
      node.glue_filling = std::move(glue_filling);
    }
    if (parent >= 0) result_.nodes[static_cast<std::size_t>(parent)].children.push_back(id);

    DeformationTrace trace{start, {}};
    ManifoldComplex state = start;
    std::optional<ObstructionEvidence> evidence;
    const int budget = cfg_.max_replacements > 0 ? cfg_.max_replacements : 4 * static_cast<int>(start.size()) + 16;

    bool stuck = false;
    for (int iter = 0; iter < budget && !is_irreducible_sphere(state); ++iter) {
      bool progressed = false;
      for (int gamma : radius_sweep(diameter(state, false).value, cfg_.radius_policy)) {
        auto cands = scan_candidates(state, gamma, cfg_.filling_cap);
        std::stable_sort(cands.begin(), cands.end(), [&](const CurvinessReport& a, const CurvinessReport& b) {
          return measure(a, cfg_.variant) > measure(b, cfg_.variant);
        });
        for (const auto& c : cands) {
          if (apply(state, c, cands.size(), trace, evidence, id, depth)) {
            progressed = true;
            break;
          }
        }
        if (progressed) break;
      }
      if (!progressed) {
        stuck = true;
        break;
      }
    }

    Terminal terminal;
    terminal.euler_characteristic = state.euler_characteristic();
    if (auto w = irreducible_witness(state)) {
      terminal.kind = TerminalKind::IrreducibleSphere;
      terminal.witness = w;
    } else {
      // Evidence only decides when no candidate applies; a spent budget is exhaustion.
      if (stuck && !evidence) evidence = probe(state);
      terminal.kind = stuck && evidence ? TerminalKind::NotSimplyConnectedObstruction : TerminalKind::Exhausted;
      terminal.evidence = evidence;
    }
    auto& node = result_.nodes[static_cast<std::size_t>(id)];
    node.trace = std::move(trace);
    node.final_state = std::move(state);
    node.terminal = std::move(terminal);
    return id;
  }

  bool apply(ManifoldComplex& state, const CurvinessReport& c, std::size_t count, DeformationTrace& trace,
             std::optional<ObstructionEvidence>& evidence, int id, int depth) {
    const ArcRegion& X = c.region;
    const Filling& F = c.filling;
    if (ManifoldComplex(state.ambient(), X.arc).euler_characteristic() != 1) return false;
    ManifoldComplex next;
    try {
      next = replace_arc(state, X, F);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ReplacementNotManifold) throw;
      return false;
    }
    ReplaceStep rs;
    rs.center = c.center();
    rs.gamma = c.gamma();
    rs.removed = minus(X.arc, F.cells);
    rs.added = minus(F.cells, X.arc);
    rs.candidates = count;
    rs.single_new_cell =
        std::count_if(F.cells.begin(), F.cells.end(), [&](const CubicalCell& f) { return !state.has_cell(f); }) == 1;

    std::optional<LoftedSequence> seq;
    bool convex = false;
    try {
      seq = lofted(state, c.center(), c.gamma(), cfg_.filling_cap);
      convex = semi_convex(*seq);
      if (!convex && !evidence) evidence = evidence_from(*seq);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CycleFitFailed && e.kind() != ErrorKind::FillingNotFound) throw;
    }
    if (convex && state.top_dim() == state.ambient().n() - 1) {
      try {
        const auto moves = interpolate(state, X, *seq, F, cfg_.move_cap);
        for (const auto& mv : moves) trace.steps.emplace_back(MoveStep{mv.flip});
        rs.moves = static_cast<int>(moves.size());
        trace.steps.emplace_back(std::move(rs));
        state = std::move(next);
        return true;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InterpolationFailed) throw;
      }
    }

    // Cut off the closed piece arc + filling and continue it separately.
    const auto piece = symmetric_difference(X.arc, F.cells);
    if (piece.empty() || depth + 1 > depth_cap_) return false;
    const ManifoldComplex child(state.ambient(), piece);
    if (!validate(child).ok()) return false;
    const int child_id = static_cast<int>(result_.nodes.size());
    trace.steps.emplace_back(SplitStep{X.boundary, F.cells, child_id});
    trace.steps.emplace_back(std::move(rs));
    state = std::move(next);
    run_node(child, id, X.boundary, F.cells, depth + 1);
    return true;
  }

  static ObstructionEvidence evidence_from(const LoftedSequence& seq) {
    const auto& level = seq.levels[*first_obstruction(seq)];
    return {seq.center, seq.gamma, level.radius, level.intersections};
  }

  // Looks for an arc whose minimum filling runs into the rest of the surface.
  std::optional<ObstructionEvidence> probe(const ManifoldComplex& state) const {
    const VertexGraph graph(state);
    CellList centers;
    for (int d = 0; d <= state.top_dim(); ++d)
      centers.insert(centers.end(), state.closure(d).begin(), state.closure(d).end());
    for (int gamma : radius_sweep(diameter(state, false).value, cfg_.radius_policy)) {
      for (const auto& center : centers) {
        std::optional<ArcRegion> region;
        try {
          region = fit_ball(state, graph, center, gamma);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::NoFittingCycle && e.kind() != ErrorKind::NotSeparating) throw;
          continue;
        }
        const int limit = std::min(cfg_.filling_cap, static_cast<int>(region->arc.size()));
        const auto filling = exact_filling(state.ambient(), region->boundary, region->complement, limit);
        if (!filling || filling->clean()) continue;
        try {
          const auto seq = lofted(state, center, gamma, cfg_.filling_cap);
          if (first_obstruction(seq)) return evidence_from(seq);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::CycleFitFailed && e.kind() != ErrorKind::FillingNotFound) throw;
        }
        return ObstructionEvidence{center, gamma, gamma, filling->avoid_hits};
      }
    }
    return std::nullopt;
  }

  const ContractionConfig& cfg_;
  ContractionResult result_;
  int depth_cap_ = 0;
};

}  // namespace

ContractionResult contract(const ManifoldComplex& M, const ContractionConfig& config) {
  const auto report = validate(M);
  if (!report.ok()) throw Error(ErrorKind::ValidationFailed, "input is not a connected closed manifold");
  Engine engine(config);
  return engine.run(M);
}

}  // namespace dsphere

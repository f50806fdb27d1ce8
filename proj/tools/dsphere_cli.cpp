#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dsphere/error.hpp"
#include "dsphere/io.hpp"

namespace {

using namespace dsphere;

struct Globals {
  std::uint64_t seed = 0;
  bool quiet = false;
};

void print_report(const ManifoldComplex& M, const ValidationReport& r) {
  std::cout << "is_manifold " << r.is_manifold << "\nis_closed " << r.is_closed << "\nis_regular " << r.is_regular
            << "\nlink_spheres_ok " << r.link_spheres_ok << "\ncells " << M.size()
            << "\neuler_characteristic " << M.euler_characteristic() << '\n';
  for (const auto& c : r.offending_cells) std::cout << "offending " << to_string(c, M.ambient().n()) << '\n';
}

void print_row(const CurvinessReport& c, int n) {
  std::cout << to_string(c.center(), n) << ' ' << c.gamma() << ' ' << c.r.str() << ' ' << c.r1 << ' ' << c.h << ' '
            << c.r3.str() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contract cubical surfaces by replacing curved arcs with minimal fillings"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized subcommands");
  app.add_flag("--quiet", g.quiet, "Suppress progress output");

  std::string fixture;
  auto* validate_cmd = app.add_subcommand("validate", "Check that a fixture is a connected closed manifold");
  validate_cmd->add_option("fixture", fixture)->required();

  bool pairs = false;
  auto* distances_cmd = app.add_subcommand("distances", "Diameters and all-pairs vertex distances");
  distances_cmd->add_option("fixture", fixture)->required();
  distances_cmd->add_flag("--pairs", pairs, "Print every pair: x y d_M d_U");

  int radius = 1;
  std::string variant = "ratio";
  bool all = false;
  int cap = kDefaultFillingCap;
  auto* curv_cmd = app.add_subcommand("curviness", "Peak arc at one radius, or the full table");
  curv_cmd->add_option("fixture", fixture)->required();
  curv_cmd->add_option("--radius", radius)->check(CLI::PositiveNumber);
  curv_cmd->add_option("--variant", variant)->check(CLI::IsMember({"ratio", "diff", "height", "height-ratio"}));
  curv_cmd->add_flag("--all", all, "Print x γ r r1 h r3 for every center");
  curv_cmd->add_option("--filling-cap", cap)->check(CLI::PositiveNumber);

  std::string input, trace_out, dump_out, frames_out, policy = "top-down";
  int move_cap = 0;
  auto* contract_cmd = app.add_subcommand("contract", "Run the contraction; exit 0 sphere, 2 obstruction, 3 exhausted");
  contract_cmd->add_option("--input", input)->required();
  contract_cmd->add_option("--variant", variant)->check(CLI::IsMember({"ratio", "diff", "height", "height-ratio"}));
  contract_cmd->add_option("--filling-cap", cap)->check(CLI::PositiveNumber);
  contract_cmd->add_option("--move-cap", move_cap, "Flips per replacement; 0 = 10 * arc size");
  contract_cmd->add_option("--radius-policy", policy)->check(CLI::IsMember({"top-down", "bottom-up"}));
  contract_cmd->add_option("--trace-out", trace_out, "Line trace");
  contract_cmd->add_option("--dump-out", dump_out, "JSON dump for render");
  contract_cmd->add_option("--frames-out", frames_out, "Directory for SVG/OBJ frames");

  std::string dump_in;
  auto* render_cmd = app.add_subcommand("render", "Replay a JSON dump into frames");
  render_cmd->add_option("dump", dump_in)->required();
  render_cmd->add_option("--frames-out", frames_out)->required();

  std::string out;
  int size = 16, perimeter = 60;
  auto* gen_cmd = app.add_subcommand("generate", "Random rectilinear simple closed curve (uses --seed)");
  gen_cmd->add_option("--out", out)->required();
  gen_cmd->add_option("--size", size)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-perimeter", perimeter)->check(CLI::Range(4, 100000));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) {
      const auto M = load_fixture(fixture, false);
      const auto r = validate(M);
      print_report(M, r);
      return r.ok() ? 0 : 1;
    }
    if (*distances_cmd) {
      const auto M = load_fixture(fixture);
      const auto table = all_pairs(M);
      const auto dm = diameter(table, false);
      const auto du = diameter(table, true);
      const int n = M.ambient().n();
      std::cout << "diameter_M " << dm.value << ' ' << to_string(dm.first, n) << ' ' << to_string(dm.second, n) << '\n';
      std::cout << "diameter_U " << du.value << ' ' << to_string(du.first, n) << ' ' << to_string(du.second, n) << '\n';
      if (pairs)
        for (std::size_t i = 0; i < table.size(); ++i)
          for (std::size_t j = i + 1; j < table.size(); ++j)
            std::cout << to_string(table.vertices[i], n) << ' ' << to_string(table.vertices[j], n) << ' '
                      << table.d_m(i, j) << ' ' << table.d_u(i, j) << '\n';
      return 0;
    }
    if (*curv_cmd) {
      const auto M = load_fixture(fixture);
      const int n = M.ambient().n();
      if (all) {
        std::cout << "# x γ r r1 h r3\n";
        for (const auto& c : curviness_table(M, radius, cap)) print_row(c, n);
        return 0;
      }
      const auto peak = select_peak(M, radius, parse_variant(variant), cap);
      if (!peak) {
        std::cout << "no candidate at radius " << radius << '\n';
        return 0;
      }
      std::cout << "# x γ r r1 h r3\n";
      print_row(*peak, n);
      return 0;
    }
    if (*contract_cmd) {
      const auto M = load_fixture(input);
      ContractionConfig cfg;
      cfg.variant = parse_variant(variant);
      cfg.filling_cap = cap;
      cfg.move_cap = move_cap;
      cfg.radius_policy = policy == "bottom-up" ? RadiusPolicy::bottom_up : RadiusPolicy::top_down;
      const auto result = contract(M, cfg);
      if (!trace_out.empty()) write_text(trace_out, format_trace(result));
      if (!dump_out.empty()) write_text(dump_out, trace_to_json(result).dump(1) + "\n");
      if (!frames_out.empty()) write_frames(result, frames_out);
      if (!g.quiet) {
        std::size_t steps = 0;
        for (const auto& node : result.nodes) steps += node.trace.steps.size();
        std::cerr << to_string(result.status()) << ": " << result.nodes.size() << " node(s), " << steps
                  << " step(s), final size " << result.root().final_state.size() << '\n';
      }
      switch (result.status()) {
        case TerminalKind::IrreducibleSphere: return 0;
        case TerminalKind::NotSimplyConnectedObstruction: return 2;
        case TerminalKind::Exhausted: return 3;
      }
    }
    if (*render_cmd) {
      const auto result = trace_from_json(nlohmann::json::parse(read_text(dump_in)));
      const auto written = write_frames(result, frames_out);
      if (!g.quiet) std::cerr << written.size() << " frame(s) written\n";
      return 0;
    }
    if (*gen_cmd) {
      save_fixture(out, random_rectilinear_curve(g.seed, size, size, perimeter));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

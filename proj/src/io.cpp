#include "dsphere/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <unordered_map>

#include "dsphere/error.hpp"

namespace dsphere {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& why) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + why);
}

int to_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) parse_fail(line, "bad integer '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail(line, "bad integer '" + tok + "'");
  }
}

}  // namespace

ManifoldComplex parse_fixture(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  std::optional<AmbientSpace> ambient;
  CellList cells;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "ambient") {
      if (ambient) parse_fail(line, "second ambient line");
      if (tok.size() < 2) parse_fail(line, "ambient needs a dimension");
      const int n = to_int(tok[1], line);
      if (n < 2 || n > kMaxAmbientDim) parse_fail(line, "ambient dimension out of range");
      if (static_cast<int>(tok.size()) != 2 + n) parse_fail(line, "ambient needs one extent per axis");
      std::vector<int> extent;
      for (int a = 0; a < n; ++a) extent.push_back(to_int(tok[static_cast<std::size_t>(2 + a)], line));
      ambient = build_ambient(n, extent);
    } else if (tok[0] == "cell") {
      if (!ambient) parse_fail(line, "cell before ambient");
      const int n = ambient->n();
      if (static_cast<int>(tok.size()) < 2 + n || tok[static_cast<std::size_t>(1 + n)] != "axes")
        parse_fail(line, "expected 'cell' <n coordinates> 'axes' <axes>");
      std::vector<int> base;
      for (int a = 0; a < n; ++a) base.push_back(to_int(tok[static_cast<std::size_t>(1 + a)], line));
      std::vector<int> axes;
      for (std::size_t i = static_cast<std::size_t>(2 + n); i < tok.size(); ++i) {
        const int a = to_int(tok[i], line);
        if (a < 0 || a >= n) parse_fail(line, "axis out of range");
        if (std::find(axes.begin(), axes.end(), a) != axes.end()) parse_fail(line, "repeated axis");
        axes.push_back(a);
      }
      if (axes.empty()) parse_fail(line, "cells need at least one axis");
      const auto c = CubicalCell::from_axes(base, axes);
      if (!ambient->contains(c)) parse_fail(line, "cell outside the ambient");
      if (!cells.empty() && cells.front().dim() != c.dim()) parse_fail(line, "cells of mixed dimension");
      cells.push_back(c);
    } else {
      parse_fail(line, "unknown record '" + tok[0] + "'");
    }
  }
  if (!ambient) parse_fail(line, "missing ambient line");
  if (cells.empty()) parse_fail(line, "no cells");
  return ManifoldComplex(*ambient, std::move(cells));
}

std::string format_fixture(const ManifoldComplex& M) {
  const int n = M.ambient().n();
  std::ostringstream out;
  out << "ambient " << n;
  for (int a = 0; a < n; ++a) out << ' ' << M.ambient().extent(a);
  out << '\n';
  for (const auto& c : M.cells()) {
    out << "cell";
    for (int a = 0; a < n; ++a) out << ' ' << c.coord(a);
    out << " axes";
    for (int a : c.axis_list()) out << ' ' << a;
    out << '\n';
  }
  return out.str();
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << text;
}

ManifoldComplex load_fixture(const std::filesystem::path& path, bool require_valid) {
  ManifoldComplex M = parse_fixture(read_text(path));
  if (require_valid) {
    const auto report = validate(M);
    if (!report.ok()) {
      std::string list;
      for (const auto& c : report.offending_cells) list += " " + to_string(c, M.ambient().n());
      throw Error(ErrorKind::ValidationFailed, path.string() + ": offending cells" + list);
    }
  }
  return M;
}

void save_fixture(const std::filesystem::path& path, const ManifoldComplex& M) { write_text(path, format_fixture(M)); }

namespace {

std::string join(const CellList& cells, int n) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ';';
    out += to_string(cells[i], n);
  }
  return out;
}

}  // namespace

std::string format_trace(const ContractionResult& result) {
  std::ostringstream out;
  for (const auto& node : result.nodes) {
    const int n = node.trace.initial.ambient().n();
    out << "node " << node.id << " parent=" << node.parent << " cells=" << node.trace.initial.size() << '\n';
    for (const auto& step : node.trace.steps) {
      if (const auto* mv = std::get_if<MoveStep>(&step)) {
        out << "move flip=" << to_string(mv->flip, n) << '\n';
      } else if (const auto* rp = std::get_if<ReplaceStep>(&step)) {
        out << "replace x=" << to_string(rp->center, n) << " γ=" << rp->gamma << " removed=" << rp->removed.size()
            << " added=" << rp->added.size() << " moves=" << rp->moves << '\n';
      } else if (const auto* sp = std::get_if<SplitStep>(&step)) {
        out << "split cycle=" << join(sp->cycle.cells, n) << " child=" << sp->child << '\n';
      }
    }
    const Terminal& t = node.terminal;
    out << "terminal";
    if (t.witness) out << " center=" << to_string(*t.witness, n);
    if (t.evidence)
      out << " center=" << to_string(t.evidence->center, n) << " γ=" << t.evidence->gamma
          << " level=" << t.evidence->level_radius << " intersections=" << t.evidence->intersections.size();
    out << " status=" << to_string(t.kind) << " chi=" << t.euler_characteristic << '\n';
  }
  return out.str();
}

namespace {

using nlohmann::json;

json cells_json(const CellList& cells, int n) {
  json arr = json::array();
  for (const auto& c : cells) arr.push_back(to_string(c, n));
  return arr;
}

CellList cells_from(const json& arr, int n) {
  CellList out;
  for (const auto& s : arr) out.push_back(parse_cell(s.get<std::string>(), n));
  return canonicalize(out);
}

TerminalKind terminal_from(const std::string& s) {
  if (s == "IrreducibleSphere") return TerminalKind::IrreducibleSphere;
  if (s == "NotSimplyConnectedObstruction") return TerminalKind::NotSimplyConnectedObstruction;
  if (s == "Exhausted") return TerminalKind::Exhausted;
  throw Error(ErrorKind::ParseError, "unknown terminal status '" + s + "'");
}

}  // namespace

json trace_to_json(const ContractionResult& result) {
  json j;
  const AmbientSpace& ambient = result.root().trace.initial.ambient();
  const int n = ambient.n();
  j["ambient"] = {{"n", n}, {"extent", std::vector<int>(ambient.extent().begin(), ambient.extent().begin() + n)}};
  j["m"] = result.root().trace.initial.top_dim();
  j["status"] = to_string(result.status());
  j["nodes"] = json::array();
  for (const auto& node : result.nodes) {
    json jn;
    jn["id"] = node.id;
    jn["parent"] = node.parent;
    jn["children"] = node.children;
    jn["glue_cycle"] = node.glue_cycle ? cells_json(node.glue_cycle->cells, n) : json(nullptr);
    jn["glue_filling"] = cells_json(node.glue_filling, n);
    jn["initial"] = cells_json(node.trace.initial.cells(), n);
    jn["final"] = cells_json(node.final_state.cells(), n);
    json steps = json::array();
    for (const auto& step : node.trace.steps) {
      if (const auto* mv = std::get_if<MoveStep>(&step)) {
        steps.push_back({{"type", "move"}, {"flip", to_string(mv->flip, n)}});
      } else if (const auto* rp = std::get_if<ReplaceStep>(&step)) {
        steps.push_back({{"type", "replace"},
                         {"center", to_string(rp->center, n)},
                         {"gamma", rp->gamma},
                         {"removed", cells_json(rp->removed, n)},
                         {"added", cells_json(rp->added, n)},
                         {"moves", rp->moves},
                         {"candidates", rp->candidates},
                         {"single_new_cell", rp->single_new_cell}});
      } else if (const auto* sp = std::get_if<SplitStep>(&step)) {
        steps.push_back({{"type", "split"},
                         {"cycle", cells_json(sp->cycle.cells, n)},
                         {"filling", cells_json(sp->filling, n)},
                         {"child", sp->child}});
      }
    }
    jn["steps"] = steps;
    const Terminal& t = node.terminal;
    json jt;
    jt["status"] = to_string(t.kind);
    jt["euler_characteristic"] = t.euler_characteristic;
    jt["witness"] = t.witness ? json(to_string(*t.witness, n)) : json(nullptr);
    if (t.evidence) {
      jt["evidence"] = {{"center", to_string(t.evidence->center, n)},
                        {"gamma", t.evidence->gamma},
                        {"level", t.evidence->level_radius},
                        {"intersections", cells_json(t.evidence->intersections, n)}};
    } else {
      jt["evidence"] = nullptr;
    }
    jn["terminal"] = jt;
    j["nodes"].push_back(jn);
  }
  return j;
}

ContractionResult trace_from_json(const json& j) {
  try {
    const int n = j.at("ambient").at("n").get<int>();
    const auto extent = j.at("ambient").at("extent").get<std::vector<int>>();
    if (static_cast<int>(extent.size()) != n) throw Error(ErrorKind::ParseError, "extent length mismatch");
    const AmbientSpace ambient = build_ambient(n, extent);
    const int m = j.at("m").get<int>();
    ContractionResult result;
    for (const auto& jn : j.at("nodes")) {
      ContractionNode node;
      node.id = jn.at("id").get<int>();
      node.parent = jn.at("parent").get<int>();
      node.children = jn.at("children").get<std::vector<int>>();
      if (!jn.at("glue_cycle").is_null()) node.glue_cycle = Cycle{cells_from(jn.at("glue_cycle"), n), m};
      node.glue_filling = cells_from(jn.at("glue_filling"), n);
      node.trace.initial = ManifoldComplex(ambient, cells_from(jn.at("initial"), n));
      node.final_state = ManifoldComplex(ambient, cells_from(jn.at("final"), n));
      for (const auto& js : jn.at("steps")) {
        const auto type = js.at("type").get<std::string>();
        if (type == "move") {
          node.trace.steps.emplace_back(MoveStep{parse_cell(js.at("flip").get<std::string>(), n)});
        } else if (type == "replace") {
          ReplaceStep rp;
          rp.center = parse_cell(js.at("center").get<std::string>(), n);
          rp.gamma = js.at("gamma").get<int>();
          rp.removed = cells_from(js.at("removed"), n);
          rp.added = cells_from(js.at("added"), n);
          rp.moves = js.at("moves").get<int>();
          rp.candidates = js.at("candidates").get<std::size_t>();
          rp.single_new_cell = js.at("single_new_cell").get<bool>();
          node.trace.steps.emplace_back(std::move(rp));
        } else if (type == "split") {
          SplitStep sp;
          sp.cycle = Cycle{cells_from(js.at("cycle"), n), m};
          sp.filling = cells_from(js.at("filling"), n);
          sp.child = js.at("child").get<int>();
          node.trace.steps.emplace_back(std::move(sp));
        } else {
          throw Error(ErrorKind::ParseError, "unknown step type '" + type + "'");
        }
      }
      const auto& jt = jn.at("terminal");
      node.terminal.kind = terminal_from(jt.at("status").get<std::string>());
      node.terminal.euler_characteristic = jt.at("euler_characteristic").get<long long>();
      if (!jt.at("witness").is_null()) node.terminal.witness = parse_cell(jt.at("witness").get<std::string>(), n);
      if (!jt.at("evidence").is_null()) {
        const auto& je = jt.at("evidence");
        node.terminal.evidence = ObstructionEvidence{parse_cell(je.at("center").get<std::string>(), n),
                                                     je.at("gamma").get<int>(), je.at("level").get<int>(),
                                                     cells_from(je.at("intersections"), n)};
      }
      result.nodes.push_back(std::move(node));
    }
    if (result.nodes.empty()) throw Error(ErrorKind::ParseError, "dump has no nodes");
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

FrameFormat frame_format(const AmbientSpace& ambient) {
  if (ambient.n() == 2) return FrameFormat::svg;
  if (ambient.n() == 3) return FrameFormat::obj;
  throw Error(ErrorKind::InvalidArgument, "frames need a 2- or 3-dimensional ambient");
}

namespace {

constexpr int kScale = 24;
constexpr int kMargin = 12;

std::string svg_frame(const AmbientSpace& ambient, const CellList& state, const CellList& previous, std::size_t k) {
  const int w = ambient.extent(0) * kScale + 2 * kMargin;
  const int h = ambient.extent(1) * kScale + 2 * kMargin;
  auto px = [](int x) { return kMargin + x * kScale; };
  auto py = [&](int y) { return kMargin + (ambient.extent(1) - y) * kScale; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << ' ' << h << "\">\n";
  out << "<title>frame " << k << "</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int x = 0; x <= ambient.extent(0); ++x)
    out << "<line x1=\"" << px(x) << "\" y1=\"" << py(0) << "\" x2=\"" << px(x) << "\" y2=\"" << py(ambient.extent(1))
        << "\"/>\n";
  for (int y = 0; y <= ambient.extent(1); ++y)
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(y) << "\" x2=\"" << px(ambient.extent(0)) << "\" y2=\"" << py(y)
        << "\"/>\n";
  out << "</g>\n<g stroke-width=\"4\" stroke-linecap=\"round\">\n";
  for (const auto& c : state) {
    if (c.dim() != 1) continue;
    const int x0 = c.coord(0), y0 = c.coord(1);
    const int x1 = x0 + (c.spans(0) ? 1 : 0), y1 = y0 + (c.spans(1) ? 1 : 0);
    const bool fresh = !std::binary_search(previous.begin(), previous.end(), c);
    out << "<line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x1) << "\" y2=\"" << py(y1)
        << "\" stroke=\"" << (fresh ? "#d62728" : "#1f1f1f") << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string obj_frame(const CellList& state, std::size_t k) {
  std::ostringstream out;
  out << "# frame " << k << '\n';
  std::unordered_map<CubicalCell, std::size_t, CellHash> index;
  std::vector<CubicalCell> order;
  auto vid = [&](const CubicalCell& v) {
    auto [it, inserted] = index.emplace(v, order.size() + 1);
    if (inserted) order.push_back(v);
    return it->second;
  };
  std::ostringstream faces;
  for (const auto& c : state) {
    const auto axes = c.axis_list();
    auto corner = [&](int da, int db) {
      Coord b = c.base();
      b[static_cast<std::size_t>(axes[0])] += da;
      if (axes.size() > 1) b[static_cast<std::size_t>(axes[1])] += db;
      return vid(CubicalCell(b, 0));
    };
    if (axes.size() == 2) {
      const auto a = corner(0, 0), b = corner(1, 0), cc = corner(1, 1), d = corner(0, 1);
      faces << "f " << a << ' ' << b << ' ' << cc << ' ' << d << '\n';
    } else if (axes.size() == 1) {
      const auto a = corner(0, 0), b = corner(1, 0);
      faces << "l " << a << ' ' << b << '\n';
    }
  }
  for (const auto& v : order) out << "v " << v.coord(0) << ' ' << v.coord(1) << ' ' << v.coord(2) << '\n';
  out << faces.str();
  return out.str();
}

}  // namespace

std::vector<std::string> render_frames(const DeformationTrace& trace) {
  const AmbientSpace& ambient = trace.initial.ambient();
  const FrameFormat fmt = frame_format(ambient);
  const auto states = replay_states(trace, true);
  std::vector<std::string> frames;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (fmt == FrameFormat::svg) frames.push_back(svg_frame(ambient, states[k], k ? states[k - 1] : states[k], k));
    else frames.push_back(obj_frame(states[k], k));
  }
  return frames;
}

std::vector<std::filesystem::path> write_frames(const ContractionResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& node : result.nodes) {
    const auto frames = render_frames(node.trace);
    const char* ext = frame_format(node.trace.initial.ambient()) == FrameFormat::svg ? "svg" : "obj";
    for (std::size_t k = 0; k < frames.size(); ++k) {
      char name[64];
      if (node.id == 0) std::snprintf(name, sizeof name, "frame_%04zu.%s", k, ext);
      else std::snprintf(name, sizeof name, "node%d_frame_%04zu.%s", node.id, k, ext);
      written.push_back(dir / name);
      write_text(written.back(), frames[k]);
    }
  }
  return written;
}

ManifoldComplex random_rectilinear_curve(std::uint64_t seed, int width, int height, int max_perimeter) {
  if (width < 1 || height < 1 || max_perimeter < 4) throw Error(ErrorKind::InvalidArgument, "curve box too small");
  const int extent[2] = {width, height};
  const AmbientSpace ambient = build_ambient(2, extent);
  std::mt19937_64 rng(seed);
  const auto square = [](int x, int y) {
    const int base[2] = {x, y};
    const int axes[2] = {0, 1};
    return CubicalCell::from_axes(base, axes);
  };
  const std::size_t target = 1 + rng() % 40;
  CellList cells{square(static_cast<int>(rng() % static_cast<unsigned>(width)),
                        static_cast<int>(rng() % static_cast<unsigned>(height)))};
  for (int attempts = 0; cells.size() < target && attempts < 200;) {
    CellList frontier;
    for (const auto& c : cells) {
      const int x = c.coord(0), y = c.coord(1);
      const int step[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (const auto& s : step) {
        const int nx = x + s[0], ny = y + s[1];
        if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
        const auto q = square(nx, ny);
        if (!std::binary_search(cells.begin(), cells.end(), q)) frontier.push_back(q);
      }
    }
    canonicalize(frontier);
    if (frontier.empty()) break;
    CellList trial = cells;
    trial.push_back(frontier[rng() % frontier.size()]);
    canonicalize(trial);
    const auto curve = boundary_of(trial);
    if (static_cast<int>(curve.size()) > max_perimeter || !validate(ManifoldComplex(ambient, curve)).ok()) {
      ++attempts;
      continue;
    }
    cells = std::move(trial);
  }
  return ManifoldComplex(ambient, boundary_of(cells));
}

}  // namespace dsphere

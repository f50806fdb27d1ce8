#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dsphere/engine.hpp"

namespace dsphere {

/// Fixture text:
///   ambient n extent_0 ... extent_{n-1}
///   cell base_0 ... base_{n-1} axes a_1 ... a_m
/// with '#' comments and blank lines allowed. Throws Error(ParseError).
ManifoldComplex parse_fixture(std::string_view text);
/// Canonical text: ambient line, then one cell line per m-cell in canonical order.
std::string format_fixture(const ManifoldComplex& M);

/// Reads and parses a fixture; with require_valid, throws
/// Error(ValidationFailed) naming the offending cells unless it is a
/// connected closed manifold.
ManifoldComplex load_fixture(const std::filesystem::path& path, bool require_valid = true);
void save_fixture(const std::filesystem::path& path, const ManifoldComplex& M);

/// Line-oriented trace: one "node" header per node, then its steps and a
/// terminal line.
std::string format_trace(const ContractionResult& result);

/// Full dump with every cell set, enough to replay and render.
nlohmann::json trace_to_json(const ContractionResult& result);
/// Inverse of trace_to_json; throws Error(ParseError) on malformed input.
ContractionResult trace_from_json(const nlohmann::json& j);

enum class FrameFormat { svg, obj };

/// One frame per state of a node's trace (steps + 1 frames): SVG for planar
/// surfaces, OBJ for surfaces in 3-space. Replays the trace, so a corrupt
/// trace throws Error(ReplayMismatch).
std::vector<std::string> render_frames(const DeformationTrace& trace);
FrameFormat frame_format(const AmbientSpace& ambient);

/// Writes frames of every node: the root as frame_NNNN.ext, other nodes as
/// node<id>_frame_NNNN.ext. Returns the paths written.
std::vector<std::filesystem::path> write_frames(const ContractionResult& result, const std::filesystem::path& dir);

/// Boundary of a random simply connected polyomino inside a width x height
/// box: a rectilinear simple closed curve of perimeter at most max_perimeter.
ManifoldComplex random_rectilinear_curve(std::uint64_t seed, int width = 16, int height = 16,
                                         int max_perimeter = 60);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dsphere

#include "dsphere/cell.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "dsphere/error.hpp"

namespace dsphere {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateExtent: return "DegenerateExtent";
    case ErrorKind::CellNotInComplex: return "CellNotInComplex";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::NoFittingCycle: return "NoFittingCycle";
    case ErrorKind::NotSeparating: return "NotSeparating";
    case ErrorKind::CycleFitFailed: return "CycleFitFailed";
    case ErrorKind::FillingNotFound: return "FillingNotFound";
    case ErrorKind::CodimensionUnsupported: return "CodimensionUnsupported";
    case ErrorKind::InterpolationFailed: return "InterpolationFailed";
    case ErrorKind::ReplacementNotManifold: return "ReplacementNotManifold";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::ReplayMismatch: return "ReplayMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

CubicalCell CubicalCell::vertex(std::span<const int> coords) {
  Coord base{};
  std::copy(coords.begin(), coords.end(), base.begin());
  return {base, 0};
}

CubicalCell CubicalCell::from_axes(std::span<const int> coords, std::span<const int> axes) {
  Coord base{};
  std::copy(coords.begin(), coords.end(), base.begin());
  AxisMask mask = 0;
  for (int a : axes) mask = static_cast<AxisMask>(mask | (1U << a));
  return {base, mask};
}

std::vector<int> CubicalCell::axis_list() const {
  std::vector<int> out;
  for (int a = 0; a < kMaxAmbientDim; ++a)
    if (spans(a)) out.push_back(a);
  return out;
}

std::strong_ordering operator<=>(const CubicalCell& a, const CubicalCell& b) noexcept {
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  if (auto c = a.base_ <=> b.base_; c != 0) return c;
  // Equal popcount: the sorted axis lists differ first where the lowest
  // differing bit is set in exactly one mask; that list is smaller.
  const unsigned diff = static_cast<unsigned>(a.axes_ ^ b.axes_);
  if (diff == 0) return std::strong_ordering::equal;
  const unsigned low = diff & (~diff + 1U);
  return (a.axes_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::uint64_t cell_key64(const CubicalCell& c) noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ c.axes();
  for (int v : c.base()) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  // splitmix64 finalizer
  h += 0x9E3779B97F4A7C15ULL;
  h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ULL;
  h = (h ^ (h >> 27)) * 0x94D049BB133111EBULL;
  return h ^ (h >> 31);
}

std::size_t CellHash::operator()(const CubicalCell& c) const noexcept {
  return static_cast<std::size_t>(cell_key64(c));
}

std::vector<CubicalCell> boundary_cells(const CubicalCell& c) {
  std::vector<CubicalCell> out;
  out.reserve(static_cast<std::size_t>(2 * c.dim()));
  for (int a = 0; a < kMaxAmbientDim; ++a) {
    if (!c.spans(a)) continue;
    const auto axes = static_cast<AxisMask>(c.axes() & ~(1U << a));
    Coord far = c.base();
    far[static_cast<std::size_t>(a)] += 1;
    out.emplace_back(c.base(), axes);
    out.emplace_back(far, axes);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CubicalCell> vertices_of(const CubicalCell& c) {
  const auto axes = c.axis_list();
  std::vector<CubicalCell> out;
  out.reserve(std::size_t{1} << axes.size());
  for (unsigned bits = 0; bits < (1U << axes.size()); ++bits) {
    Coord p = c.base();
    for (std::size_t i = 0; i < axes.size(); ++i)
      if ((bits >> i) & 1U) p[static_cast<std::size_t>(axes[i])] += 1;
    out.emplace_back(p, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CubicalCell> closure_of(const CubicalCell& c) {
  // Each face keeps a subset S of the axes and fixes the others at offset 0/1.
  const auto axes = c.axis_list();
  const std::size_t k = axes.size();
  std::vector<CubicalCell> out;
  for (unsigned keep = 0; keep < (1U << k); ++keep) {
    const unsigned fixed = ~keep & ((1U << k) - 1U);
    // iterate over offsets of the fixed axes
    for (unsigned off = fixed;; off = (off - 1U) & fixed) {
      Coord p = c.base();
      AxisMask mask = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if ((keep >> i) & 1U) mask = static_cast<AxisMask>(mask | (1U << axes[i]));
        else if ((off >> i) & 1U) p[static_cast<std::size_t>(axes[i])] += 1;
      }
      out.emplace_back(p, mask);
      if (off == 0) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_face_of(const CubicalCell& face, const CubicalCell& c) noexcept {
  if ((face.axes() & ~c.axes()) != 0) return false;
  for (int a = 0; a < kMaxAmbientDim; ++a) {
    const int d = face.coord(a) - c.coord(a);
    if (c.spans(a) && !face.spans(a)) {
      if (d != 0 && d != 1) return false;
    } else if (d != 0) {
      return false;
    }
  }
  return true;
}

std::string to_string(const CubicalCell& c, int n) {
  std::string s = "[";
  for (int i = 0; i < n; ++i) {
    if (i) s += ',';
    s += std::to_string(c.coord(i));
  }
  s += '|';
  bool first = true;
  for (int a : c.axis_list()) {
    if (!first) s += ',';
    s += std::to_string(a);
    first = false;
  }
  s += ']';
  return s;
}

namespace {

std::vector<int> parse_int_list(std::string_view text, std::string_view whole) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    int value = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
      throw Error(ErrorKind::ParseError, "bad integer in cell '" + std::string(whole) + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

CubicalCell parse_cell(std::string_view text, int n) {
  if (text.size() < 3 || text.front() != '[' || text.back() != ']')
    throw Error(ErrorKind::ParseError, "cell must look like [b0,..|a0,..]: '" + std::string(text) + "'");
  const std::string_view body = text.substr(1, text.size() - 2);
  const std::size_t bar = body.find('|');
  if (bar == std::string_view::npos)
    throw Error(ErrorKind::ParseError, "missing '|' in cell '" + std::string(text) + "'");
  const auto coords = parse_int_list(body.substr(0, bar), text);
  const auto axes = parse_int_list(body.substr(bar + 1), text);
  if (static_cast<int>(coords.size()) != n)
    throw Error(ErrorKind::ParseError, "cell '" + std::string(text) + "' has wrong coordinate count");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i] < 0 || axes[i] >= n || (i > 0 && axes[i] <= axes[i - 1]))
      throw Error(ErrorKind::ParseError, "axes must be strictly increasing in [0,n) in '" + std::string(text) + "'");
  }
  return CubicalCell::from_axes(coords, axes);
}

bool AmbientSpace::contains(const CubicalCell& c) const noexcept {
  for (int a = 0; a < n_; ++a) {
    const int lo = c.coord(a);
    const int hi = lo + (c.spans(a) ? 1 : 0);
    if (lo < 0 || hi > extent(a)) return false;
  }
  for (int a = n_; a < kMaxAmbientDim; ++a)
    if (c.coord(a) != 0 || c.spans(a)) return false;
  return true;
}

long long AmbientSpace::vertex_count() const noexcept {
  long long count = 1;
  for (int a = 0; a < n_; ++a) count *= extent(a) + 1;
  return count;
}

long long AmbientSpace::vertex_index(const CubicalCell& v) const noexcept {
  long long idx = 0;
  for (int a = n_ - 1; a >= 0; --a) idx = idx * (extent(a) + 1) + v.coord(a);
  return idx;
}

CubicalCell AmbientSpace::vertex_at(long long index) const {
  Coord p{};
  for (int a = 0; a < n_; ++a) {
    p[static_cast<std::size_t>(a)] = static_cast<int>(index % (extent(a) + 1));
    index /= extent(a) + 1;
  }
  return {p, 0};
}

std::vector<CubicalCell> AmbientSpace::cofaces(const CubicalCell& c) const {
  std::vector<CubicalCell> out;
  for (int b = 0; b < n_; ++b) {
    if (c.spans(b)) continue;
    const auto axes = static_cast<AxisMask>(c.axes() | (1U << b));
    Coord lower = c.base();
    lower[static_cast<std::size_t>(b)] -= 1;
    const CubicalCell lo(lower, axes);
    const CubicalCell hi(c.base(), axes);
    if (contains(lo)) out.push_back(lo);
    if (contains(hi)) out.push_back(hi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CubicalCell> AmbientSpace::cells_of_dim(int d) const {
  std::vector<CubicalCell> out;
  for (unsigned mask = 0; mask < (1U << n_); ++mask) {
    if (std::popcount(mask) != d) continue;
    // iterate base over [0, extent - spans]
    Coord hi{};
    long long total = 1;
    for (int a = 0; a < n_; ++a) {
      hi[static_cast<std::size_t>(a)] = extent(a) - static_cast<int>((mask >> a) & 1U);
      total *= hi[static_cast<std::size_t>(a)] + 1;
    }
    for (long long i = 0; i < total; ++i) {
      Coord p{};
      long long rem = i;
      for (int a = 0; a < n_; ++a) {
        const int span = hi[static_cast<std::size_t>(a)] + 1;
        p[static_cast<std::size_t>(a)] = static_cast<int>(rem % span);
        rem /= span;
      }
      out.emplace_back(p, static_cast<AxisMask>(mask));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

AmbientSpace build_ambient(int n, std::span<const int> extent) {
  if (n < 2 || n > kMaxAmbientDim)
    throw Error(ErrorKind::InvalidArgument, "ambient dimension must be in [2," + std::to_string(kMaxAmbientDim) + "]");
  if (static_cast<int>(extent.size()) != n)
    throw Error(ErrorKind::InvalidArgument, "extent must list one bound per axis");
  Coord e{};
  for (int a = 0; a < n; ++a) {
    if (extent[static_cast<std::size_t>(a)] < 1)
      throw Error(ErrorKind::DegenerateExtent, "axis " + std::to_string(a) + " has fewer than one unit");
    e[static_cast<std::size_t>(a)] = extent[static_cast<std::size_t>(a)];
  }
  return {n, e};
}

}  // namespace dsphere

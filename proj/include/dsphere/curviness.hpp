#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsphere/filling.hpp"
#include "dsphere/metric.hpp"

namespace dsphere {

/// A connected piece X of M cut off by a regular (m-1)-cycle C, with the
/// complement M \ X also connected and X holding at most half of M.
struct ArcRegion {
  CubicalCell center;
  int gamma = 0;
  CellList arc;
  Cycle boundary;
  CellList complement;

  std::size_t size() const noexcept { return arc.size(); }
};

/// Grows the ball into a region whose boundary is a regular cycle: joins ball
/// components, absorbs every complement component but the largest, and absorbs
/// the cells around pinched boundary vertices, until stable.
/// Throws Error(NoFittingCycle) when the ball is empty or the repaired region
/// exceeds half of M, Error(NotSeparating) when no regular cycle results.
ArcRegion boundary_cycle_fit(const ManifoldComplex& M, std::span<const CubicalCell> ball_cells);

/// Ball around `center` of radius gamma, then fitted.
ArcRegion fit_ball(const ManifoldComplex& M, const VertexGraph& graph, const CubicalCell& center, int gamma);

/// Exact non-negative fraction, kept in lowest terms.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
};

enum class Variant { ratio, diff, height, height_ratio };

/// "ratio", "diff", "height", "height-ratio"; throws Error(InvalidArgument).
Variant parse_variant(std::string_view name);
const char* to_string(Variant v);

struct CurvinessReport {
  ArcRegion region;
  Filling filling;
  Rational r;     ///< N(arc) / N(filling)
  long long r1 = 0;  ///< N(arc) - N(filling)
  int h = 0;      ///< farthest arc vertex from the filling's vertices, ambient distance
  Rational r3;    ///< h over the ambient diameter of the filling's vertices
  /// Filling is minimal, clean, and smaller than both sides of the cycle.
  bool in_gamma = false;

  const CubicalCell& center() const noexcept { return region.center; }
  int gamma() const noexcept { return region.gamma; }
};

/// Measures for one fitted arc against its minimum filling, which must stay
/// clear of the complement away from the cycle.
CurvinessReport curviness(const ManifoldComplex& M, const ArcRegion& X, int cap = kDefaultFillingCap);

/// The comparison key of a report under a variant.
Rational measure(const CurvinessReport& report, Variant v);

/// Every center (each closure cell of M, canonical order) whose fitted arc
/// of radius gamma lies in the candidate set. Centers are evaluated in
/// parallel; the output order does not depend on scheduling.
std::vector<CurvinessReport> scan_candidates(const ManifoldComplex& M, int gamma, int cap = kDefaultFillingCap);
/// Single-threaded reference with identical output.
std::vector<CurvinessReport> scan_candidates_serial(const ManifoldComplex& M, int gamma,
                                                    int cap = kDefaultFillingCap);

/// Reports for every center whose ball fits an arc and whose filling is found,
/// candidate or not.
std::vector<CurvinessReport> curviness_table(const ManifoldComplex& M, int gamma, int cap = kDefaultFillingCap);

/// Maximum by variant; ties go to the canonically least center.
std::optional<CurvinessReport> select_peak(std::span<const CurvinessReport> candidates, Variant v);
std::optional<CurvinessReport> select_peak(const ManifoldComplex& M, int gamma, Variant v,
                                           int cap = kDefaultFillingCap);
std::optional<CurvinessReport> select_peak_serial(const ManifoldComplex& M, int gamma, Variant v,
                                                  int cap = kDefaultFillingCap);

/// Radii floor(D/4) (at least 1), then repeated halving down to 1. Strictly
/// decreasing, no repeats.
std::vector<int> radius_schedule(int diameter);
std::vector<int> radius_schedule(const ManifoldComplex& M);

enum class ArcSign { peak, valley, flat };
const char* to_string(ArcSign s);

/// Codimension one only: flat when the filling equals the arc, peak when the
/// filling runs through the region enclosed by M, valley otherwise.
/// Throws Error(CodimensionUnsupported) otherwise.
ArcSign arc_sign(const ManifoldComplex& M, const ArcRegion& X, const Filling& filling);

}  // namespace dsphere

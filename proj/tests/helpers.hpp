#pragma once

#include <string>
#include <vector>

#include "dsphere/io.hpp"

namespace fixtures {

inline dsphere::ManifoldComplex load(const std::string& name) {
  return dsphere::load_fixture(std::string(DSPHERE_FIXTURE_DIR) + "/" + name + ".cplx", false);
}

inline dsphere::CubicalCell vertex(std::vector<int> c) { return dsphere::CubicalCell::vertex(c); }

inline dsphere::CubicalCell cell(std::vector<int> base, std::vector<int> axes) {
  return dsphere::CubicalCell::from_axes(base, axes);
}

inline dsphere::CellList squares(const std::vector<std::pair<int, int>>& at) {
  dsphere::CellList out;
  for (auto [x, y] : at) out.push_back(cell({x, y}, {0, 1}));
  return dsphere::canonicalize(out);
}

}  // namespace fixtures

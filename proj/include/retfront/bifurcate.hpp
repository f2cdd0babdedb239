#ifndef RETFRONT_BIFURCATE_HPP
#define RETFRONT_BIFURCATE_HPP

#include <array>
#include <string>
#include <vector>

#include "retfront/catalog.hpp"
#include "retfront/front.hpp"

namespace retfront {

// Lattice of (t1, t2) values; must contain the organizing center t = 0.
struct TimeGrid {
  std::vector<double> axis1{-0.5, 0.0, 0.5};
  std::vector<double> axis2{-0.5, 0.0, 0.5};

  static TimeGrid centered(double delta);
  // Row-major, t-lexicographic panel order.
  std::vector<std::array<double, 2>> nodes() const;
};

struct AtlasPanel {
  std::array<double, 2> t{0.0, 0.0};
  std::vector<StratumFront> fronts;
};

struct BifurcationAtlas {
  GeneratingFamily family;
  TimeGrid grid;
  SweepOptions sweep;
  std::vector<AtlasPanel> panels;
};

// Default per-variable step count for atlas panels; coarser than standalone
// fronts because nine panels are rendered side by side.
inline constexpr int kAtlasSteps = 41;

BifurcationAtlas atlas(const GeneratingFamily& fam, const TimeGrid& grid,
                       const SweepOptions& opts = {}, int workers = 1);

// Marks samples where the Jacobian of the chart parametrization
// sweep -> (u, z), restricted to the tangent space of the residual
// constraints, drops rank below the sheet dimension.
void flag_singular(BifurcationAtlas& atlas, double tol = 1e-4);

// Point-cloud JSON for one panel (front_json plus panel metadata).
std::string panel_json(const BifurcationAtlas& atlas, size_t panel_index);

}  // namespace retfront

#endif

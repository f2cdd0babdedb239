#ifndef RETFRONT_FRONT_HPP
#define RETFRONT_FRONT_HPP

#include <string>
#include <vector>

#include "retfront/catalog.hpp"
#include "retfront/poly.hpp"

namespace retfront {

// A face of the corner: the x-indices pinned to zero.
struct Stratum {
  std::vector<int> sigma;  // 1-based, ascending

  bool contains(int i) const;
  std::string str() const;  // "{}", "{1}", "{1,2}"
  bool operator==(const Stratum& o) const { return sigma == o.sigma; }
};

// All 2^r faces, canonical order (by size, then lexicographic).
std::vector<Stratum> strata(int r);

struct SweepVar {
  int var = 0;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};

// Eliminated parametrization of one stratum's critical set. All expressions
// are polynomials in the sweep variables and t only.
struct FrontChart {
  VarSpace space;
  Stratum stratum;
  std::vector<std::pair<int, Poly>> solved;  // var -> fully back-substituted expression
  std::vector<Poly> residuals;               // critical equations left unsolved
  std::vector<SweepVar> sweep;               // free x (>=0), y, u vars, canonical order
  Poly z;                                    // the family on the critical set
};

struct FrontSample {
  std::vector<double> point;    // full variable assignment (x,y,u,t)
  std::vector<double> u;        // base coordinates of the front point
  double z = 0.0;
  std::vector<int> lattice;     // sweep lattice coordinates
  int branch = 0;               // root index along the scan axis (residual charts)
  bool singular = false;
};

struct StratumFront {
  FrontChart chart;
  std::vector<FrontSample> samples;
  std::vector<std::pair<int, int>> edges;  // lattice-adjacency connectivity hints
};

struct SweepOptions {
  double lo = -1.5;
  double hi = 1.5;
  int steps = 0;           // 0: derive from the sheet dimension
  double eps_res = 1e-9;
};

// Picks the per-variable step count for a sweep of the given lattice
// dimension and sheet (= emitted sample cloud) dimension.
int default_steps(int sweep_dim, int sheet_dim);

FrontChart build_chart(const GeneratingFamily& fam, const Stratum& stratum,
                       const SweepOptions& opts = {});
FrontChart build_chart(const Poly& F, const VarSpace& space, const Stratum& stratum,
                       const SweepOptions& opts = {});

std::vector<FrontSample> sample_front(const FrontChart& chart, const std::vector<double>& t,
                                      const SweepOptions& opts = {});

StratumFront sampled_stratum(const FrontChart& chart, const std::vector<double>& t,
                             const SweepOptions& opts = {});

// Independent dense-scan oracle: no elimination, keeps lattice points where
// every critical equation is below a derivative-scaled threshold.
std::vector<FrontSample> brute_force_front(const Poly& F, const VarSpace& space,
                                           const Stratum& stratum, const std::vector<double>& t,
                                           double box = 1.5, double pitch = 0.02);

std::vector<StratumFront> full_front(const GeneratingFamily& fam, const std::vector<double>& t,
                                     const SweepOptions& opts = {});

// Symmetric Hausdorff distance between point clouds in (u, z)-space.
double hausdorff_distance(const std::vector<FrontSample>& a, const std::vector<FrontSample>& b);

// Point-cloud JSON for one momentary front (all strata).
std::string front_json(const std::string& label, const std::vector<double>& t,
                       const std::vector<StratumFront>& fronts);

}  // namespace retfront

#endif

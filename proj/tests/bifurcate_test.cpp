#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "retfront/bifurcate.hpp"

using namespace retfront;

namespace {

size_t panel_at(const BifurcationAtlas& at, double t1, double t2) {
  for (size_t i = 0; i < at.panels.size(); ++i)
    if (at.panels[i].t[0] == t1 && at.panels[i].t[1] == t2) return i;
  REQUIRE(false);
  return 0;
}

int flagged_count(const AtlasPanel& panel) {
  int n = 0;
  for (const StratumFront& sf : panel.fronts)
    for (const FrontSample& s : sf.samples)
      if (s.singular) ++n;
  return n;
}

}  // namespace

TEST_CASE("time grids enumerate panels row-major in t-lex order") {
  TimeGrid g;  // default 3x3
  auto nodes = g.nodes();
  REQUIRE(nodes.size() == 9);
  CHECK(nodes[0] == std::array<double, 2>{-0.5, -0.5});
  CHECK(nodes[1] == std::array<double, 2>{-0.5, 0.0});
  CHECK(nodes[4] == std::array<double, 2>{0.0, 0.0});
  CHECK(nodes[8] == std::array<double, 2>{0.5, 0.5});

  TimeGrid c = TimeGrid::centered(0.25);
  CHECK(c.axis1 == std::vector<double>{-0.25, 0.0, 0.25});
  CHECK(c.axis2 == std::vector<double>{-0.25, 0.0, 0.25});
}

TEST_CASE("a fold atlas has nine regular panels") {
  GeneratingFamily fam = instantiate("2A1", 1, {});
  BifurcationAtlas at = atlas(fam, TimeGrid{});
  REQUIRE(at.panels.size() == 9);
  for (const AtlasPanel& p : at.panels) {
    REQUIRE(p.fronts.size() == 1);
    CHECK(!p.fronts[0].samples.empty());
  }
  flag_singular(at);
  for (const AtlasPanel& p : at.panels) CHECK(flagged_count(p) == 0);
}

TEST_CASE("the organizing center of the fold is an odd graph") {
  GeneratingFamily fam = instantiate("2A1", 1, {});
  BifurcationAtlas at = atlas(fam, TimeGrid{});
  const AtlasPanel& center = at.panels[panel_at(at, 0.0, 0.0)];
  const auto& samples = center.fronts[0].samples;
  REQUIRE(!samples.empty());
  double pitch = 3.0 / (kAtlasSteps - 1);
  for (const FrontSample& s : samples) {
    double best = 1e30;
    for (const FrontSample& o : samples)
      best = std::min(best, std::hypot(o.u[0] + s.u[0], o.z + s.z));
    CHECK(best <= pitch);  // (u, z) -> (-u, -z) maps the cloud onto itself
  }
}

TEST_CASE("cusp panels with vanishing first time are flagged singular") {
  GeneratingFamily fam = instantiate("2A2", 2, {});
  BifurcationAtlas at = atlas(fam, TimeGrid{});
  flag_singular(at);
  CHECK(flagged_count(at.panels[panel_at(at, 0.0, -0.5)]) > 0);
  CHECK(flagged_count(at.panels[panel_at(at, 0.0, 0.0)]) > 0);
  CHECK(flagged_count(at.panels[panel_at(at, 0.0, 0.5)]) > 0);
}

TEST_CASE("worker count does not change the result") {
  GeneratingFamily fam = instantiate("2B2", 2, {});
  BifurcationAtlas serial = atlas(fam, TimeGrid{}, {}, 1);
  BifurcationAtlas parallel = atlas(fam, TimeGrid{}, {}, 4);
  REQUIRE(serial.panels.size() == parallel.panels.size());
  for (size_t p = 0; p < serial.panels.size(); ++p) {
    const auto& a = serial.panels[p];
    const auto& b = parallel.panels[p];
    CHECK(a.t == b.t);
    REQUIRE(a.fronts.size() == b.fronts.size());
    for (size_t f = 0; f < a.fronts.size(); ++f) {
      REQUIRE(a.fronts[f].samples.size() == b.fronts[f].samples.size());
      for (size_t i = 0; i < a.fronts[f].samples.size(); ++i) {
        CHECK(a.fronts[f].samples[i].point == b.fronts[f].samples[i].point);
        CHECK(a.fronts[f].samples[i].z == b.fronts[f].samples[i].z);
      }
      CHECK(a.fronts[f].edges == b.fronts[f].edges);
    }
  }
}

TEST_CASE("degenerate grids produce a single panel") {
  GeneratingFamily fam = instantiate("2A1", 1, {});
  TimeGrid g;
  g.axis1 = {0.0};
  g.axis2 = {0.0};
  BifurcationAtlas at = atlas(fam, g);
  CHECK(at.panels.size() == 1);
  CHECK(at.panels[0].t == std::array<double, 2>{0.0, 0.0});
}

TEST_CASE("fronts deform continuously between neighbouring panels") {
  GeneratingFamily fam = instantiate("2A1", 1, {});
  BifurcationAtlas at = atlas(fam, TimeGrid{});
  const double lipschitz = 2.0;
  auto nodes = at.grid.nodes();
  for (size_t i = 0; i < at.panels.size(); ++i)
    for (size_t j = i + 1; j < at.panels.size(); ++j) {
      double dt = std::hypot(nodes[i][0] - nodes[j][0], nodes[i][1] - nodes[j][1]);
      if (dt > 0.51) continue;  // only directly adjacent panels
      double d = hausdorff_distance(at.panels[i].fronts[0].samples,
                                    at.panels[j].fronts[0].samples);
      CHECK(d <= lipschitz * dt);
    }
}

TEST_CASE("panel export carries the time point and all strata") {
  GeneratingFamily fam = instantiate("2B2", 2, {});
  BifurcationAtlas at = atlas(fam, TimeGrid{});
  nlohmann::json j = nlohmann::json::parse(panel_json(at, 4));
  CHECK(j["t"][0] == 0.0);
  CHECK(j["t"][1] == 0.0);
  CHECK(j["panel"] == 4);
  CHECK(j["strata"].size() == 2);
}

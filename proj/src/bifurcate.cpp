#include "retfront/bifurcate.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace retfront {

TimeGrid TimeGrid::centered(double delta) {
  TimeGrid g;
  if (delta == 0.0) {
    g.axis1 = {0.0};
    g.axis2 = {0.0};
  } else {
    g.axis1 = {-delta, 0.0, delta};
    g.axis2 = {-delta, 0.0, delta};
  }
  return g;
}

std::vector<std::array<double, 2>> TimeGrid::nodes() const {
  std::vector<std::array<double, 2>> out;
  for (double t1 : axis1)
    for (double t2 : axis2) out.push_back({t1, t2});
  return out;
}

BifurcationAtlas atlas(const GeneratingFamily& fam, const TimeGrid& grid,
                       const SweepOptions& opts, int workers) {
  if (fam.space.m != 2) throw std::invalid_argument("atlas: family must have two times");
  BifurcationAtlas out;
  out.family = fam;
  out.grid = grid;
  out.sweep = opts;

  // Charts are t-independent; build once per stratum. Nine panels are drawn
  // side by side, so the default step counts are capped by sheet dimension.
  std::vector<FrontChart> charts;
  for (const Stratum& st : strata(fam.space.r)) {
    FrontChart ch = build_chart(fam, st, opts);
    if (opts.steps == 0) {
      int sheet = std::max(
          0, static_cast<int>(ch.sweep.size()) - static_cast<int>(ch.residuals.size()));
      int cap = sheet <= 2 ? kAtlasSteps : (sheet == 3 ? 11 : (sheet == 4 ? 7 : 5));
      for (SweepVar& sv : ch.sweep) sv.steps = std::min(sv.steps, cap);
    }
    charts.push_back(std::move(ch));
  }

  std::vector<std::array<double, 2>> nodes = grid.nodes();
  out.panels.resize(nodes.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= nodes.size()) return;
      AtlasPanel& panel = out.panels[i];
      panel.t = nodes[i];
      std::vector<double> t{panel.t[0], panel.t[1]};
      for (const FrontChart& ch : charts) panel.fronts.push_back(sampled_stratum(ch, t, out.sweep));
    }
  };
  int nw = std::max(1, workers);
  if (nw == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

namespace {

// Partial derivatives of the chart map sweep -> (u, z) and of the residuals,
// as polynomials in sweep and t.
struct ChartJets {
  std::vector<std::vector<Poly>> dmap;  // (n+1) rows x sweep cols
  std::vector<std::vector<Poly>> dres;  // residual rows x sweep cols
};

ChartJets chart_jets(const FrontChart& chart) {
  const VarSpace& S = chart.space;
  std::vector<Poly> outputs;
  for (int a = 1; a <= S.n; ++a) {
    int v = S.var(Block::U, a);
    const Poly* solved = nullptr;
    for (const auto& [sv, se] : chart.solved)
      if (sv == v) solved = &se;
    outputs.push_back(solved ? *solved : Poly::variable(S, v));
  }
  outputs.push_back(chart.z);
  ChartJets jets;
  for (const Poly& p : outputs) {
    std::vector<Poly> row;
    for (const SweepVar& sv : chart.sweep) row.push_back(p.derive(sv.var));
    jets.dmap.push_back(std::move(row));
  }
  for (const Poly& rp : chart.residuals) {
    std::vector<Poly> row;
    for (const SweepVar& sv : chart.sweep) row.push_back(rp.derive(sv.var));
    jets.dres.push_back(std::move(row));
  }
  return jets;
}

}  // namespace

void flag_singular(BifurcationAtlas& atlas, double tol) {
  for (AtlasPanel& panel : atlas.panels) {
    for (StratumFront& sf : panel.fronts) {
      const FrontChart& chart = sf.chart;
      const int d = static_cast<int>(chart.sweep.size());
      if (d == 0) continue;
      const int nout = chart.space.n + 1;
      const int nres = static_cast<int>(chart.residuals.size());
      ChartJets jets = chart_jets(chart);
      Eigen::MatrixXd J(nout, d), R(std::max(nres, 1), d);
      for (FrontSample& s : sf.samples) {
        for (int i = 0; i < nout; ++i)
          for (int j = 0; j < d; ++j)
            J(i, j) = jets.dmap[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(s.point);
        Eigen::MatrixXd M;
        int sheet = d;
        if (nres == 0) {
          M = J;
        } else {
          for (int i = 0; i < nres; ++i)
            for (int j = 0; j < d; ++j)
              R(i, j) = jets.dres[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(s.point);
          Eigen::JacobiSVD<Eigen::MatrixXd> svd(R.topRows(nres), Eigen::ComputeFullV);
          double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
          int rank = 0;
          for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > 1e-8 * std::max(1.0, smax)) ++rank;
          sheet = d - nres;
          // Tangent directions of the constraint set at the sample.
          Eigen::MatrixXd K = svd.matrixV().rightCols(d - rank);
          M = J * K;
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> msvd(M);
        const auto& sv = msvd.singularValues();
        double smax = sv.size() ? sv(0) : 0.0;
        // The map must have rank >= sheet dimension to be an immersion; when
        // the constraint tangent space is degenerate (more columns than the
        // sheet dimension) the extra directions must still map injectively.
        int need = std::min<int>(static_cast<int>(M.cols()), std::max(sheet, 0));
        bool flag = false;
        if (need > 0) {
          if (sv.size() < need)
            flag = true;
          else if (sv(need - 1) < tol * std::max(1.0, smax))
            flag = true;
        }
        if (static_cast<int>(M.cols()) > std::max(sheet, 0)) flag = true;
        s.singular = flag;
      }
    }
  }
}

std::string panel_json(const BifurcationAtlas& atlas, size_t panel_index) {
  const AtlasPanel& panel = atlas.panels.at(panel_index);
  nlohmann::ordered_json doc = nlohmann::ordered_json::parse(
      front_json(atlas.family.label.str(), {panel.t[0], panel.t[1]}, panel.fronts));
  nlohmann::ordered_json out;
  out["label"] = doc["label"];
  out["panel"] = panel_index;
  out["panels"] = atlas.panels.size();
  out["t"] = doc["t"];
  out["strata"] = doc["strata"];
  return out.dump(2) + "\n";
}

}  // namespace retfront

#include "retfront/front.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace retfront {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out(static_cast<size_t>(steps));
  if (steps == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < steps; ++i)
    out[static_cast<size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  return out;
}

// Critical equations of F on the given stratum, with x_sigma = 0 applied:
// the remaining x-derivatives and all y-derivatives.
std::vector<Poly> critical_equations(const Poly& F, const VarSpace& S, const Stratum& st,
                                     Poly* F_pinned) {
  std::map<int, Poly> pin;
  for (int i : st.sigma) pin[S.var(Block::X, i)] = Poly::zero(S);
  Poly Fc = pin.empty() ? F : F.substitute(pin);
  if (F_pinned) *F_pinned = Fc;
  std::vector<Poly> eqs;
  for (int i = 1; i <= S.r; ++i) {
    if (st.contains(i)) continue;
    Poly e = Fc.derive(S.var(Block::X, i));
    if (!e.is_zero()) eqs.push_back(e);
  }
  for (int j = 1; j <= S.k; ++j) {
    Poly e = Fc.derive(S.var(Block::Y, j));
    if (!e.is_zero()) eqs.push_back(e);
  }
  return eqs;
}

bool occurs(const Poly& p, int v) {
  for (const auto& [mo, c] : p.terms())
    if (mo[static_cast<size_t>(v)] != 0) return true;
  return false;
}

struct MixHash {
  size_t operator()(const std::vector<int64_t>& key) const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (int64_t v : key) h = h * 1099511628211ull + static_cast<size_t>(v + 7);
    return h;
  }
};

}  // namespace

bool Stratum::contains(int i) const {
  return std::find(sigma.begin(), sigma.end(), i) != sigma.end();
}

std::string Stratum::str() const {
  std::string out = "{";
  for (size_t i = 0; i < sigma.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sigma[i]);
  }
  return out + "}";
}

std::vector<Stratum> strata(int r) {
  std::vector<Stratum> out;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    Stratum st;
    for (int i = 1; i <= r; ++i)
      if (mask & (1u << (i - 1))) st.sigma.push_back(i);
    out.push_back(std::move(st));
  }
  std::sort(out.begin(), out.end(), [](const Stratum& a, const Stratum& b) {
    if (a.sigma.size() != b.sigma.size()) return a.sigma.size() < b.sigma.size();
    return a.sigma < b.sigma;
  });
  return out;
}

int default_steps(int sweep_dim, int sheet_dim) {
  static const int tiers[] = {201, 35, 15, 9, 7, 5, 3};
  int ti;
  if (sheet_dim <= 2)
    ti = 0;
  else
    ti = std::min(sheet_dim - 2, 6);
  // Cap the total lattice size, not just the emitted cloud.
  auto lattice = [&](int steps) {
    double p = 1.0;
    for (int i = 0; i < sweep_dim; ++i) p *= steps;
    return p;
  };
  while (ti < 6 && lattice(tiers[ti]) > 2.5e7) ++ti;
  return tiers[ti];
}

FrontChart build_chart(const Poly& F, const VarSpace& space, const Stratum& stratum,
                       const SweepOptions& opts) {
  FrontChart chart;
  chart.space = space;
  chart.stratum = stratum;

  Poly Fc(space);
  std::vector<Poly> eqs = critical_equations(F, space, stratum, &Fc);

  // Triangular elimination: base variables ascending, then internal
  // variables, solving only linear occurrences with a nonzero constant
  // coefficient and substituting immediately everywhere.
  std::vector<int> candidates;
  for (int a = 1; a <= space.n; ++a) candidates.push_back(space.var(Block::U, a));
  for (int j = 1; j <= space.k; ++j) candidates.push_back(space.var(Block::Y, j));

  bool progress = true;
  while (progress) {
    progress = false;
    for (int v : candidates) {
      bool already = false;
      for (const auto& [sv, _] : chart.solved)
        if (sv == v) already = true;
      if (already) continue;
      for (size_t ei = 0; ei < eqs.size(); ++ei) {
        auto lin = eqs[ei].linear_occurrence(v);
        if (!lin) continue;
        const Poly& coef = lin->first;
        if (coef.is_zero() || coef.degree() != 0) continue;
        mpq_class c = coef.constant_term();
        Poly expr = lin->second.scaled(mpq_class(-1) / c);
        std::map<int, Poly> bind{{v, expr}};
        std::vector<Poly> next;
        for (size_t ej = 0; ej < eqs.size(); ++ej) {
          if (ej == ei) continue;  // becomes identically zero
          Poly s = eqs[ej].substitute(bind);
          if (!s.is_zero()) next.push_back(std::move(s));
        }
        eqs = std::move(next);
        Fc = Fc.substitute(bind);
        for (auto& [sv, se] : chart.solved) se = se.substitute(bind);
        chart.solved.emplace_back(v, std::move(expr));
        progress = true;
        break;
      }
    }
  }

  chart.residuals = std::move(eqs);
  chart.z = Fc;

  // Free variables, canonical global order; corner variables sweep [0, hi].
  int d = 0, res_count = static_cast<int>(chart.residuals.size());
  std::vector<int> free_vars;
  for (int v = 0; v < space.total(); ++v) {
    Block b = space.block(v);
    if (b == Block::T) continue;
    if (b == Block::X) {
      int i = v + 1;
      if (stratum.contains(i)) continue;
      free_vars.push_back(v);
      continue;
    }
    bool solved = false;
    for (const auto& [sv, _] : chart.solved)
      if (sv == v) solved = true;
    if (!solved) free_vars.push_back(v);
  }
  d = static_cast<int>(free_vars.size());
  int sheet = std::max(0, d - res_count);
  int steps = opts.steps > 0 ? opts.steps : default_steps(d, sheet);
  for (int v : free_vars) {
    SweepVar sv;
    sv.var = v;
    sv.lo = space.block(v) == Block::X ? std::max(0.0, opts.lo) : opts.lo;
    sv.hi = opts.hi;
    sv.steps = steps;
    chart.sweep.push_back(sv);
  }
  return chart;
}

FrontChart build_chart(const GeneratingFamily& fam, const Stratum& stratum,
                       const SweepOptions& opts) {
  return build_chart(fam.poly, fam.space, stratum, opts);
}

namespace {

// Fills the solved variables of `pt` (sweep and t entries must be set) and
// emits a sample.
FrontSample make_sample(const FrontChart& chart, std::vector<double>& pt,
                        const std::vector<int>& coords, int branch) {
  const VarSpace& S = chart.space;
  for (const auto& [v, expr] : chart.solved) pt[static_cast<size_t>(v)] = expr.eval(pt);
  FrontSample smp;
  smp.point = pt;
  smp.u.resize(static_cast<size_t>(S.n));
  for (int a = 1; a <= S.n; ++a)
    smp.u[static_cast<size_t>(a - 1)] = pt[static_cast<size_t>(S.var(Block::U, a))];
  smp.z = chart.z.eval(pt);
  smp.lattice = coords;
  smp.branch = branch;
  return smp;
}

}  // namespace

std::vector<FrontSample> sample_front(const FrontChart& chart, const std::vector<double>& t,
                                      const SweepOptions& opts) {
  const VarSpace& S = chart.space;
  if (static_cast<int>(t.size()) != S.m)
    throw std::invalid_argument("sample_front: wrong number of time values");
  std::vector<double> pt(static_cast<size_t>(S.total()), 0.0);
  for (int i = 1; i <= S.m; ++i)
    pt[static_cast<size_t>(S.var(Block::T, i))] = t[static_cast<size_t>(i - 1)];

  const int d = static_cast<int>(chart.sweep.size());
  std::vector<std::vector<double>> axes(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    const SweepVar& sv = chart.sweep[static_cast<size_t>(i)];
    int steps = opts.steps > 0 ? opts.steps : sv.steps;
    axes[static_cast<size_t>(i)] = linspace(sv.lo, sv.hi, steps);
  }

  std::vector<FrontSample> out;

  // Residuals that do not involve any sweep variable gate the whole chart.
  std::vector<const Poly*> live;
  for (const Poly& rp : chart.residuals) {
    bool involves = false;
    for (const SweepVar& sv : chart.sweep)
      if (occurs(rp, sv.var)) involves = true;
    if (involves) {
      live.push_back(&rp);
    } else if (std::fabs(rp.eval(pt)) > opts.eps_res) {
      return out;
    }
  }

  auto set_axis = [&](int i, int idx) {
    pt[static_cast<size_t>(chart.sweep[static_cast<size_t>(i)].var)] =
        axes[static_cast<size_t>(i)][static_cast<size_t>(idx)];
  };

  if (live.empty()) {
    // Pure graph: every lattice node is a front point.
    std::vector<int> coords(static_cast<size_t>(d), 0);
    bool done = false;
    while (!done) {
      for (int i = 0; i < d; ++i) set_axis(i, coords[static_cast<size_t>(i)]);
      out.push_back(make_sample(chart, pt, coords, 0));
      done = true;
      for (int i = d - 1; i >= 0; --i) {
        if (++coords[static_cast<size_t>(i)] < static_cast<int>(axes[static_cast<size_t>(i)].size())) {
          done = false;
          break;
        }
        coords[static_cast<size_t>(i)] = 0;
      }
      if (d == 0) break;
    }
    return out;
  }

  // Scan axis: the first sweep variable occurring in the leading residual.
  const Poly& lead = *live[0];
  int scan = -1;
  for (int i = 0; i < d; ++i)
    if (occurs(lead, chart.sweep[static_cast<size_t>(i)].var)) {
      scan = i;
      break;
    }
  const std::vector<double>& sax = axes[static_cast<size_t>(scan)];
  const int scan_var = chart.sweep[static_cast<size_t>(scan)].var;

  auto others_ok = [&]() {
    for (size_t ri = 1; ri < live.size(); ++ri)
      if (std::fabs(live[ri]->eval(pt)) > 1e-6) return false;
    return true;
  };
  auto accept = [&](double root, const std::vector<int>& coords, int branch) {
    pt[static_cast<size_t>(scan_var)] = root;
    if (std::fabs(lead.eval(pt)) > opts.eps_res) return false;
    if (!others_ok()) return false;
    out.push_back(make_sample(chart, pt, coords, branch));
    return true;
  };

  std::vector<int> coords(static_cast<size_t>(d), 0);
  bool done = false;
  while (!done) {
    for (int i = 0; i < d; ++i)
      if (i != scan) set_axis(i, coords[static_cast<size_t>(i)]);
    // Scan for sign changes of the leading residual along the scan axis.
    int branch = 0;
    double prev = 0.0;
    bool prev_zero = false;
    for (size_t si = 0; si < sax.size(); ++si) {
      pt[static_cast<size_t>(scan_var)] = sax[si];
      double val = lead.eval(pt);
      bool is_zero = std::fabs(val) <= 1e-13;
      if (is_zero) {
        coords[static_cast<size_t>(scan)] = static_cast<int>(si);
        if (accept(sax[si], coords, branch)) ++branch;
      } else if (si > 0 && !prev_zero && ((prev < 0) != (val < 0))) {
        double lo = sax[si - 1], hi = sax[si];
        double flo = prev;
        for (int it = 0; it < 60 && hi - lo > 1e-15 * (std::fabs(lo) + std::fabs(hi) + 1.0);
             ++it) {
          double mid = 0.5 * (lo + hi);
          pt[static_cast<size_t>(scan_var)] = mid;
          double fm = lead.eval(pt);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        coords[static_cast<size_t>(scan)] = static_cast<int>(si - 1);
        if (accept(0.5 * (lo + hi), coords, branch)) ++branch;
      }
      prev = val;
      prev_zero = is_zero;
    }
    // Advance the non-scan odometer.
    done = true;
    for (int i = d - 1; i >= 0; --i) {
      if (i == scan) continue;
      if (++coords[static_cast<size_t>(i)] < static_cast<int>(axes[static_cast<size_t>(i)].size())) {
        done = false;
        break;
      }
      coords[static_cast<size_t>(i)] = 0;
    }
    if (d == 1) break;
  }
  return out;
}

StratumFront sampled_stratum(const FrontChart& chart, const std::vector<double>& t,
                             const SweepOptions& opts) {
  StratumFront sf;
  sf.chart = chart;
  sf.samples = sample_front(chart, t, opts);

  // Connectivity: lattice neighbors on the same branch. For residual charts
  // the scan axis parametrizes across sheets, so adjacency is keyed on the
  // remaining axes only.
  const int d = static_cast<int>(chart.sweep.size());
  int scan = -1;
  if (!chart.residuals.empty()) {
    for (int i = 0; i < d && scan < 0; ++i)
      for (const Poly& rp : chart.residuals)
        if (occurs(rp, chart.sweep[static_cast<size_t>(i)].var)) {
          scan = i;
          break;
        }
  }
  std::unordered_map<std::vector<int64_t>, int, MixHash> index;
  auto key_of = [&](const FrontSample& s) {
    std::vector<int64_t> key;
    for (int i = 0; i < d; ++i)
      if (i != scan) key.push_back(s.lattice[static_cast<size_t>(i)]);
    key.push_back(s.branch);
    return key;
  };
  for (size_t i = 0; i < sf.samples.size(); ++i) index[key_of(sf.samples[i])] = static_cast<int>(i);
  for (size_t i = 0; i < sf.samples.size(); ++i) {
    std::vector<int64_t> key = key_of(sf.samples[i]);
    int pos = 0;
    for (int ax = 0; ax < d; ++ax) {
      if (ax == scan) continue;
      std::vector<int64_t> nb = key;
      nb[static_cast<size_t>(pos)] += 1;
      auto it = index.find(nb);
      if (it != index.end()) sf.edges.emplace_back(static_cast<int>(i), it->second);
      ++pos;
    }
  }
  return sf;
}

std::vector<FrontSample> brute_force_front(const Poly& F, const VarSpace& space,
                                           const Stratum& stratum, const std::vector<double>& t,
                                           double box, double pitch) {
  Poly Fc(space);
  std::vector<Poly> eqs = critical_equations(F, space, stratum, &Fc);

  std::vector<int> scan_vars;
  for (int v = 0; v < space.total(); ++v) {
    Block b = space.block(v);
    if (b == Block::T) continue;
    if (b == Block::X && stratum.contains(v + 1)) continue;
    scan_vars.push_back(v);
  }
  const int d = static_cast<int>(scan_vars.size());
  if (d > 3) throw std::invalid_argument("brute_force_front: swept dimension > 3");

  std::vector<double> pt(static_cast<size_t>(space.total()), 0.0);
  for (int i = 1; i <= space.m; ++i)
    pt[static_cast<size_t>(space.var(Block::T, i))] = t[static_cast<size_t>(i - 1)];

  std::vector<std::vector<double>> axes;
  for (int v : scan_vars) {
    double lo = space.block(v) == Block::X ? 0.0 : -box;
    int steps = static_cast<int>(std::lround((box - lo) / pitch)) + 1;
    axes.push_back(linspace(lo, box, steps));
  }

  // Acceptance test: |eq(node)| <= C(node)*h where h is the half-diagonal of
  // a lattice cell, C is the local gradient 1-norm with safety margin, plus a
  // global curvature term so nodes near critical zeros are not rejected.
  const double h = pitch * std::sqrt(static_cast<double>(d)) / 2.0;
  std::vector<std::vector<Poly>> grads;
  std::vector<double> curv(eqs.size(), 0.0);
  {
    for (const Poly& e : eqs) {
      std::vector<Poly> g;
      for (int v : scan_vars) g.push_back(e.derive(v));
      grads.push_back(std::move(g));
    }
    const int coarse = 9;
    std::vector<int> cc(static_cast<size_t>(d), 0);
    bool cdone = false;
    std::vector<double> cpt = pt;
    while (!cdone) {
      for (int i = 0; i < d; ++i) {
        const auto& ax = axes[static_cast<size_t>(i)];
        double f = static_cast<double>(cc[static_cast<size_t>(i)]) / (coarse - 1);
        cpt[static_cast<size_t>(scan_vars[static_cast<size_t>(i)])] =
            ax.front() + (ax.back() - ax.front()) * f;
      }
      for (size_t ei = 0; ei < eqs.size(); ++ei) {
        double norm2 = 0.0;
        for (size_t gi = 0; gi < grads[ei].size(); ++gi)
          for (int v : scan_vars)
            norm2 += std::fabs(grads[ei][gi].derive(v).eval(cpt));
        curv[ei] = std::max(curv[ei], norm2);
      }
      cdone = true;
      for (int i = d - 1; i >= 0; --i) {
        if (++cc[static_cast<size_t>(i)] < coarse) {
          cdone = false;
          break;
        }
        cc[static_cast<size_t>(i)] = 0;
      }
      if (d == 0) break;
    }
  }

  // A node passes when (a) every equation is small relative to its local
  // first-order bound and (b) Gauss-Newton refinement from the node lands on
  // an actual zero nearby that still satisfies the corner constraints. The
  // second test rejects near-miss nodes (cusp whiskers, roots just outside
  // the corner) that the magnitude gate alone cannot distinguish.
  auto certify_from = [&](const std::vector<double>& p, std::vector<double> q) {
    const size_t ne = eqs.size();
    Eigen::VectorXd v(static_cast<Eigen::Index>(ne));
    Eigen::MatrixXd J(static_cast<Eigen::Index>(ne), static_cast<Eigen::Index>(d));
    for (int iter = 0; iter < 40; ++iter) {
      double worst = 0.0;
      for (size_t ei = 0; ei < ne; ++ei) {
        v(static_cast<Eigen::Index>(ei)) = eqs[ei].eval(q);
        worst = std::max(worst, std::fabs(v(static_cast<Eigen::Index>(ei))));
      }
      if (worst <= 1e-11) break;
      for (size_t ei = 0; ei < ne; ++ei)
        for (int i = 0; i < d; ++i)
          J(static_cast<Eigen::Index>(ei), i) =
              grads[ei][static_cast<size_t>(i)].eval(q);
      Eigen::VectorXd delta =
          J.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(v);
      double d2 = 0.0;
      for (int i = 0; i < d; ++i) {
        q[static_cast<size_t>(scan_vars[static_cast<size_t>(i)])] -= delta(i);
        double dv = q[static_cast<size_t>(scan_vars[static_cast<size_t>(i)])] -
                    p[static_cast<size_t>(scan_vars[static_cast<size_t>(i)])];
        d2 += dv * dv;
      }
      if (std::sqrt(d2) > 3.0 * h) return false;
    }
    for (size_t ei = 0; ei < ne; ++ei)
      if (std::fabs(eqs[ei].eval(q)) > 1e-9) return false;
    // The certified zero must lie in the node's own cell (the emitted sample
    // keeps the node's lattice coordinates, so a zero that only exists in a
    // neighboring slice would misreport steep coordinates), satisfy the
    // corner constraints, and stay inside the scan box.
    for (int i = 0; i < d; ++i) {
      int var = scan_vars[static_cast<size_t>(i)];
      double qv = q[static_cast<size_t>(var)];
      if (std::fabs(qv - p[static_cast<size_t>(var)]) > 0.52 * pitch) return false;
      if (space.block(var) == Block::X && qv < -1e-9) return false;
      if (qv < axes[static_cast<size_t>(i)].front() - 1e-9 ||
          qv > axes[static_cast<size_t>(i)].back() + 1e-9)
        return false;
    }
    return true;
  };
  // The refinement can stall when a gradient component vanishes exactly at
  // the node (e.g. on a cusp axis), so retry from jittered starts.
  auto certify = [&](const std::vector<double>& p) {
    if (certify_from(p, p)) return true;
    for (int i = 0; i < d; ++i) {
      for (double dir : {1.0, -1.0}) {
        std::vector<double> q = p;
        q[static_cast<size_t>(scan_vars[static_cast<size_t>(i)])] += dir * 0.25 * pitch;
        if (certify_from(p, q)) return true;
      }
    }
    return false;
  };

  std::vector<FrontSample> out;
  std::vector<int> coords(static_cast<size_t>(d), 0);
  bool done = false;
  while (!done) {
    for (int i = 0; i < d; ++i)
      pt[static_cast<size_t>(scan_vars[static_cast<size_t>(i)])] =
          axes[static_cast<size_t>(i)][static_cast<size_t>(coords[static_cast<size_t>(i)])];
    bool ok = true;
    for (size_t ei = 0; ei < eqs.size() && ok; ++ei) {
      double gnorm = 0.0;
      for (const Poly& g : grads[ei]) gnorm += std::fabs(g.eval(pt));
      double thresh = 1.25 * gnorm * h + 0.75 * curv[ei] * h * h + 1e-9;
      if (std::fabs(eqs[ei].eval(pt)) > thresh) ok = false;
    }
    if (ok && !eqs.empty() && !certify(pt)) ok = false;
    if (ok) {
      FrontSample smp;
      smp.point = pt;
      smp.u.resize(static_cast<size_t>(space.n));
      for (int a = 1; a <= space.n; ++a)
        smp.u[static_cast<size_t>(a - 1)] = pt[static_cast<size_t>(space.var(Block::U, a))];
      smp.z = Fc.eval(pt);
      smp.lattice = coords;
      out.push_back(std::move(smp));
    }
    done = true;
    for (int i = d - 1; i >= 0; --i) {
      if (++coords[static_cast<size_t>(i)] < static_cast<int>(axes[static_cast<size_t>(i)].size())) {
        done = false;
        break;
      }
      coords[static_cast<size_t>(i)] = 0;
    }
    if (d == 0) break;
  }
  return out;
}

std::vector<StratumFront> full_front(const GeneratingFamily& fam, const std::vector<double>& t,
                                     const SweepOptions& opts) {
  std::vector<StratumFront> out;
  for (const Stratum& st : strata(fam.space.r)) {
    FrontChart chart = build_chart(fam, st, opts);
    out.push_back(sampled_stratum(chart, t, opts));
  }
  return out;
}

double hausdorff_distance(const std::vector<FrontSample>& a, const std::vector<FrontSample>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  const size_t dim = a[0].u.size() + 1;
  auto coords = [&](const FrontSample& s, std::vector<double>& v) {
    for (size_t i = 0; i + 1 < dim; ++i) v[i] = s.u[i];
    v[dim - 1] = s.z;
  };

  struct Cloud {
    std::unordered_map<std::vector<int64_t>, std::vector<size_t>, MixHash> cells;
    std::vector<std::vector<double>> pts;
    std::vector<int64_t> clo, chi;  // bounding box of occupied cells
    double cell = 1.0;
  };
  auto build = [&](const std::vector<FrontSample>& src) {
    Cloud c;
    c.pts.resize(src.size(), std::vector<double>(dim));
    double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
    for (size_t i = 0; i < src.size(); ++i) {
      coords(src[i], c.pts[i]);
      for (double v : c.pts[i]) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    c.cell = std::max((hi - lo) / 64.0, 1e-9);
    c.clo.assign(dim, std::numeric_limits<int64_t>::max());
    c.chi.assign(dim, std::numeric_limits<int64_t>::min());
    for (size_t i = 0; i < src.size(); ++i) {
      std::vector<int64_t> key(dim);
      for (size_t j = 0; j < dim; ++j) {
        key[j] = static_cast<int64_t>(std::floor(c.pts[i][j] / c.cell));
        c.clo[j] = std::min(c.clo[j], key[j]);
        c.chi[j] = std::max(c.chi[j], key[j]);
      }
      c.cells[key].push_back(i);
    }
    return c;
  };
  auto directed = [&](const std::vector<FrontSample>& from, const Cloud& to) {
    double worst = 0.0;
    std::vector<double> p(dim);
    std::vector<int64_t> base(dim);
    for (const FrontSample& s : from) {
      coords(s, p);
      for (size_t j = 0; j < dim; ++j)
        base[j] = static_cast<int64_t>(std::floor(p[j] / to.cell));
      // Seed with an arbitrary member so disjoint clouds terminate quickly.
      double best = 0.0;
      for (size_t j = 0; j < dim; ++j) {
        double dv = p[j] - to.pts[0][j];
        best += dv * dv;
      }
      best = std::sqrt(best);
      std::vector<int64_t> rlo(dim), rhi(dim), cur(dim);
      for (int64_t ring = 0;; ++ring) {
        if (best <= static_cast<double>(ring - 1) * to.cell && ring > 0) break;
        if (static_cast<double>(ring) * to.cell > 1e6) break;
        // Enumerate the Chebyshev ring of radius `ring` around the base cell,
        // clipped to the occupied bounding box (everything outside is empty).
        bool empty = false;
        for (size_t j = 0; j < dim; ++j) {
          rlo[j] = std::max(base[j] - ring, to.clo[j]);
          rhi[j] = std::min(base[j] + ring, to.chi[j]);
          if (rlo[j] > rhi[j]) empty = true;
          cur[j] = rlo[j];
        }
        if (empty) continue;
        bool rdone = false;
        while (!rdone) {
          int64_t cheb = 0;
          for (size_t j = 0; j < dim; ++j)
            cheb = std::max<int64_t>(cheb, std::abs(cur[j] - base[j]));
          if (cheb == ring) {
            auto it = to.cells.find(cur);
            if (it != to.cells.end()) {
              for (size_t idx : it->second) {
                double d2 = 0.0;
                for (size_t j = 0; j < dim; ++j) {
                  double dv = p[j] - to.pts[idx][j];
                  d2 += dv * dv;
                }
                best = std::min(best, std::sqrt(d2));
              }
            }
          }
          rdone = true;
          for (size_t j = dim; j-- > 0;) {
            if (++cur[j] <= rhi[j]) {
              rdone = false;
              break;
            }
            cur[j] = rlo[j];
          }
        }
      }
      worst = std::max(worst, best);
    }
    return worst;
  };

  Cloud ca = build(a), cb = build(b);
  return std::max(directed(a, cb), directed(b, ca));
}

std::string front_json(const std::string& label, const std::vector<double>& t,
                       const std::vector<StratumFront>& fronts) {
  ordered_json doc;
  doc["label"] = label;
  doc["t"] = t;
  doc["strata"] = ordered_json::array();
  for (const StratumFront& sf : fronts) {
    ordered_json js;
    js["stratum"] = sf.chart.stratum.str();
    ordered_json sweep = ordered_json::array();
    for (const SweepVar& sv : sf.chart.sweep) {
      ordered_json jv;
      jv["var"] = sf.chart.space.name(sv.var);
      jv["lo"] = sv.lo;
      jv["hi"] = sv.hi;
      jv["steps"] = sv.steps;
      sweep.push_back(jv);
    }
    js["sweep"] = sweep;
    ordered_json solved = ordered_json::object();
    for (const auto& [v, expr] : sf.chart.solved)
      solved[sf.chart.space.name(v)] = expr.str();
    js["solved"] = solved;
    ordered_json res = ordered_json::array();
    for (const Poly& rp : sf.chart.residuals) res.push_back(rp.str());
    js["residuals"] = res;
    js["z"] = sf.chart.z.str();
    ordered_json samples = ordered_json::array();
    for (const FrontSample& s : sf.samples) {
      ordered_json row;
      row["u"] = s.u;
      row["z"] = s.z;
      ordered_json sp = ordered_json::array();
      for (const SweepVar& sv : sf.chart.sweep)
        sp.push_back(s.point[static_cast<size_t>(sv.var)]);
      row["sweep"] = sp;
      if (s.singular) row["singular"] = true;
      samples.push_back(row);
    }
    js["samples"] = samples;
    ordered_json edges = ordered_json::array();
    for (const auto& [i, j] : sf.edges) edges.push_back(ordered_json::array({i, j}));
    js["connectivity"] = edges;
    doc["strata"].push_back(js);
  }
  return doc.dump(2) + "\n";
}

}  // namespace retfront

#include "retfront/render.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace retfront {

namespace {

std::string fmt(double v) {
  char buf[40];
  if (v == 0.0) v = 0.0;  // normalize -0
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Projector {
  bool planar;
  ViewKind view;
  double ca, sa, ce, se;

  Projector(bool planar_, ViewKind view_, const RenderOptions& o) : planar(planar_), view(view_) {
    double az = o.azimuth_deg * M_PI / 180.0, el = o.elevation_deg * M_PI / 180.0;
    ca = std::cos(az);
    sa = std::sin(az);
    ce = std::cos(el);
    se = std::sin(el);
  }

  std::pair<double, double> operator()(const FrontSample& s) const {
    if (planar) return {s.u[0], s.z};
    double X = s.u[0], Y = s.u[1], Z = s.z;
    if (view == ViewKind::Top) return {X, Y};
    return {-sa * X + ca * Y, -se * (ca * X + sa * Y) + ce * Z};
  }
};

struct Box {
  double lox = std::numeric_limits<double>::max(), loy = std::numeric_limits<double>::max();
  double hix = std::numeric_limits<double>::lowest(), hiy = std::numeric_limits<double>::lowest();
  void add(double x, double y) {
    lox = std::min(lox, x);
    loy = std::min(loy, y);
    hix = std::max(hix, x);
    hiy = std::max(hiy, y);
  }
  bool empty() const { return lox > hix; }
};

Box atlas_box(const BifurcationAtlas& atlas, const Projector& pr) {
  Box box;
  for (const AtlasPanel& p : atlas.panels)
    for (const StratumFront& sf : p.fronts)
      for (const FrontSample& s : sf.samples) {
        auto [x, y] = pr(s);
        box.add(x, y);
      }
  if (box.empty()) box = Box{-1, -1, 1, 1};
  if (box.hix - box.lox < 1e-12) {
    box.lox -= 0.5;
    box.hix += 0.5;
  }
  if (box.hiy - box.loy < 1e-12) {
    box.loy -= 0.5;
    box.hiy += 0.5;
  }
  return box;
}

// Emits one panel's strata into `svg` mapped to the cell with origin
// (ox, oy); the scale is shared per atlas.
void emit_panel(std::string& svg, const AtlasPanel& panel, const Projector& pr, const Box& box,
                double ox, double oy, double cell) {
  const double pad = 8.0;
  double sx = (cell - 2 * pad) / (box.hix - box.lox);
  double sy = (cell - 2 * pad) / (box.hiy - box.loy);
  double sc = std::min(sx, sy);
  double cx = ox + cell / 2.0 - sc * (box.lox + box.hix) / 2.0;
  double cy = oy + cell / 2.0 + sc * (box.loy + box.hiy) / 2.0;
  auto map = [&](const FrontSample& s) {
    auto [x, y] = pr(s);
    return std::pair<double, double>{cx + sc * x, cy - sc * y};
  };
  svg += "  <rect x=\"" + fmt(ox) + "\" y=\"" + fmt(oy) + "\" width=\"" + fmt(cell) +
         "\" height=\"" + fmt(cell) + "\" fill=\"white\" stroke=\"#cccccc\"/>\n";
  for (size_t si = 0; si < panel.fronts.size(); ++si) {
    const StratumFront& sf = panel.fronts[si];
    if (sf.samples.empty()) continue;
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (!sf.edges.empty()) {
      std::string d;
      for (const auto& [i, j] : sf.edges) {
        auto [x1, y1] = map(sf.samples[static_cast<size_t>(i)]);
        auto [x2, y2] = map(sf.samples[static_cast<size_t>(j)]);
        d += "M" + fmt(x1) + " " + fmt(y1) + "L" + fmt(x2) + " " + fmt(y2);
      }
      svg += "  <path d=\"" + d + "\" stroke=\"" + color +
             "\" stroke-width=\"0.6\" fill=\"none\"/>\n";
    } else {
      for (const FrontSample& s : sf.samples) {
        auto [x, y] = map(s);
        svg += "  <circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"0.8\" fill=\"" +
               color + "\"/>\n";
      }
    }
    for (const FrontSample& s : sf.samples) {
      if (!s.singular) continue;
      auto [x, y] = map(s);
      svg += "  <circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) +
             "\" r=\"2.0\" fill=\"none\" stroke=\"#e6194b\" stroke-width=\"0.8\"/>\n";
    }
  }
}

std::string svg_header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" +
         fmt(h) + "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n";
}

std::string caption_text(const BifurcationAtlas& atlas) { return atlas.family.label.str(); }

}  // namespace

bool atlas_is_3d(const BifurcationAtlas& atlas) { return atlas.family.space.n >= 2; }

std::string panel_svg(const BifurcationAtlas& atlas, size_t panel_index, ViewKind view,
                      const RenderOptions& opts) {
  const AtlasPanel& panel = atlas.panels.at(panel_index);
  Projector pr(!atlas_is_3d(atlas), view, opts);
  Box box = atlas_box(atlas, pr);
  double cell = opts.cell, margin = opts.margin;
  double w = cell + 2 * margin, h = cell + 2 * margin + 18;
  std::string svg = svg_header(w, h);
  svg += "  <text x=\"" + fmt(w / 2) + "\" y=\"" + fmt(margin) +
         "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">" +
         caption_text(atlas) + " t=(" + fmt(panel.t[0]) + "," + fmt(panel.t[1]) + ")</text>\n";
  emit_panel(svg, panel, pr, box, margin, margin + 18, cell);
  svg += "</svg>\n";
  return svg;
}

std::string atlas_grid_svg(const BifurcationAtlas& atlas, ViewKind view,
                           const RenderOptions& opts) {
  const size_t rows = atlas.grid.axis1.size();
  const size_t cols = atlas.grid.axis2.size();
  Projector pr(!atlas_is_3d(atlas), view, opts);
  Box box = atlas_box(atlas, pr);
  double cell = opts.cell, margin = opts.margin, gap = 6.0, header = 24.0;
  double w = margin * 2 + cols * cell + (cols - 1) * gap;
  double h = margin * 2 + header + rows * (cell + 16.0) + (rows - 1) * gap;
  std::string svg = svg_header(w, h);
  svg += "  <text x=\"" + fmt(w / 2) + "\" y=\"" + fmt(margin + 10) +
         "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"16\">" +
         caption_text(atlas) + "</text>\n";
  for (size_t i = 0; i < atlas.panels.size() && i < rows * cols; ++i) {
    size_t row = i / cols, col = i % cols;
    double ox = margin + col * (cell + gap);
    double oy = margin + header + row * (cell + 16.0 + gap);
    emit_panel(svg, atlas.panels[i], pr, box, ox, oy, cell);
    svg += "  <text x=\"" + fmt(ox + cell / 2) + "\" y=\"" + fmt(oy + cell + 12.0) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"10\">t=(" +
           fmt(atlas.panels[i].t[0]) + "," + fmt(atlas.panels[i].t[1]) + ")</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string export_mesh_obj(const BifurcationAtlas& atlas, size_t panel_index) {
  if (!atlas_is_3d(atlas))
    throw std::invalid_argument("export_mesh_obj: planar atlas has no mesh");
  const AtlasPanel& panel = atlas.panels.at(panel_index);
  std::string obj = "# wavefront mesh, " + caption_text(atlas) + " t=(" + fmt(panel.t[0]) +
                    "," + fmt(panel.t[1]) + ")\n";

  struct KeyHash {
    size_t operator()(const std::vector<int>& key) const {
      size_t h = 0x9e3779b97f4a7c15ull;
      for (int v : key) h = h * 1099511628211ull + static_cast<size_t>(v + 7);
      return h;
    }
  };

  int base = 0;  // global 1-based vertex offset
  for (size_t si = 0; si < panel.fronts.size(); ++si) {
    const StratumFront& sf = panel.fronts[si];
    if (sf.samples.empty()) continue;
    obj += "o stratum_" + std::to_string(si) + "\n";
    for (const FrontSample& s : sf.samples)
      obj += "v " + fmt(s.u[0]) + " " + fmt(s.u[1]) + " " + fmt(s.z) + "\n";

    // Face axes: the sweep axes that index the sheet (all axes for graph
    // charts, the non-scan axes for residual charts).
    const FrontChart& chart = sf.chart;
    const int d = static_cast<int>(chart.sweep.size());
    int scan = -1;
    if (!chart.residuals.empty()) {
      for (int i = 0; i < d && scan < 0; ++i)
        for (const Poly& rp : chart.residuals) {
          bool occ = false;
          for (const auto& [mo, c] : rp.terms())
            if (mo[static_cast<size_t>(chart.sweep[static_cast<size_t>(i)].var)] != 0) occ = true;
          if (occ) {
            scan = i;
            break;
          }
        }
    }
    std::vector<int> face_axes;
    for (int i = 0; i < d; ++i)
      if (i != scan) face_axes.push_back(i);

    std::unordered_map<std::vector<int>, int, KeyHash> index;
    auto key_of = [&](const FrontSample& s) {
      std::vector<int> key;
      for (int ax : face_axes) key.push_back(s.lattice[static_cast<size_t>(ax)]);
      key.push_back(s.branch);
      return key;
    };
    for (size_t i = 0; i < sf.samples.size(); ++i) index[key_of(sf.samples[i])] = static_cast<int>(i);

    if (face_axes.size() >= 2) {
      // Quads over the first two face axes (panels have at most two).
      for (size_t i = 0; i < sf.samples.size(); ++i) {
        std::vector<int> k00 = key_of(sf.samples[i]);
        std::vector<int> k10 = k00, k01 = k00, k11 = k00;
        k10[0] += 1;
        k01[1] += 1;
        k11[0] += 1;
        k11[1] += 1;
        auto i10 = index.find(k10), i01 = index.find(k01), i11 = index.find(k11);
        if (i10 != index.end() && i01 != index.end() && i11 != index.end()) {
          obj += "f " + std::to_string(base + static_cast<int>(i) + 1) + " " +
                 std::to_string(base + i10->second + 1) + " " +
                 std::to_string(base + i11->second + 1) + " " +
                 std::to_string(base + i01->second + 1) + "\n";
        }
      }
    } else if (face_axes.size() == 1) {
      // Degenerate sheet: polyline fallback.
      for (size_t i = 0; i < sf.samples.size(); ++i) {
        std::vector<int> k1 = key_of(sf.samples[i]);
        k1[0] += 1;
        auto it = index.find(k1);
        if (it != index.end())
          obj += "l " + std::to_string(base + static_cast<int>(i) + 1) + " " +
                 std::to_string(base + it->second + 1) + "\n";
      }
    }
    std::string flagged;
    for (size_t i = 0; i < sf.samples.size(); ++i)
      if (sf.samples[i].singular) flagged += "p " + std::to_string(base + static_cast<int>(i) + 1) + "\n";
    if (!flagged.empty()) obj += "g stratum_" + std::to_string(si) + "_flagged\n" + flagged;
    base += static_cast<int>(sf.samples.size());
  }
  return obj;
}

}  // namespace retfront

#ifndef RETFRONT_RENDER_HPP
#define RETFRONT_RENDER_HPP

#include <string>

#include "retfront/bifurcate.hpp"

namespace retfront {

// Spatial fronts are drawn in two fixed orthographic views; planar fronts
// (one base variable) ignore the view kind.
enum class ViewKind { Oblique, Top };

struct RenderOptions {
  int cell = 220;       // panel cell size in px
  int margin = 14;      // outer margin / caption strip
  double azimuth_deg = 30.0;
  double elevation_deg = 20.0;
};

// True when panels live in (u1, u2, z) rather than the (u1, z) plane.
bool atlas_is_3d(const BifurcationAtlas& atlas);

// One panel as a standalone vector-graphic document.
std::string panel_svg(const BifurcationAtlas& atlas, size_t panel_index,
                      ViewKind view = ViewKind::Oblique, const RenderOptions& opts = {});

// All panels placed row-major in t-lexicographic order, caption = label.
// Scale is shared across the whole grid so the bifurcation is visible.
std::string atlas_grid_svg(const BifurcationAtlas& atlas, ViewKind view = ViewKind::Oblique,
                           const RenderOptions& opts = {});

// Wavefront mesh of one 3D panel: per-stratum groups, quad faces over the
// sweep lattice, polyline fallback for one-dimensional sheets.
// Throws for planar atlases.
std::string export_mesh_obj(const BifurcationAtlas& atlas, size_t panel_index);

}  // namespace retfront

#endif

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "retfront/bifurcate.hpp"
#include "retfront/catalog.hpp"
#include "retfront/front.hpp"
#include "retfront/render.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace retfront;

namespace {

// Flat key=value config file; values only fill options the command line left
// unset, so flags always win.
std::map<std::string, std::string> load_config(const std::string& path) {
  std::map<std::string, std::string> cfg;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
  std::string line;
  while (std::getline(in, line)) {
    size_t h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (!key.empty()) cfg[key] = val;
  }
  return cfg;
}

void apply_config(CLI::App* cmd, const std::string& config_path) {
  if (config_path.empty()) return;
  auto cfg = load_config(config_path);
  for (const auto& [key, val] : cfg) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (!opt || opt->count() > 0) continue;
    opt->add_result(val);
    opt->run_callback();
  }
}

std::vector<int> parse_signs(const std::string& text) {
  std::vector<int> out;
  for (char c : text) {
    if (c == '+')
      out.push_back(1);
    else if (c == '-')
      out.push_back(-1);
    else if (c == ',' || c == ' ')
      continue;
    else
      throw CLI::ValidationError("--signs", std::string("unexpected character '") + c + "'");
  }
  return out;
}

std::string signs_text(const std::vector<int>& signs) {
  std::string s;
  for (int v : signs) s += v > 0 ? '+' : '-';
  return s;
}

int cmd_list(int r_filter, bool as_json) {
  if (as_json) {
    std::cout << catalog_json();
    return 0;
  }
  size_t shown = 0;
  for (int r = 0; r <= 1; ++r) {
    if (r_filter >= 0 && r_filter != r) continue;
    for (const CatalogEntry& e : list_entries(r, 2)) {
      std::printf("%-4s r=%d k=%d l=%d..%d%s\n", e.name().c_str(), e.r, e.k, e.min_l, e.max_l,
                  e.has_sign ? " sign" : "");
      for (const std::string& line : e.printed) std::printf("    %s\n", line.c_str());
      ++shown;
    }
  }
  if (shown == 0) std::printf("no catalog entries match r=%d (classified: r=0 and r=1)\n", r_filter);
  return 0;
}

GeneratingFamily make_family(const std::string& label, int l, const std::string& signs,
                             bool pattern_variant) {
  auto lab = NormalFormLabel::parse(label);
  if (!lab) throw CLI::ValidationError("--label", "cannot parse '" + label + "'");
  return instantiate(label, l, parse_signs(signs), pattern_variant);
}

int cmd_check(const std::string& label, int l, const std::string& signs, int order,
              bool pattern_variant, const std::string& formula, bool float_crosscheck) {
  GeneratingFamily fam = make_family(label, l, signs, pattern_variant);
  if (!formula.empty()) fam.poly = Poly::parse(fam.space, formula);

  SpanCheckOptions opts;
  opts.float_crosscheck = float_crosscheck;

  auto det = find_determinacy_order(fam.f0);
  int check_order = order > 0 ? order : stability_order(det.value_or(7), fam.space.m);
  CheckReport stab = is_tPK_infinitesimally_stable(fam.poly, check_order, opts);
  CheckReport vers = is_PR_versal(fam.a_small, check_order, opts);
  bool ok = det.has_value() && stab.verdict && vers.verdict;

  ordered_json doc;
  doc["label"] = fam.label.str();
  doc["l"] = l;
  doc["signs"] = signs_text(fam.signs);
  doc["pattern_variant"] = pattern_variant;
  doc["family"] = fam.poly.str();
  doc["determinacy_order"] = det ? ordered_json(*det) : ordered_json(nullptr);
  doc["check_order"] = check_order;
  doc["stability"] = ordered_json::parse(stab.to_json(fam.space));
  doc["versality"] = ordered_json::parse(vers.to_json(fam.a_small.space()));
  doc["verdict"] = ok;
  std::cout << doc.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_atlas(const std::string& label, int l, const std::string& signs, bool pattern_variant,
              double delta, int res, std::string out, int workers,
              const std::string& formats) {
  GeneratingFamily fam = make_family(label, l, signs, pattern_variant);
  if (out.empty()) {
    out = "atlas_" + fam.label.str() + "_l" + std::to_string(l);
    for (char& c : out)
      if (c == '+') c = 'p';
      else if (c == '-') c = 'm';
  }

  bool want_svg = formats.find("svg") != std::string::npos;
  bool want_json = formats.find("json") != std::string::npos;
  bool want_obj = formats.find("obj") != std::string::npos;

  SweepOptions sweep;
  if (res > 0) sweep.steps = res;
  BifurcationAtlas at = atlas(fam, TimeGrid::centered(delta), sweep, workers);
  flag_singular(at);

  fs::create_directories(out);
  std::vector<std::string> files;
  auto write_file = [&](const std::string& name, const std::string& content) {
    std::ofstream f(fs::path(out) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (fs::path(out) / name).string());
    f << content;
    files.push_back(name);
  };

  if (want_json)
    for (size_t i = 0; i < at.panels.size(); ++i)
      write_file("panel_" + std::to_string(i) + ".json", panel_json(at, i));
  if (want_svg) {
    write_file("atlas.svg", atlas_grid_svg(at, ViewKind::Oblique));
    if (atlas_is_3d(at)) write_file("atlas_top.svg", atlas_grid_svg(at, ViewKind::Top));
  }
  if (want_obj && atlas_is_3d(at))
    for (size_t i = 0; i < at.panels.size(); ++i)
      write_file("panel_" + std::to_string(i) + ".obj", export_mesh_obj(at, i));

  // Resolved configuration: rerunning with `--config config.resolved` must
  // reproduce every output byte for byte.
  std::ostringstream rc;
  rc << "label=" << label << "\n"
     << "l=" << l << "\n"
     << "signs=" << signs << "\n"
     << "pattern-variant=" << (pattern_variant ? "true" : "false") << "\n"
     << "delta=" << delta << "\n"
     << "res=" << res << "\n"
     << "out=" << out << "\n"
     << "workers=" << workers << "\n"
     << "format=" << formats << "\n";
  write_file("config.resolved", rc.str());

  ordered_json man;
  man["command"] = "atlas";
  ordered_json cfg;
  cfg["label"] = label;
  cfg["l"] = l;
  cfg["signs"] = signs;
  cfg["pattern-variant"] = pattern_variant;
  cfg["delta"] = delta;
  cfg["res"] = res;
  cfg["out"] = out;
  cfg["workers"] = workers;
  cfg["format"] = formats;
  man["config"] = cfg;
  man["caption"] = fam.label.str();
  man["panels"] = at.panels.size();
  man["grid"] = ordered_json{{"axis1", at.grid.axis1}, {"axis2", at.grid.axis2}};
  std::sort(files.begin(), files.end());
  man["files"] = files;
  {
    std::ofstream f(fs::path(out) / "manifest.json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write manifest.json");
    f << man.dump(2) << "\n";
  }
  std::printf("wrote %zu files to %s\n", files.size() + 1, out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reticular wavefront catalog, stability checks, and bifurcation atlases"};
  app.require_subcommand(1);

  // list
  auto* list = app.add_subcommand("list", "print the classified normal forms");
  int r_filter = -1;
  bool as_json = false;
  list->add_option("--r", r_filter, "filter by corner rank");
  list->add_flag("--json", as_json, "machine-readable catalog");

  // shared check/atlas options
  std::string label, signs, formula, out, formats = "svg,json,obj", config_path;
  int l = 0, order = 0, res = 0, workers = 1;
  bool pattern_variant = false, use_float = false, use_exact = true;
  double delta = 0.5;

  auto* check = app.add_subcommand("check", "determinacy, stability, and versality report");
  check->add_option("--label", label, "catalog label, e.g. 2A2 or 2C3-");
  check->add_option("--l", l, "number of base variables");
  check->add_option("--signs", signs, "Morse tail signs, e.g. '+-'");
  check->add_option("--order", order, "jet order override (0 = derive from determinacy)");
  check->add_flag("--pattern-variant", pattern_variant,
                  "use the pattern-consistent phi0 where the printed one differs");
  check->add_option("--formula", formula, "override the family polynomial (tamper probe)");
  check->add_flag("--float", use_float, "corroborate exact ranks with a floating-point path");
  check->add_flag("--exact,!--no-exact", use_exact, "exact arithmetic (always on; default)");
  check->add_option("--config", config_path, "flat key=value config; flags win");

  auto* atl = app.add_subcommand("atlas", "two-time bifurcation atlas figures");
  atl->add_option("--label", label, "catalog label, e.g. 2A2 or 2C3-");
  atl->add_option("--l", l, "number of base variables");
  atl->add_option("--signs", signs, "Morse tail signs, e.g. '+-'");
  atl->add_flag("--pattern-variant", pattern_variant,
                "use the pattern-consistent phi0 where the printed one differs");
  atl->add_option("--delta", delta, "time grid spacing {-delta,0,delta}");
  atl->add_option("--res", res, "sweep steps per free variable (0 = default)");
  atl->add_option("--out", out, "output directory");
  atl->add_option("--workers", workers, "concurrent panel jobs");
  atl->add_option("--format", formats, "comma list of svg,json,obj");
  atl->add_option("--config", config_path, "flat key=value config; flags win");

  try {
    app.parse(argc, argv);
    CLI::App* active = app.get_subcommands().front();
    if (active == check || active == atl) {
      apply_config(active, config_path);
      if (label.empty()) throw CLI::ValidationError("--label", "required");
      if (l <= 0) throw CLI::ValidationError("--l", "required and positive");
    }
    if (active == list) return cmd_list(r_filter, as_json);
    if (active == check)
      return cmd_check(label, l, signs, order, pattern_variant, formula, use_float);
    return cmd_atlas(label, l, signs, pattern_variant, delta, res, out, workers, formats);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
}

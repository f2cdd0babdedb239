#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "retfront/bifurcate.hpp"
#include "retfront/catalog.hpp"
#include "retfront/front.hpp"
#include "retfront/jetalgebra.hpp"
#include "retfront/poly.hpp"
#include "retfront/render.hpp"

namespace py = pybind11;
using namespace retfront;

namespace {

py::dict report_dict(const CheckReport& rep, const VarSpace& space) {
  py::dict d;
  d["verdict"] = rep.verdict;
  d["order_used"] = rep.order_used;
  d["corank"] = rep.corank;
  py::list witness;
  for (const Monomial& mo : rep.witness) {
    std::string name;
    for (size_t i = 0; i < mo.e.size(); ++i)
      for (int rep2 = 0; rep2 < mo.e[i]; ++rep2) {
        if (!name.empty()) name += "*";
        name += space.name(static_cast<int>(i));
      }
    witness.append(name.empty() ? "1" : name);
  }
  d["witness"] = witness;
  return d;
}

}  // namespace

PYBIND11_MODULE(_retfront, m) {
  m.doc() = "reticular wavefront catalog, jet-algebra checks, fronts, and atlases";

  py::class_<VarSpace>(m, "VarSpace")
      .def(py::init([](int r, int k, int n, int mm) {
             return VarSpace{r, k, n, mm};
           }),
           py::arg("r"), py::arg("k"), py::arg("n"), py::arg("m"))
      .def_readonly("r", &VarSpace::r)
      .def_readonly("k", &VarSpace::k)
      .def_readonly("n", &VarSpace::n)
      .def_readonly("m", &VarSpace::m)
      .def("total", &VarSpace::total)
      .def("name", &VarSpace::name);

  py::class_<Poly>(m, "Poly")
      .def_static("parse", &Poly::parse)
      .def("__str__", &Poly::str)
      .def("degree", &Poly::degree)
      .def("is_zero", &Poly::is_zero)
      .def("eval", &Poly::eval)
      .def("derive", &Poly::derive)
      .def("space", &Poly::space)
      .def("__add__", &Poly::operator+)
      .def("__sub__", static_cast<Poly (Poly::*)(const Poly&) const>(&Poly::operator-))
      .def("__mul__", static_cast<Poly (Poly::*)(const Poly&) const>(&Poly::operator*));

  py::class_<NormalFormLabel>(m, "NormalFormLabel")
      .def_readonly("series", &NormalFormLabel::series)
      .def_readonly("index", &NormalFormLabel::index)
      .def_readonly("sign", &NormalFormLabel::sign)
      .def_readonly("r", &NormalFormLabel::r)
      .def("__str__", &NormalFormLabel::str);

  py::class_<CatalogEntry>(m, "CatalogEntry")
      .def_readonly("series", &CatalogEntry::series)
      .def_readonly("index", &CatalogEntry::index)
      .def_readonly("has_sign", &CatalogEntry::has_sign)
      .def_readonly("r", &CatalogEntry::r)
      .def_readonly("k", &CatalogEntry::k)
      .def_readonly("min_l", &CatalogEntry::min_l)
      .def_readonly("max_l", &CatalogEntry::max_l)
      .def_readonly("printed", &CatalogEntry::printed)
      .def("name", &CatalogEntry::name)
      .def("admits", &CatalogEntry::admits)
      .def("sign_count", &CatalogEntry::sign_count);

  py::class_<GeneratingFamily>(m, "GeneratingFamily")
      .def_readonly("poly", &GeneratingFamily::poly)
      .def_readonly("space", &GeneratingFamily::space)
      .def_readonly("label", &GeneratingFamily::label)
      .def_readonly("l", &GeneratingFamily::l)
      .def_readonly("a", &GeneratingFamily::a)
      .def_readonly("phi0", &GeneratingFamily::phi0);

  m.def("list_entries", &list_entries, py::arg("r"), py::arg("m") = 2);
  m.def("instantiate",
        static_cast<GeneratingFamily (*)(const std::string&, int, const std::vector<int>&, bool)>(
            &instantiate),
        py::arg("label"), py::arg("l"), py::arg("signs") = std::vector<int>{},
        py::arg("pattern_variant") = false);
  m.def("catalog_json", &catalog_json);
  m.def("drop_u1_slot", &drop_u1_slot);
  m.def("drop_t2_coupling", &drop_t2_coupling);

  m.def("is_K_determined", [](const Poly& f0, int l) {
    return report_dict(is_K_determined(f0, l), f0.space());
  });
  m.def("find_determinacy_order",
        [](const Poly& f0, int cap) -> py::object {
          auto v = find_determinacy_order(f0, cap);
          if (!v) return py::none();
          return py::int_(*v);
        },
        py::arg("f0"), py::arg("cap") = 7);
  m.def("stability_order", &stability_order);
  m.def("is_tPK_infinitesimally_stable", [](const Poly& F, int order) {
    return report_dict(is_tPK_infinitesimally_stable(F, order), F.space());
  });
  m.def("is_PR_versal", [](const Poly& a, int order) {
    return report_dict(is_PR_versal(a, order), a.space());
  });
  m.def("validate_entry",
        [](const CatalogEntry& e, int l, const std::vector<int>& signs, bool pattern_variant) {
          EntryValidation v = validate_entry(e, l, signs, pattern_variant);
          py::dict d;
          d["determinacy_order"] = v.determinacy_order;
          d["check_order"] = v.check_order;
          d["stable"] = v.stability.verdict;
          d["versal"] = v.versality.verdict;
          d["ok"] = v.ok;
          return d;
        },
        py::arg("entry"), py::arg("l"), py::arg("signs") = std::vector<int>{},
        py::arg("pattern_variant") = false);

  py::class_<Stratum>(m, "Stratum")
      .def(py::init([](const std::vector<int>& sigma) {
             Stratum st;
             st.sigma = sigma;
             return st;
           }),
           py::arg("sigma") = std::vector<int>{})
      .def_readonly("sigma", &Stratum::sigma)
      .def("__str__", &Stratum::str);

  py::class_<SweepOptions>(m, "SweepOptions")
      .def(py::init<>())
      .def_readwrite("lo", &SweepOptions::lo)
      .def_readwrite("hi", &SweepOptions::hi)
      .def_readwrite("steps", &SweepOptions::steps)
      .def_readwrite("eps_res", &SweepOptions::eps_res);

  py::class_<FrontSample>(m, "FrontSample")
      .def_readonly("point", &FrontSample::point)
      .def_readonly("u", &FrontSample::u)
      .def_readonly("z", &FrontSample::z)
      .def_readonly("singular", &FrontSample::singular);

  py::class_<FrontChart>(m, "FrontChart")
      .def_readonly("stratum", &FrontChart::stratum)
      .def_readonly("residuals", &FrontChart::residuals)
      .def_property_readonly("z", [](const FrontChart& c) { return c.z.str(); });

  py::class_<StratumFront>(m, "StratumFront")
      .def_readonly("chart", &StratumFront::chart)
      .def_readonly("samples", &StratumFront::samples)
      .def_readonly("edges", &StratumFront::edges);

  m.def("strata", &strata);
  m.def("build_chart",
        static_cast<FrontChart (*)(const GeneratingFamily&, const Stratum&, const SweepOptions&)>(
            &build_chart),
        py::arg("family"), py::arg("stratum"), py::arg("options") = SweepOptions{});
  m.def("sample_front", &sample_front, py::arg("chart"), py::arg("t"),
        py::arg("options") = SweepOptions{});
  m.def("brute_force_front", &brute_force_front, py::arg("F"), py::arg("space"),
        py::arg("stratum"), py::arg("t"), py::arg("box") = 1.5, py::arg("pitch") = 0.02);
  m.def("full_front", &full_front, py::arg("family"), py::arg("t"),
        py::arg("options") = SweepOptions{});
  m.def("hausdorff_distance", &hausdorff_distance);
  m.def("front_json", &front_json);

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<>())
      .def_static("centered", &TimeGrid::centered)
      .def_readwrite("axis1", &TimeGrid::axis1)
      .def_readwrite("axis2", &TimeGrid::axis2);

  py::class_<AtlasPanel>(m, "AtlasPanel")
      .def_readonly("t", &AtlasPanel::t)
      .def_readonly("fronts", &AtlasPanel::fronts);

  py::class_<BifurcationAtlas>(m, "BifurcationAtlas")
      .def_readonly("panels", &BifurcationAtlas::panels);

  m.def("atlas", &atlas, py::arg("family"), py::arg("grid") = TimeGrid{},
        py::arg("options") = SweepOptions{}, py::arg("workers") = 1);
  m.def("flag_singular", &flag_singular, py::arg("atlas"), py::arg("tol") = 1e-4);
  m.def("panel_json", &panel_json);
  m.def("atlas_grid_svg",
        [](const BifurcationAtlas& at, bool top_view) {
          return atlas_grid_svg(at, top_view ? ViewKind::Top : ViewKind::Oblique);
        },
        py::arg("atlas"), py::arg("top_view") = false);
  m.def("export_mesh_obj", &export_mesh_obj);
}

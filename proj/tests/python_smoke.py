"""End-to-end smoke test of the Python bindings."""

import json

import retfront as rf


def main():
    entries = rf.list_entries(0, 2) + rf.list_entries(1, 2)
    assert len(entries) == 16, len(entries)
    assert [e.name() for e in rf.list_entries(1, 2)] == [
        "2B2", "2B3", "2B4", "2C3", "2C4", "2F4"]

    catalog = json.loads(rf.catalog_json())
    assert len(catalog["entries"]) == 16

    fam = rf.instantiate("2A2", 2)
    assert fam.l == 2
    assert fam.space.n == 2
    assert "y1^3" in str(fam.poly)

    report = rf.validate_entry(rf.list_entries(0, 2)[1], 2)
    assert report["ok"], report
    assert report["determinacy_order"] == 3, report

    stab = rf.is_tPK_infinitesimally_stable(fam.poly, report["check_order"])
    assert stab["verdict"], stab
    tampered = rf.drop_u1_slot(fam)
    stab_bad = rf.is_tPK_infinitesimally_stable(tampered, report["check_order"])
    assert not stab_bad["verdict"], stab_bad

    fronts = rf.full_front(fam, [0.0, 0.5])
    assert fronts and fronts[0].samples
    cloud = rf.front_json("2A2", [0.0, 0.5], fronts)
    doc = json.loads(cloud)
    assert doc["label"] == "2A2"
    assert doc["strata"][0]["samples"]

    atl = rf.atlas(rf.instantiate("2B2", 2), rf.TimeGrid.centered(0.5))
    assert len(atl.panels) == 9
    rf.flag_singular(atl)
    svg = rf.atlas_grid_svg(atl)
    assert svg.startswith("<?xml") or svg.lstrip().startswith("<svg")
    assert "2B2" in svg
    obj = rf.export_mesh_obj(atl, 4)
    assert "\nf " in obj

    print("python bindings smoke test passed")


if __name__ == "__main__":
    main()

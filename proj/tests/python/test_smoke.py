"""Python smoke tests for the native module."""

import math

import pytest

import trenchfield as tf


def test_families_listed():
    assert len(tf.FAMILIES) == 8
    assert "wafer_antisymmetric" in tf.FAMILIES


def test_geometry_and_mesh_roundtrip():
    cs = tf.build_cross_section("set_symmetric", {"a": 161.2, "b": 59.0})
    electrodes = cs.electrodes()
    assert {e["electrode_id"] for e in electrodes} == {
        "dc_center", "rf_left", "rf_right", "ground_left", "ground_right",
    }
    mesh = tf.mesh_panels(cs)
    assert len(mesh) > 100
    panels = mesh.panels()
    assert len(panels) == len(mesh)
    # deterministic meshes hash identically
    assert mesh.content_hash() == tf.mesh_panels(cs).content_hash()


def test_solver_and_fields():
    cs = tf.build_cross_section("set_symmetric", {"a": 161.2, "b": 59.0})
    sol = tf.solve_basis(tf.mesh_panels(cs))
    phi = sol.potential((0.0, 75.0), {"rf_left": 1.0, "rf_right": 1.0})
    assert 0.0 < phi < 1.0
    ex, ey = sol.field((0.0, 75.0), {"rf_left": 1.0, "rf_right": 1.0})
    assert abs(ex) < 1e-6  # symmetry axis
    for eid in ("rf_left", "dc_center"):
        assert sol.boundary_residual(eid) < 5e-3


def test_validity_errors_surface_as_exceptions():
    cs = tf.build_cross_section("simple_trench_symmetric",
                                {"c": 210.0, "d": 77.3, "beta": 600.0})
    sol = tf.solve_basis(tf.mesh_panels(cs))
    with pytest.raises(tf.TrenchfieldError):
        sol.potential((0.0, -10.0), {"rf_left": 1.0})


def test_analyze_representative_set():
    report = tf.analyze("set_symmetric", {"a": 161.2, "b": 59.0})
    assert report["secular_lower_mhz"] == pytest.approx(4.0, rel=1e-9)
    assert report["c2"] == pytest.approx(0.17, rel=0.10)
    assert report["c3_prime"] == pytest.approx(1.0, rel=0.05)
    assert report["depth_ev"] == pytest.approx(0.06, rel=0.15)
    assert report["na_above"] == 1.0
    assert report["separation_um"] == pytest.approx(75.0, abs=0.1)


def test_analyze_config_text():
    report = tf.analyze_config(
        """
        [trap]
        family = wafer_antisymmetric
        k = 53
        """
    )
    assert report["c4_prime"] == pytest.approx(0.007, abs=0.05)
    assert report["na_above"] == pytest.approx(report["na_below"], abs=1e-9)


def test_strip_potential_closed_form():
    # single strip of width 100 seen from height 50: (2/pi) atan(1) = 1/2
    assert tf.strip_potential([(-50.0, 50.0)], (0.0, 50.0)) == pytest.approx(0.5)


def test_numerical_aperture():
    cs = tf.build_cross_section("set_symmetric", {"a": 161.2, "b": 59.0})
    na, edge = tf.numerical_aperture(cs, (0.0, 75.0), "up")
    assert na == 1.0 and edge == "unobstructed"


def test_sweep_rows_and_csv_determinism():
    rows = tf.sweep("set_symmetric", "a", [150.0, 161.2], fixed={"b": 59.0})
    assert [r["w"] for r in rows] == [150.0, 161.2]
    assert all(r["status"] == "ok" for r in rows)
    csv1 = tf.sweep_csv("set_symmetric", "a", [150.0, 161.2], fixed={"b": 59.0})
    csv2 = tf.sweep_csv("set_symmetric", "a", [150.0, 161.2], fixed={"b": 59.0},
                        jobs=2)
    assert csv1 == csv2
    assert csv1.splitlines()[1].startswith("family,w_name,w_um,depth_eV")


def test_reference_table_embedded():
    table = tf.reference_table()
    assert len(table) == 8
    by_family = {row["family"]: row for row in table}
    assert by_family["set_symmetric"]["dims"] == {"a": 161.2, "b": 59.0}
    assert by_family["wafer_antisymmetric"]["depth_ev"] == pytest.approx(0.39)

"""End-to-end smoke tests for the python surface of the compiled core."""

import math

import pytest

import carrollian as ca


def test_eval_and_partials():
    assert ca.eval_scalar("x^2 + sin(y)", [2.0, 0.0, 0.0]) == pytest.approx(4.0)
    assert ca.eval_scalar("t^3", [0.5], t=2.0) == pytest.approx(8.0)
    # d/dx1 (x1^2) = 2 x1 at x1 = 3
    dtext = ca.partial_base("x1^2", 1, 0)
    assert ca.eval_scalar(dtext, [3.0]) == pytest.approx(6.0)
    ftext = ca.partial_fibre("t^2", 1)
    assert ca.eval_scalar(ftext, [0.0], t=5.0) == pytest.approx(10.0)


def test_flat_star_table_row():
    b = ca.flat_bundle(3)
    assert b.n == 3
    assert ca.star("dx^dy", b) == "(1)*dx3^th"
    assert ca.star("dx^dz", b) == "(-1)*dx2^th"
    # star of star: sign law on two-forms over a three-dimensional base
    assert ca.star_square_sign(2, 3) == -1


def test_exterior_calculus_identities():
    b = ca.flat_bundle(2)
    # d^2 = 0 on a generic scalar
    assert ca.d(ca.d("sin(x1)*x2", b), b) == "0"
    # weight of a homogeneous form is reported exactly
    assert ca.weight("t^2*cos(x1)", b) == "2"


def test_custom_bundle_round_trip():
    b = ca.custom_bundle(2, ["1+x1^2", "1"], ["x2", "0"])
    assert b.n == 2
    out = ca.laplacian("t*x1", b)
    assert isinstance(out, str) and out
    with pytest.raises(Exception):
        ca.custom_bundle(2, ["t"])  # fibre-dependent metric is rejected


def test_verify_suite_passes():
    ok, report = ca.verify(dims=[2], seed=7, samples=20)
    assert ok
    assert "0 failure(s)" in report
    assert "n=2" in report


def test_plane_wave_is_a_solution():
    r = ca.plane_wave_residual([0.0, 0.0, 1.0], [1.0, 0.0, 0.0])
    assert r["equivalent"]
    assert r["max_form_residual"] < 1e-9
    assert r["max_vector_residual"] < 1e-9
    bad = ca.maxwell_residual(["x", "0", "0"], ["0", "0", "0"])
    assert bad["max_vector_residual"] > 0.5


def test_grid_solver_conserves_energy():
    cfg = "\n".join(
        [
            "n = 16",
            "l_box = 6.283185307179586",
            f"du = {math.pi / 16}",
            "steps = 32",
            "init.kind = plane_wave",
            "init.k = 0, 0, 1",
            "init.e0 = 1, 0, 0",
            "output.cadence = 8",
            "",
        ]
    )
    out = ca.run_simulation(cfg)
    assert out["rows"] == 5
    assert out["relative_energy_drift"] < 1e-6
    assert out["csv"].startswith(
        "step,u,t,energy,max_divE,max_divB,max_residual_faraday,max_residual_ampere"
    )


def test_horizon_tables_and_scan():
    rows = ca.horizon_star_table(0.5)
    assert len(rows) == 8
    assert all(r["pass"] for r in rows)
    hits = ca.horizon_scan(0.5, 2, 1)
    assert [(h["degree"], h["slot"]) for h in hits] == [
        (0, "f"),
        (1, "T0"),
        (2, "S2"),
        (3, "T2"),
    ]
    assert all(h["l"] == 0 and h["lambda"] == 0 for h in hits)


def test_extension_to_zero_section():
    ext = ca.extend_to_zero("1", 0.5)
    assert ext["accepted"] and ext["finite_limit"]
    assert ext["limit"] == "0"
    refused = ca.extend_to_zero("th", 0.5)
    assert not refused["accepted"]
    assert "T0" in refused["refusal"]

"""End-to-end smoke tests of the Python bindings."""

import math
import os

import pytest

import srfid

OMEGA = 3.4753e15


def data_file(name):
    root = os.environ.get("SRFID_DATA_DIR")
    assert root, "SRFID_DATA_DIR must point at the data/ directory"
    return os.path.join(root, name)


def test_constants():
    assert srfid.constants.c == pytest.approx(2.99792458e8)
    ev = srfid.constants.angular_frequency_to_ev(OMEGA)
    assert srfid.constants.ev_to_angular_frequency(ev) == pytest.approx(OMEGA, rel=1e-14)


def test_free_space_tensor():
    g = srfid.g0_im_coincident(OMEGA)
    rows = g.entries()
    assert len(rows) == 3 and all(len(r) == 3 for r in rows)
    want = OMEGA / (6.0 * math.pi * srfid.constants.c)
    assert rows[0][0].real == pytest.approx(want, rel=1e-14)
    assert g[0, 1] == 0
    assert g.contract([0.0, 0.0, 1.0]).real == pytest.approx(want, rel=1e-14)


def test_sigma_free_coincidence():
    assert srfid.sigma_free(0.0, OMEGA) == 2.0
    assert srfid.sigma_free(1e-9, OMEGA) <= 2.0


def test_dielectric_table_and_exceptions():
    table = srfid.load_dielectric_table_file(data_file("argon_eps.csv"))
    eps = srfid.permittivity(table, OMEGA)
    assert eps.real > 1.0
    assert eps.imag > 0.0
    with pytest.raises(ValueError):
        srfid.permittivity(table, srfid.constants.ev_to_angular_frequency(40.0))
    with pytest.raises(OSError):
        srfid.load_dielectric_table_file("/no/such/table.csv")


def test_sigma_plane_transparent_reduces_to_free():
    for x in (0.0, 3e-9, 11e-9):
        assert srfid.sigma_plane(x, 0.5e-9, OMEGA, 2.25 + 0.0j) == srfid.sigma_free(x, OMEGA)


def test_scan_with_python_generator():
    grid = [i * 1e-9 for i in range(11)]
    curve = srfid.scan(
        lambda x: srfid.sigma_free(x, OMEGA),
        grid,
        "x_m",
        "free",
        OMEGA,
        "vacuum",
    )
    assert curve.parameter_name == "x_m"
    assert len(curve.samples) == len(grid)
    assert all(p.ok for p in curve.samples)
    assert curve.samples[0].sigma == 2.0
    sigmas = [p.sigma for p in curve.samples]
    assert sigmas == [srfid.sigma_free(x, OMEGA) for x in grid]


def test_scan_captures_generator_errors():
    def gen(x):
        if x > 1.5e-9:
            raise ValueError("synthetic")
        return srfid.sigma_free(x, OMEGA)

    curve = srfid.scan(gen, [1e-9, 2e-9], "x_m", "free", OMEGA, "vacuum")
    assert curve.samples[0].ok
    assert not curve.samples[1].ok
    assert "synthetic" in curve.samples[1].error


def test_rates_and_shift():
    debye = srfid.constants.debye
    em = srfid.Emitter(omega_t=OMEGA, dipole=[0.0, 0.0, debye])
    free = srfid.einstein_a_rate(em)
    assert free > 0.0
    im_sc = srfid.g1_planar_coincident_nonret(5e-9, OMEGA, 1.71 + 0.05j).imag_part()
    rates = srfid.purcell_rates(em, im_sc)
    assert rates.gamma_free == pytest.approx(free, rel=1e-14)
    assert rates.total() > free  # lossy surface enhances the decay

    grid = srfid.FrequencyGrid(1e15, 8e15)
    shift = srfid.frequency_shift(em, lambda w: im_sc, grid)
    assert math.isfinite(shift)
    assert shift < 0.0


def test_mie_and_sphere():
    rp = srfid.mie_rp(1, OMEGA, 1e-9, 1.71 + 0.05j)
    nr = srfid.mie_rp_nonret(1, OMEGA, 1e-9, 1.71 + 0.05j)
    assert rp == pytest.approx(nr, rel=1e-3)
    geom = srfid.SphereGeometry(radius=5e-9, height=0.5e-9, theta_sep=0.0)
    assert srfid.sigma_sphere(geom, OMEGA, 1.71 + 0.05j) == 2.0
    with pytest.raises(ArithmeticError):
        srfid.mie_rp_nonret(1, OMEGA, 1e-9, -2.0 + 0.0j)


def test_pv_shift_integral_matches_hand_antiderivative():
    a, b, pole = 1e15, 9e15, 2.2e15
    got = srfid.pv_shift_integral(lambda w: 1.0, pole, srfid.FrequencyGrid(a, b))
    analytic = 0.5 * (b * b - a * a) - pole * (b - a) + pole * pole * math.log(
        (b + pole) / (a + pole)
    )
    pref = -srfid.constants.mu0 / (math.pi * srfid.constants.hbar)
    assert got == pytest.approx(pref * analytic, rel=1e-8)

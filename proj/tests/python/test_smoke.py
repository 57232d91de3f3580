import cmath
import math

import pytest

import nalandau as nl


@pytest.fixture(scope="module")
def model():
    return nl.make_model()


@pytest.fixture(scope="module")
def table(model):
    return nl.spectrum_table(model, nl.required_nmax(3.0))


def test_model_defaults(model):
    assert model.epsB_eV == pytest.approx(4.87e-2)
    assert model.z == pytest.approx(-1e3)
    assert model.w == pytest.approx(1e3, rel=1e-12)
    assert model.B_T == 10.0


def test_levels(model):
    e = nl.level_energy(0, 1, model)
    assert e == pytest.approx(-1.4152136, rel=1e-6)
    assert nl.level_energy(0, -1, model) == pytest.approx(-e, abs=3e-3)
    assert nl.zero_mode_energy(model) == pytest.approx(-5e-4)
    with pytest.raises(ValueError):
        nl.level_energy(0, 2, model)


def test_spectrum_and_hall(table):
    assert table.n_max == 12
    levels = table.levels()
    assert len(levels) == 54 and len(table) == 54
    energies = [row[4] for row in levels]
    assert energies == sorted(energies)
    for lo, hi in zip(energies, reversed(energies)):
        assert lo == pytest.approx(-hi, abs=1e-12)
    assert nl.hall_sigma(table, 0.0) == 0.0
    assert nl.hall_sigma(table, 1.5) == 6.0
    assert nl.hall_sigma(table, -1.5) == -6.0
    assert nl.hall_sigma_finite_t(table, 1.5, 1e5) == pytest.approx(6.0, rel=1e-6)
    with pytest.raises(ValueError):
        nl.hall_sigma(table, 3.5)


def test_zeta_and_logdet():
    assert nl.hurwitz_zeta(2.0, 3.0) == pytest.approx(
        math.pi**2 / 6.0 - 1.0 - 0.25, rel=1e-12
    )
    assert nl.log_gamma(7.5) == pytest.approx(math.lgamma(7.5), rel=1e-13)
    y = 0.5 * 2.0 * (0.7 - 0.3)
    assert nl.level_logdet(0.3, 0.7, 2.0) == pytest.approx(
        math.log(2.0 * math.cosh(y)), rel=1e-12
    )
    assert nl.level_logdet(0.3, 0.7, 2.0, 50.0) == pytest.approx(
        nl.level_logdet(0.3, 0.7, 2.0), rel=1e-12
    )
    assert nl.occupation(0.7, 0.7, 2.0) == 0.5


def test_complex_zeta():
    got = nl.hurwitz_zeta(1.5 + 0j, 2.7 + 0j)
    assert isinstance(got, complex)
    assert got.real == pytest.approx(1.3401024235062452, rel=1e-11)
    assert abs(got.imag) < 1e-13


def test_matrix_elements(model):
    scale = nl.element_scale(2, 1, model)
    assert scale > 0
    diag = nl.landau_matrix_element(2, 1, 2, 1, model)
    assert abs(diag) < 1e-12 * scale
    zm = nl.landau_matrix_element(0, 0, 0, 0, model, ordering="suffix")
    assert zm == 0.0


def test_crossed(model):
    lv = nl.crossed_level(1, -1, model, eta=0.05, k=0.7)
    base = nl.level_energy(1, -1, model)
    assert lv["energy_int"] - base == pytest.approx(lv["shift_int"], rel=1e-12)
    assert lv["lambda_cr"] == pytest.approx(2.0 * model.z * base, abs=1e-9)
    assert abs(lv["first_order"]) < 1e-9
    assert not lv["warn_perturbative"]


def test_free_dispersion(model):
    modes = nl.free_dispersion(0.8, -0.6)
    assert sorted(branch for branch, _ in modes) == [-1, 1]
    for branch, energy in modes:
        assert energy == pytest.approx(-0.5 * 1.0 + branch * 1.0)


def test_version():
    assert nl.__version__ == "0.1.0"

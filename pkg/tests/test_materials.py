import math
import warnings

import numpy as np
import pytest
import scipy.constants as sc

from casimir_impedance.errors import DomainError, ModelError, PoleError, SchemaError
from casimir_impedance.materials import (
    MATERIALS_ENV,
    ComplexFrequency,
    Material,
    default_database_path,
    epsilon_longitudinal,
    epsilon_transverse,
    get_material,
    load_materials,
    longitudinal_wavevector,
    material_table,
    sqrt_upper,
)


def test_sqrt_upper_branch():
    z = np.array([-4.0, 4.0, -1j, 1j, -4 - 1e-300j, 0.0])
    s = sqrt_upper(z)
    assert np.all(s.imag >= 0)
    assert s[0] == 2j
    assert s[1] == 2.0
    assert np.allclose(s**2, z)
    assert sqrt_upper(-4 - 1e-300j) == pytest.approx(2j)


def test_sqrt_upper_real_result_nonnegative():
    s = sqrt_upper(np.array([9.0, 0.25]))
    assert np.all(s.real > 0) and np.all(s.imag == 0)


def test_complex_frequency_validation():
    with pytest.raises(DomainError):
        ComplexFrequency.imaginary(0.0)
    with pytest.raises(DomainError):
        ComplexFrequency.real(1.0 - 1j)
    assert ComplexFrequency.imaginary(2.0).value == 2j


def test_material_validation():
    with pytest.raises(ModelError):
        Material("x", -1.0, 0.0, 0.0)
    with pytest.raises(ModelError):
        Material("x", 1.0, -1.0, 0.0)
    with pytest.raises(ModelError):
        Material("x", 1.0, 0.0, sc.c)


class TestEpsilonTransverse:
    def test_high_frequency_transparency(self, gold):
        eps = epsilon_transverse(gold, ComplexFrequency.real(1e6 * gold.omega_p))
        assert abs(eps - 1) < 1e-11

    def test_plasma_frequency_zero(self, gold):
        m = gold.plasma()
        assert epsilon_transverse(m, ComplexFrequency.real(m.omega_p)) == 0

    def test_imaginary_plasma_frequency(self, gold):
        m = gold.plasma()
        assert epsilon_transverse(m, ComplexFrequency.imaginary(m.omega_p)) == 2

    def test_real_above_one_on_imaginary_axis(self, gold):
        eps = epsilon_transverse(gold, ComplexFrequency.imaginary(np.logspace(10, 18, 50)))
        assert np.all(eps.imag == 0) and np.all(eps.real > 1)

    def test_zero_frequency(self, gold):
        with pytest.raises(DomainError):
            epsilon_transverse(gold, ComplexFrequency.real(0.0))


class TestLongitudinal:
    def test_local_limit(self, gold):
        m = gold.with_fermi_velocity(0.0)
        w = ComplexFrequency.real(0.7 * m.omega_p + 0.1j * m.omega_p)
        Q, l = 3e7, 1e8 + 2e7j
        assert epsilon_longitudinal(m, Q, l, w) == pytest.approx(epsilon_transverse(m, w), rel=1e-14)

    def test_pole(self, gold):
        m = gold.plasma()
        w = 1.3 * m.omega_p
        Q = 0.4 * w / m.beta
        l = math.sqrt(w**2 / m.beta2 - Q**2)
        with pytest.raises(PoleError):
            epsilon_longitudinal(m, Q, l, ComplexFrequency.real(w))

    def test_dispersion_root_is_not_a_pole(self, gold):
        # beta^2 (Q^2 + l^2) = omega^2 - omega_p^2 is the zero of eps_L, not its pole
        m = gold.plasma()
        w = 1.3 * m.omega_p
        Q = 0.4 * w / m.beta
        l = math.sqrt((w**2 - m.omega_p**2) / m.beta2 - Q**2)
        assert abs(epsilon_longitudinal(m, Q, l, ComplexFrequency.real(w))) < 1e-12

    @pytest.mark.parametrize(
        "w",
        [ComplexFrequency.imaginary(0.5 * 2.1e16), ComplexFrequency.real(0.9 * 1.37e16 + 3e13j),
         ComplexFrequency.real(2.5 * 1.37e16)],
    )
    def test_root_residual(self, gold, w):
        Q = np.linspace(1e6, 5e8, 7)
        l = longitudinal_wavevector(gold, Q, w)
        assert np.all(l.imag >= 0)
        assert np.max(np.abs(epsilon_longitudinal(gold, Q, l, w))) < 1e-12

    def test_threshold(self, gold):
        m = gold.plasma()
        assert longitudinal_wavevector(m, 0.0, ComplexFrequency.real(m.omega_p)) == 0

    def test_closed_form_above_threshold(self, gold):
        m = gold.plasma()
        l = longitudinal_wavevector(m, 0.0, ComplexFrequency.real(1.5 * m.omega_p))
        assert l.imag == 0
        assert l.real == pytest.approx(math.sqrt(1.25) * m.omega_p / m.beta, rel=1e-14)

    def test_zero_fermi_velocity(self, gold):
        with pytest.raises(ModelError, match="local"):
            longitudinal_wavevector(gold.with_fermi_velocity(0.0), 0.0, ComplexFrequency.imaginary(1e15))


class TestDatabase:
    def test_bundled(self):
        mats = material_table()
        assert sorted(mats) == ["Al", "Au", "K"]
        au = mats["Au"]
        assert au.omega_p_ev == pytest.approx(9.0)
        assert au.gamma_ev == pytest.approx(0.035)
        assert au.v_fermi == 1.40e6
        assert au.lambda_p == pytest.approx(137.76e-9, rel=1e-4)
        assert all(m.source for m in mats.values())

    def test_empty_file_warns(self, tmp_path):
        p = tmp_path / "empty.ini"
        p.write_text("# nothing\n")
        with pytest.warns(UserWarning):
            assert load_materials(p) == []

    @pytest.mark.parametrize(
        "body, match",
        [
            ("gamma_ev = -0.1\nomega_p_ev = 1\nv_fermi_m_per_s = 1e6\nsource = x\n", "passivity"),
            ("gamma_ev = 0.1\nomega_p_ev = 0\nv_fermi_m_per_s = 1e6\nsource = x\n", "positive"),
            ("gamma_ev = 0.1\nomega_p_ev = 1\nv_fermi_m_per_s = 3e8\nsource = x\n", "v_fermi"),
            ("gamma_ev = 0.1\nomega_p_ev = 1\nsource = x\n", "missing"),
            ("gamma_ev = 0.1\nomega_p_ev = 1\nv_fermi_m_per_s = 1e6\nsource = x\ncolour = red\n", "unknown"),
        ],
    )
    def test_schema_errors_name_entry(self, tmp_path, body, match):
        p = tmp_path / "bad.ini"
        p.write_text("[Bad]\n" + body)
        with pytest.raises(SchemaError, match=match) as info:
            load_materials(p)
        assert "Bad" in str(info.value)

    def test_env_override(self, tmp_path, monkeypatch):
        p = tmp_path / "m.ini"
        p.write_text("[Na]\nomega_p_ev = 5.9\ngamma_ev = 0\nv_fermi_m_per_s = 1.07e6\nsource = test\n")
        monkeypatch.setenv(MATERIALS_ENV, str(p))
        assert default_database_path() == p
        assert list(material_table()) == ["Na"]

    def test_unknown_name_lists_available(self):
        with pytest.raises(SchemaError, match="Au"):
            get_material("Unobtainium")


def test_no_warnings_on_bundled_load():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        material_table()

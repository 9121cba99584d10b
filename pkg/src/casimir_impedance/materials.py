"""Dielectric response of free-electron metals.

Two response functions are provided: the local Drude transverse permittivity
and the hydrodynamic longitudinal permittivity, whose compressibility term
``beta**2 = 3/5 v_F**2`` introduces spatial dispersion. Everything here is
a pure function of immutable inputs and broadcasts over numpy arrays.

Material parameters are tabulated in eV (``hbar*omega_p``, ``hbar*gamma``)
and m/s (``v_F``) in a small INI database; :func:`load_materials` converts
them to SI on load.
"""

from __future__ import annotations

import configparser
import enum
import math
import os
import warnings
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np
import scipy.constants as sc

from .errors import DomainError, ModelError, PoleError, SchemaError

#: Environment variable overriding the bundled material database.
MATERIALS_ENV = "CASIMIR_MATERIALS"

_EV = sc.electron_volt / sc.hbar  # rad/s per eV of hbar*omega


@dataclass(frozen=True)
class Constants:
    """CODATA values used throughout (SI units)."""

    hbar: float = sc.hbar
    c: float = sc.c


CONSTANTS = Constants()


def sqrt_upper(z):
    """Complex square root on the branch ``Im >= 0`` (``Re >= 0`` when real).

    This is the single branch rule used for every wavevector in the package:
    waves decay (or radiate) into the medium they live in.
    """
    s = np.sqrt(np.asarray(z, dtype=complex))
    flip = (s.imag < 0) | ((s.imag == 0) & (s.real < 0))
    s = np.where(flip, -s, s)
    return s[()] if s.ndim == 0 else s


class Axis(enum.Enum):
    REAL = "real-axis"
    IMAGINARY = "imaginary-axis"


@dataclass(frozen=True)
class ComplexFrequency:
    """Angular frequency (rad/s), possibly complex, tagged with its axis.

    On the imaginary axis ``value = i*xi`` with ``xi > 0``. On the real axis
    the value may carry a non-negative imaginary offset (regulator).
    """

    value: complex | np.ndarray
    axis: Axis = Axis.REAL

    def __post_init__(self):
        v = np.asarray(self.value, dtype=complex)
        if self.axis is Axis.IMAGINARY:
            if np.any(v.real != 0) or np.any(v.imag <= 0):
                raise DomainError("imaginary-axis frequency must be i*xi with xi > 0")
        elif np.any(v.imag < 0):
            raise DomainError("real-axis frequency must have Im(omega) >= 0")
        object.__setattr__(self, "value", v[()] if v.ndim == 0 else v)

    @classmethod
    def real(cls, omega) -> ComplexFrequency:
        return cls(np.asarray(omega, dtype=complex), Axis.REAL)

    @classmethod
    def imaginary(cls, xi) -> ComplexFrequency:
        return cls(1j * np.asarray(xi, dtype=float), Axis.IMAGINARY)


@dataclass(frozen=True)
class Material:
    """Free-electron metal.

    Parameters
    ----------
    name : str
    omega_p : float
        Plasma frequency in rad/s.
    gamma : float
        Damping rate in rad/s; zero gives the plasma model.
    v_fermi : float
        Fermi velocity in m/s; zero switches nonlocality off.
    source : str
        Provenance of the numbers.
    """

    name: str
    omega_p: float
    gamma: float
    v_fermi: float
    source: str = ""

    def __post_init__(self):
        if not (self.omega_p > 0 and math.isfinite(self.omega_p)):
            raise ModelError(f"{self.name}: omega_p must be positive, got {self.omega_p}")
        if not (self.gamma >= 0 and math.isfinite(self.gamma)):
            raise ModelError(f"{self.name}: gamma must be >= 0 (passivity), got {self.gamma}")
        if not (0 <= self.v_fermi < CONSTANTS.c):
            raise ModelError(f"{self.name}: need 0 <= v_fermi < c, got {self.v_fermi}")

    @classmethod
    def from_ev(cls, name, omega_p_ev, gamma_ev, v_fermi, source="") -> Material:
        return cls(name, omega_p_ev * _EV, gamma_ev * _EV, v_fermi, source)

    @property
    def beta(self) -> float:
        return math.sqrt(0.6) * self.v_fermi

    @property
    def beta2(self) -> float:
        return 0.6 * self.v_fermi**2

    @property
    def lambda_p(self) -> float:
        """Plasma wavelength ``2 pi c / omega_p`` in metres."""
        return 2 * math.pi * CONSTANTS.c / self.omega_p

    @property
    def omega_p_ev(self) -> float:
        return self.omega_p / _EV

    @property
    def gamma_ev(self) -> float:
        return self.gamma / _EV

    def plasma(self) -> Material:
        """Same metal with the damping switched off."""
        return replace(self, gamma=0.0)

    def with_fermi_velocity(self, v_fermi) -> Material:
        return replace(self, v_fermi=v_fermi)


def epsilon_transverse(m: Material, w: ComplexFrequency):
    """Drude permittivity ``1 - omega_p**2 / (omega (omega + i gamma))``.

    Real and larger than one on the imaginary axis.
    """
    omega = np.asarray(w.value, dtype=complex)
    if np.any(omega == 0):
        raise DomainError("Drude permittivity has a pole at omega = 0")
    return 1 - m.omega_p**2 / (omega * (omega + 1j * m.gamma))


def _longitudinal_denominator(m, Q, l, omega):
    return omega**2 + 1j * omega * m.gamma - m.beta2 * (Q**2 + l**2)


def epsilon_longitudinal(m: Material, Q, l, w: ComplexFrequency):
    """Hydrodynamic longitudinal permittivity.

    ``1 - omega_p**2 / (omega**2 + i omega gamma - beta**2 (Q**2 + l**2))``

    A denominator that vanishes to within round-off of its terms (or below
    1e-300 in units of ``omega_p**2``) raises :class:`PoleError`.
    """
    omega = np.asarray(w.value, dtype=complex)
    Q = np.asarray(Q, dtype=complex)
    l = np.asarray(l, dtype=complex)
    den = _longitudinal_denominator(m, Q, l, omega)
    scale = np.abs(omega) ** 2 + np.abs(omega * m.gamma) + m.beta2 * np.abs(Q**2 + l**2)
    tiny = (np.abs(den) <= 1e-300 * m.omega_p**2) | (np.abs(den) <= 8 * np.finfo(float).eps * scale)
    if np.any(tiny):
        raise PoleError("hydrodynamic longitudinal permittivity: vanishing denominator")
    return 1 - m.omega_p**2 / den


def longitudinal_wavevector(m: Material, Q, w: ComplexFrequency):
    """Root ``l`` of ``epsilon_longitudinal(m, Q, l, w) = 0``.

    ``l**2 = (omega**2 + i omega gamma - omega_p**2) / beta**2 - Q**2``, taken on
    the ``Im(l) >= 0`` branch (plasmon decaying into the metal).
    """
    if m.v_fermi == 0:
        raise ModelError(
            f"{m.name}: v_fermi = 0 has no longitudinal wave; use the local (Drude) model"
        )
    omega = np.asarray(w.value, dtype=complex)
    Q = np.asarray(Q, dtype=complex)
    l2 = (omega**2 + 1j * omega * m.gamma - m.omega_p**2) / m.beta2 - Q**2
    return sqrt_upper(l2)


# -- database ---------------------------------------------------------------

_FIELDS = ("omega_p_ev", "gamma_ev", "v_fermi_m_per_s", "source")


def _parse_record(section, items) -> Material:
    unknown = set(items) - set(_FIELDS) - {"name"}
    if unknown:
        raise SchemaError(f"material {section!r}: unknown field(s) {sorted(unknown)}")
    missing = [f for f in _FIELDS if f not in items]
    if missing:
        raise SchemaError(f"material {section!r}: missing field(s) {missing}")
    if "name" in items and items["name"] != section:
        raise SchemaError(f"material {section!r}: name field {items['name']!r} disagrees")
    try:
        wp, g, vf = (float(items[f]) for f in _FIELDS[:3])
    except ValueError as exc:
        raise SchemaError(f"material {section!r}: {exc}") from None
    if not wp > 0:
        raise SchemaError(f"material {section!r}: omega_p_ev must be positive")
    if not g >= 0:
        raise SchemaError(f"material {section!r}: gamma_ev must be >= 0 (passivity)")
    if not 0 <= vf < CONSTANTS.c:
        raise SchemaError(f"material {section!r}: v_fermi_m_per_s must lie in [0, c)")
    return Material.from_ev(section, wp, g, vf, items["source"])


def load_materials(path) -> list[Material]:
    """Read and validate a material database file.

    Raises :class:`SchemaError` naming the offending entry.
    """
    text = Path(path).read_text(encoding="utf-8")
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise SchemaError(f"{path}: {exc}") from None
    if not parser.sections():
        warnings.warn(f"material database {path} contains no materials", stacklevel=2)
    return [_parse_record(s, dict(parser.items(s))) for s in parser.sections()]


def default_database_path() -> Path:
    override = os.environ.get(MATERIALS_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files(__package__).joinpath("data/materials.ini")))


def material_table(path=None) -> dict[str, Material]:
    mats = load_materials(path or default_database_path())
    return {m.name: m for m in mats}


def get_material(name: str, path=None) -> Material:
    table = material_table(path)
    try:
        return table[name]
    except KeyError:
        raise SchemaError(
            f"unknown material {name!r}; available: {', '.join(sorted(table)) or '(none)'}"
        ) from None

"""Surface impedances and reflection amplitudes of planar walls.

Impedances are dimensionless (Gaussian convention). Every normal
wavevector uses :func:`~casimir_impedance.materials.sqrt_upper`, so the
same formulas serve real frequencies, the regulated real axis and the
imaginary axis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    ModelError,
    ResonanceError,
    SingularModeError,
    SingularResponseError,
)
from .materials import (
    CONSTANTS,
    ComplexFrequency,
    Material,
    epsilon_transverse,
    longitudinal_wavevector,
    sqrt_upper,
)


class Polarization(enum.Enum):
    S = "s"
    P = "p"


@dataclass(frozen=True)
class ModePoint:
    """One ``(Q, omega)`` mode with its vacuum wavevectors.

    ``q = omega / c`` and ``k0 = sqrt(q**2 - Q**2)`` on the ``Im >= 0`` branch.
    Use :meth:`at` to build one.
    """

    Q: np.ndarray | float
    w: ComplexFrequency
    q: np.ndarray | complex
    k0: np.ndarray | complex

    @classmethod
    def at(cls, Q, w: ComplexFrequency) -> ModePoint:
        Q = np.asarray(Q, dtype=float)
        q = np.asarray(w.value, dtype=complex) / CONSTANTS.c
        k0 = sqrt_upper(q**2 - Q**2)
        return cls(Q[()] if Q.ndim == 0 else Q, w, q[()] if q.ndim == 0 else q, k0)


@dataclass(frozen=True)
class MediumKinematics:
    """Wavevectors inside a medium: transverse ``ka`` and, if nonlocal, ``l``."""

    ka: np.ndarray | complex
    l: np.ndarray | complex | None = None


@dataclass(frozen=True)
class ReflectionPair:
    r1: np.ndarray | complex
    r2: np.ndarray | complex
    pol: Polarization

    @property
    def product(self):
        return self.r1 * self.r2


def medium_kinematics(eps, mp: ModePoint, material: Material | None = None) -> MediumKinematics:
    ka = sqrt_upper(eps * mp.q**2 - mp.Q**2)
    l = None
    if material is not None and material.v_fermi > 0:
        l = longitudinal_wavevector(material, mp.Q, mp.w)
    return MediumKinematics(ka, l)


def vacuum_impedance(pol: Polarization, mp: ModePoint):
    """``q/k0`` for s, ``k0/q`` for p."""
    if np.any(mp.k0 == 0):
        raise SingularModeError("grazing mode k0 = 0 has no vacuum impedance")
    if pol is Polarization.S:
        return mp.q / mp.k0
    return mp.k0 / mp.q


def medium_impedance_local(pol: Polarization, eps, mp: ModePoint):
    """``q/ka`` for s, ``ka/(eps q)`` for p."""
    eps = np.asarray(eps, dtype=complex)
    ka = medium_kinematics(eps, mp).ka
    if pol is Polarization.S:
        if np.any(ka == 0):
            raise SingularResponseError("ka = 0: s impedance is singular")
        return mp.q / ka
    if np.any(eps == 0):
        raise SingularResponseError("eps = 0: p impedance is singular")
    return ka / (eps * mp.q)


def reflection_from_impedance(pol: Polarization, Za, Z0):
    """Reflection amplitude from the wall and vacuum impedances.

    s: ``(Za - Z0)/(Za + Z0)``; p: ``(Z0 - Za)/(Z0 + Za)``.
    """
    den = Za + Z0
    if np.any(den == 0):
        raise ResonanceError("Za + Z0 = 0: surface-mode pole")
    if pol is Polarization.S:
        return (Za - Z0) / den
    return (Z0 - Za) / den


def fresnel(pol: Polarization, eps, mp: ModePoint):
    """Fresnel amplitude of a local half-space of permittivity ``eps``."""
    eps = np.asarray(eps, dtype=complex)
    ka = medium_kinematics(eps, mp).ka
    if pol is Polarization.S:
        num, den = mp.k0 - ka, mp.k0 + ka
    else:
        num, den = eps * mp.k0 - ka, eps * mp.k0 + ka
    if np.any(den == 0):
        raise ResonanceError(f"Fresnel {pol.value} denominator vanished")
    return num / den


def _nonlocal_parts(m: Material, mp: ModePoint):
    eps = epsilon_transverse(m, mp.w)
    if np.any(eps == 0):
        raise SingularResponseError("eps_t = 0: p impedance is singular")
    kin = medium_kinematics(eps, mp, m)
    if np.any(kin.l == 0):
        raise SingularModeError("longitudinal threshold l = 0")
    # Longitudinal correction from the zero-normal-current boundary condition.
    corr = (eps - 1) * mp.Q**2 / kin.l
    return eps, kin.ka, corr


def nonlocal_impedance_p(m: Material, mp: ModePoint):
    """p impedance of a hydrodynamic metal.

    ``Z_p = [ka - (eps_t - 1) Q**2 / l] / (eps_t q)`` with ``Im(l) >= 0``;
    the longitudinal term increases the impedance on the imaginary axis.
    """
    eps, ka, corr = _nonlocal_parts(m, mp)
    return (ka - corr) / (eps * mp.q)


def nonlocal_reflection_p(m: Material, mp: ModePoint):
    """``(eps_t k0 - ka + C)/(eps_t k0 + ka - C)`` with ``C = (eps_t - 1) Q**2 / l``."""
    eps, ka, corr = _nonlocal_parts(m, mp)
    den = eps * mp.k0 + ka - corr
    if np.any(den == 0):
        raise ResonanceError("nonlocal p reflection denominator vanished")
    return (eps * mp.k0 - ka + corr) / den


class WallKind(enum.Enum):
    PERFECT = "perfect"
    LOCAL = "local"
    PLASMA = "plasma"
    NONLOCAL = "nonlocal"
    FIXED = "fixed"


@dataclass(frozen=True)
class WallSpec:
    """Reflection model of one wall.

    ``LOCAL`` is the Drude metal, ``PLASMA`` the same with ``gamma = 0``,
    ``NONLOCAL`` the hydrodynamic metal, ``FIXED`` a frequency independent
    amplitude (``r_s``, ``r_p``).
    """

    kind: WallKind
    material: Material | None = None
    r_s: complex = 0j
    r_p: complex = 0j

    def __post_init__(self):
        needs = self.kind in (WallKind.LOCAL, WallKind.PLASMA, WallKind.NONLOCAL)
        if needs and self.material is None:
            raise ModelError(f"{self.kind.value} wall needs a material")

    @classmethod
    def perfect(cls):
        return cls(WallKind.PERFECT)

    @classmethod
    def local(cls, m: Material):
        return cls(WallKind.LOCAL, m)

    @classmethod
    def plasma(cls, m: Material):
        return cls(WallKind.PLASMA, m)

    @classmethod
    def nonlocal_(cls, m: Material):
        return cls(WallKind.NONLOCAL, m)

    @classmethod
    def fixed(cls, r_s, r_p=None):
        return cls(WallKind.FIXED, None, complex(r_s), complex(r_s if r_p is None else r_p))

    @property
    def frequency_independent(self) -> bool:
        return self.kind in (WallKind.PERFECT, WallKind.FIXED)

    def describe(self) -> str:
        if self.kind is WallKind.FIXED:
            return f"fixed(r_s={self.r_s}, r_p={self.r_p})"
        if self.material is None:
            return self.kind.value
        return f"{self.kind.value}:{self.material.name}"


def wall_reflection(wall: WallSpec, pol: Polarization, mp: ModePoint):
    """Reflection amplitude of a single wall at ``mp``."""
    shape = np.shape(mp.k0)
    if wall.kind is WallKind.PERFECT:
        return np.full(shape, -1.0 if pol is Polarization.S else 1.0, dtype=complex)[()]
    if wall.kind is WallKind.FIXED:
        return np.full(shape, wall.r_s if pol is Polarization.S else wall.r_p, dtype=complex)[()]
    m = wall.material
    if wall.kind is WallKind.PLASMA:
        m = m.plasma()
    if wall.kind is WallKind.NONLOCAL and pol is Polarization.P and m.v_fermi > 0:
        return nonlocal_reflection_p(m, mp)
    # s never couples to the plasmon; v_F = 0 degenerates to the local metal.
    return fresnel(pol, epsilon_transverse(m, mp.w), mp)


def wall_reflections(wall1: WallSpec, wall2: WallSpec, pol: Polarization, mp: ModePoint) -> ReflectionPair:
    return ReflectionPair(wall_reflection(wall1, pol, mp), wall_reflection(wall2, pol, mp), pol)

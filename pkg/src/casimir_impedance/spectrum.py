"""Cavity mode solutions, 1D Green's functions and mode density.

The gap occupies ``0 <= z <= L``; wall 1 sits at ``z = 0`` and wall 2 at
``z = L``. For one polarization and parallel wavevector the tangential field
obeys a 1D wave equation with normal wavevector ``k``. The two solutions
that satisfy the reflection conditions at each wall are

    E_lower(z) = exp(-ikz) + r1 exp(ikz)
    E_upper(z) = exp(ik(z-L)) + r2 exp(-ik(z-L))

and their Wronskian ``E_lower E_upper' - E_lower' E_upper`` is

    W = 2ik exp(-ikL) (1 - r1 r2 exp(2ikL)),

independent of ``z``. The Green's function is
``G(z, z') = E_lower(z_<) E_upper(z_>) / W``, normalised so that without
mirrors it reduces to the outgoing ``exp(ik|z-z'|)/(2ik)``. The
magnetic-type partner flips the sign of both amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ModelError, ResonanceError
from .response import Polarization


@dataclass(frozen=True)
class Cavity:
    L: float

    def __post_init__(self):
        if not self.L > 0:
            raise ModelError(f"gap length must be positive, got {self.L}")

    @property
    def z1(self) -> float:
        return 0.0

    @property
    def z2(self) -> float:
        return self.L


@dataclass(frozen=True)
class DensityOfStates:
    """Mode density per unit ``k**2`` for both polarizations (metres)."""

    rho_s: np.ndarray | float
    rho_p: np.ndarray | float
    k: np.ndarray | complex
    Q: np.ndarray | float

    @property
    def total(self):
        return self.rho_s + self.rho_p


def _check_z(z, L):
    z = np.asarray(z, dtype=float)
    if np.any(z < 0) or np.any(z > L):
        raise ModelError("positions must lie inside the gap 0 <= z <= L")


def cavity_fields(r1, r2, k, L, z):
    """``(E_lower(z), E_upper(z))`` for wall amplitudes ``r1``, ``r2``."""
    _check_z(z, L)
    e_lower = np.exp(-1j * k * z) + r1 * np.exp(1j * k * z)
    e_upper = np.exp(1j * k * (z - L)) + r2 * np.exp(-1j * k * (z - L))
    return e_lower, e_upper


def wronskian(r1, r2, k, L):
    return 2j * k * np.exp(-1j * k * L) * (1 - r1 * r2 * np.exp(2j * k * L))


def green_function(r1, r2, k, L, z, zp, field="E"):
    """Cavity Green's function ``G(z, z')``.

    ``field="B"`` gives the magnetic-type partner, obtained by flipping the
    sign of both reflection amplitudes.
    """
    if field == "B":
        r1, r2 = -np.asarray(r1), -np.asarray(r2)
    elif field != "E":
        raise ValueError(f"field must be 'E' or 'B', got {field!r}")
    W = wronskian(r1, r2, k, L)
    if np.any(np.abs(W) <= 1e-14 * np.abs(2 * k)):
        raise ResonanceError("vanishing Wronskian: cavity resonance, add Im(k) > 0")
    z_lo, z_hi = np.minimum(z, zp), np.maximum(z, zp)
    e_lower, _ = cavity_fields(r1, r2, k, L, z_lo)
    _, e_upper = cavity_fields(r1, r2, k, L, z_hi)
    return e_lower * e_upper / W


def local_density_from_green(r1, r2, k, L, z):
    """``-(1/2 pi) Im[G_E(z,z) + G_B(z,z)]``, the Green's function route."""
    g = green_function(r1, r2, k, L, z, z, "E") + green_function(r1, r2, k, L, z, z, "B")
    return -g.imag / (2 * np.pi)


def mode_density(pol: Polarization, r1, r2, k, L):
    """Closed-form mode density per unit ``k**2``.

    ``Re[(1 + R)/(k (1 - R))] / (2 pi)`` with ``R = r1 r2 exp(2ikL)``. The
    regulator enters through ``Im(k) > 0``; the formula is the same for
    both polarizations once their own amplitudes are supplied.
    """
    k = np.asarray(k, dtype=complex)
    if np.any(k.imag <= 0):
        raise ModelError("mode density needs Im(k) > 0 (k + i0+)")
    R = r1 * r2 * np.exp(2j * k * L)
    den = 1 - R
    if np.any(np.abs(den) < 1e-14):
        raise ResonanceError(f"{pol.value}: 1 - r1 r2 exp(2ikL) vanished; increase Im(k)")
    return ((1 + R) / (k * den)).real / (2 * np.pi)


def density_of_states(rs1, rs2, rp1, rp2, k, L, Q) -> DensityOfStates:
    return DensityOfStates(
        mode_density(Polarization.S, rs1, rs2, k, L),
        mode_density(Polarization.P, rp1, rp2, k, L),
        k,
        Q,
    )

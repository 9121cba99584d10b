"""Independent reference implementations used by the tests.

Nothing here imports the package. The Lifshitz oracle is a fixed-grid
trapezoid rule on a mapped (k, xi) grid with its own Drude permittivity and
Fresnel amplitudes; it is slow and unsophisticated on purpose.
"""

import numpy as np

HBAR = 1.054571817e-34
C = 299792458.0
EV = 1.602176634e-19


def drude_eps_imag(xi, omega_p, gamma):
    """Drude permittivity at imaginary frequency ``i*xi``."""
    return 1.0 + omega_p**2 / (xi * (xi + gamma))


def fresnel_imag(eps, k, xi):
    """Fresnel amplitudes (r_s, r_p) at imaginary frequency; everything is real."""
    kap = np.sqrt(k**2 + (xi / C) ** 2)
    kap_m = np.sqrt(k**2 + eps * (xi / C) ** 2)
    return (kap - kap_m) / (kap + kap_m), (eps * kap - kap_m) / (eps * kap + kap_m)


def _mapped(n, scale, power):
    # x = scale * (t / (1 - t))**power on t in [0, 1); trapezoid weights
    t = np.linspace(0.0, 1.0, n + 1)[:-1]
    h = t[1] - t[0]
    x = scale * (t / (1.0 - t)) ** power
    dx = scale * power * t ** (power - 1) / (1.0 - t) ** (power + 1)
    w = np.full(n, h) * dx
    w[0] *= 0.5
    return x, w


def lifshitz_pressure(L, omega_p=None, gamma=0.0, n=1200, chunk=200):
    """Lifshitz pressure in Pa between two identical Drude half-spaces.

    ``omega_p=None`` gives perfect mirrors. The integral is done over
    u = 2kL and v = 2 xi L / c with the trapezoid rule on mapped grids.
    """
    u, wu = _mapped(n, 2.0, 2)
    v, wv = _mapped(n, 2.0, 2)
    v = v[1:]  # the xi = 0 line has zero weight under the power-2 map
    wv = wv[1:]
    total = 0.0
    for i0 in range(0, v.size, chunk):
        vv = v[i0:i0 + chunk, None]
        ww = wv[i0:i0 + chunk, None]
        uu = u[None, :]
        w = np.sqrt(uu**2 + vv**2)
        if omega_p is None:
            rs2 = rp2 = np.ones_like(w)
        else:
            xi = C * vv / (2 * L)
            rs, rp = fresnel_imag(drude_eps_imag(xi, omega_p, gamma), uu / (2 * L), xi)
            rs2, rp2 = rs**2, rp**2
        e = np.exp(-w)
        f = rs2 * e / (1 - rs2 * e) + rp2 * e / (1 - rp2 * e)
        total += np.sum(ww * wu[None, :] * uu * w * f)
    return -HBAR * C / (32 * np.pi**2 * L**4) * total


def casimir_perfect(L):
    return -np.pi**2 * HBAR * C / (240 * L**4)


def gold_drude():
    """Drude gold parameters (omega_p, gamma) in rad/s, set independently of the database."""
    return 9.0 * EV / HBAR, 0.035 * EV / HBAR


def lambda_p(omega_p):
    return 2 * np.pi * C / omega_p


def hydrodynamic_rp(eps_t, k0, ka, l, Q, q):
    """p reflection of a hydrodynamic half-space by solving the boundary-value problem.

    Unknowns (r, t, a): reflected H_y, transmitted transverse H_y and the
    amplitude of the longitudinal field a*(Q, 0, l). Conditions at z = 0:
    continuity of H_y and E_x, and zero normal free-electron current.
    Vectorised over the inputs; returns r.
    """
    eps_t, k0, ka, l, Q, q = np.broadcast_arrays(*(np.asarray(v, dtype=complex) for v in (eps_t, k0, ka, l, Q, q)))
    n = eps_t.size
    A = np.zeros((n, 3, 3), dtype=complex)
    b = np.zeros((n, 3), dtype=complex)
    e, k0, ka, l, Q, q = (v.ravel() for v in (eps_t, k0, ka, l, Q, q))
    # H_y: 1 + r = t
    A[:, 0] = np.stack([np.ones(n), -np.ones(n), np.zeros(n)], axis=1)
    b[:, 0] = -1
    # E_x: k0 (1 - r) / q = t ka / (q e) + a Q
    A[:, 1] = np.stack([-k0 / q, -ka / (q * e), -Q], axis=1)
    b[:, 1] = -k0 / q
    # J_z: (e - 1) E_z^T + (eps_L - 1) E_z^L = 0 with eps_L = 0 on the plasmon
    A[:, 2] = np.stack([np.zeros(n), -(e - 1) * Q / (q * e), -l], axis=1)
    return np.linalg.solve(A, b[..., None])[:, 0, 0].reshape(eps_t.shape)

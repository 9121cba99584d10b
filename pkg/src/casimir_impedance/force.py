"""Casimir pressure between two planar walls from their reflection amplitudes.

Sign convention: negative pressure is attraction.

With ``R_a = r1_a r2_a exp(2ikL)`` for polarization ``a``, the pressure is the
momentum flux that reaches wall 2 from the gap minus the flux from the free
vacuum behind it. Setting ``r2 = 0`` reproduces the free-vacuum term, and the
difference of the two mode densities is ``2 Re[R/(1 - R)]``. Multiplied by the
zero-point occupancy 1/2 and the per-mode flux ``hbar c k**2 / q``, this gives

    P = hbar c / (2 pi**2) Re int dQ Q int_C dk (k**2/q) sum_a R_a/(1 - R_a)

where the contour ``C`` runs from ``k = iQ`` (evanescent, ``0 < q < Q``) to
``k = 0`` and then along the real axis. Written as a frequency integral,
``dk k**2/q = dq k``, so

    P = hbar c / (2 pi**2) Re int_0^oo dq F(q),    F(q) = int_0^oo dQ Q k g(k, Q).

``F`` is analytic in the first quadrant of ``q``, and two evaluators are
built on that fact:

* :func:`force_imaginary_axis` rotates onto ``q = i xi/c``. There
  ``k = i kappa``, the amplitudes are real and the integrand is smooth and
  exponentially cut off. This is the Lifshitz formula at zero temperature.
* :func:`force_real_contour` integrates ``F`` along ``Im q = eta`` from
  ``q = 0`` to a cutoff ``q0``, which resolves the cavity resonances on the
  real axis at finite ``eta``. It then closes upward along ``Re q = q0``. The
  closing leg is an exact deformation for walls that become transparent at
  high frequency, and the Abel sum of the oscillatory tail for
  frequency-independent walls. The missing piece ``[0, i eta]`` is
  ``O(eta)``, so results at several ``eta`` are extrapolated linearly to zero.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import CasimirError, ConvergenceError, ModelError, UnsupportedFeatureError
from .materials import CONSTANTS, ComplexFrequency, Material, sqrt_upper
from .quadrature import gauss_kronrod
from .response import ModePoint, Polarization, WallKind, WallSpec, wall_reflection

_POLS = (Polarization.S, Polarization.P)
#: ``int_0^oo u**3 * 2 e^-u / (1 - e^-u) du`` for two perfect mirrors.
_IDEAL_INTEGRAL = 2 * math.pi**4 / 15
DEFAULT_ETA_L = (1e-3, 3e-4, 1e-4)


class Route(enum.Enum):
    REAL = "real-contour"
    IMAGINARY = "imaginary-axis"


@dataclass(frozen=True)
class ForceConfig:
    """Inputs of one pressure evaluation.

    ``eta`` is the regulator ``Im(k)`` in 1/m for the real route. ``None``
    uses the ladder ``eta*L = 1e-3, 3e-4, 1e-4`` and extrapolates to zero.
    A tuple gives a custom ladder, and a single float gives one
    unextrapolated evaluation. ``u_max`` truncates ``2 kappa L`` on the
    imaginary axis. ``q_cut`` (in units of ``1/L``) is where the real route
    leaves the real axis; ``None`` picks it automatically.
    """

    wall1: WallSpec
    wall2: WallSpec
    L: float
    route: Route = Route.IMAGINARY
    tol: float = 1e-6
    eta: float | tuple | None = None
    u_max: float = 60.0
    q_cut: float | None = None

    def __post_init__(self):
        if not self.L > 0:
            raise ModelError(f"gap must be positive, got {self.L}")
        if not 0 < self.tol <= 1e-2:
            raise ModelError(f"tol must lie in (0, 1e-2], got {self.tol}")
        if self.eta is not None and np.any(np.asarray(self.eta) <= 0):
            raise ModelError("eta must be positive")

    @property
    def eta_ladder(self) -> tuple:
        if self.eta is None:
            return tuple(e / self.L for e in DEFAULT_ETA_L)
        return tuple(np.atleast_1d(np.asarray(self.eta, dtype=float)))


@dataclass(frozen=True)
class ForceResult:
    pressure: float
    abs_error: float
    eta_casimir: float
    evaluations: int
    L: float = float("nan")
    route: Route = Route.IMAGINARY


@dataclass(frozen=True)
class PercentDifference:
    value: float
    error: float
    local: ForceResult
    nonlocal_: ForceResult

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class SweepRow:
    L: float
    L_over_lambda_p: float
    F_local: float
    F_nonlocal: float
    delta_percent: float
    delta_error: float
    error: str | None = None


@dataclass
class SweepTable:
    material: Material
    tol: float
    route: Route
    rows: list[SweepRow] = field(default_factory=list)

    @property
    def failed(self) -> list[SweepRow]:
        return [r for r in self.rows if r.error is not None]


def casimir_ideal(L) -> float:
    """Perfect-mirror pressure ``-pi**2 hbar c / (240 L**4)`` in Pa."""
    return -math.pi**2 * CONSTANTS.hbar * CONSTANTS.c / (240 * np.asarray(L, dtype=float) ** 4)


def occupancy(k=None, n_thermal=0):
    """Mode occupation ``N_k + 1/2``; only zero temperature is supported.

    The factor 1/2 combines with the difference of the gap and free-vacuum
    mode densities (``2 Re[R/(1-R)]``) into the ``hbar c / 2 pi**2``
    prefactor of the pressure.
    """
    if np.any(np.asarray(n_thermal) != 0):
        raise UnsupportedFeatureError("finite temperature (N_k != 0) is not supported")
    return 0.5 if k is None else np.full(np.shape(k), 0.5)[()]


def _round_trip(wall1, wall2, Q, omega, k, L):
    """``R_s, R_p = r1 r2 exp(2ikL)`` at wavevector ``Q`` and frequency ``omega``."""
    mp = ModePoint(Q, omega, omega.value / CONSTANTS.c, k)
    phase = np.exp(2j * k * L)
    return [wall_reflection(wall1, pol, mp) * wall_reflection(wall2, pol, mp) * phase for pol in _POLS]


def _geometric(R):
    return R / (1 - R)


# -- imaginary axis -----------------------------------------------------------


def _imag_inner(cfg: ForceConfig, u: float, epsrel: float):
    """``int_0^1 dt sum_a R_a/(1-R_a)`` at ``2 kappa L = u``."""
    L = cfg.L
    kappa = u / (2 * L)
    e = math.exp(-u)

    def f(t):
        xi = CONSTANTS.c * kappa * t
        Q = kappa * np.sqrt(1 - t * t)
        w = ComplexFrequency.imaginary(xi)
        mp = ModePoint(Q, w, 1j * xi / CONSTANTS.c, 1j * kappa + 0 * t)
        out = 0.0
        for pol in _POLS:
            R = (wall_reflection(cfg.wall1, pol, mp) * wall_reflection(cfg.wall2, pol, mp)).real * e
            if np.any(R >= 1):
                raise ModelError("r1 r2 exp(-2 kappa L) >= 1: walls are not passive")
            out = out + R / (1 - R)
        return out

    if cfg.wall1.frequency_independent and cfg.wall2.frequency_independent:
        # Constant amplitudes: the t-integrand is flat.
        v = f(np.array([0.5]))[0]
        return v, 0.0, 1
    return gauss_kronrod(f, 0.0, 1.0, epsrel=epsrel, epsabs=1e-300)


def force_imaginary_axis(cfg: ForceConfig) -> ForceResult:
    """Pressure from the imaginary-frequency (Lifshitz) form.

    With ``u = 2 kappa L`` and ``xi = c kappa t``,
    ``P = -hbar c / (32 pi**2 L**4) int_0^umax du u**3 int_0^1 dt sum_a R_a/(1-R_a)``.
    """
    inner_rel = cfg.tol / 20
    counter = [0]
    worst = [0.0]

    def outer(us):
        vals = np.empty(us.size)
        for i, u in enumerate(us):
            v, err, n = _imag_inner(cfg, float(u), inner_rel)
            vals[i] = u**3 * v
            counter[0] += n
            if v != 0:
                worst[0] = max(worst[0], err / abs(v))
        return vals

    try:
        total, err, _ = gauss_kronrod(
            outer, 0.0, cfg.u_max, points=(1.0, 4.0, 10.0, 25.0), epsrel=cfg.tol / 4, epsabs=1e-300
        )
    except ConvergenceError as exc:
        raise ConvergenceError(
            f"imaginary-axis quadrature did not converge at tol={cfg.tol}: {exc}; "
            "try a looser tol",
            exc.estimate,
            exc.abs_error,
        ) from None
    err = err + worst[0] * abs(total)
    ideal = casimir_ideal(cfg.L)
    ratio = total / _IDEAL_INTEGRAL
    return ForceResult(
        pressure=float(ideal * ratio),
        abs_error=float(abs(ideal) * err / _IDEAL_INTEGRAL),
        eta_casimir=float(ratio),
        evaluations=counter[0],
        L=cfg.L,
        route=Route.IMAGINARY,
    )


# -- real contour -----------------------------------------------------------


class _RealContour:
    """Integrand ``F(x)`` of the real route in units where ``L = 1``.

    Frequencies are ``x = qL`` (complex), ``y = QL``, ``s = kL``.
    """

    def __init__(self, cfg: ForceConfig):
        self.cfg = cfg
        self.L = cfg.L
        self.constant = cfg.wall1.frequency_independent and cfg.wall2.frequency_independent
        self.evaluations = 0

    def round_trip(self, x, y):
        """Round-trip factors ``(R_s, R_p)`` and ``s`` at complex ``x`` and real ``y``."""
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=float)
        x, y = np.broadcast_arrays(x, y)
        s = sqrt_upper(x * x - y * y)
        w = ComplexFrequency(CONSTANTS.c * x / self.L)
        self.evaluations += x.size
        Rs, Rp = _round_trip(self.cfg.wall1, self.cfg.wall2, y / self.L, w, s / self.L, self.L)
        return Rs, Rp, s

    def _resonances(self, x, var, lo, hi, n):
        """Locations in ``var`` where ``|1 - R|`` dips, for either polarization."""
        if hi <= lo:
            return []
        grid = np.linspace(lo, hi, n)

        def dips(v):
            Rs, Rp, _ = self.round_trip(np.full(v.shape, x), self._y(x.real, var, v))
            return np.abs(1 - Rs), np.abs(1 - Rp)

        found = []
        for pol_index, d in enumerate(dips(grid)):
            idx = [i for i in range(1, n - 1) if d[i] <= d[i - 1] and d[i] <= d[i + 1] and d[i] < 0.5]
            if not idx:
                continue
            centre = grid[idx]
            width = np.full(centre.size, grid[1] - grid[0])
            for _ in range(9):
                offs = np.linspace(-1, 1, 9)
                pts = np.clip(centre[:, None] + width[:, None] * offs[None, :], lo, hi)
                vals = dips(pts.ravel())[pol_index].reshape(pts.shape)
                centre = pts[np.arange(pts.shape[0]), np.argmin(vals, axis=1)]
                width = width / 4
            found.extend(centre.tolist())
        return found

    @staticmethod
    def _y(x, var, v):
        if var == "prop":
            return np.sqrt(np.maximum(x * x - v * v, 0.0))
        return np.sqrt(x * x + v * v)

    def F(self, x: complex, epsrel: float):
        """``int_0^oo dy y s g`` split at the light line ``y = Re x``."""
        xr = x.real
        total = 0j
        err = 0.0
        kmax = 60.0
        for var, lo, hi in (("prop", 0.0, xr), ("evan", 0.0, kmax)):
            if hi <= lo:
                continue
            if self.constant and var == "prop":
                # Resonances of constant walls are where arg(r1 r2) + 2 s = 2 pi m.
                pts = self._constant_resonances(hi)
            else:
                n = int(min(4000, 24 * (hi - lo) / math.pi + 64))
                pts = self._resonances(x, var, lo, hi, n)

            def f(v, var=var):
                y = self._y(xr, var, v)
                Rs, Rp, s = self.round_trip(np.full(v.shape, x), y)
                return v * s * (_geometric(Rs) + _geometric(Rp))

            val, e, _ = gauss_kronrod(f, lo, hi, points=pts, epsrel=epsrel, epsabs=1e-14, limit=20000)
            total += val
            err += e
        return total, err

    def _constant_resonances(self, hi):
        out = []
        for pol in _POLS:
            r = complex(wall_reflection(self.cfg.wall1, pol, _DUMMY_MP)) * complex(
                wall_reflection(self.cfg.wall2, pol, _DUMMY_MP)
            )
            if r == 0:
                continue
            phi = -np.angle(r) / 2
            m = np.arange(math.ceil(-phi / math.pi), math.floor((hi - phi) / math.pi) + 1)
            out.extend((phi + m * math.pi).tolist())
        return out

    def thresholds(self, eta_l, x_hi):
        """Frequencies where a resonance enters at normal incidence (``y = 0``)."""
        if self.constant:
            return self._constant_resonances(x_hi)
        n = int(24 * x_hi / math.pi + 64)
        grid = np.linspace(0.0, x_hi, n)[1:]
        out = []
        for pol_index in range(2):
            def dip(v):
                R = self.round_trip(v + 1j * eta_l, np.zeros_like(v))[pol_index]
                return np.abs(1 - R)

            d = dip(grid)
            idx = [i for i in range(1, d.size - 1) if d[i] <= d[i - 1] and d[i] <= d[i + 1] and d[i] < 0.5]
            for i in idx:
                res = _zoom(dip, grid[i], grid[1] - grid[0])
                out.append(res)
        return sorted(out)


_DUMMY_MP = ModePoint.at(0.0, ComplexFrequency.real(1.0))


def _zoom(fun, centre, width, rounds=9):
    for _ in range(rounds):
        pts = centre + width * np.linspace(-1, 1, 9)
        centre = pts[np.argmin(fun(pts))]
        width /= 4
    return float(centre)


def _nominal_q_cut(cfg: ForceConfig) -> float:
    x = 3.5 * math.pi
    for wall in (cfg.wall1, cfg.wall2):
        if wall.material is not None:
            x = max(x, 1.25 * wall.material.omega_p * cfg.L / CONSTANTS.c)
    return x


def _special_points(cfg: ForceConfig) -> list[float]:
    """Plasma and surface-plasmon frequencies (units of 1/L), where amplitudes kink."""
    out = []
    for wall in (cfg.wall1, cfg.wall2):
        if wall.material is not None:
            xp = wall.material.omega_p * cfg.L / CONSTANTS.c
            out.extend([xp, xp / math.sqrt(2)])
    return out


def _sinh_panel(fun, a, b, end, h, epsrel):
    """``int_a^b fun`` with ``x = end +/- h sinh(tau)`` resolving a feature of width h at ``end``."""
    sign = 1.0 if end == a else -1.0
    tmax = math.asinh((b - a) / h)

    def g(tau):
        return fun(end + sign * h * math.sinh(tau)) * h * math.cosh(tau)

    val, err, *_ = integrate.quad(g, 0.0, tmax, limit=200, epsrel=epsrel, epsabs=0.0, full_output=1)
    return val, err


def _real_contour_single(cfg: ForceConfig, eta: float, x_nominal: float):
    ctr = _RealContour(cfg)
    eta_l = eta * cfg.L
    # Panels alternate in sign and are ~x_cut**2 larger than the result.
    outer_rel = cfg.tol / (5 * x_nominal**2)
    inner_rel = outer_rel / 10

    def leg(x):
        return ctr.F(complex(x, eta_l), inner_rel)[0].real

    thresholds = ctr.thresholds(eta_l, x_nominal + 2 * math.pi)
    # Leave the real axis half-way between two thresholds.
    above = [t for t in thresholds if t > x_nominal]
    below = [t for t in thresholds if t <= x_nominal]
    x_cut = x_nominal
    if above and below:
        x_cut = 0.5 * (above[0] + below[-1])
    singular = sorted(t for t in thresholds if 0 < t < x_cut)
    kinks = [p for p in _special_points(cfg) if 0 < p < x_cut]
    edges = sorted(set([0.0, x_cut] + singular + kinks))
    h = max(eta_l, 1e-12)
    total = err = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        sa, sb = a in singular or a in kinks, b in singular or b in kinks
        if sa and sb:
            m = 0.5 * (a + b)
            pieces = [(a, m, a), (m, b, b)]
        elif sa:
            pieces = [(a, b, a)]
        elif sb:
            pieces = [(a, b, b)]
        else:
            pieces = [(a, b, None)]
        for lo, hi, end in pieces:
            if end is None:
                v, e, *_ = integrate.quad(leg, lo, hi, limit=200, epsrel=outer_rel, epsabs=0.0, full_output=1)
            else:
                v, e = _sinh_panel(leg, lo, hi, end, h, outer_rel)
            total += v
            err += e

    # Closing leg x = x_cut + i y: the real part of i*int F dy is -int Im F dy.
    def up(y):
        return -ctr.F(complex(x_cut, y), inner_rel)[0].imag

    v, e, *_ = integrate.quad(up, eta_l, 40.0, limit=200, epsrel=outer_rel, epsabs=0.0, full_output=1)
    total += v
    err += e + inner_rel * abs(total)
    # eta_casimir = P / P_ideal = -(120/pi**4) Re int F dx
    return -120 / math.pi**4 * total, 120 / math.pi**4 * err, ctr.evaluations


def force_real_contour(cfg: ForceConfig) -> ForceResult:
    """Pressure from the real-frequency contour with ``k -> k + i eta``.

    Each ``eta`` of the ladder is evaluated independently and the results
    are extrapolated linearly to ``eta = 0``. The reported error combines
    the quadrature estimates with the misfit of the linear extrapolation.
    """
    x_cut = cfg.q_cut if cfg.q_cut is not None else _nominal_q_cut(cfg)
    etas = cfg.eta_ladder
    ratios, errs, nev = [], [], 0
    for eta in etas:
        if eta * cfg.L > 0.1:
            raise ModelError("eta*L must be small (<= 0.1) for the real-contour route")
        try:
            r, e, n = _real_contour_single(cfg, eta, x_cut)
        except ConvergenceError as exc:
            raise ConvergenceError(
                f"real-contour quadrature failed at eta*L={eta * cfg.L:g}: {exc}; "
                "try a larger eta or looser tol",
                exc.estimate,
                exc.abs_error,
            ) from None
        ratios.append(r)
        errs.append(e)
        nev += n
    if len(etas) == 1:
        ratio, err = ratios[0], errs[0]
    else:
        x = np.asarray(etas) * cfg.L
        slope, ratio = np.polyfit(x, ratios, 1)
        misfit = np.max(np.abs(np.polyval([slope, ratio], x) - ratios))
        err = max(errs) + misfit
    ideal = casimir_ideal(cfg.L)
    return ForceResult(
        pressure=float(ideal * ratio),
        abs_error=float(abs(ideal) * err),
        eta_casimir=float(ratio),
        evaluations=nev,
        L=cfg.L,
        route=Route.REAL,
    )


def compute_force(cfg: ForceConfig) -> ForceResult:
    if cfg.route is Route.REAL:
        return force_real_contour(cfg)
    return force_imaginary_axis(cfg)


# -- local versus nonlocal ----------------------------------------------------


def percent_difference(m: Material, L: float, tol: float = 1e-4, route: Route = Route.IMAGINARY) -> PercentDifference:
    """``100 |F_NL - F_L| / |F_L|`` for two identical half-spaces of ``m``.

    The error bar is the first-order propagation of both quadrature errors.
    """
    local = compute_force(ForceConfig(WallSpec.local(m), WallSpec.local(m), L, route, tol))
    if m.v_fermi == 0:
        nonloc = local
    else:
        nonloc = compute_force(ForceConfig(WallSpec.nonlocal_(m), WallSpec.nonlocal_(m), L, route, tol))
    ratio = nonloc.pressure / local.pressure
    value = 100 * abs(ratio - 1)
    error = 100 * (nonloc.abs_error + abs(ratio) * local.abs_error) / abs(local.pressure)
    return PercentDifference(value, error, local, nonloc)


def _sweep_row(args) -> SweepRow:
    m, L, tol, route = args
    try:
        pd = percent_difference(m, L, tol, route)
    except CasimirError as exc:
        nan = float("nan")
        return SweepRow(L, L / m.lambda_p, nan, nan, nan, nan, str(exc))
    return SweepRow(L, L / m.lambda_p, pd.local.pressure, pd.nonlocal_.pressure, pd.value, pd.error)


def gap_grid(L_min, L_max, n, scale="log") -> np.ndarray:
    if not 0 < L_min <= L_max:
        raise ModelError("need 0 < L_min <= L_max")
    if n < 1 or (n == 1 and L_min != L_max):
        raise ModelError("need n >= 2 points (or n = 1 with L_min == L_max)")
    if scale == "log":
        return np.geomspace(L_min, L_max, n)
    if scale == "linear":
        return np.linspace(L_min, L_max, n)
    raise ModelError(f"scale must be 'log' or 'linear', got {scale!r}")


def sweep(m: Material, L_min, L_max, n, scale="log", tol=1e-4, route=Route.IMAGINARY, workers=None) -> SweepTable:
    """Local and nonlocal pressures and their percent difference over a gap grid.

    Rows are independent. With ``workers > 1`` they run in a process pool,
    and the output order is always that of increasing ``L``. A failed row
    holds NaN values and carries the error message.
    """
    gaps = gap_grid(L_min, L_max, n, scale)
    jobs = [(m, float(L), tol, route) for L in gaps]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_row, jobs))
    else:
        rows = [_sweep_row(j) for j in jobs]
    return SweepTable(m, tol, route, rows)

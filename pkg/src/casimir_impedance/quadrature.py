"""Vectorised adaptive Gauss-Kronrod (7/15) quadrature.

The integrand is called once per refinement sweep with every new node of
every interval that needs work, so numpy-vectorised integrands run at array
speed. Intervals are refined by local error density and summed in a fixed
order, so results are bit-reproducible.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError

# Kronrod abscissae on [0, 1] (symmetric), Gauss points are the odd entries.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_X15 = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_W15 = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W7 = np.zeros(15)
_W7[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])


def _rule(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid[:, None] + half[:, None] * _X15[None, :]
    y = np.asarray(f(x.ravel())).reshape(x.shape)
    k15 = half * (y @ _W15)
    g7 = half * (y @ _W7)
    return k15, np.abs(k15 - g7)


def gauss_kronrod(f, a, b, points=(), epsabs=0.0, epsrel=1e-8, limit=4000):
    """Integrate ``f`` over ``[a, b]``.

    Parameters
    ----------
    f : callable
        Vectorised integrand, real or complex valued.
    a, b : float
        Finite limits, ``a < b``.
    points : sequence of float
        Interior breakpoints (peaks, kinks) used to seed the partition.
    epsabs, epsrel : float
        Stop once the summed error estimate is below
        ``max(epsabs, epsrel * |integral|)``.
    limit : int
        Maximum number of subintervals.

    Returns
    -------
    value, abs_error, n_evaluations
    """
    cuts = np.unique(np.concatenate([[a, b], [p for p in points if a < p < b]]))
    lo, hi = cuts[:-1].astype(float), cuts[1:].astype(float)
    val, err = _rule(f, lo, hi)
    nev = 15 * lo.size
    span = b - a
    while True:
        total = val.sum()
        etot = err.sum()
        target = max(epsabs, epsrel * abs(total))
        if etot <= target:
            return total, etot, nev
        if lo.size >= limit:
            raise ConvergenceError(
                f"Gauss-Kronrod: {lo.size} subintervals, error {etot:.3g} > {target:.3g}",
                estimate=total,
                abs_error=etot,
            )
        density = err / np.maximum(hi - lo, np.finfo(float).tiny)
        split = density * span > target
        if not split.any():
            split[np.argmax(err)] = True
        # Roundoff floor: refuse to split intervals narrower than a few ulps.
        split &= (hi - lo) > 64 * np.finfo(float).eps * np.maximum(abs(lo), abs(hi))
        if not split.any():
            raise ConvergenceError(
                "Gauss-Kronrod: roundoff limit reached", estimate=total, abs_error=etot
            )
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        new_val, new_err = _rule(f, new_lo, new_hi)
        nev += 15 * new_lo.size
        keep = ~split
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[keep], new_val])
        err = np.concatenate([err[keep], new_err])
        order = np.argsort(lo, kind="stable")
        lo, hi, val, err = lo[order], hi[order], val[order], err[order]

"""Adaptive Dormand-Prince 5(4) kernel for the phase flow, jitted with numba.

The flow is integrated in the variables (p, q, v) = (log|x|, log|y|, v).  In
these coordinates

    p' = -n w,    q' = -(n-1) w,    v' = w,        w = 1 + x + y,

so the conserved level log F = (1-n) p + n q is an exact linear invariant of
every Runge-Kutta stage (the same stage values of w multiply both rows), the
coordinate axes are invariant by construction, and the finite-time escape to
|x| -> infinity costs only logarithmically many steps.  Axis seeds freeze the
corresponding log variable; sign information never changes along an orbit.

Termination events are checked at accepted step endpoints: convergence to the
origin (max(|x|,|y|) below an absolute threshold), asymptotic approach to the
admissible line (w below threshold), escape beyond the blow-up radius, the
requested time bound, and a hard step-size floor.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# termination codes (mirrored by flow.TerminationKind)
MAX_TIME = 0
ORIGIN = 1
LINE = 2
BLOWUP = 3
UNDERFLOW = 4

EPS_ORIGIN = 1e-13  # |.|_inf threshold for convergence to the fixed point
EPS_LINE = 1e-11  # threshold on w = 1 + x + y for the admissible-line asymptote
BLOWUP_RADIUS = 1e8  # |x| or |y| beyond this counts as finite-time escape
H_FLOOR = 1e-14  # hard step floor
MAX_STEPS = 5_000_000


@njit(cache=True)
def _xyw(n, sx, sy, p, q):
    x = sx * np.exp(p) if sx != 0.0 else 0.0
    y = sy * np.exp(q) if sy != 0.0 else 0.0
    return x, y, 1.0 + x + y


@njit(cache=True)
def _advance(n, sx, sy, p0, q0, v0, t_end, rtol, atol, hmax, skip_origin):
    """Integrate from t = 0 to t_end (either sign); returns (nodes, m, reason, w_limit).

    Node rows: t, p, q, v, p', q', v', p'', q'', v''.
    """
    nf = float(n)
    direction = 1.0 if t_end > 0.0 else -1.0

    cap = 512
    out = np.empty((cap, 10))

    t = 0.0
    p, q, v = p0, q0, v0

    x, y, w = _xyw(nf, sx, sy, p, q)
    # first derivatives; axis rows frozen at zero
    f1 = -nf * w if sx != 0.0 else 0.0
    f2 = -(nf - 1.0) * w if sy != 0.0 else 0.0
    f3 = w
    s = nf * x + (nf - 1.0) * y
    wdot = -w * s
    out[0, 0] = t
    out[0, 1] = p
    out[0, 2] = q
    out[0, 3] = v
    out[0, 4] = f1
    out[0, 5] = f2
    out[0, 6] = f3
    out[0, 7] = -nf * wdot if sx != 0.0 else 0.0
    out[0, 8] = -(nf - 1.0) * wdot if sy != 0.0 else 0.0
    out[0, 9] = wdot
    m = 1

    reason = MAX_TIME
    w_limit = np.nan

    h = direction * 1e-4
    errold = 1e-4
    safety = 0.9
    beta = 0.04
    expo1 = 0.2 - beta * 0.75

    nsteps = 0
    while True:
        if (t_end - t) * direction <= 0.0:
            reason = MAX_TIME
            break
        nsteps += 1
        if nsteps > MAX_STEPS:
            reason = UNDERFLOW
            break
        if abs(h) > hmax:
            h = direction * hmax
        if abs(h) > abs(t_end - t):
            h = t_end - t
        if abs(h) < H_FLOOR:
            reason = UNDERFLOW
            break

        # Dormand-Prince stages (k1 = FSAL from the stored node derivatives)
        k1p, k1q, k1v = f1, f2, f3

        ap = p + h * (0.2 * k1p)
        aq = q + h * (0.2 * k1q)
        xx, yy, ww = _xyw(nf, sx, sy, ap, aq)
        k2p = -nf * ww if sx != 0.0 else 0.0
        k2q = -(nf - 1.0) * ww if sy != 0.0 else 0.0
        k2v = ww

        ap = p + h * (3.0 / 40.0 * k1p + 9.0 / 40.0 * k2p)
        aq = q + h * (3.0 / 40.0 * k1q + 9.0 / 40.0 * k2q)
        xx, yy, ww = _xyw(nf, sx, sy, ap, aq)
        k3p = -nf * ww if sx != 0.0 else 0.0
        k3q = -(nf - 1.0) * ww if sy != 0.0 else 0.0
        k3v = ww

        ap = p + h * (44.0 / 45.0 * k1p - 56.0 / 15.0 * k2p + 32.0 / 9.0 * k3p)
        aq = q + h * (44.0 / 45.0 * k1q - 56.0 / 15.0 * k2q + 32.0 / 9.0 * k3q)
        xx, yy, ww = _xyw(nf, sx, sy, ap, aq)
        k4p = -nf * ww if sx != 0.0 else 0.0
        k4q = -(nf - 1.0) * ww if sy != 0.0 else 0.0
        k4v = ww

        ap = p + h * (
            19372.0 / 6561.0 * k1p
            - 25360.0 / 2187.0 * k2p
            + 64448.0 / 6561.0 * k3p
            - 212.0 / 729.0 * k4p
        )
        aq = q + h * (
            19372.0 / 6561.0 * k1q
            - 25360.0 / 2187.0 * k2q
            + 64448.0 / 6561.0 * k3q
            - 212.0 / 729.0 * k4q
        )
        xx, yy, ww = _xyw(nf, sx, sy, ap, aq)
        k5p = -nf * ww if sx != 0.0 else 0.0
        k5q = -(nf - 1.0) * ww if sy != 0.0 else 0.0
        k5v = ww

        ap = p + h * (
            9017.0 / 3168.0 * k1p
            - 355.0 / 33.0 * k2p
            + 46732.0 / 5247.0 * k3p
            + 49.0 / 176.0 * k4p
            - 5103.0 / 18656.0 * k5p
        )
        aq = q + h * (
            9017.0 / 3168.0 * k1q
            - 355.0 / 33.0 * k2q
            + 46732.0 / 5247.0 * k3q
            + 49.0 / 176.0 * k4q
            - 5103.0 / 18656.0 * k5q
        )
        xx, yy, ww = _xyw(nf, sx, sy, ap, aq)
        k6p = -nf * ww if sx != 0.0 else 0.0
        k6q = -(nf - 1.0) * ww if sy != 0.0 else 0.0
        k6v = ww

        # 5th-order solution
        pn = p + h * (
            35.0 / 384.0 * k1p
            + 500.0 / 1113.0 * k3p
            + 125.0 / 192.0 * k4p
            - 2187.0 / 6784.0 * k5p
            + 11.0 / 84.0 * k6p
        )
        qn = q + h * (
            35.0 / 384.0 * k1q
            + 500.0 / 1113.0 * k3q
            + 125.0 / 192.0 * k4q
            - 2187.0 / 6784.0 * k5q
            + 11.0 / 84.0 * k6q
        )
        vn = v + h * (
            35.0 / 384.0 * k1v
            + 500.0 / 1113.0 * k3v
            + 125.0 / 192.0 * k4v
            - 2187.0 / 6784.0 * k5v
            + 11.0 / 84.0 * k6v
        )

        xn, yn, wn = _xyw(nf, sx, sy, pn, qn)
        k7p = -nf * wn if sx != 0.0 else 0.0
        k7q = -(nf - 1.0) * wn if sy != 0.0 else 0.0
        k7v = wn

        # embedded 4th-order error estimate
        ep = h * (
            71.0 / 57600.0 * k1p
            - 71.0 / 16695.0 * k3p
            + 71.0 / 1920.0 * k4p
            - 17253.0 / 339200.0 * k5p
            + 22.0 / 525.0 * k6p
            - 1.0 / 40.0 * k7p
        )
        eq = h * (
            71.0 / 57600.0 * k1q
            - 71.0 / 16695.0 * k3q
            + 71.0 / 1920.0 * k4q
            - 17253.0 / 339200.0 * k5q
            + 22.0 / 525.0 * k6q
            - 1.0 / 40.0 * k7q
        )
        ev = h * (
            71.0 / 57600.0 * k1v
            - 71.0 / 16695.0 * k3v
            + 71.0 / 1920.0 * k4v
            - 17253.0 / 339200.0 * k5v
            + 22.0 / 525.0 * k6v
            - 1.0 / 40.0 * k7v
        )

        scp = atol + rtol * max(abs(p), abs(pn))
        scq = atol + rtol * max(abs(q), abs(qn))
        scv = atol + rtol * max(abs(v), abs(vn))
        err = np.sqrt(((ep / scp) ** 2 + (eq / scq) ** 2 + (ev / scv) ** 2) / 3.0)

        if not np.isfinite(err):
            h *= 0.1
            continue

        if err > 1.0:
            fac = safety * err**-0.2
            if fac < 0.1:
                fac = 0.1
            h *= fac
            continue

        # accepted
        t = t + h
        p, q, v = pn, qn, vn
        x, y, w = xn, yn, wn
        f1, f2, f3 = k7p, k7q, k7v

        if m == cap:
            grown = np.empty((cap * 2, 10))
            grown[:cap] = out
            out = grown
            cap *= 2
        s = nf * x + (nf - 1.0) * y
        wdot = -w * s
        out[m, 0] = t
        out[m, 1] = p
        out[m, 2] = q
        out[m, 3] = v
        out[m, 4] = f1
        out[m, 5] = f2
        out[m, 6] = f3
        out[m, 7] = -nf * wdot if sx != 0.0 else 0.0
        out[m, 8] = -(nf - 1.0) * wdot if sy != 0.0 else 0.0
        out[m, 9] = wdot
        m += 1

        # events
        if w < EPS_LINE:
            reason = LINE
            w_limit = x
            break
        if abs(x) > BLOWUP_RADIUS or abs(y) > BLOWUP_RADIUS or w > BLOWUP_RADIUS:
            reason = BLOWUP
            break
        if not skip_origin and abs(x) < EPS_ORIGIN and abs(y) < EPS_ORIGIN:
            reason = ORIGIN
            break

        fac = safety * err**-expo1 * errold**beta
        if fac < 0.2:
            fac = 0.2
        elif fac > 5.0:
            fac = 5.0
        h *= fac
        errold = max(err, 1e-4)

    return out[:m], reason, t, w_limit

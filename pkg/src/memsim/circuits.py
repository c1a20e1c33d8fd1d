"""Fixed small circuits solved as explicit ODE systems.

Memristor-capacitor volatility (with its product-log closed form), the amoeba
adaptation loop, the plant memristor with optional parasitic RC, and the
squid-axon channel driver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .core import DriveSignal, IntegratorSpec, SimulationError, Trace, eval_signal, integrate
from .devices import (
    HhParams,
    HpParams,
    ThresholdDeviceParams,
    hh_model,
    threshold_device_rhs,
)

__all__ = [
    "McParams",
    "AmoebaParams",
    "PlantParams",
    "lambert_w",
    "mc_resistance",
    "mc_simulate",
    "mc_calibrate",
    "mc_analytic",
    "amoeba_rhs",
    "amoeba_effective_rhs",
    "amoeba_simulate",
    "PlantDenominatorError",
    "plant_simulate",
    "hh_simulate",
]

_INV_E = math.exp(-1.0)


def lambert_w(x):
    """Principal branch W0 of the Lambert function, w * e^w = x, for x >= -1/e.

    Halley iteration from a branch-point / logarithmic initial guess;
    converges to ~1e-15 relative in a handful of steps.  Vectorized.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if np.any(x < -_INV_E * (1.0 + 1e-12)):
        raise ValueError(f"lambert_w domain is x >= -1/e; got min {x.min():.6g}")
    x = np.maximum(x, -_INV_E)

    w = np.empty_like(x)
    near = x < -0.25
    # branch-point series around x = -1/e
    if np.any(near):
        pz = np.sqrt(2.0 * (np.e * x[near] + 1.0))
        w[near] = -1.0 + pz - pz**2 / 3.0 + 11.0 * pz**3 / 72.0
    big = x > np.e
    if np.any(big):
        lx = np.log(x[big])
        w[big] = lx - np.log(lx)
    mid = ~(near | big)
    w[mid] = x[mid] / (1.0 + x[mid])

    for _ in range(60):
        ew = np.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
            raw = f / denom
        # the exact branch point (wp1 = 0) is already converged; freeze it
        step = np.where(np.isfinite(raw), raw, 0.0)
        w = w - step
        if np.all(np.abs(step) <= 1e-15 * (1.0 + np.abs(w))):
            break
    return float(w[0]) if scalar else w


@dataclass(frozen=True)
class McParams:
    """Series memristor-capacitor cell.

    The memristance is the linear-memory form evaluated at w = q/beta:
    R(q) = r_on*(1 - q/beta) + r_off*q/beta.  (The product-log solution and
    its beta -> inf pure-RC limit follow from exactly this form; see the
    README note on the displayed variant.)  c1 is the integration constant
    of the closed form; calibrate with :func:`mc_calibrate`.
    """

    c: float
    hp: HpParams
    c1: float | None = None

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("capacitance must be > 0")
        if self.hp.alpha != 0:
            raise ValueError("the memristor-capacitor cell requires a non-volatile device (alpha=0)")


def mc_resistance(q, p: McParams):
    """R(q) = r_on*(1 - q/beta) + r_off*(q/beta); q/beta is not clamped."""
    hp = p.hp
    wq = np.asarray(q, dtype=float) / hp.beta
    return hp.r_on * (1.0 - wq) + hp.r_off * wq


def mc_simulate(p: McParams, q0: float, spec: IntegratorSpec) -> Trace:
    """Discharge dq/dt = -q/(R(q) C).  Channels: q, v_c, r."""

    def rhs(y, t):
        return np.array([-y[0] / (mc_resistance(y[0], p) * p.c)])

    tr = integrate(rhs, [q0], spec, names=["q"])
    q = tr["q"]
    return Trace(t0=tr.t0, dt=tr.dt, channels={"q": q, "v_c": q / p.c, "r": mc_resistance(q, p)})


def mc_calibrate(p: McParams, q0: float, spec: IntegratorSpec | None = None) -> McParams:
    """Fix the integration constant c1 by anchoring to a simulated run.

    The anchor time is t_a = 10 r_on C.  From the implicit solution
    ln q + (xi/beta) q = -t/(r_on C) - c1/(beta r_on), matching at the
    anchor gives c1 directly.  Returns a new record with c1 set.
    """
    hp = p.hp
    t_a = 10.0 * hp.r_on * p.c
    if spec is None:
        spec = IntegratorSpec(method="rk4", dt=hp.r_on * p.c / 200.0, t_end=t_a)
    tr = mc_simulate(p, q0, replace(spec, t_end=t_a))
    q_a = float(tr["q"][-1])
    if q_a <= 0:
        raise SimulationError("anchor charge is non-positive; cannot calibrate c1")
    c1 = -hp.beta * hp.r_on * (
        math.log(q_a) + hp.xi * q_a / hp.beta + t_a / (hp.r_on * p.c)
    )
    return replace(p, c1=c1)


def mc_analytic(t, p: McParams):
    """Product-log charge decay q(t) = (beta/xi) W((xi/beta) e^{-t/(r_on C)} e^{-c1/(beta r_on)}).

    Exact for the cell's discharge ODE; for large times W(x) ~ x gives the
    plain RC decay with time constant r_on*C, and beta -> inf recovers the
    pure RC circuit.  Requires a calibrated c1 (see :func:`mc_calibrate`).
    """
    if p.c1 is None:
        raise ValueError("c1 is not set; run mc_calibrate first")
    hp = p.hp
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    log_arg = -np.atleast_1d(t) / (hp.r_on * p.c) - p.c1 / (hp.beta * hp.r_on)
    if hp.xi < 1e-12:
        out = np.exp(log_arg)
    else:
        x = (hp.xi / hp.beta) * np.exp(log_arg)
        out = (hp.beta / hp.xi) * np.asarray(lambert_w(x))
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class AmoebaParams:
    """RLC loop with the threshold memristor in parallel with the capacitor."""

    c: float
    r: float
    l: float
    dev: ThresholdDeviceParams

    def __post_init__(self):
        if min(self.c, self.r, self.l) <= 0:
            raise ValueError("C, R, L must all be positive")


def amoeba_rhs(state, v: float, p: AmoebaParams) -> np.ndarray:
    """Raw derivatives (dI, dV_C, dM) at drive voltage v."""
    i, vc, m = state
    di = -(p.r / p.l) * i + (v - vc) / p.l
    dvc = -vc / (m * p.c) + i / p.c
    dm = threshold_device_rhs(m, vc, p.dev)
    return np.array([di, dvc, dm])


def amoeba_effective_rhs(state, v: float, p: AmoebaParams) -> np.ndarray:
    """Derivatives with the clamp accounted for: zero M-rate when the state
    sits at a bound and the raw rate points outward (used for settling checks)."""
    d = amoeba_rhs(state, v, p)
    m = state[2]
    if (m <= p.dev.r1 and d[2] < 0) or (m >= p.dev.r2 and d[2] > 0):
        d[2] = 0.0
    return d


def amoeba_simulate(
    p: AmoebaParams,
    init: Sequence[float],
    schedule: Sequence[tuple[float, DriveSignal]],
    spec: IntegratorSpec,
) -> Trace:
    """Two-stage (or n-stage) stimulus run.

    ``schedule`` is a list of (duration, DriveSignal) segments; each segment's
    signal is evaluated on its own local clock.  M is clamped to [r1, r2]
    after every step.  Channels: i, v_c, m, v.
    """
    dev = p.dev

    def clamp(y):
        y[2] = min(max(y[2], dev.r1), dev.r2)
        return y

    pieces = []
    vs = []
    y = np.asarray(init, dtype=float)
    if not dev.r1 <= y[2] <= dev.r2:
        raise ValueError("initial memristance must lie in [r1, r2]")
    first = True
    for duration, drive in schedule:
        seg_spec = IntegratorSpec(method=spec.method, dt=spec.dt, t_end=duration)

        def rhs(state, t, drive=drive):
            return amoeba_rhs(state, eval_signal(drive, t), p)

        tr = integrate(rhs, y, seg_spec, names=["i", "v_c", "m"], poststep=clamp)
        block = np.column_stack([tr["i"], tr["v_c"], tr["m"]])
        vblock = np.asarray(eval_signal(drive, tr.times), dtype=float)
        if not first:
            block = block[1:]
            vblock = vblock[1:]
        pieces.append(block)
        vs.append(vblock)
        y = block[-1].copy()
        first = False
    data = np.vstack(pieces)
    v = np.concatenate(vs)
    return Trace(
        t0=0.0,
        dt=spec.dt,
        channels={"i": data[:, 0], "v_c": data[:, 1], "m": data[:, 2], "v": v},
    )


@dataclass(frozen=True)
class PlantParams:
    """Voltage-controlled plant memristor with optional parasitic series-RC branch.

    h_kind selects the memristance nonlinearity h(V): "constant" (h=1),
    "exp" (e^{kV}), or "sinh" (sinh(kV)) with k = h_coeff.  rc_r = None
    disables the parasitic branch.
    """

    p_beta: float
    r_o: float
    a_const: float
    h_kind: str = "constant"
    h_coeff: float = 1.0
    rc_r: float | None = None
    rc_c: float | None = None

    def __post_init__(self):
        if self.r_o <= 0:
            raise ValueError("r_o must be > 0")
        if self.h_kind not in ("constant", "exp", "sinh"):
            raise ValueError("h_kind must be 'constant', 'exp' or 'sinh'")
        if self.rc_r is not None and (self.rc_r <= 0 or not self.rc_c or self.rc_c <= 0):
            raise ValueError("parasitic branch needs rc_r > 0 and rc_c > 0")

    def h(self, v):
        if self.h_kind == "constant":
            return np.ones_like(np.asarray(v, dtype=float))
        if self.h_kind == "exp":
            return np.exp(self.h_coeff * np.asarray(v, dtype=float))
        return np.sinh(self.h_coeff * np.asarray(v, dtype=float))


class PlantDenominatorError(SimulationError):
    """The memristance denominator crossed zero during the run."""

    def __init__(self, t: float):
        super().__init__(f"plant denominator crosses zero near t={t:.6g}")
        self.time = t


def plant_simulate(p: PlantParams, v: DriveSignal, spec: IntegratorSpec) -> Trace:
    """Plant memristor response i_m = e^{bt} V / (b R_o int h(V) e^{bx} dx + A).

    Numerically the running integral J(t) = int_0^t h(V(x)) e^{-b(t-x)} dx is
    accumulated as the ODE dJ/dt = -b J + h(V) on the trace grid, which keeps
    every quantity bounded; then i_m = V / (b R_o J + A e^{-bt}).  The
    parasitic branch is the series-RC ODE dq/dt = (V - q/C)/R with
    i_rc = dq/dt.  Channels: i_m, i_rc, i, v.
    """
    has_rc = p.rc_r is not None

    def rhs(y, t):
        vv = eval_signal(v, t)
        dj = -p.p_beta * y[0] + float(p.h(vv))
        if has_rc:
            dq = (vv - y[1] / p.rc_c) / p.rc_r
            return np.array([dj, dq])
        return np.array([dj])

    state0 = [0.0, 0.0] if has_rc else [0.0]
    tr = integrate(rhs, state0, spec, names=["j", "q"][: len(state0)])
    t = tr.times
    vv = np.asarray(eval_signal(v, t), dtype=float)
    denom = p.p_beta * p.r_o * tr["j"] + p.a_const * np.exp(-p.p_beta * t)
    bad = np.nonzero(denom <= 0)[0]
    if bad.size:
        raise PlantDenominatorError(float(t[bad[0]]))
    i_m = vv / denom
    i_rc = (vv - tr["q"] / p.rc_c) / p.rc_r if has_rc else np.zeros_like(vv)
    return Trace(
        t0=tr.t0,
        dt=tr.dt,
        channels={"i_m": i_m, "i_rc": i_rc, "i": i_m + i_rc, "v": vv},
    )


def hh_simulate(p: HhParams, v_drive: DriveSignal, spec: IntegratorSpec,
                gates0: Sequence[float] = (0.0, 0.0, 0.0)) -> Trace:
    """Drive both channel potentials with the same signal.

    Gates are clamped to [0,1] after each step (the printed w2 equation has a
    growth term that can otherwise escape).  Channels: w1, w2, w3, i_k, i_na, v.
    """
    g0 = np.asarray(gates0, dtype=float)
    if np.any(g0 < 0) or np.any(g0 > 1):
        raise ValueError("gates must start in [0, 1]")

    def rhs(y, t):
        vv = eval_signal(v_drive, t)
        _, _, d1, d2, d3 = hh_model(y[0], y[1], y[2], vv, vv, p)
        return np.array([d1, d2, d3])

    tr = integrate(rhs, g0, spec, names=["w1", "w2", "w3"],
                   poststep=lambda y: np.clip(y, 0.0, 1.0))
    vv = np.asarray(eval_signal(v_drive, tr.times), dtype=float)
    i_k = p.g_k * tr["w1"] ** 4 * vv
    i_na = p.g_na * tr["w2"] ** 3 * tr["w3"] * vv
    return Trace(
        t0=tr.t0,
        dt=tr.dt,
        channels={"w1": tr["w1"], "w2": tr["w2"], "w3": tr["w3"], "i_k": i_k, "i_na": i_na, "v": vv},
    )

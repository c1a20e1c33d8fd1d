"""Single-device memristor models: state derivative plus observable per family.

Every function here is pure; parameter records are frozen dataclasses. States
are plain numpy scalars/arrays; the per-model bounds (HP/Pickett/Chang memory
in [0,1], threshold device M in [r1,r2], HH gates in [0,1]) are enforced by
the simulation drivers that own the time stepping, via hard clamps after each
step (windowing is the alternative the HP model offers).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DriveSignal, IntegratorSpec, Trace, eval_signal, integrate

__all__ = [
    "HpParams",
    "WindowSpec",
    "FilmParams",
    "PickettParams",
    "ChangParams",
    "SpinTorqueParams",
    "ThresholdDeviceParams",
    "HhParams",
    "SaturationError",
    "hp_rhs",
    "hp_resistance",
    "joglekar_window",
    "hp_analytic_w",
    "hp_volatile_analytic",
    "beta_from_film",
    "pickett_rhs",
    "chang_model",
    "spin_torque_model",
    "threshold_f",
    "threshold_device_rhs",
    "hh_model",
    "simulate_hp_voltage_driven",
    "clamp01",
]


class SaturationError(ValueError):
    """The non-saturating precondition of a closed-form solution was violated."""


@dataclass(frozen=True)
class HpParams:
    """Linear-memory (TiO2 thin film) device.

    alpha : 1/s, volatility (drift towards w=1 when unforced)
    beta  : A*s, current scale; dw/dt carries the term -I/beta.  (The source
            text quotes the *inverse* coefficient in 1/(A*s); a figure value
            of "0.3 mA" reads as beta = 3e-4 in these units.)
    r_on, r_off : limiting resistances, R(w) = r_on*(1-w) + r_off*w
    polarity : +1 gives the displayed equation dw/dt = alpha*w - I/beta;
            -1 flips the current term, matching the sign used by the
            closed-form flux derivation.
    """

    alpha: float
    beta: float
    r_on: float
    r_off: float
    polarity: int = 1

    def __post_init__(self):
        if not 0 < self.r_on <= self.r_off:
            raise ValueError("need 0 < r_on <= r_off")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.beta <= 0:
            raise ValueError("beta must be > 0")
        if self.polarity not in (1, -1):
            raise ValueError("polarity must be +1 or -1")

    @property
    def xi(self) -> float:
        return (self.r_off - self.r_on) / self.r_on


@dataclass(frozen=True)
class WindowSpec:
    kind: str = "none"  # "none" | "joglekar"
    p: int = 1

    def __post_init__(self):
        if self.kind not in ("none", "joglekar"):
            raise ValueError("window kind must be 'none' or 'joglekar'")
        if self.p < 1:
            raise ValueError("p must be a positive integer")


@dataclass(frozen=True)
class FilmParams:
    mu_e: float  # electron mobility, m^2/(V s)
    d: float     # film thickness, m
    r_on: float  # ohms

    def __post_init__(self):
        if min(self.mu_e, self.d, self.r_on) <= 0:
            raise ValueError("all film parameters must be positive")


@dataclass(frozen=True)
class PickettParams:
    """Two-branch TiO2 switching model. No numeric values are published for
    these constants; defaults are placeholders satisfying the positivity
    requirement and should be replaced with device data."""

    f_off: float = 1.0
    f_on: float = 1.0
    i_off: float = 1e-3
    i_on: float = 1e-3
    a_off: float = 0.6
    a_on: float = 0.4
    w_c: float = 0.1
    b: float = 1e-3

    def __post_init__(self):
        vals = (self.f_off, self.f_on, self.i_off, self.i_on,
                self.a_off, self.a_on, self.w_c, self.b)
        if any(v <= 0 for v in vals):
            raise ValueError("all Pickett parameters must be positive")


@dataclass(frozen=True)
class ChangParams:
    """WOx device, voltage controlled. Constants are namespaced c_* because
    the symbols alpha/beta collide with the HP model's."""

    c_alpha: float
    c_beta: float
    c_gamma: float
    c_delta: float
    c_lambda: float
    c_eta1: float
    c_eta2: float

    def __post_init__(self):
        vals = (self.c_alpha, self.c_beta, self.c_gamma, self.c_delta,
                self.c_lambda, self.c_eta1, self.c_eta2)
        if any(v <= 0 for v in vals):
            raise ValueError("all Chang parameters must be positive")


@dataclass(frozen=True)
class SpinTorqueParams:
    damping: float  # dimensionless
    gyro: float     # 1/(s T)
    h_k: float      # tesla
    pol: float      # 1/A; p = pol * I
    r_a: float      # 1/ohms
    r_b: float      # 1/ohms

    def __post_init__(self):
        if not self.r_a > abs(self.r_b):
            raise ValueError("need r_a > |r_b| so R(theta) stays positive")


@dataclass(frozen=True)
class ThresholdDeviceParams:
    """Voltage-controlled device with Heaviside-gated bounds [r1, r2]."""

    t_alpha: float
    t_beta: float
    v_t: float
    r1: float
    r2: float

    def __post_init__(self):
        if not self.r1 < self.r2:
            raise ValueError("need r1 < r2")
        if self.v_t <= 0:
            raise ValueError("v_t must be > 0")
        if self.t_alpha < 0 or self.t_beta < 0:
            raise ValueError("rate constants must be >= 0")


@dataclass(frozen=True)
class HhParams:
    """Memristive form of the squid-axon channel model.

    The k*/na* rate constants are not published numerically in the source;
    callers must supply fitted values (the presets ship documented
    placeholders with the classic conductances).
    """

    g_k: float
    g_na: float
    k1: float
    k2: float
    na1: float
    na2: float
    na3: float
    na4: float
    na5: float
    na6: float
    na7: float
    na8: float
    na9: float

    def __post_init__(self):
        if self.g_k <= 0 or self.g_na <= 0:
            raise ValueError("conductances must be positive")


def clamp01(w):
    return np.clip(w, 0.0, 1.0)


def joglekar_window(w, p: int):
    """F(w) = 1 - (2w - 1)^(2p); vanishes at both ends, 1 at w = 1/2."""
    return 1.0 - (2.0 * np.asarray(w, dtype=float) - 1.0) ** (2 * p)


def hp_resistance(w, p: HpParams):
    """R(w) = r_on*(1 - w) + r_off*w, affine between the two limits."""
    return p.r_on * (1.0 - np.asarray(w, dtype=float)) + p.r_off * np.asarray(w, dtype=float)


def hp_rhs(w, i, p: HpParams, win: WindowSpec = WindowSpec()) -> float:
    """dw/dt = alpha*w - polarity*F(w)*i/beta (F == 1 for kind='none').

    With kind='none' the caller clamps w to [0,1] after each step.
    """
    f = 1.0 if win.kind == "none" else joglekar_window(w, win.p)
    return p.alpha * np.asarray(w, dtype=float) - p.polarity * f * np.asarray(i, dtype=float) / p.beta


def hp_analytic_w(v_integral, w0: float, p: HpParams):
    """Closed-form non-volatile (alpha=0) trajectory from the running flux.

    Solves dw/dt = -polarity*V/(beta*R(w)) exactly:

        (xi/2) w^2 + w = (xi/2) w0^2 + w0 - polarity * Phi / (beta * r_on)

    where Phi = integral of V dt.  The unnormalized textbook display (all of
    beta*r_on absorbed, "+Phi") is this with polarity=-1 and beta*r_on = 1.
    Vectorized over ``v_integral``.

    Raises
    ------
    SaturationError
        if the resulting w leaves [0, 1]: the non-saturating precondition
        was violated.
    """
    if p.alpha != 0:
        raise ValueError("closed form requires alpha = 0")
    phi = np.asarray(v_integral, dtype=float)
    xi = p.xi
    u = 0.5 * xi * w0**2 + w0 - p.polarity * phi / (p.beta * p.r_on)
    if xi < 1e-12:
        w = u
    else:
        arg = 2.0 * xi * u + 1.0
        if np.any(arg < 0):
            raise SaturationError("flux drive saturates the device (sqrt argument < 0)")
        w = (np.sqrt(arg) - 1.0) / xi
    if np.any(w < -1e-9) or np.any(w > 1.0 + 1e-9):
        raise SaturationError(
            f"w leaves [0,1] (range [{np.min(w):.6g}, {np.max(w):.6g}]): non-saturating drive required"
        )
    out = np.clip(w, 0.0, 1.0)
    return out if out.ndim else float(out)


def hp_volatile_analytic(i_signal, w0: float, p: HpParams, t: float, n_quad: int = 2048) -> float:
    """Volatile (alpha>0) solution by quadrature of the driving current.

        w(t) = e^{alpha t} (w0 - polarity * (1/beta) * int_0^t e^{-alpha tau} I(tau) dtau)

    ``i_signal`` is a DriveSignal interpreted as a current, or any callable
    of time. With I = 0 this is the bare decay-law w0 * e^{alpha t}.
    """
    cur = i_signal if callable(i_signal) and not isinstance(i_signal, DriveSignal) else (
        lambda tt: eval_signal(i_signal, tt))
    if t == 0:
        return float(w0)
    tau = np.linspace(0.0, t, n_quad + 1)
    integrand = np.exp(-p.alpha * tau) * np.asarray(cur(tau), dtype=float)
    integral = np.trapezoid(integrand, tau)
    return float(np.exp(p.alpha * t) * (w0 - p.polarity * integral / p.beta))


def beta_from_film(f: FilmParams) -> float:
    """beta = d / (mu_e * r_on); the inverse coefficient scales as mu_e*r_on/d."""
    return f.d / (f.mu_e * f.r_on)


def pickett_rhs(w, i, p: PickettParams):
    """Two-branch switching law; the branch is selected by the current sign."""
    w = np.asarray(w, dtype=float)
    i = np.asarray(i, dtype=float)
    off = p.f_off * np.sinh(i / p.i_off) * np.exp(
        -np.exp((w - p.a_off) / p.w_c - np.abs(i) / p.b) - w / p.w_c
    )
    on = p.f_on * np.sinh(i / p.i_on) * np.exp(
        -np.exp(-(w - p.a_on) / p.w_c - np.abs(i) / p.b) - w / p.w_c
    )
    out = np.where(i > 0, off, np.where(i < 0, on, 0.0))
    return out if out.ndim else float(out)


def chang_model(w, v, p: ChangParams):
    """Returns (i, dw_dt) for the WOx device; pinched at v = 0 by construction."""
    w = np.asarray(w, dtype=float)
    v = np.asarray(v, dtype=float)
    i = p.c_alpha * (1.0 - w) * (1.0 - np.exp(p.c_beta * v)) + w * p.c_gamma * np.sinh(p.c_delta * v)
    dw = p.c_lambda * (np.exp(p.c_eta1 * v) - np.exp(-p.c_eta2 * v))
    if i.ndim == 0:
        return float(i), float(dw)
    return i, dw


def spin_torque_model(theta, i, p: SpinTorqueParams):
    """Free-layer angle dynamics and the induced magneto-resistance.

    Returns (dtheta_dt, r).  theta is left unreduced; R(theta) is 2*pi
    periodic by construction.
    """
    theta = np.asarray(theta, dtype=float)
    pp = p.pol * np.asarray(i, dtype=float)
    dtheta = p.damping * p.gyro * p.h_k * np.sin(theta) * (pp - np.cos(theta))
    r = 1.0 / (p.r_a + p.r_b * np.cos(theta))
    if dtheta.ndim == 0:
        return float(dtheta), float(r)
    return dtheta, r


def threshold_f(v, p: ThresholdDeviceParams):
    """Piecewise-linear response: slope -t_alpha below threshold, -t_beta above."""
    v = np.asarray(v, dtype=float)
    out = 0.5 * (p.t_beta - p.t_alpha) * (np.abs(v + p.v_t) - np.abs(v - p.v_t)) - p.t_beta * v
    return out if out.ndim else float(out)


def _heaviside(x):
    # theta(0) = 0 so that a state clamped exactly at a bound has zero rate.
    return np.where(np.asarray(x, dtype=float) > 0, 1.0, 0.0)


def threshold_device_rhs(m, v_m, p: ThresholdDeviceParams):
    """dM/dt = f(V_M) (theta(V_M) theta(M-r1) + theta(-V_M) theta(r2-M)).

    The Heaviside gates block motion past [r1, r2]; simulation drivers
    additionally clamp M into the interval after each step, so one Euler
    step is the most the state can overshoot by.
    """
    m = np.asarray(m, dtype=float)
    v_m = np.asarray(v_m, dtype=float)
    gate = _heaviside(v_m) * _heaviside(m - p.r1) + _heaviside(-v_m) * _heaviside(p.r2 - m)
    out = threshold_f(v_m, p) * gate
    return out if out.ndim else float(out)


def _rate(x):
    """x / (e^x - 1) with the removable singularity at x = 0 filled by 1."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-12
    safe = np.where(small, 1.0, x)
    out = np.where(small, 1.0 - x / 2.0, safe / np.expm1(safe))
    return out if out.ndim else float(out)


def hh_model(w1, w2, w3, v_k, v_na, p: HhParams):
    """Channel currents and gate derivatives, exactly as displayed.

    Returns (i_k, i_na, dw1, dw2, dw3).  Note the w1 equation has only an
    activation term (its fixed point is w1=1 for any fixed potential) and
    the w2 equation's second term is a growth term; both are kept as
    printed rather than corrected toward the classic channel model.
    """
    i_k = p.g_k * w1**4 * v_k
    i_na = p.g_na * w2**3 * w3 * v_na
    dw1 = _rate(p.k1 * v_k + p.k2) * (1.0 - w1)
    dw2 = _rate(p.na1 * v_na + p.na2) * (1.0 - w2) + p.na3 * np.exp(p.na4 * v_na + p.na5) * w2
    dw3 = p.na6 * np.exp(p.na7 * v_na + p.na8) * (1.0 - w3) - w3 / (
        np.exp(p.na1 * v_na + p.na9) + 1.0
    )
    return i_k, i_na, dw1, dw2, dw3


def simulate_hp_voltage_driven(
    p: HpParams,
    drive: DriveSignal,
    w0: float,
    spec: IntegratorSpec,
    win: WindowSpec = WindowSpec(),
) -> Trace:
    """Voltage-driven single HP device: I = V/R(w), memory clamped to [0,1].

    Trace channels: w, v, i, r.
    """

    def rhs(y, t):
        w = clamp01(y[0])
        v = eval_signal(drive, t)
        i = v / hp_resistance(w, p)
        return np.array([hp_rhs(w, i, p, win)])

    tr = integrate(rhs, [w0], spec, names=["w"], poststep=clamp01)
    w = tr["w"]
    v = np.asarray(eval_signal(drive, tr.times), dtype=float)
    r = hp_resistance(w, p)
    i = v / r
    return Trace(t0=tr.t0, dt=tr.dt, channels={"w": w, "v": v, "i": i, "r": r})

"""Analog-learning readouts and algorithms.

Fixed-dictionary regression (ELM style), reservoir pipelines over linear or
memristive dynamics, tuning-curve encode/decode with the leaky
integrate-and-fire rate function, and sparse coding by the locally
competitive algorithm.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .core import DriveSignal, IntegratorSpec, SimulationError, Trace, eval_signal
from .devices import HpParams
from .network import CircuitGraph, cycle_projector, edge_currents, memnet_rhs

__all__ = [
    "elm_features",
    "fit_readout",
    "LinearReservoir",
    "MemristiveReservoir",
    "Reservoir",
    "rc_run",
    "NefPopulation",
    "random_nef_population",
    "lif_response",
    "nef_encode",
    "nef_fit_decoders",
    "nef_decode",
    "LcaProblem",
    "LcaResult",
    "hard_threshold",
    "lca_energy",
    "lca_simulate",
]


def elm_features(x_samples, g_dictionary: Sequence[Callable]) -> np.ndarray:
    """Design matrix G[i, j] = g_j(x(i)) over a fixed function dictionary."""
    x = np.asarray(x_samples, dtype=float)
    n = x.shape[0]
    out = np.empty((n, len(g_dictionary)))
    for j, g in enumerate(g_dictionary):
        for i in range(n):
            out[i, j] = g(x[i])
    if not np.all(np.isfinite(out)):
        bad = np.argwhere(~np.isfinite(out))[0]
        raise ValueError(f"non-finite feature value at sample {bad[0]}, function {bad[1]}")
    return out


def fit_readout(g_matrix, y, ridge: float = 0.0) -> np.ndarray:
    """Ridge-regularized linear readout: minimize |G c - y|^2 + ridge |c|^2.

    Solved by the normal equations (Cholesky) when well conditioned; falls
    back to the minimum-norm least-squares solution (with a warning) when
    ridge = 0 and the problem is rank deficient or the condition number
    exceeds 1e10.
    """
    g = np.asarray(g_matrix, dtype=float)
    y = np.asarray(y, dtype=float)
    if g.shape[0] != y.shape[0]:
        raise ValueError(f"rows(G)={g.shape[0]} != len(y)={y.shape[0]}")
    if ridge < 0:
        raise ValueError("ridge must be >= 0")
    gram = g.T @ g + ridge * np.eye(g.shape[1])
    if ridge == 0.0:
        cond = np.linalg.cond(gram)
        if not np.isfinite(cond) or cond > 1e10:
            warnings.warn(
                "rank-deficient readout fit: returning the minimum-norm solution",
                RuntimeWarning,
                stacklevel=2,
            )
            return np.linalg.lstsq(g, y, rcond=None)[0]
    try:
        c = np.linalg.cholesky(gram)
        z = np.linalg.solve(c, g.T @ y)
        return np.linalg.solve(c.T, z)
    except np.linalg.LinAlgError:
        warnings.warn(
            "ill-conditioned normal equations: falling back to lstsq",
            RuntimeWarning,
            stacklevel=2,
        )
        return np.linalg.lstsq(g, y, rcond=None)[0]


@dataclass(frozen=True)
class LinearReservoir:
    """dq/dt = a q + (input); must be stable for the run at hand."""

    a: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("a must be square")
        object.__setattr__(self, "a", a)

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def state0(self) -> np.ndarray:
        return np.zeros(self.dim)

    def rhs(self, q: np.ndarray, drive: np.ndarray) -> np.ndarray:
        return self.a @ q + drive

    def outputs(self, q: np.ndarray, drive: np.ndarray) -> np.ndarray:
        return q

    @property
    def out_dim(self) -> int:
        return self.dim


@dataclass(frozen=True)
class MemristiveReservoir:
    """Memristive-network dynamics; the observable state is (w, edge currents).

    The drive vector is applied as the per-edge source vector (units V/r_on).
    A saturated network (all w clamped) exposes only the current half, which
    is a static linear map of the input.
    """

    graph: CircuitGraph
    hp: HpParams

    def __post_init__(self):
        object.__setattr__(self, "_omega", cycle_projector(self.graph))

    @property
    def dim(self) -> int:
        return self._omega.shape[0]

    def state0(self) -> np.ndarray:
        return np.full(self.dim, 0.5)

    def rhs(self, w: np.ndarray, drive: np.ndarray) -> np.ndarray:
        return memnet_rhs(w, drive, self._omega, self.hp)

    def outputs(self, w: np.ndarray, drive: np.ndarray) -> np.ndarray:
        return np.concatenate([w, edge_currents(w, drive, self._omega, self.hp)])

    @property
    def out_dim(self) -> int:
        return 2 * self.dim


@dataclass(frozen=True)
class Reservoir:
    """Input encoder -> fixed random dynamics -> linear mixing.

    b mixes encoded inputs into the dynamics (dim q x dim u); h mixes states
    into the N_g feature signals (N_g x out_dim, with N_g <= state dim).
    The encoder is affine: E(u) = in_gain * u + in_offset.
    """

    dynamics: LinearReservoir | MemristiveReservoir
    b: np.ndarray
    h: np.ndarray
    in_gain: float = 1.0
    in_offset: float = 0.0

    def __post_init__(self):
        b = np.asarray(self.b, dtype=float)
        h = np.asarray(self.h, dtype=float)
        if b.shape[0] != self.dynamics.dim:
            raise ValueError(f"b must have {self.dynamics.dim} rows")
        if h.shape[1] != self.dynamics.out_dim:
            raise ValueError(f"h must have {self.dynamics.out_dim} columns")
        if h.shape[0] > h.shape[1]:
            raise ValueError("need N_g <= state dimension")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "h", h)


def rc_run(r: Reservoir, u_signal, spec: IntegratorSpec) -> Trace:
    """Drive the reservoir and return the N_g mixed feature signals g = H q.

    ``u_signal`` is a DriveSignal, a callable t -> scalar, or a callable
    t -> vector matching b's input width.  Channels g0..g{N_g-1} plus u0...
    """
    if isinstance(u_signal, DriveSignal):
        u_of_t = lambda t: np.atleast_1d(eval_signal(u_signal, t))
    else:
        u_of_t = lambda t: np.atleast_1d(np.asarray(u_signal(t), dtype=float))
    dyn = r.dynamics

    def drive(t):
        return r.b @ (r.in_gain * u_of_t(t) + r.in_offset)

    n = spec.n_steps
    dt = spec.dt
    q = dyn.state0()
    clamp = isinstance(dyn, MemristiveReservoir)
    feats = np.empty((n + 1, r.h.shape[0]))
    us = np.empty((n + 1, u_of_t(0.0).size))
    feats[0] = r.h @ dyn.outputs(q, drive(0.0))
    us[0] = u_of_t(0.0)
    t = 0.0
    for k in range(n):
        if spec.method == "euler":
            q = q + dt * dyn.rhs(q, drive(t))
        else:
            k1 = dyn.rhs(q, drive(t))
            k2 = dyn.rhs(q + 0.5 * dt * k1, drive(t + 0.5 * dt))
            k3 = dyn.rhs(q + 0.5 * dt * k2, drive(t + 0.5 * dt))
            k4 = dyn.rhs(q + dt * k3, drive(t + dt))
            q = q + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if clamp:
            q = np.clip(q, 0.0, 1.0)
        if not np.all(np.isfinite(q)):
            raise SimulationError(f"reservoir diverged at t={t + dt:.6g}")
        t = (k + 1) * dt
        feats[k + 1] = r.h @ dyn.outputs(q, drive(t))
        us[k + 1] = u_of_t(t)
    channels = {f"g{i}": feats[:, i] for i in range(feats.shape[1])}
    for i in range(us.shape[1]):
        channels[f"u{i}"] = us[:, i]
    return Trace(t0=0.0, dt=dt, channels=channels)


@dataclass(frozen=True)
class NefPopulation:
    """Rate-coding population over a discretized function domain.

    encoders[i] is the generator profile of neuron i sampled on the grid;
    the soma current for a function f on the grid is
    gain_i * mean(f * encoders[i]) + bias_i.
    """

    gains: np.ndarray
    biases: np.ndarray
    encoders: np.ndarray  # (n_neurons, n_grid)
    grid: np.ndarray      # (n_grid,)
    tau0: float = 5e-3
    tau_rc: float = 20e-3
    i_f: float = 1.0

    def __post_init__(self):
        gains = np.asarray(self.gains, dtype=float)
        biases = np.asarray(self.biases, dtype=float)
        enc = np.asarray(self.encoders, dtype=float)
        grid = np.asarray(self.grid, dtype=float)
        if enc.shape != (gains.size, grid.size):
            raise ValueError("encoders must be (n_neurons, n_grid)")
        if biases.shape != gains.shape:
            raise ValueError("gains and biases must match")
        if self.tau0 <= 0 or self.tau_rc < 0 or self.i_f <= 0:
            raise ValueError("need tau0 > 0, tau_rc >= 0, i_f > 0")
        if grid.size > 1 and np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be increasing")
        for name, val in (("gains", gains), ("biases", biases), ("encoders", enc), ("grid", grid)):
            object.__setattr__(self, name, val)

    @property
    def n_neurons(self) -> int:
        return self.gains.size


def random_nef_population(
    rng: np.random.Generator,
    n_neurons: int,
    grid,
    tau0: float = 5e-3,
    tau_rc: float = 20e-3,
    i_f: float = 1.0,
) -> NefPopulation:
    """Population with random signed-indicator encoder profiles.

    Each encoder is +-1 on a random subinterval of the grid and 0 outside;
    gains and biases are drawn so a good fraction of the population fires.
    """
    grid = np.asarray(grid, dtype=float)
    n_x = grid.size
    enc = np.zeros((n_neurons, n_x))
    for i in range(n_neurons):
        a, b = np.sort(rng.integers(0, n_x, size=2))
        b = max(b, a + 1)
        enc[i, a:b] = rng.choice([-1.0, 1.0])
    gains = rng.uniform(5.0, 15.0, n_neurons)
    biases = rng.uniform(0.5, 2.5, n_neurons) * i_f
    return NefPopulation(gains=gains, biases=biases, encoders=enc, grid=grid,
                         tau0=tau0, tau_rc=tau_rc, i_f=i_f)


def lif_response(i_soma, tau0: float, tau_rc: float, i_f: float):
    """Leaky integrate-and-fire rate: 1/(tau0 - tau_rc ln(1 - i_f/I)) above I_F, else 0."""
    i_soma = np.asarray(i_soma, dtype=float)
    above = i_soma > i_f
    safe = np.where(above, i_soma, 2.0 * i_f)
    rate = 1.0 / (tau0 - tau_rc * np.log1p(-i_f / safe))
    out = np.where(above, rate, 0.0)
    return out if out.ndim else float(out)


def nef_encode(f_values, p: NefPopulation) -> np.ndarray:
    """Firing rates of the population for a function sampled on the grid."""
    f = np.asarray(f_values, dtype=float)
    if f.shape != p.grid.shape:
        raise ValueError(f"f must be sampled on the population grid ({p.grid.size} points)")
    currents = p.gains * (p.encoders * f).mean(axis=1) + p.biases
    return lif_response(currents, p.tau0, p.tau_rc, p.i_f)


def nef_fit_decoders(p: NefPopulation, train_functions, regularization: float = 0.0) -> np.ndarray:
    """Least-squares decoders on the grid from a set of training functions.

    Returns the (n_neurons, n_grid) decoder array mapping rates back to
    function values; uses the same regularized solver as fit_readout,
    column-shared across grid points.
    """
    fs = np.atleast_2d(np.asarray(train_functions, dtype=float))
    if fs.shape[1] != p.grid.size:
        raise ValueError("training functions must be sampled on the population grid")
    acts = np.vstack([nef_encode(f, p) for f in fs])  # (K, N)
    return fit_readout(acts, fs, ridge=regularization)


def nef_decode(activities, decoders) -> np.ndarray:
    """f_hat(x) = sum_i a_i phi_i(x) on the grid."""
    return np.asarray(activities, dtype=float) @ np.asarray(decoders, dtype=float)


def hard_threshold(x, lam: float):
    """T_lam(x) = x where x > lam, else 0."""
    x = np.asarray(x, dtype=float)
    out = np.where(x > lam, x, 0.0)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class LcaProblem:
    """Sparse-coding setup: dictionary columns phi^i, sparsity weight, time constant."""

    dictionary: np.ndarray  # (n_dim, n_atoms), columns are atoms
    lam: float = 0.0
    tau: float = 1.0

    def __post_init__(self):
        phi = np.asarray(self.dictionary, dtype=float)
        if phi.ndim != 2:
            raise ValueError("dictionary must be a 2-D array of column atoms")
        if np.any(np.linalg.norm(phi, axis=0) == 0):
            raise ValueError("dictionary must not contain zero columns")
        if self.lam < 0 or self.tau <= 0:
            raise ValueError("need lam >= 0 and tau > 0")
        object.__setattr__(self, "dictionary", phi)


class LcaResult(NamedTuple):
    a: np.ndarray
    trace: Trace
    converged: bool


def lca_energy(p: LcaProblem, x, a) -> float:
    """E = 1/2 |x - Phi a|^2 + (lam^2/2) |a|_0.

    The sparsity cost is the one implied by the hard threshold through
    lam dC/da = u - a: constant (lam/2) per active unit.
    """
    x = np.asarray(x, dtype=float)
    a = np.asarray(a, dtype=float)
    resid = x - p.dictionary @ a
    return 0.5 * float(resid @ resid) + 0.5 * p.lam**2 * int(np.count_nonzero(a))


def lca_simulate(p: LcaProblem, x, spec: IntegratorSpec, tol: float = 1e-8) -> LcaResult:
    """Integrate the neuron dynamics to a fixed point and threshold the state.

        du_m/dt = (1/tau) (b_m - u_m - sum_{n != m} G_mn a_n),
        b = Phi^T x,  G = Phi^T Phi,  a = T_lam(u).

    b_m is the atom-input overlap phi^m . x (the printed "b = Phi x" only
    types with the transpose action).  Stops early when |du/dt|_inf < tol;
    otherwise returns the last iterate with converged=False.
    """
    x = np.asarray(x, dtype=float)
    phi = p.dictionary
    if x.shape != (phi.shape[0],):
        raise ValueError(f"input must have shape ({phi.shape[0]},)")
    b = phi.T @ x
    gram = phi.T @ phi
    g_off = gram - np.diag(np.diagonal(gram))
    n_atoms = phi.shape[1]

    def rhs(u):
        return (b - u - g_off @ hard_threshold(u, p.lam)) / p.tau

    n = spec.n_steps
    dt = spec.dt
    u = np.zeros(n_atoms)
    rows = [u.copy()]
    converged = False
    for _ in range(n):
        if spec.method == "euler":
            u = u + dt * rhs(u)
        else:
            k1 = rhs(u)
            k2 = rhs(u + 0.5 * dt * k1)
            k3 = rhs(u + 0.5 * dt * k2)
            k4 = rhs(u + dt * k3)
            u = u + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        rows.append(u.copy())
        if np.max(np.abs(rhs(u))) < tol:
            converged = True
            break
    if not converged:
        warnings.warn("LCA did not reach a fixed point within t_end", RuntimeWarning, stacklevel=2)
    data = np.array(rows)
    trace = Trace(t0=0.0, dt=dt, channels={f"u{i}": data[:, i] for i in range(n_atoms)})
    return LcaResult(a=hard_threshold(u, p.lam), trace=trace, converged=converged)
